"""Cookie-cutter maps described by their inverse branches.

Each branch ``i`` is a contraction ``psi_i: [0, 1] -> I_i`` onto a closed
subinterval ``I_i = [a, b]`` of the unit interval; the expanding map ``T`` is
its inverse on ``I_i``. Two families are supported::

    affine:     psi(y) = a + (b - a) * y
    quadratic:  psi(y) = a + (b - a) * (y + eps * y * (y - 1))

Everything downstream (transfer operators, Birkhoff sums, cylinders) only
needs ``psi`` and ``psi'`` in closed form.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

import numpy as np

from .errors import (
    BadWeights,
    InvalidInterval,
    NonMonotone,
    NotExpanding,
    OutsideDomain,
    OverlappingIntervals,
    TooFewBranches,
)


DEGENERATE_RTOL = 1e-9


class BranchKind(str, Enum):
    AFFINE = "affine"
    QUADRATIC = "quadratic"


@dataclass(frozen=True)
class BranchSpec:
    kind: BranchKind
    interval: tuple[float, float]
    epsilon: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "kind", BranchKind(self.kind))
        object.__setattr__(self, "interval", tuple(float(v) for v in self.interval))

    @classmethod
    def affine(cls, a: float, b: float) -> "BranchSpec":
        return cls(BranchKind.AFFINE, (float(a), float(b)))

    @classmethod
    def quadratic(cls, a: float, b: float, epsilon: float) -> "BranchSpec":
        return cls(BranchKind.QUADRATIC, (float(a), float(b)), float(epsilon))

    @property
    def a(self) -> float:
        return self.interval[0]

    @property
    def b(self) -> float:
        return self.interval[1]

    @property
    def width(self) -> float:
        return self.interval[1] - self.interval[0]

    @property
    def eps(self) -> float:
        return self.epsilon if self.kind is BranchKind.QUADRATIC else 0.0

    @property
    def sup_dpsi(self) -> float:
        """Largest contraction rate of the inverse branch on [0, 1]."""
        return self.width * (1.0 + abs(self.eps))

    @property
    def slope(self) -> float:
        """|T'| of an affine branch."""
        return 1.0 / self.width

    def psi(self, y):
        e = self.eps
        return self.a + self.width * (y + e * y * (y - 1.0))

    def dpsi(self, y):
        return self.width * (1.0 + self.eps * (2.0 * y - 1.0))

    def forward(self, x):
        u = (x - self.a) / self.width
        e = self.eps
        if e == 0.0:
            return u
        # root of e*y^2 + (1-e)*y - u = 0 in [0, 1], cancellation-free form
        return 2.0 * u / ((1.0 - e) + np.sqrt((1.0 - e) ** 2 + 4.0 * e * u))

    def check(self) -> None:
        a, b = self.interval
        if not (0.0 <= a < b <= 1.0) or not (math.isfinite(a) and math.isfinite(b)):
            raise InvalidInterval(f"interval {self.interval} must satisfy 0 <= a < b <= 1")
        if self.kind is BranchKind.QUADRATIC and not abs(self.epsilon) < 1.0:
            raise NonMonotone(f"|epsilon| = {abs(self.epsilon)} must be < 1")
        if not self.sup_dpsi < 1.0:
            raise NotExpanding(
                f"branch on {self.interval}: sup psi' = {self.sup_dpsi:.6g} >= 1"
            )


@dataclass(frozen=True)
class CookieCutterSystem:
    """Validated cookie-cutter map; construct through :func:`validate_system`."""

    branches: tuple[BranchSpec, ...]
    _a: np.ndarray = field(init=False, repr=False, compare=False)
    _w: np.ndarray = field(init=False, repr=False, compare=False)
    _e: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_a", np.array([br.a for br in self.branches]))
        object.__setattr__(self, "_w", np.array([br.width for br in self.branches]))
        object.__setattr__(self, "_e", np.array([br.eps for br in self.branches]))

    @property
    def n(self) -> int:
        return len(self.branches)

    @property
    def is_affine(self) -> bool:
        return all(br.kind is BranchKind.AFFINE for br in self.branches)

    @property
    def is_affine_degenerate(self) -> bool:
        """All branches affine with equal slopes (to ``DEGENERATE_RTOL``).

        Decimal configs rarely give bit-identical widths (1/3 vs 1 - 2/3), and
        a pressure that is linear up to round-off has no usable Legendre
        transform, so near-equality counts.
        """
        if not self.is_affine:
            return False
        w0 = self.branches[0].width
        return all(math.isclose(br.width, w0, rel_tol=DEGENERATE_RTOL) for br in self.branches)

    @property
    def slopes(self) -> tuple[float, ...]:
        if not self.is_affine:
            raise ValueError("slopes are only defined for affine systems")
        return tuple(br.slope for br in self.branches)

    def branch_index(self, x: float) -> int:
        for i, br in enumerate(self.branches):
            if br.a <= x <= br.b:
                return i
        raise OutsideDomain(f"x = {x!r} lies outside every branch interval")

    def psi_batch(self, symbols: np.ndarray, y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Apply psi_{symbols} elementwise; returns (psi(y), psi'(y))."""
        a, w, e = self._a[symbols], self._w[symbols], self._e[symbols]
        return a + w * (y + e * y * (y - 1.0)), w * (1.0 + e * (2.0 * y - 1.0))


@dataclass(frozen=True)
class SymbolicWord:
    symbols: tuple[int, ...]

    def __post_init__(self):
        if len(self.symbols) < 1:
            raise ValueError("symbolic word must have length >= 1")
        if any(s < 0 for s in self.symbols):
            raise ValueError("symbols must be nonnegative")

    def __len__(self) -> int:
        return len(self.symbols)


def validate_system(specs: Sequence[BranchSpec]) -> CookieCutterSystem:
    """Check branch invariants and return a system with branches sorted by position.

    Raises
    ------
    InvalidInterval, NonMonotone, NotExpanding
        A single branch violates its own invariants.
    TooFewBranches
        Fewer than two branches.
    OverlappingIntervals
        Two closed intervals intersect or touch.
    """
    for spec in specs:
        spec.check()
    if len(specs) < 2:
        raise TooFewBranches(f"need at least 2 branches, got {len(specs)}")
    ordered = tuple(sorted(specs, key=lambda br: br.a))
    for left, right in zip(ordered, ordered[1:]):
        if not left.b < right.a:
            raise OverlappingIntervals(
                f"intervals {left.interval} and {right.interval} are not separated by a gap"
            )
    return CookieCutterSystem(ordered)


def forward(system: CookieCutterSystem, x: float) -> float:
    br = system.branches[system.branch_index(x)]
    return float(min(1.0, max(0.0, br.forward(x))))


def derivative(system: CookieCutterSystem, x: float) -> float:
    """|T'(x)| = 1 / psi'(T(x))."""
    br = system.branches[system.branch_index(x)]
    y = min(1.0, max(0.0, br.forward(x)))
    return float(1.0 / br.dpsi(y))


def _check_word(system: CookieCutterSystem, word: SymbolicWord) -> np.ndarray:
    symbols = np.asarray(word.symbols, dtype=np.intp)
    if symbols.max() >= system.n:
        raise ValueError(f"word uses symbol {symbols.max()} but system has {system.n} branches")
    return symbols


def cylinder(system: CookieCutterSystem, word: SymbolicWord) -> tuple[float, float]:
    """Image of [0, 1] under psi_{w_1} o ... o psi_{w_m}."""
    symbols = _check_word(system, word)
    lo, hi = 0.0, 1.0
    for s in symbols[::-1]:
        br = system.branches[s]
        lo, hi = float(br.psi(lo)), float(br.psi(hi))
    return lo, hi


def _birkhoff_rows(system: CookieCutterSystem, words: np.ndarray, anchor: float) -> np.ndarray:
    # words: (paths, m). Pull the anchor back along each word, last symbol first.
    paths, m = words.shape
    y = np.full(paths, anchor)
    total = np.zeros(paths)
    for k in range(m - 1, -1, -1):
        y, dpsi = system.psi_batch(words[:, k], y)
        total -= np.log(dpsi)
    return total / m


def birkhoff_lyapunov(system: CookieCutterSystem, word: SymbolicWord, anchor: float = 0.5) -> float:
    """Average of log|T'| along the orbit segment coded by ``word``.

    The orbit ends at ``anchor`` after ``len(word)`` steps; its points are the
    successive pullbacks of the anchor through the inverse branches.
    """
    symbols = _check_word(system, word)
    if system.is_affine:
        logs = -np.log(system._w)
        return float(logs[symbols].sum() / len(symbols))
    return float(_birkhoff_rows(system, symbols[None, :], anchor)[0])


def _check_weights(weights: Sequence[float], n: int) -> np.ndarray:
    p = np.asarray(weights, dtype=float)
    if p.shape != (n,):
        raise BadWeights(f"expected {n} weights, got shape {p.shape}")
    if not np.all(np.isfinite(p)) or np.any(p < 0):
        raise BadWeights("weights must be finite and nonnegative")
    if abs(p.sum() - 1.0) > 1e-12:
        raise BadWeights(f"weights sum to {p.sum()!r}, not 1")
    return p


def path_rng(seed: int, path: int) -> np.random.Generator:
    """PCG64 stream for one path, keyed on ``(seed, path)``."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, path])))


def sample_words(n: int, weights: np.ndarray, path_length: int, paths: int, seed: int) -> np.ndarray:
    cdf = np.cumsum(weights)
    out = np.empty((paths, path_length), dtype=np.intp)
    for j in range(paths):
        u = path_rng(seed, j).random(path_length)
        out[j] = np.minimum(np.searchsorted(cdf, u, side="right"), n - 1)
    return out


def sample_lyapunov(
    system: CookieCutterSystem,
    weights: Sequence[float],
    path_length: int,
    paths: int,
    seed: int,
    anchor: float = 0.5,
) -> list[float]:
    """Birkhoff averages of log|T'| over i.i.d. Bernoulli(weights) symbol paths.

    Each path ``j`` draws its symbols by inverse-CDF from its own PCG64 stream
    seeded with ``(seed, j)``, so results do not depend on evaluation order.
    """
    p = _check_weights(weights, system.n)
    if path_length < 1 or paths < 1:
        raise ValueError("path_length and paths must be >= 1")
    words = sample_words(system.n, p, path_length, paths, seed)
    if system.is_affine:
        logs = -np.log(system._w)
        values = logs[words].sum(axis=1) / path_length
    else:
        values = _birkhoff_rows(system, words, anchor)
    return [float(v) for v in values]

"""Topological pressure f(t) = P(-t log|T'|) and its derivative.

Two backends:

* ``analytic`` for all-affine systems: ``f(t) = log sum_i s_i**(-t)``.
* ``collocation`` for any system: ``f(t)`` is the log of the leading
  eigenvalue of the transfer operator

      (L_t g)(x) = sum_i psi_i'(x)**t * g(psi_i(x))

  discretised by barycentric Lagrange interpolation on Chebyshev points of
  the second kind. Derivatives are Richardson-extrapolated central
  differences.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property

import numpy as np

from . import defaults
from .analysis import ConvexFunction
from .errors import BackendMismatch, NotAffine, PowerIterationDiverged
from .system import CookieCutterSystem


class Backend(str, Enum):
    ANALYTIC = "analytic"
    COLLOCATION = "collocation"


def chebyshev_points(N: int) -> np.ndarray:
    """Chebyshev points of the second kind mapped to [0, 1], increasing."""
    j = np.arange(N)
    x = 0.5 * (1.0 - np.cos(np.pi * j / (N - 1)))
    # exact symmetric endpoints/centre
    x[0], x[-1] = 0.0, 1.0
    return x


def barycentric_weights(N: int) -> np.ndarray:
    w = (-1.0) ** np.arange(N)
    w[0] *= 0.5
    w[-1] *= 0.5
    return w


def interpolation_matrix(nodes: np.ndarray, weights: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Rows ``l_k(y_j)`` of the barycentric Lagrange basis at the points ``y``."""
    diff = y[:, None] - nodes[None, :]
    exact = diff == 0.0
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = weights[None, :] / diff
        B = terms / terms.sum(axis=1, keepdims=True)
    hit = exact.any(axis=1)
    B[hit] = exact[hit].astype(float)
    return B


@dataclass(frozen=True)
class _Collocation:
    """t-independent pieces of the discretised transfer operator."""

    bases: tuple[np.ndarray, ...]  # per-branch interpolation matrices
    log_dpsi: np.ndarray  # (n, N): log psi_i'(x_j)

    @classmethod
    def build(cls, system: CookieCutterSystem, N: int) -> "_Collocation":
        x = chebyshev_points(N)
        w = barycentric_weights(N)
        bases, logs = [], []
        for br in system.branches:
            bases.append(interpolation_matrix(x, w, br.psi(x)))
            logs.append(np.log(br.dpsi(x)))
        return cls(tuple(bases), np.array(logs))

    def matrix(self, t: float) -> tuple[np.ndarray, float]:
        """Return (M / exp(shift), shift); the shift keeps entries in range for large |t|."""
        expo = t * self.log_dpsi
        shift = float(expo.max())
        M = np.zeros_like(self.bases[0])
        for B, e in zip(self.bases, expo):
            M += np.exp(e - shift)[:, None] * B
        return M, shift


def transfer_matrix(system: CookieCutterSystem, t: float, N: int) -> np.ndarray:
    """Collocation matrix ``M[j, k] = sum_i psi_i'(x_j)**t * l_k(psi_i(x_j))``."""
    if N < 8:
        raise ValueError(f"need N >= 8 collocation nodes, got {N}")
    M, shift = _Collocation.build(system, N).matrix(t)
    return M * math.exp(shift)


def leading_eigenvalue(
    matrix: np.ndarray,
    tol: float = defaults.POWER_ITER_TOL,
    max_iter: int = defaults.POWER_ITER_MAX,
    patience: int | None = defaults.DEFAULTS["power_iter_patience"],
) -> tuple[float, np.ndarray]:
    """Power iteration from the all-ones vector with sup-norm normalisation.

    Converged once successive Rayleigh quotients differ by less than
    ``tol * |lambda|``. Iteration then continues while the differences keep
    shrinking (at most ``patience`` more steps): a geometric sequence stopped
    at ``tol`` is still off by about ``tol * r / (1 - r)``, which a difference
    quotient of the pressure would amplify. If ``patience`` iterations pass
    without convergence
    the matrix is squared (normalised, with the scale tracked in log form) and
    the iteration continues from the current vector, so a small spectral gap
    costs O(log) squarings instead of O(1 / gap) matrix-vector products.
    ``max_iter`` bounds the total number of products.
    """
    M = np.array(matrix, dtype=float)
    v = np.ones(M.shape[0])
    power, log_scale = 1, 0.0  # M holds matrix**power / exp(log_scale)
    prev = None
    since = 0
    for _ in range(max_iter):
        Mv = M @ v
        lam = float(v @ Mv) / float(v @ v)
        if not math.isfinite(lam):
            raise PowerIterationDiverged("non-finite Rayleigh quotient")
        scale = np.abs(Mv).max()
        if scale == 0.0:
            raise PowerIterationDiverged("iterate collapsed to zero")
        v = Mv / scale
        if prev is not None and abs(lam - prev) < tol * abs(lam):
            lam, v = _polish(M, v, lam, abs(lam - prev), patience or 0)
            if v.sum() < 0:
                v = -v
            if power == 1:
                return lam, v
            if lam <= 0.0:
                raise PowerIterationDiverged(f"non-positive eigenvalue of matrix power: {lam}")
            return math.exp((math.log(lam) + log_scale) / power), v
        prev = lam
        since += 1
        if patience is not None and since >= patience:
            M = M @ M
            c = float(np.abs(M).max())
            if not (math.isfinite(c) and c > 0.0):
                raise PowerIterationDiverged("matrix power over/underflowed")
            M /= c
            power, log_scale = 2 * power, 2 * log_scale + math.log(c)
            prev, since = None, 0
    raise PowerIterationDiverged(f"no convergence after {max_iter} iterations")


def _polish(M: np.ndarray, v: np.ndarray, lam: float, delta: float, steps: int) -> tuple[float, np.ndarray]:
    # keep iterating while the quotient still moves less each step
    for _ in range(steps):
        Mv = M @ v
        nxt = float(v @ Mv) / float(v @ v)
        scale = np.abs(Mv).max()
        if not (math.isfinite(nxt) and scale > 0.0):
            break
        d = abs(nxt - lam)
        if d >= delta:
            break
        lam, v, delta = nxt, Mv / scale, d
        if d == 0.0:
            break
    return lam, v


@dataclass(frozen=True)
class EquilibriumWeights:
    t: float
    weights: tuple[float, ...]


def _analytic_terms(log_slopes: tuple[float, ...], t: float) -> tuple[float, list[float]]:
    # s_i**(-t) = exp(-t log s_i), scaled by the largest term
    m = -t * (log_slopes[0] if t >= 0 else log_slopes[-1])
    exp = math.exp
    return m, [exp(-t * ls - m) for ls in log_slopes]


def equilibrium_weights(system: CookieCutterSystem, t: float) -> EquilibriumWeights:
    """Bernoulli weights ``p_i = s_i**(-t) / sum_j s_j**(-t)`` of the equilibrium state."""
    if not system.is_affine:
        raise NotAffine("equilibrium weights are only available for affine systems")
    logs = [math.log(s) for s in system.slopes]
    m = max(-t * ls for ls in logs)
    terms = [math.exp(-t * ls - m) for ls in logs]
    z = math.fsum(terms)
    return EquilibriumWeights(t, tuple(q / z for q in terms))


@dataclass(frozen=True)
class PressureEvaluator:
    """Evaluates ``f(t) = P(-t log|T'|)`` and its first two derivatives."""

    system: CookieCutterSystem
    backend: Backend = Backend.ANALYTIC
    nodes: int = defaults.NODES
    power_iter_tol: float = defaults.POWER_ITER_TOL
    power_iter_max: int = defaults.POWER_ITER_MAX
    step: float = field(default=defaults.DIFF_STEP, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "backend", Backend(self.backend))
        if self.backend is Backend.ANALYTIC and not self.system.is_affine:
            raise BackendMismatch("analytic backend requires every branch to be affine")
        if self.backend is Backend.COLLOCATION and self.nodes < 8:
            raise ValueError(f"need nodes >= 8, got {self.nodes}")

    @classmethod
    def auto(cls, system: CookieCutterSystem, **kwargs) -> "PressureEvaluator":
        backend = Backend.ANALYTIC if system.is_affine else Backend.COLLOCATION
        return cls(system, backend, **kwargs)

    @cached_property
    def _log_slopes(self) -> tuple[float, ...]:
        return tuple(sorted(math.log(s) for s in self.system.slopes))

    @cached_property
    def _colloc(self) -> _Collocation:
        return _Collocation.build(self.system, self.nodes)

    @property
    def degenerate(self) -> bool:
        return self.system.is_affine_degenerate

    def as_function(self) -> ConvexFunction:
        # past |t| ~ 60 the discretised operator's leading eigenvalue stops being
        # well separated, so collocation searches stay inside the saturation cap
        limit = defaults.BRACKET_LIMIT if self.backend is Backend.ANALYTIC else defaults.ALPHA_CAP
        return ConvexFunction(
            self.pressure,
            self.derivative,
            self.second_derivative,
            degenerate=self.degenerate,
            t_limit=limit,
        )

    def pressure(self, t: float) -> float:
        t = float(t)
        if self.backend is Backend.ANALYTIC:
            m, terms = _analytic_terms(self._log_slopes, t)
            return m + math.log(sum(terms))
        M, shift = self._colloc.matrix(t)
        lam, _ = leading_eigenvalue(M, self.power_iter_tol, self.power_iter_max)
        if lam <= 0.0:
            raise PowerIterationDiverged(f"leading eigenvalue {lam} is not positive")
        return math.log(lam) + shift

    __call__ = pressure

    def numeric_derivative(self, t: float) -> float:
        """Central difference at h and h/2 combined by one Richardson step."""
        h = self.step
        p = self.pressure
        d_h = (p(t + h) - p(t - h)) / (2 * h)
        d_h2 = (p(t + h / 2) - p(t - h / 2)) / h
        return (4 * d_h2 - d_h) / 3

    def derivative(self, t: float) -> float:
        t = float(t)
        if self.backend is Backend.ANALYTIC:
            # hot path of the t_alpha bisection: one fused pass, same order as _analytic_terms
            ls = self._log_slopes
            m = -t * (ls[0] if t >= 0 else ls[-1])
            exp = math.exp
            num = den = 0.0
            for l in ls:
                q = exp(-t * l - m)
                num += q * l
                den += q
            return -num / den
        return self.numeric_derivative(t)

    def second_derivative(self, t: float) -> float:
        t = float(t)
        if self.backend is Backend.ANALYTIC:
            _, terms = _analytic_terms(self._log_slopes, t)
            z = math.fsum(terms)
            mean = math.fsum(q * ls for q, ls in zip(terms, self._log_slopes)) / z
            return math.fsum(q * (ls - mean) ** 2 for q, ls in zip(terms, self._log_slopes)) / z
        h = self.step
        d = self.derivative
        return (4 * (d(t + h / 2) - d(t - h / 2)) / h - (d(t + h) - d(t - h)) / (2 * h)) / 3


def pressure(evaluator: PressureEvaluator, t: float) -> float:
    return evaluator.pressure(t)


def pressure_derivative(evaluator: PressureEvaluator, t: float) -> float:
    return evaluator.derivative(t)

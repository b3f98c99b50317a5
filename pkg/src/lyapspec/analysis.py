"""Newton maps, Newton-Raphson with a bracket guard, and Legendre transforms.

Everything here works on a strictly decreasing convex function given by its
value and derivative; the pressure is one instance
(:meth:`PressureEvaluator.as_function`) but nothing in this module depends on
it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

from . import defaults
from .errors import (
    AlphaOutOfRange,
    DegeneratePressure,
    MaxIterationsExceeded,
    NoRootBracket,
    NonFiniteValue,
)

RealFn = Callable[[float], float]


@dataclass(frozen=True)
class ConvexFunction:
    """Strictly decreasing convex C^2 function.

    ``degenerate`` marks an affine function, for which the Legendre transform
    collapses to a single slope. Bracket searches never evaluate beyond
    ``|t| = t_limit`` (rounded up to the next power of two).
    """

    value: RealFn
    derivative: RealFn
    second_derivative: Optional[RealFn] = None
    degenerate: bool = False
    t_limit: float = defaults.BRACKET_LIMIT

    def __call__(self, t: float) -> float:
        return self.value(t)


@dataclass(frozen=True)
class LegendreResult:
    alpha: float
    t_alpha: float
    F: float
    value_at_t: float

    @property
    def slope(self) -> float:
        return -self.alpha

    def support_line(self, t: float) -> float:
        """Tangent line of slope -alpha touching the graph at t_alpha."""
        return -self.alpha * (t - self.t_alpha) + self.value_at_t


@dataclass
class NewtonTrace:
    iterates: list[tuple[float, float]] = field(default_factory=list)
    converged: bool = False
    root: float = math.nan
    bisection_steps: int = 0

    @property
    def steps(self) -> int:
        return max(len(self.iterates) - 1, 0)


def _finite(*xs: float) -> None:
    if not all(math.isfinite(x) for x in xs):
        raise NonFiniteValue(f"non-finite function value in {xs}")


def newton_map(f: ConvexFunction, t: float) -> float:
    """t - f(t) / f'(t)."""
    v, d = f.value(t), f.derivative(t)
    _finite(v, d)
    return t - v / d


def newton_derivative(f: ConvexFunction, t: float) -> float:
    """f(t) f''(t) / f'(t)^2; vanishes at the root."""
    if f.second_derivative is None:
        raise ValueError("newton_derivative needs a second derivative")
    v, d, dd = f.value(t), f.derivative(t), f.second_derivative(t)
    _finite(v, d, dd)
    return v * dd / (d * d)


def find_root_bracket(f: ConvexFunction, t0: float, limit: float | None = None):
    """Expand [t0 - w, t0 + w], doubling w, until f changes sign.

    Returns ``(lo, hi)`` with ``f(lo) >= 0 >= f(hi)``.
    """
    limit = f.t_limit if limit is None else limit
    w = 1.0
    while True:
        lo, hi = t0 - w, t0 + w
        flo, fhi = f.value(lo), f.value(hi)
        if flo >= 0.0 >= fhi:
            return lo, hi
        if max(abs(lo), abs(hi)) > limit:
            raise NoRootBracket(f"no sign change of f on [{lo}, {hi}]")
        w *= 2.0


def newton_solve(
    f: ConvexFunction,
    t0: float,
    tol: float = defaults.NEWTON_TOL,
    max_iter: int = defaults.NEWTON_MAX_ITER,
) -> NewtonTrace:
    """Iterate the Newton map from ``t0`` until ``|f| < tol`` or the step is below ``tol``.

    A sign-change bracket is located first; any Newton step that would leave
    it is replaced by a bisection step, so the iteration cannot escape.
    """
    trace = NewtonTrace()
    t = float(t0)
    ft = f.value(t)
    _finite(ft)
    trace.iterates.append((t, ft))
    if ft == 0.0:
        trace.converged, trace.root = True, t
        return trace
    lo, hi = find_root_bracket(f, t)

    for _ in range(max_iter):
        if abs(ft) < tol:
            trace.converged, trace.root = True, t
            return trace
        if ft > 0.0:
            lo = max(lo, t)
        else:
            hi = min(hi, t)
        nxt = newton_map(f, t)
        if not lo <= nxt <= hi:
            nxt = 0.5 * (lo + hi)
            trace.bisection_steps += 1
        step = abs(nxt - t)
        t, ft = nxt, f.value(nxt)
        _finite(ft)
        trace.iterates.append((t, ft))
        if step < tol or ft == 0.0:
            trace.converged, trace.root = True, t
            return trace
    if abs(ft) < tol:
        trace.converged, trace.root = True, t
        return trace
    raise MaxIterationsExceeded(f"Newton did not converge in {max_iter} iterations (t={t}, f={ft})")


def solve_t_alpha(
    f: ConvexFunction,
    alpha: float,
    tol: float = defaults.BISECT_TOL,
    limit: float | None = None,
) -> float:
    """Unique t with f'(t) = -alpha, by bracket expansion and bisection on f'."""
    limit = f.t_limit if limit is None else limit
    if f.degenerate:
        raise DegeneratePressure("f is affine: every slope is attained at a single value")
    target = -float(alpha)
    lo, hi = -1.0, 1.0
    while True:
        dlo, dhi = f.derivative(lo), f.derivative(hi)
        _finite(dlo, dhi)
        if dlo <= target <= dhi:
            break
        if hi > limit:
            raise AlphaOutOfRange(
                f"alpha = {alpha} is not attained by -f' on [{lo}, {hi}]"
            )
        lo, hi = 2.0 * lo, 2.0 * hi
    while hi - lo >= tol:
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if f.derivative(mid) < target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def legendre_transform(f: ConvexFunction, alpha: float, **solver) -> LegendreResult:
    """F(alpha) = inf_t f(t) + alpha t, evaluated at the tangency point."""
    t_a = solve_t_alpha(f, alpha, **solver)
    v = f.value(t_a)
    return LegendreResult(alpha=float(alpha), t_alpha=t_a, F=v + alpha * t_a, value_at_t=v)


def lemma_rel_residual(f: ConvexFunction, alpha: float, **solver) -> float:
    """|N_f(t_alpha) - F(alpha) / alpha|; zero up to solver noise."""
    if alpha == 0:
        raise ValueError("alpha must be nonzero")
    leg = legendre_transform(f, alpha, **solver)
    return abs(newton_map(f, leg.t_alpha) - leg.F / alpha)


def bowen_dimension(
    evaluator,
    t0: float = defaults.DEFAULTS["newton_t0"],
    tol: float = defaults.NEWTON_TOL,
    max_iter: int = defaults.NEWTON_MAX_ITER,
) -> tuple[float, NewtonTrace]:
    """Hausdorff dimension of the repeller: the root of the pressure."""
    trace = newton_solve(evaluator.as_function(), t0, tol, max_iter)
    return trace.root, trace


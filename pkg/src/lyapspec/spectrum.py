"""Lyapunov spectrum of a cookie-cutter map and the Newton-map identity.

The spectrum is computed as a Legendre transform of the pressure divided by
the exponent level, ``L(alpha) = (f(t_alpha) + alpha t_alpha) / alpha`` with
``f'(t_alpha) = -alpha``. :func:`verify_identity` checks numerically that
``L(-f'(t))`` coincides with the Newton map ``t - f(t) / f'(t)`` of the
pressure at every grid point.
"""
from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass

import numpy as np

from . import defaults
from .analysis import bowen_dimension, newton_map, solve_t_alpha
from .errors import AlphaOutOfRange, DegeneratePressure
from .pressure import Backend, PressureEvaluator


@dataclass(frozen=True)
class SpectrumPoint:
    alpha: float
    t_alpha: float
    L: float
    newton_value: float
    entropy: float
    degenerate: bool = False


@dataclass(frozen=True)
class AlphaRange:
    alpha_min: float
    alpha_max: float
    exact: bool = True

    @property
    def width(self) -> float:
        return self.alpha_max - self.alpha_min

    def __contains__(self, alpha: float) -> bool:
        return self.alpha_min < alpha < self.alpha_max


@dataclass(frozen=True)
class IdentityReport:
    t_grid: list[float]
    residuals: list[float]
    max_residual: float
    tol: float
    passed: bool
    points: list[SpectrumPoint] = dataclasses.field(default_factory=list, repr=False)



def alpha_range(evaluator: PressureEvaluator, t_cap: float = defaults.ALPHA_CAP) -> AlphaRange:
    """Interval of attainable Lyapunov exponents.

    Exact (extreme log-slopes) for affine systems; otherwise approximated by
    ``-f'(+-t_cap)`` and flagged ``exact=False``.
    """
    system = evaluator.system
    if system.is_affine:
        logs = [math.log(s) for s in system.slopes]
        return AlphaRange(min(logs), max(logs), exact=True)
    return AlphaRange(-evaluator.derivative(t_cap), -evaluator.derivative(-t_cap), exact=False)


def equilibrium_entropy(evaluator: PressureEvaluator, t: float) -> float:
    """h(mu_t) = f(t) - t f'(t)."""
    return evaluator.pressure(t) - t * evaluator.derivative(t)


def lyapunov_spectrum(evaluator: PressureEvaluator, alpha: float, bisect_tol: float = defaults.BISECT_TOL) -> SpectrumPoint:
    """Hausdorff dimension of the level set {lambda(x) = alpha}."""
    f = evaluator.as_function()
    if f.degenerate:
        raise DegeneratePressure("equal-slope affine system: the spectrum is a single point")
    if alpha <= 0:
        raise AlphaOutOfRange(f"alpha = {alpha} must be positive")
    t_a = solve_t_alpha(f, alpha, tol=bisect_tol)
    p = f.value(t_a)
    entropy = p + t_a * alpha
    return SpectrumPoint(
        alpha=float(alpha),
        t_alpha=t_a,
        L=entropy / alpha,
        newton_value=newton_map(f, t_a),
        entropy=entropy,
    )


def degenerate_point(evaluator: PressureEvaluator) -> SpectrumPoint:
    s = evaluator.system.slopes[0]
    n = evaluator.system.n
    d = math.log(n) / math.log(s)
    return SpectrumPoint(
        alpha=math.log(s), t_alpha=math.nan, L=d, newton_value=d, entropy=math.log(n), degenerate=True
    )


def spectrum_curve(
    evaluator: PressureEvaluator,
    steps: int = defaults.DEFAULTS["spectrum_steps"],
    margin: float = defaults.MARGIN,
    bisect_tol: float = defaults.BISECT_TOL,
) -> list[SpectrumPoint]:
    """Spectrum on a uniform alpha grid kept ``margin * width`` away from both ends.

    Equal-slope systems yield the single flagged point ``(log s, log n / log s)``.
    """
    if evaluator.degenerate:
        return [degenerate_point(evaluator)]
    if steps < 2:
        raise ValueError("steps must be >= 2")
    if not 0 < margin < 0.5:
        raise ValueError("margin must lie in (0, 1/2)")
    rng = alpha_range(evaluator)
    w = rng.width
    alphas = np.linspace(rng.alpha_min + margin * w, rng.alpha_max - margin * w, steps)
    return [lyapunov_spectrum(evaluator, float(a), bisect_tol) for a in alphas]


def default_identity_tol(evaluator: PressureEvaluator) -> float:
    if evaluator.backend is Backend.ANALYTIC:
        return defaults.DEFAULTS["identity_tol_analytic"]
    return defaults.DEFAULTS["identity_tol_collocation"]


def verify_identity(
    evaluator: PressureEvaluator,
    t_min: float = defaults.DEFAULTS["t_min"],
    t_max: float = defaults.DEFAULTS["t_max"],
    steps: int = defaults.DEFAULTS["t_steps"],
    tol: float | None = None,
    bisect_tol: float = defaults.BISECT_TOL,
) -> IdentityReport:
    """Check ``L(-f'(t)) == N_f(t)`` on a uniform t grid.

    The spectrum side re-solves ``t_alpha`` from ``alpha = -f'(t)`` instead of
    reusing ``t``, so each residual covers the full derivative/bisection round
    trip.
    """
    if evaluator.degenerate:
        raise DegeneratePressure("equal-slope affine system: L o (-f') is undefined off a single point")
    if steps < 2:
        raise ValueError("steps must be >= 2")
    tol = default_identity_tol(evaluator) if tol is None else tol
    f = evaluator.as_function()
    grid = [float(t) for t in np.linspace(t_min, t_max, steps)]
    residuals, points = [], []
    for t in grid:
        pt = lyapunov_spectrum(evaluator, -f.derivative(t), bisect_tol)
        residuals.append(abs(pt.L - newton_map(f, t)))
        points.append(pt)
    worst = max(residuals)
    return IdentityReport(grid, residuals, worst, tol, worst <= tol, points)


def dimension(evaluator: PressureEvaluator, **kwargs) -> float:
    return bowen_dimension(evaluator, **kwargs)[0]

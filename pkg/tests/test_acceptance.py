"""Acceptance suite: one recorded pass/fail line per criterion.

Each test records its measured value next to the threshold through the
``criterion`` fixture; the lines are printed in the pytest terminal summary.
"""
import io
import math
import time
from pathlib import Path

import numpy as np
import pytest

from lyapspec import (
    BranchSpec,
    ConvexFunction,
    PressureEvaluator,
    alpha_range,
    bowen_dimension,
    legendre_transform,
    lemma_rel_residual,
    sample_lyapunov,
    spectrum_curve,
    validate_system,
    verify_identity,
)
from lyapspec.cli import EXIT_COMPUTE, main
from lyapspec.errors import DegeneratePressure
from lyapspec.spectrum import degenerate_point

from conftest import GOLDEN_D, LOG2, LOG3
from oracles import (
    affine_pressure_grid,
    bisect_root,
    dense_grid,
    eig_pressure_grid,
    grid_legendre,
    windowed_grid_legendre_many,
)

CONFIGS = Path(__file__).resolve().parent.parent / "configs"

EXP = ConvexFunction(
    value=lambda t: math.exp(-t) - 0.5,
    derivative=lambda t: -math.exp(-t),
    second_derivative=lambda t: math.exp(-t),
)


def random_affine_systems(count, seed=2024):
    """Affine systems with 2-5 branches, slopes in [1.5, 8] and positive gaps."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        n = int(rng.integers(2, 6))
        slopes = rng.uniform(1.5, 8.0, n)
        widths = 1.0 / slopes
        spare = 1.0 - widths.sum()
        if spare < 0.02 or np.ptp(slopes) < 1e-3:
            continue
        gap = spare / (n - 1)
        specs, a = [], 0.0
        for w in widths:
            specs.append(BranchSpec.affine(a, a + w))
            a += w + gap
        out.append(validate_system(specs))
    return out


def test_criterion_01_affine_identity(criterion):
    start = time.perf_counter()
    buf = io.StringIO()
    code = main(["verify", str(CONFIGS / "slopes_2_4.json"), "--backend", "analytic"], out=buf)
    s24_resid = float(next(l for l in buf.getvalue().splitlines() if l.startswith("max_residual")).split()[1])
    worst = 0.0
    systems = random_affine_systems(50)
    for sys_ in systems:
        rep = verify_identity(PressureEvaluator(sys_, "analytic"), -2.0, 3.0, 101)
        worst = max(worst, rep.max_residual)
    elapsed = time.perf_counter() - start
    ok = code == 0 and s24_resid <= 1e-10 and worst <= 1e-10 and len(systems) == 50 and elapsed < 1.0
    criterion(
        "1 affine identity",
        ok,
        f"(2,4) residual {s24_resid:.2e}, worst of 50 random {worst:.2e} (<= 1e-10), {elapsed:.2f} s (< 1 s)",
    )
    assert ok


def test_criterion_02_nonlinear_identity(quad, criterion):
    start = time.perf_counter()
    r64 = verify_identity(PressureEvaluator(quad, "collocation", nodes=64), -2.0, 3.0, 101)
    r128 = verify_identity(PressureEvaluator(quad, "collocation", nodes=128), -2.0, 3.0, 101)
    elapsed = time.perf_counter() - start
    ok = r64.max_residual <= 1e-6 and r128.max_residual < r64.max_residual and elapsed < 30.0
    criterion(
        "2 nonlinear identity",
        ok,
        f"N=64 residual {r64.max_residual:.2e} (<= 1e-6), N=128 {r128.max_residual:.2e} (smaller), "
        f"{elapsed:.1f} s (< 30 s)",
    )
    assert ok


def test_criterion_03_bowen_dimension(P_cantor, P24, criterion):
    d_cantor, _ = bowen_dimension(P_cantor)
    d24, trace = bowen_dimension(P24)
    golden = bisect_root(lambda t: math.log(2**-t + 4**-t), 0.0, 1.0)
    err_c = abs(d_cantor - 0.6309297535714574)
    err_g = max(abs(d24 - GOLDEN_D), abs(d24 - golden))
    errs = [abs(t - GOLDEN_D) for t, _ in trace.iterates]
    ratios = [errs[k + 1] / errs[k] ** 2 for k in range(len(errs) - 1) if errs[k] > 1e-9 and errs[k + 1] > 0]
    tail = ratios[-2:]
    quadratic = len(tail) == 2 and max(tail) < 0.2 and max(tail) / min(tail) < 2.0
    ok = err_c <= 1e-12 and err_g <= 1e-12 and quadratic
    criterion(
        "3 Bowen dimension",
        ok,
        f"Cantor err {err_c:.1e}, golden err {err_g:.1e} (<= 1e-12), "
        f"final |e_k+1|/|e_k|^2 = {', '.join(f'{r:.3f}' for r in tail)}",
    )
    assert ok


def test_criterion_04_lemma(P24, Pquad, criterion):
    exp_worst = max(lemma_rel_residual(EXP, a) for a in (0.25, 0.5, 1.0, 2.0, 4.0))
    worst = {}
    for name, ev in (("(2,4)", P24), ("quadratic", Pquad)):
        r = alpha_range(ev)
        alphas = np.linspace(r.alpha_min, r.alpha_max, 102)[1:-1]
        f = ev.as_function()
        worst[name] = max(lemma_rel_residual(f, a) for a in alphas)
    ok = exp_worst <= 1e-10 and all(v <= 1e-10 for v in worst.values())
    criterion(
        "4 Newton-Legendre lemma",
        ok,
        f"exp {exp_worst:.1e}, (2,4) {worst['(2,4)']:.1e}, quadratic {worst['quadratic']:.1e} (<= 1e-10)",
    )
    assert ok


def test_criterion_05_legendre_grid(s24, quad, P24, Pquad, P_cantor, criterion):
    ts = dense_grid()
    errs = {}

    vals = np.exp(-ts) - 0.5
    errs["exp"] = max(
        abs(legendre_transform(EXP, a).F - grid_legendre(vals, ts, a)) for a in (0.25, 0.5, 1.0, 2.0, 4.0)
    )

    # alphas whose tangency point lies well inside the grid window
    vals = affine_pressure_grid(np.array(s24.slopes), ts)
    alphas = [-P24.derivative(t) for t in np.linspace(-15, 15, 21)]
    f = P24.as_function()
    errs["(2,4)"] = max(abs(legendre_transform(f, a).F - grid_legendre(vals, ts, a)) for a in alphas)

    alphas = [-Pquad.derivative(t) for t in np.linspace(-15, 15, 11)]
    refs = windowed_grid_legendre_many(lambda t: eig_pressure_grid(quad, t, N=64), alphas)
    f = Pquad.as_function()
    errs["quadratic"] = max(abs(legendre_transform(f, a).F - r) for a, r in zip(alphas, refs))

    # linear pressure: only alpha = log 3 has a finite transform, equal to P(0)
    vals = affine_pressure_grid(np.array([3.0, 3.0]), ts)
    pt = degenerate_point(P_cantor)
    errs["Cantor"] = abs(pt.L * pt.alpha - grid_legendre(vals, ts, LOG3))

    ok = all(v <= 1e-6 for v in errs.values())
    criterion("5 Legendre vs grid", ok, ", ".join(f"{k} {v:.1e}" for k, v in errs.items()) + " (<= 1e-6)")
    assert ok


def test_criterion_06_spectrum_max(P24, criterion):
    pts = spectrum_curve(P24, steps=1001)
    best = max(pts, key=lambda p: p.L)
    a_d = -P24.derivative(GOLDEN_D)
    spacing = pts[1].alpha - pts[0].alpha
    err = abs(best.L - GOLDEN_D)
    ok = err <= 1e-6 and abs(best.alpha - a_d) <= spacing
    criterion(
        "6 spectrum max = dimension",
        ok,
        f"|max L - d| = {err:.1e} (<= 1e-6), |argmax - (-P'(d))| = {abs(best.alpha - a_d):.1e} "
        f"(<= spacing {spacing:.1e})",
    )
    assert ok


def test_criterion_07_backend_equivalence(cantor, s24, criterion):
    three = validate_system([BranchSpec.affine(0, 0.2), BranchSpec.affine(0.3, 0.7), BranchSpec.affine(0.85, 1.0)])
    ts = np.linspace(-2, 4, 61)
    worst = 0.0
    for sys_ in (cantor, s24, three):
        A = PressureEvaluator(sys_, "analytic")
        for N in (8, 16, 64):
            C = PressureEvaluator(sys_, "collocation", nodes=N)
            worst = max(worst, max(abs(C(t) - A(t)) for t in ts))
    ok = worst <= 1e-10
    criterion("7 backend equivalence", ok, f"max |collocation - analytic| = {worst:.1e} (<= 1e-10)")
    assert ok


def test_criterion_08_pressure_shape(P_cantor, P24, Pquad, criterion):
    ts = np.linspace(-5.0, 5.0, 1001)
    notes = []
    ok = True
    for name, ev in (("Cantor", P_cantor), ("(2,4)", P24), ("quadratic", Pquad)):
        v = np.array([ev(t) for t in ts])
        decreasing = bool(np.all(np.diff(v) < 0))
        # second differences; linear pressure gives round-off sized values
        second = v[:-2] - 2 * v[1:-1] + v[2:]
        slack = 1e-13 * np.maximum(1.0, np.abs(v[1:-1]))
        convex = bool(np.all(second >= -slack))
        ok &= decreasing and convex
        notes.append(f"{name} decreasing={decreasing} convex={convex}")
    criterion("8 pressure shape", ok, ", ".join(notes))
    assert ok


def test_criterion_09_monte_carlo(s24, criterion):
    start = time.perf_counter()
    vals = np.array(sample_lyapunov(s24, (2 / 3, 1 / 3), 10_000, 100, seed=42))
    elapsed = time.perf_counter() - start
    target = 4 / 3 * LOG2
    se = vals.std(ddof=1) / math.sqrt(len(vals))
    z = (vals.mean() - target) / se
    ok = abs(z) <= 3.0 and elapsed < 5.0
    criterion(
        "9 Monte Carlo exponent",
        ok,
        f"mean {vals.mean():.7f} vs {target:.7f}, z = {z:+.2f} (|z| <= 3), {elapsed:.2f} s (< 5 s)",
    )
    assert ok


def test_criterion_10_degenerate(P_cantor, criterion):
    pts = spectrum_curve(P_cantor)
    one = len(pts) == 1
    point_ok = one and abs(pts[0].alpha - LOG3) <= 1e-15 and abs(pts[0].L - LOG2 / LOG3) <= 1e-15
    with pytest.raises(DegeneratePressure):
        verify_identity(P_cantor)
    err = io.StringIO()
    code = main(["verify", str(CONFIGS / "cantor.json")], out=io.StringIO(), err=err)
    ok = point_ok and code == EXIT_COMPUTE and "DegeneratePressure" in err.getvalue()
    criterion(
        "10 degenerate handling",
        ok,
        f"{len(pts)} spectrum point(s) at ({pts[0].alpha:.16g}, {pts[0].L:.16g}), verify exit {code}",
    )
    assert ok

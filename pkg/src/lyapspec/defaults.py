"""Single table of numerical defaults shared by the library, CLI and tests."""

DEFAULTS = {
    # pressure
    "nodes": 64,
    "power_iter_tol": 1e-13,
    "power_iter_max": 10_000,
    "power_iter_patience": 100,
    "diff_step": 1e-3,
    # analysis
    "newton_tol": 1e-13,
    "newton_max_iter": 100,
    "newton_t0": 1.0,
    "bisect_tol": 1e-12,
    "bracket_limit": 1e3,
    # spectrum
    "alpha_cap": 60.0,
    "margin": 1e-3,
    "spectrum_steps": 101,
    "identity_tol_analytic": 1e-10,
    "identity_tol_collocation": 1e-6,
    "t_min": -2.0,
    "t_max": 3.0,
    "t_steps": 101,
    # sampling
    "sample_t": 1.0,
    "path_length": 10_000,
    "paths": 100,
    "seed": 42,
}

NODES = DEFAULTS["nodes"]
POWER_ITER_TOL = DEFAULTS["power_iter_tol"]
POWER_ITER_MAX = DEFAULTS["power_iter_max"]
DIFF_STEP = DEFAULTS["diff_step"]
NEWTON_TOL = DEFAULTS["newton_tol"]
NEWTON_MAX_ITER = DEFAULTS["newton_max_iter"]
BISECT_TOL = DEFAULTS["bisect_tol"]
BRACKET_LIMIT = DEFAULTS["bracket_limit"]
ALPHA_CAP = DEFAULTS["alpha_cap"]
MARGIN = DEFAULTS["margin"]

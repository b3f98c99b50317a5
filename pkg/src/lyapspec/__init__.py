"""Pressure, Bowen dimension and Lyapunov spectrum of cookie-cutter maps."""
from .analysis import (
    ConvexFunction,
    LegendreResult,
    NewtonTrace,
    bowen_dimension,
    legendre_transform,
    lemma_rel_residual,
    newton_derivative,
    newton_map,
    newton_solve,
    solve_t_alpha,
)
from .pressure import (
    Backend,
    EquilibriumWeights,
    PressureEvaluator,
    equilibrium_weights,
    leading_eigenvalue,
    pressure,
    pressure_derivative,
    transfer_matrix,
)
from .spectrum import (
    AlphaRange,
    IdentityReport,
    SpectrumPoint,
    alpha_range,
    equilibrium_entropy,
    lyapunov_spectrum,
    spectrum_curve,
    verify_identity,
)
from .system import (
    BranchKind,
    BranchSpec,
    CookieCutterSystem,
    SymbolicWord,
    birkhoff_lyapunov,
    cylinder,
    derivative,
    forward,
    sample_lyapunov,
    validate_system,
)

__version__ = "0.1.0"

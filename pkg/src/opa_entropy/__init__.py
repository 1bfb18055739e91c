"""Output entropy of a two-mode squeezer fed with Fock states and
vacuum-Fock superpositions: replica-method closed forms and a truncated
Fock-space oracle."""

from .core import (
    CapacityError,
    ConvergenceError,
    DomainError,
    EntropyResult,
    FockSuperposition,
    NumericalError,
    SqueezeParams,
    VacuumFockInput,
    g_function,
    make_squeeze_params,
)
from .replica import (
    MomentSequence,
    fock_entropy,
    fock_moment,
    superposition_entropy,
    superposition_moment_closed,
    thermal_entropy,
    thermal_moment,
)
from .oracle import (
    amplify,
    extract_f,
    hausdorff_check,
    output_spectrum,
    reduce_and_diagonalize,
    spectral_entropy,
    spectral_moments,
)

__all__ = [
    "CapacityError",
    "ConvergenceError",
    "DomainError",
    "EntropyResult",
    "FockSuperposition",
    "MomentSequence",
    "NumericalError",
    "SqueezeParams",
    "VacuumFockInput",
    "amplify",
    "extract_f",
    "fock_entropy",
    "fock_moment",
    "g_function",
    "hausdorff_check",
    "make_squeeze_params",
    "output_spectrum",
    "reduce_and_diagonalize",
    "spectral_entropy",
    "spectral_moments",
    "superposition_entropy",
    "superposition_moment_closed",
    "thermal_entropy",
    "thermal_moment",
]

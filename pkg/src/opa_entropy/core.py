"""Domain types shared by every module: squeezer parameters, input states and
entropy results.

All entropies are in nats.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np


class DomainError(ValueError):
    """Raised when an argument lies outside the domain of an operation."""


class ConvergenceError(ArithmeticError):
    """Raised when a series or truncation fails to reach its target accuracy."""


class CapacityError(RuntimeError):
    """Raised when a resource cap (basis cutoff, term count) is exhausted."""


class NumericalError(ArithmeticError):
    """Raised when a computed quantity is inconsistent beyond roundoff."""


@dataclass(frozen=True)
class SqueezeParams:
    """Two-mode squeezer with complex parameter ``xi = |xi| exp(i phase)``.

    Derived quantities follow the factorized (normal-ordered) form of the
    squeezer, ``tau = exp(i phase) tanh|xi|``. Only ``|tau|`` enters any
    entropy, so the phase is kept for the oracle expansion alone.

    Attributes
    ----------
    xi_magnitude : float
        Squeezing magnitude ``|xi| >= 0``.
    phase : float
        Squeezing phase, reduced to ``[0, 2 pi)``.
    """

    xi_magnitude: float
    phase: float = 0.0
    tau: complex = field(init=False)
    tau_sq: float = field(init=False)
    nu: float = field(init=False)
    gain: float = field(init=False)
    mean_photons: float = field(init=False)

    def __post_init__(self):
        r = float(self.xi_magnitude)
        phi = float(self.phase)
        if not math.isfinite(r) or r < 0:
            raise DomainError(f"xi_magnitude must be finite and >= 0, got {self.xi_magnitude!r}")
        if not math.isfinite(phi):
            raise DomainError(f"phase must be finite, got {self.phase!r}")
        phi = phi % (2 * math.pi)
        th = math.tanh(r)
        sh = math.sinh(r)
        object.__setattr__(self, "xi_magnitude", r)
        object.__setattr__(self, "phase", phi)
        object.__setattr__(self, "tau", cmath.rect(th, phi) if r > 0 else 0j)
        object.__setattr__(self, "tau_sq", th * th)
        # log(cosh r) without overflow for large r
        object.__setattr__(self, "nu", r + math.log1p(math.exp(-2 * r)) - math.log(2.0))
        object.__setattr__(self, "gain", math.cosh(r) ** 2)
        object.__setattr__(self, "mean_photons", sh * sh)

    @classmethod
    def from_gain(cls, gain: float, phase: float = 0.0) -> "SqueezeParams":
        """Parameters for an amplifier of intensity gain ``cosh^2|xi| >= 1``."""
        if not gain >= 1.0:
            raise DomainError(f"gain must be >= 1, got {gain!r}")
        return cls(math.acosh(math.sqrt(gain)), phase)

    @classmethod
    def from_mean_photons(cls, n: float, phase: float = 0.0) -> "SqueezeParams":
        """Parameters producing a thermal signal with ``n`` mean photons."""
        if not n >= 0.0:
            raise DomainError(f"mean photon number must be >= 0, got {n!r}")
        return cls(math.asinh(math.sqrt(n)), phase)


def make_squeeze_params(xi_magnitude: float, phase: float = 0.0) -> SqueezeParams:
    return SqueezeParams(xi_magnitude, phase)


def g_function(n: float) -> float:
    """Entropy of a thermal state with mean photon number ``n``.

    ``g(n) = (n + 1) ln(n + 1) - n ln n`` with ``g(0) = 0``.
    """
    n = float(n)
    if not n >= 0.0 or math.isinf(n):
        raise DomainError(f"g_function requires finite n >= 0, got {n!r}")
    if n == 0.0:
        return 0.0
    return (n + 1.0) * math.log1p(n) - n * math.log(n)


@dataclass(frozen=True)
class FockSuperposition:
    """Normalized pure state ``sum_j c_j |j>`` over finitely many Fock states.

    Parameters
    ----------
    coefficients : sequence of (int, complex)
        Fock index and amplitude pairs with strictly increasing indices. The
        constructor rescales to unit norm.
    norm_tolerance : float
        Allowed deviation of the stored norm from one.
    """

    coefficients: tuple
    norm_tolerance: float = 1e-12

    def __post_init__(self):
        pairs = tuple((int(j), complex(c)) for j, c in self.coefficients)
        if not pairs:
            raise DomainError("superposition needs at least one component")
        idx = [j for j, _ in pairs]
        if idx[0] < 0 or any(b <= a for a, b in zip(idx, idx[1:])):
            raise DomainError(f"Fock indices must be nonnegative and strictly increasing, got {idx}")
        norm = math.sqrt(math.fsum(abs(c) ** 2 for _, c in pairs))
        if norm == 0.0 or not math.isfinite(norm):
            raise DomainError("superposition has zero or non-finite norm")
        pairs = tuple((j, c / norm) for j, c in pairs)
        # drop components that are exactly zero so that z = 0 gives the vacuum
        pairs = tuple((j, c) for j, c in pairs if c != 0)
        object.__setattr__(self, "coefficients", pairs)
        resid = abs(math.fsum(abs(c) ** 2 for _, c in pairs) - 1.0)
        if resid > self.norm_tolerance:
            raise NumericalError(f"normalization residual {resid:.3e} exceeds tolerance")

    @classmethod
    def fock(cls, m: int) -> "FockSuperposition":
        return cls(((m, 1.0),))

    @property
    def indices(self) -> np.ndarray:
        return np.array([j for j, _ in self.coefficients], dtype=int)

    @property
    def amplitudes(self) -> np.ndarray:
        return np.array([c for _, c in self.coefficients], dtype=complex)


@dataclass(frozen=True)
class VacuumFockInput:
    """The input ``(|0> + z|m>) / sqrt(1 + z^2)`` with real ``z >= 0``."""

    m: int
    z: float

    def __post_init__(self):
        if isinstance(self.z, complex):
            raise DomainError("z must be real; its phase does not affect any entropy")
        if int(self.m) != self.m or self.m < 1:
            raise DomainError(f"m must be a positive integer, got {self.m!r}")
        z = float(self.z)
        if not math.isfinite(z) or z < 0:
            raise DomainError(f"z must be finite and >= 0, got {self.z!r}")
        object.__setattr__(self, "m", int(self.m))
        object.__setattr__(self, "z", z)

    @property
    def weights(self) -> tuple[float, float]:
        """Probabilities ``(1/(1+z^2), z^2/(1+z^2))`` of vacuum and ``|m>``."""
        z2 = self.z * self.z
        return 1.0 / (1.0 + z2), z2 / (1.0 + z2)

    def c(self, params: SqueezeParams) -> float:
        """Source-coupling constant ``z (1 - |tau|^2)^(m/2) / sqrt(m!)``."""
        return self.z * (1.0 - params.tau_sq) ** (self.m / 2) / math.sqrt(math.factorial(self.m))

    def to_superposition(self) -> FockSuperposition:
        s = math.sqrt(1.0 + self.z * self.z)
        return FockSuperposition(((0, 1.0 / s), (self.m, self.z / s)))


CLOSED_FORM = "closed_form"
ORACLE_SPECTRUM = "oracle_spectrum"
MOMENT_DERIVATIVE = "moment_derivative"


@dataclass(frozen=True)
class EntropyResult:
    """Von Neumann entropy in nats with its provenance."""

    value: float
    method: str
    truncation: Optional[int] = None
    error_estimate: float = 0.0

    def __post_init__(self):
        if self.method not in (CLOSED_FORM, ORACLE_SPECTRUM, MOMENT_DERIVATIVE):
            raise DomainError(f"unknown method tag {self.method!r}")
        if self.error_estimate < 0:
            raise DomainError("error_estimate must be >= 0")
        # roundoff below zero (e.g. finite differences of a pure state)
        if -1e-9 < self.value < 0:
            object.__setattr__(self, "value", 0.0)
        elif not self.value >= 0:
            raise NumericalError(f"negative entropy {self.value!r}")

    def __float__(self):
        return float(self.value)

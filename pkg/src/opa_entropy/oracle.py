"""Truncated Fock-space ground truth for the amplifier output.

The squeezer acts on ``|j>_signal |0>_idler`` as

    U|j, 0> = (1 - t)^((j+1)/2) sum_k (-tau)^k sqrt(C(j+k, k)) |j+k, k>,

which follows from the normal-ordered factorization of ``U``. For a finite
input superposition the joint output is assembled component by component,
the idler is traced out, and the signal state is diagonalized densely.
Components with different Fock indices never share a (signal, idler) pair,
so the probability lost to the idler cutoff is known exactly from negative
binomial tails.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np
from scipy import stats

from .core import (
    MOMENT_DERIVATIVE,
    ORACLE_SPECTRUM,
    CapacityError,
    DomainError,
    EntropyResult,
    FockSuperposition,
    NumericalError,
    SqueezeParams,
    VacuumFockInput,
)
from .replica import ORACLE, MomentSequence, known_moment_terms, thermal_moment
from .specfun import log_binomial

DEFAULT_DEFICIT_TARGET = 1e-12
MAX_IDLER_CUTOFF = 2**16
CLAMP_FLOOR = -1e-10


@dataclass(frozen=True)
class JointOutput:
    """Two-mode output amplitudes ``amplitudes[signal, idler]``."""

    amplitudes: np.ndarray
    trace_deficit: float
    idler_cutoff: int

    @property
    def norm_sq(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues of a reduced signal state, largest first."""

    eigenvalues: np.ndarray
    truncation_dim: int
    trace_deficit: float
    clamped_count: int = 0


@dataclass(frozen=True)
class FExtraction:
    m: int
    n: int
    z: float
    tau_sq: float
    f_value: float


def _as_superposition(state) -> FockSuperposition:
    if isinstance(state, VacuumFockInput):
        return state.to_superposition()
    if isinstance(state, FockSuperposition):
        return state
    if isinstance(state, int):
        return FockSuperposition.fock(state)
    raise DomainError(f"cannot interpret {state!r} as an input state")


def _tail_probability(t: float, j: int, cutoff: int) -> float:
    """Probability that idler index ``k >= cutoff`` for input ``|j>``."""
    if t == 0.0:
        return 0.0
    # idler photon count is negative binomial with j+1 successes, p = 1 - t
    return float(stats.nbinom.sf(cutoff - 1, j + 1, 1.0 - t))


def _deficit(params: SqueezeParams, sup: FockSuperposition, cutoff: int) -> float:
    t = params.tau_sq
    return math.fsum(abs(c) ** 2 * _tail_probability(t, j, cutoff) for j, c in sup.coefficients)


def _joint_amplitudes(params: SqueezeParams, sup: FockSuperposition, cutoff: int) -> np.ndarray:
    t = params.tau_sq
    jmax = int(sup.indices[-1])
    amps = np.zeros((jmax + cutoff, cutoff), dtype=complex)
    k = np.arange(cutoff)
    if t == 0.0:
        for j, c in sup.coefficients:
            amps[j, 0] += c
        return amps
    l1, lt = math.log1p(-t), math.log(t)
    # (-tau)^k = |tau|^k * (-e^{i phi})^k
    phase = (-np.exp(1j * params.phase)) ** k
    for j, c in sup.coefficients:
        logb = np.array([log_binomial(int(kk), j) for kk in k])
        mod = np.exp(0.5 * ((j + 1) * l1 + k * lt + logb))
        amps[j + k, k] += c * mod * phase
    return amps


def amplify(
    params: SqueezeParams,
    state: Union[FockSuperposition, VacuumFockInput, int],
    trace_deficit_target: float = DEFAULT_DEFICIT_TARGET,
    initial_cutoff: int = 32,
    max_cutoff: int = MAX_IDLER_CUTOFF,
) -> JointOutput:
    """Apply the two-mode squeezer to ``state`` (signal) and vacuum (idler).

    The idler cutoff is doubled from ``initial_cutoff`` until the discarded
    probability is at most ``trace_deficit_target``.

    Raises
    ------
    CapacityError
        If the cutoff would exceed ``max_cutoff``.
    """
    if not 0.0 < trace_deficit_target <= 1e-6:
        raise DomainError(f"trace_deficit_target must lie in (0, 1e-6], got {trace_deficit_target!r}")
    sup = _as_superposition(state)
    cutoff = max(1, int(initial_cutoff))
    while True:
        deficit = _deficit(params, sup, cutoff)
        if deficit <= trace_deficit_target:
            break
        if cutoff * 2 > max_cutoff:
            raise CapacityError(
                f"idler cutoff {cutoff} leaves deficit {deficit:.3e} > {trace_deficit_target:.1e} "
                f"and the cap is {max_cutoff}"
            )
        cutoff *= 2
    return JointOutput(_joint_amplitudes(params, sup, cutoff), deficit, cutoff)


def reduced_density_matrix(joint: JointOutput) -> np.ndarray:
    a = joint.amplitudes
    return a @ a.conj().T


def reduce_and_diagonalize(joint: JointOutput) -> SpectralDecomposition:
    """Trace out the idler and return the signal spectrum.

    Raises
    ------
    NumericalError
        If an eigenvalue lies below ``-1e-10``; that cannot come from
        roundoff in a positive semidefinite matrix of unit trace.
    """
    rho = reduced_density_matrix(joint)
    w = np.linalg.eigvalsh(rho)
    if w[0] < CLAMP_FLOOR:
        raise NumericalError(f"reduced state has eigenvalue {w[0]:.3e} < {CLAMP_FLOOR:.0e}")
    negative = w < 0
    w = np.where(negative, 0.0, w)
    return SpectralDecomposition(w[::-1].copy(), rho.shape[0], joint.trace_deficit, int(negative.sum()))


def output_spectrum(
    params: SqueezeParams,
    state: Union[FockSuperposition, VacuumFockInput, int],
    trace_deficit_target: float = DEFAULT_DEFICIT_TARGET,
) -> SpectralDecomposition:
    return reduce_and_diagonalize(amplify(params, state, trace_deficit_target))


def spectral_entropy(spec: SpectralDecomposition) -> EntropyResult:
    """``-sum lambda ln lambda`` with ``0 ln 0 = 0``.

    The error estimate is the largest entropy the missing probability could
    carry if spread evenly over ``truncation_dim`` levels.
    """
    lam = spec.eigenvalues
    lam = np.sort(lam[lam > 0])
    value = -math.fsum(lam * np.log(lam))
    d = spec.trace_deficit
    err = -d * math.log(d / spec.truncation_dim) if d > 0 else 0.0
    return EntropyResult(max(value, 0.0), ORACLE_SPECTRUM, spec.truncation_dim, err)


def spectral_moment(spec: SpectralDecomposition, n: float) -> float:
    """``sum lambda^n``, smallest terms first; ``n`` may be real."""
    lam = np.sort(spec.eigenvalues[spec.eigenvalues > 0])
    return math.fsum(lam**n)


def spectral_moments(spec: SpectralDecomposition, n_max: int) -> MomentSequence:
    if n_max < 1:
        raise DomainError(f"n_max must be >= 1, got {n_max!r}")
    orders = tuple(range(1, n_max + 1))
    return MomentSequence(orders, tuple(spectral_moment(spec, n) for n in orders), ORACLE)


def replica_entropy(spec: SpectralDecomposition, step: float = 1e-5) -> EntropyResult:
    """Entropy as ``-d/dn tr(rho^n)`` at ``n = 1`` by central difference,
    continuing the moments to real ``n`` through the spectrum."""
    slope = (spectral_moment(spec, 1 + step) - spectral_moment(spec, 1 - step)) / (2 * step)
    return EntropyResult(-slope, MOMENT_DERIVATIVE, spec.truncation_dim, step**2)


@dataclass(frozen=True)
class HausdorffReport:
    passed: bool
    witness: Optional[tuple]
    worst_ratio: float

    def __bool__(self):
        return self.passed


def hausdorff_check(moments: MomentSequence, k_max: int, n_max: Optional[int] = None,
                    rel_tol: float = 1e-12) -> HausdorffReport:
    """Check ``(-1)^k (Delta^k m)_n >= -rel_tol * m_n``.

    ``(-1)^k (Delta^k m)_n = sum_j (-1)^j C(k, j) m_{n+j}``; for a spectrum in
    ``[0, 1]`` it equals ``sum_i lambda_i^n (1 - lambda_i)^k``. Every ``n``
    with ``n + k_max`` available is tested unless ``n_max`` is given. The
    witness is the first failing ``(n, k)``.
    """
    m = moments.as_dict()
    top = max(m)
    if n_max is None:
        n_max = top - k_max
    if n_max < 1 or n_max + k_max > top:
        raise DomainError(f"need moments up to n + k = {n_max + k_max}, have {top}")
    worst = -math.inf
    for n in range(1, n_max + 1):
        for k in range(0, k_max + 1):
            diff = math.fsum((-1) ** j * math.comb(k, j) * m[n + j] for j in range(k + 1))
            scale = abs(m[n])
            ratio = -diff / scale if scale > 0 else -diff
            worst = max(worst, ratio)
            if diff < -rel_tol * scale:
                return HausdorffReport(False, (n, k), worst)
    return HausdorffReport(True, None, worst)


def extract_f(
    params: SqueezeParams,
    state: VacuumFockInput,
    n: int,
    spec: Optional[SpectralDecomposition] = None,
) -> FExtraction:
    """Residual ``F^(m)(n)`` of the superposition moment, solved for from the
    oracle ``tr(rho^n)`` with the explicit terms subtracted."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n!r}")
    if spec is None:
        spec = output_spectrum(params, state)
    z2 = state.z * state.z
    scaled = spectral_moment(spec, n) * (1.0 + z2) ** n / thermal_moment(params, n)
    f = scaled - known_moment_terms(params, state, n)
    return FExtraction(state.m, n, state.z, params.tau_sq, f)


def f_slope_at_one(
    params: SqueezeParams,
    state: VacuumFockInput,
    step: float = 1e-5,
    spec: Optional[SpectralDecomposition] = None,
) -> float:
    """Central-difference slope of the residual ``F^(m)(n)`` at ``n = 1``,
    every term continued to real ``n``."""
    if spec is None:
        spec = output_spectrum(params, state)
    z2 = state.z * state.z

    def residual(n):
        scaled = spectral_moment(spec, n) * (1.0 + z2) ** n / thermal_moment(params, n)
        return scaled - known_moment_terms(params, state, n)

    return (residual(1 + step) - residual(1 - step)) / (2 * step)

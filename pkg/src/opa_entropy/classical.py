"""Replica-method entropies for two classical distributions.

For a density or mass function ``P`` the moments ``m_n = sum P^n`` (or
``int P^n``) give the Shannon entropy as ``-dm_n/dn`` at ``n = 1``. The
Gaussian moments are those of a density, which can exceed one, so they are
not a Hausdorff sequence and are never fed to
:func:`opa_entropy.oracle.hausdorff_check`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .core import ConvergenceError, DomainError
from .replica import CLOSED, MomentSequence

POISSON_REL_TOL = 1e-18
POISSON_MAX_TERMS = 500


@dataclass(frozen=True)
class ClassicalMoments:
    family: str
    parameter: float
    moment_fn: Callable[[float], float]

    def __call__(self, n: float) -> float:
        return self.moment_fn(n)

    def sequence(self, n_max: int) -> MomentSequence:
        orders = tuple(range(1, n_max + 1))
        return MomentSequence(orders, tuple(self.moment_fn(n) for n in orders), CLOSED)

    def replica_entropy(self, step: float = 1e-5) -> float:
        """``-dm_n/dn`` at ``n = 1`` by central difference."""
        return -(self.moment_fn(1 + step) - self.moment_fn(1 - step)) / (2 * step)


def _check_sigma(sigma):
    if not sigma > 0 or not math.isfinite(sigma):
        raise DomainError(f"sigma must be positive and finite, got {sigma!r}")


def _check_lambda(lam):
    if not lam > 0 or not math.isfinite(lam):
        raise DomainError(f"lambda must be positive and finite, got {lam!r}")


def gaussian_moments(sigma: float) -> ClassicalMoments:
    """``int P^n dx = (2 pi)^(-(n-1)/2) n^(-1/2) sigma^(-(n-1))``."""
    _check_sigma(sigma)

    def moment(n):
        return math.exp(-0.5 * (n - 1) * math.log(2 * math.pi) - 0.5 * math.log(n) - (n - 1) * math.log(sigma))

    return ClassicalMoments("gaussian", sigma, moment)


def gaussian_entropy_replica(sigma: float) -> float:
    """Differential entropy ``(1/2) ln(2 pi e sigma^2)`` from the moment
    derivative, evaluated analytically."""
    _check_sigma(sigma)
    # d/dn of ln m_n at n = 1 is -ln(2 pi)/2 - 1/2 - ln sigma, and m_1 = 1
    return 0.5 * math.log(2 * math.pi) + 0.5 + math.log(sigma)


def _poisson_log_pmf(lam: float, k: int) -> float:
    return k * math.log(lam) - lam - math.lgamma(k + 1)


def _poisson_sum(lam: float, f) -> float:
    """``sum_k f(k, log p_k)`` truncated past the mode once terms are
    negligible."""
    terms = []
    partial = 0.0
    mode = int(lam)
    for k in range(POISSON_MAX_TERMS):
        term = f(k, _poisson_log_pmf(lam, k))
        terms.append(term)
        partial += abs(term)
        if k > mode and abs(term) < POISSON_REL_TOL * partial:
            return math.fsum(terms)
    raise ConvergenceError(f"Poisson series at lambda={lam} did not converge in {POISSON_MAX_TERMS} terms")


def poisson_moments(lam: float) -> ClassicalMoments:
    """``m_n = sum_k lambda^(nk) e^(-n lambda) / k!^n``."""
    _check_lambda(lam)
    return ClassicalMoments("poisson", lam, lambda n: _poisson_sum(lam, lambda k, lp: math.exp(n * lp)))


def poisson_entropy_series(lam: float) -> float:
    """``lambda (1 - ln lambda) + e^(-lambda) sum_k lambda^k/k! ln k!``."""
    _check_lambda(lam)
    tail = _poisson_sum(lam, lambda k, lp: math.exp(lp) * math.lgamma(k + 1))
    return lam * (1.0 - math.log(lam)) + tail


def poisson_entropy_derivative(lam: float) -> float:
    """``-dm_n/dn`` at ``n = 1`` differentiated term by term, which is
    ``-sum_k p_k ln p_k``."""
    _check_lambda(lam)
    return -_poisson_sum(lam, lambda k, lp: math.exp(lp) * lp)


def poisson_entropy_replica(lam: float) -> float:
    return poisson_entropy_series(lam)

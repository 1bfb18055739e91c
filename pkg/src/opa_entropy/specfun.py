"""Special functions for the amplified-Fock closed forms.

The generalized polylogarithm used throughout is

    Li^(m)_{-n}(zeta) = sum_{k>=0} C(k+m, k)^n zeta^(k+1),

which reduces to the ordinary polylogarithm of order ``-n`` at ``m = 1`` and
to ``zeta / (1 - zeta)`` at ``m = 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import ConvergenceError, DomainError

DEFAULT_REL_TOL = 1e-14
DEFAULT_MAX_TERMS = 10**6

# ln(2**62); binomials below this are formed exactly as integers
_EXACT_LOG_LIMIT = 62 * math.log(2.0)


@dataclass(frozen=True)
class SeriesEvaluation:
    """Truncated sum of a positive-ratio series.

    ``tail_bound`` bounds the absolute value of the omitted terms whenever
    ``converged`` is true.
    """

    value: float
    terms_used: int
    converged: bool
    tail_bound: float

    def __float__(self):
        return float(self.value)


def _log_binomial_gamma(k: int, m: int) -> float:
    return math.lgamma(k + m + 1) - math.lgamma(k + 1) - math.lgamma(m + 1)


def _log_binomial_exact(k: int, m: int) -> float:
    return math.log(math.comb(k + m, k))


def log_binomial(k: int, m: int) -> float:
    """``ln C(k + m, k)`` for nonnegative integers.

    Binomials that fit in 62 bits are built exactly and then logged; larger
    ones go through ``lgamma``.
    """
    if k < 0 or m < 0:
        raise DomainError(f"log_binomial needs k, m >= 0, got ({k}, {m})")
    if min(k, m) == 0:
        return 0.0
    if _log_binomial_gamma(k, m) < _EXACT_LOG_LIMIT - 1.0:
        return _log_binomial_exact(k, m)
    return _log_binomial_gamma(k, m)


def eulerian_number(n: int, k: int) -> int:
    """Eulerian number ``E(n, k)``: permutations of ``n`` with ``k`` ascents.

    Exact integer arithmetic, so there is no overflow limit.
    """
    if n < 1 or k < 0 or k >= n:
        raise DomainError(f"eulerian_number needs 0 <= k < n, got (n={n}, k={k})")
    return sum((-1) ** j * math.comb(n + 1, j) * (k - j + 1) ** n for j in range(k + 1))


def _check_zeta(zeta: float) -> float:
    zeta = float(zeta)
    if not 0.0 <= zeta < 1.0:
        raise DomainError(f"zeta must lie in [0, 1), got {zeta!r}")
    return zeta


def _check_order(m: int) -> int:
    if int(m) != m or m < 0:
        raise DomainError(f"m must be a nonnegative integer, got {m!r}")
    return int(m)


def polylog_general(
    m: int,
    n: float,
    zeta: float,
    rel_tol: float = DEFAULT_REL_TOL,
    max_terms: int = DEFAULT_MAX_TERMS,
) -> SeriesEvaluation:
    """Generalized polylogarithm ``Li^(m)_{-n}(zeta)`` by direct summation.

    Terms are formed in log space. Once the term ratio
    ``r = ((k+1+m)/(k+1))^n zeta`` has dropped below one it keeps decreasing
    in ``k``, so ``term * r / (1 - r)`` bounds the remaining tail; summation
    stops when that bound falls below ``rel_tol`` times the partial sum.

    ``n`` may be any positive real; the series is the natural continuation
    in the order.
    """
    m = _check_order(m)
    zeta = _check_zeta(zeta)
    if not n > 0:
        raise DomainError(f"order n must be positive, got {n!r}")
    if zeta == 0.0:
        return SeriesEvaluation(0.0, 0, True, 0.0)
    lz = math.log(zeta)
    terms = []
    partial = 0.0
    for k in range(max_terms):
        term = math.exp(n * log_binomial(k, m) + (k + 1) * lz)
        terms.append(term)
        partial += term
        r = ((k + 1 + m) / (k + 1)) ** n * zeta
        if r < 1.0 and term * r / (1.0 - r) < rel_tol * partial:
            return SeriesEvaluation(math.fsum(terms), k + 1, True, term * r / (1.0 - r))
    return SeriesEvaluation(math.fsum(terms), max_terms, False, math.inf)


def polylog_m1_closed(n: int, zeta: float) -> float:
    """``Li^(1)_{-n}(zeta)`` through the Eulerian polynomial of degree ``n``."""
    if int(n) != n or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    zeta = _check_zeta(zeta)
    n = int(n)
    poly = math.fsum(eulerian_number(n, k) * zeta ** (k + 1) for k in range(n))
    return poly / (1.0 - zeta) ** (n + 1)


def polylog_dn_total(
    m: int,
    tau_sq: float,
    rel_tol: float = DEFAULT_REL_TOL,
    max_terms: int = DEFAULT_MAX_TERMS,
) -> SeriesEvaluation:
    """Total derivative ``d/dn Li^(m)_{-n}(t^n)`` at ``n = 1``.

    The order and the argument both move with ``n``; differentiating term by
    term gives ``sum_k C(k+m,k) t^(k+1) [ln C(k+m,k) + (k+1) ln t]``.
    """
    m = _check_order(m)
    t = _check_zeta(tau_sq)
    if t == 0.0:
        return SeriesEvaluation(0.0, 0, True, 0.0)
    lt = math.log(t)
    terms = []
    mag = 0.0
    for k in range(max_terms):
        lc = log_binomial(k, m)
        weight = math.exp(lc + (k + 1) * lt)
        bracket = lc + (k + 1) * lt
        terms.append(weight * bracket)
        mag += abs(weight * bracket)
        r = (k + 1 + m) / (k + 1) * t
        if r < 1.0:
            # the bracket grows by at most |ln t| + m/(k+1) per step
            slope = -lt + m / (k + 1)
            tail = weight * (abs(bracket) * r / (1.0 - r) + slope * r / (1.0 - r) ** 2)
            if tail < rel_tol * mag:
                return SeriesEvaluation(math.fsum(terms), k + 1, True, tail)
    return SeriesEvaluation(math.fsum(terms), max_terms, False, math.inf)


def require_converged(ev: SeriesEvaluation, what: str) -> SeriesEvaluation:
    if not ev.converged:
        raise ConvergenceError(f"{what}: series did not converge within {ev.terms_used} terms")
    return ev

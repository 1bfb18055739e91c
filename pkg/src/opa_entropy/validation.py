"""Closed form versus oracle consistency suites, as run by ``opa-entropy validate``."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from . import classical, oracle, replica, specfun
from .core import SqueezeParams, VacuumFockInput, g_function


@dataclass
class SuiteResult:
    name: str
    passed: bool
    max_discrepancy: float
    witness: Optional[str] = None

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"{status} {self.name:<18} max discrepancy {self.max_discrepancy:.3e}"
        if self.witness:
            text += f"  witness: {self.witness}"
        return text


class _Tracker:
    """Records the worst discrepancy and the first case over tolerance."""

    def __init__(self, name):
        self.name = name
        self.worst = 0.0
        self.witness = None

    def check(self, discrepancy: float, tol: float, case: str):
        if not math.isfinite(discrepancy):
            discrepancy = math.inf
        self.worst = max(self.worst, discrepancy)
        if discrepancy > tol and self.witness is None:
            self.witness = f"{case} discrepancy {discrepancy:.3e} > tol {tol:.0e}"

    def result(self) -> SuiteResult:
        return SuiteResult(self.name, self.witness is None, self.worst, self.witness)


@dataclass(frozen=True)
class Grid:
    ms: tuple
    xis: tuple
    zs: tuple
    n_max: int
    t_values: tuple


GRIDS = {
    "small": Grid(ms=(1, 2, 3), xis=(0.3, 1.0), zs=(0.5, 2.0), n_max=4, t_values=(0.1, 0.5, 0.9)),
    "full": Grid(
        ms=(1, 2, 3, 4, 5),
        xis=(0.3, 0.8, 1.2, 1.5),
        zs=(0.25, 0.5, 1.0, 2.0, 4.0, 10.0),
        n_max=6,
        t_values=(0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9),
    ),
}


def _params_from_t(t):
    return SqueezeParams(math.atanh(math.sqrt(t)))


def suite_thermal(grid: Grid, rng) -> SuiteResult:
    tr = _Tracker("thermal")
    ts = list(grid.t_values) + [float(rng.uniform(0.05, 0.95))]
    for t in ts:
        p = _params_from_t(t)
        spec = oracle.output_spectrum(p, 0)
        for n in range(1, 9):
            closed = replica.thermal_moment(p, n)
            tr.check(abs(closed - oracle.spectral_moment(spec, n)) / closed, 1e-12, f"t={t:.3g} n={n}")
        s = replica.thermal_entropy(p).value
        tr.check(abs(s - g_function(p.mean_photons)), 1e-13, f"t={t:.3g} entropy vs g(N)")
    return tr.result()


def suite_fock_spectra(grid: Grid, rng) -> SuiteResult:
    tr = _Tracker("fock_spectra")
    for m in (0,) + grid.ms:
        for xi in grid.xis:
            p = SqueezeParams(xi)
            spec = oracle.output_spectrum(p, m)
            # p_k rises then falls in k, so compare as sorted lists
            expected = np.sort(replica.fock_spectrum(p, m, spec.truncation_dim - m))[::-1]
            got = spec.eigenvalues[: expected.size]
            tr.check(float(np.max(np.abs(got - expected))), 1e-11, f"m={m} xi={xi}")
    return tr.result()


def suite_moments(grid: Grid, rng) -> SuiteResult:
    tr = _Tracker("moments")
    for m in grid.ms:
        for xi in grid.xis:
            p = SqueezeParams(xi)
            spec = oracle.output_spectrum(p, m)
            for n in range(1, grid.n_max + 1):
                got = oracle.spectral_moment(spec, n)
                closed = replica.fock_moment(p, m, n)
                tr.check(abs(closed - got) / abs(got), 1e-10, f"m={m} xi={xi} n={n}")
    return tr.result()


def suite_fock_entropy(grid: Grid, rng) -> SuiteResult:
    tr = _Tracker("fock_entropy")
    for m in grid.ms:
        for xi in grid.xis:
            p = SqueezeParams(xi)
            a = replica.fock_entropy(p, m).value
            b = replica.fock_entropy_polylog(p, m).value
            tr.check(abs(a - b), 1e-10, f"m={m} xi={xi} series vs polylog")
            s = oracle.spectral_entropy(oracle.output_spectrum(p, m)).value
            tr.check(abs(a - s), 1e-8, f"m={m} xi={xi} closed vs oracle")
    return tr.result()


def suite_convex_law(grid: Grid, rng) -> SuiteResult:
    tr = _Tracker("convex_law")
    for m in grid.ms:
        for xi in grid.xis:
            p = SqueezeParams(xi)
            for z in grid.zs:
                st = VacuumFockInput(m, z)
                so = oracle.spectral_entropy(oracle.output_spectrum(p, st))
                sc = replica.superposition_entropy(p, st)
                tol = 1e-8 + so.error_estimate + sc.error_estimate
                tr.check(abs(so.value - sc.value), tol, f"m={m} xi={xi} z={z}")
    return tr.result()


def suite_replica_identity(grid: Grid, rng) -> SuiteResult:
    tr = _Tracker("replica_identity")
    for xi in grid.xis:
        p = SqueezeParams(xi)
        states = [0, 1, 2, 3] + [VacuumFockInput(m, z) for m in grid.ms[:2] for z in grid.zs]
        for st in states:
            spec = oracle.output_spectrum(p, st)
            d = abs(oracle.replica_entropy(spec).value - oracle.spectral_entropy(spec).value)
            tr.check(d, 1e-7, f"xi={xi} state={st}")
    return tr.result()


def suite_f_structure(grid: Grid, rng) -> SuiteResult:
    tr = _Tracker("f_structure")
    for m in grid.ms[:2]:
        for xi in grid.xis:
            p = SqueezeParams(xi)
            for z in grid.zs:
                st = VacuumFockInput(m, z)
                f1 = oracle.extract_f(p, st, 1).f_value
                tr.check(abs(f1), 1e-9, f"m={m} xi={xi} z={z} F(1)")
            for n in (2, 3):
                fit_z = [0.5 * (j + 1) for j in range(2 * n - 1)]
                held = [0.75, 1.25]
                coeffs = _fit_f_polynomial(p, m, n, fit_z)
                for z in held:
                    f = oracle.extract_f(p, VacuumFockInput(m, z), n).f_value
                    pred = _eval_f_polynomial(coeffs, z)
                    tr.check(abs(pred - f) / abs(f), 1e-7, f"m={m} xi={xi} n={n} z={z}")
    return tr.result()


def _fit_f_polynomial(p, m, n, zs):
    """Least-squares coefficients of ``F = sum_{i=1}^{n-1} a_i z^(2i)``."""
    vander = np.array([[z ** (2 * i) for i in range(1, n)] for z in zs])
    f = np.array([oracle.extract_f(p, VacuumFockInput(m, z), n).f_value for z in zs])
    return np.linalg.lstsq(vander, f, rcond=None)[0]


def _eval_f_polynomial(coeffs, z):
    return float(sum(a * z ** (2 * (i + 1)) for i, a in enumerate(coeffs)))


def suite_hausdorff(grid: Grid, rng) -> SuiteResult:
    tr = _Tracker("hausdorff")
    for xi in grid.xis:
        p = SqueezeParams(xi)
        for st in [0] + list(grid.ms) + [VacuumFockInput(grid.ms[0], grid.zs[0])]:
            mom = oracle.spectral_moments(oracle.output_spectrum(p, st), 16)
            rep = oracle.hausdorff_check(mom, 8, 8)
            tr.check(max(rep.worst_ratio, 0.0), 1e-12, f"xi={xi} state={st} witness={rep.witness}")
    for lam in (0.5, 1.0, 3.0):
        rep = oracle.hausdorff_check(classical.poisson_moments(lam).sequence(12), 6, 6)
        tr.check(max(rep.worst_ratio, 0.0), 1e-12, f"poisson lambda={lam} witness={rep.witness}")
    return tr.result()


def suite_classical(grid: Grid, rng) -> SuiteResult:
    tr = _Tracker("classical")
    for sigma in (0.3, 0.7, 1.0, 2.5):
        exact = 0.5 * math.log(2 * math.pi * math.e * sigma**2)
        tr.check(abs(classical.gaussian_entropy_replica(sigma) - exact), 1e-10, f"gaussian sigma={sigma}")
        fd = classical.gaussian_moments(sigma).replica_entropy(1e-6)
        tr.check(abs(fd - exact), 1e-8, f"gaussian sigma={sigma} finite difference")
    for lam in (0.5, 1.0, 2.0, 5.0):
        a = classical.poisson_entropy_series(lam)
        b = classical.poisson_entropy_derivative(lam)
        tr.check(abs(a - b), 1e-10, f"poisson lambda={lam}")
    return tr.result()


def suite_specfun(grid: Grid, rng) -> SuiteResult:
    tr = _Tracker("special_functions")
    for n in range(1, 13):
        row = sum(specfun.eulerian_number(n, k) for k in range(n))
        tr.check(0.0 if row == math.factorial(n) else math.inf, 0.0, f"Eulerian row n={n}")
    for n in range(1, 9):
        for zeta in (0.1, 0.3, 0.5, 0.7, 0.9):
            a = specfun.polylog_m1_closed(n, zeta)
            b = specfun.polylog_general(1, n, zeta).value
            tr.check(abs(a - b) / abs(a), 1e-12, f"Li1 n={n} zeta={zeta}")
    for t in (0.1, 0.5, 0.9):
        for n in range(2, 13):
            tr.check(replica.circulant_det_check(t, n).rel_error, 1e-10, f"circulant t={t} n={n}")
    return tr.result()


SUITES: dict[str, Callable[[Grid, np.random.Generator], SuiteResult]] = {
    "thermal": suite_thermal,
    "fock_spectra": suite_fock_spectra,
    "moments": suite_moments,
    "fock_entropy": suite_fock_entropy,
    "convex_law": suite_convex_law,
    "replica_identity": suite_replica_identity,
    "f_structure": suite_f_structure,
    "hausdorff": suite_hausdorff,
    "classical": suite_classical,
    "special_functions": suite_specfun,
}


def run_validation(grid: str = "small", seed: int = 0, suites=None) -> list[SuiteResult]:
    g = GRIDS[grid]
    rng = np.random.default_rng(seed)
    names = suites or list(SUITES)
    results = []
    for name in names:
        try:
            results.append(SUITES[name](g, rng))
        except ArithmeticError as exc:
            results.append(SuiteResult(name, False, math.inf, f"{type(exc).__name__}: {exc}"))
    return results

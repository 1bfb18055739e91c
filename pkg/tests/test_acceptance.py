"""Acceptance checks, one per criterion.

Each check prints a single PASS/FAIL line with the worst discrepancy it saw.
Run through pytest (``pytest tests/test_acceptance.py -v``) or directly
(``python tests/test_acceptance.py``) for the eleven lines on their own.
"""

import io
import math
import sys
import time

import numpy as np
import pytest
from scipy import stats

from opa_entropy import classical, oracle, replica, specfun
from opa_entropy.cli import main as cli_main
from opa_entropy.core import SqueezeParams, VacuumFockInput, g_function


def params_from_t(t):
    return SqueezeParams(math.atanh(math.sqrt(t)))


class Worst:
    """Tracks the largest discrepancy and the case that produced it."""

    def __init__(self):
        self.value = 0.0
        self.case = None
        self.ok = True

    def add(self, discrepancy, tol, case):
        if not discrepancy <= tol:
            self.ok = False
        if discrepancy > self.value or self.case is None:
            self.value, self.case = discrepancy, case


def criterion_1():
    start = time.perf_counter()
    w = Worst()
    for t in np.round(np.arange(0.1, 0.95, 0.1), 10):
        p = params_from_t(t)
        k = np.arange(int(60 / -math.log(t)) + 1)
        for n in range(1, 9):
            direct = math.fsum(((1 - t) * t**k) ** n)
            w.add(abs(replica.thermal_moment(p, n) - direct) / direct, 1e-12, f"t={t} n={n}")
        s = replica.thermal_entropy(p).value
        w.add(abs(s - g_function(p.mean_photons)), 1e-13, f"t={t} entropy")
    elapsed = time.perf_counter() - start
    return w.ok and elapsed < 1.0, f"max {w.value:.2e} at {w.case}; {elapsed:.2f} s (limit 1 s)"


def criterion_2():
    start = time.perf_counter()
    w = Worst()
    for xi in (0.1, 0.5, 1.0, 1.5):
        p = SqueezeParams(xi)
        for m in range(6):
            eig = oracle.output_spectrum(p, m).eigenvalues
            closed = np.sort(replica.fock_spectrum(p, m, len(eig) + 200))[::-1][: len(eig)]
            w.add(float(np.max(np.abs(eig - closed))), 1e-11, f"xi={xi} m={m}")
    elapsed = time.perf_counter() - start
    return w.ok and elapsed < 10.0, f"max {w.value:.2e} at {w.case}; {elapsed:.2f} s (limit 10 s)"


def criterion_3():
    w = Worst()
    for xi in (0.3, 0.8, 1.2, 1.5):
        p = SqueezeParams(xi)
        for m in range(6):
            spec = oracle.output_spectrum(p, m)
            for n in range(1, 7):
                exact = oracle.spectral_moment(spec, n)
                w.add(abs(replica.fock_moment(p, m, n) - exact) / exact, 1e-10, f"xi={xi} m={m} n={n}")
    return w.ok, f"max relative {w.value:.2e} at {w.case}"


def criterion_4():
    routes, vs_oracle = Worst(), Worst()
    for xi in (0.3, 0.8, 1.2, 1.5):
        p = SqueezeParams(xi)
        for m in range(6):
            a = replica.fock_entropy(p, m).value
            b = replica.fock_entropy_polylog(p, m).value
            s = oracle.spectral_entropy(oracle.output_spectrum(p, m)).value
            routes.add(abs(a - b), 1e-10, f"xi={xi} m={m}")
            vs_oracle.add(max(abs(a - s), abs(b - s)), 1e-8, f"xi={xi} m={m}")
    detail = f"routes max {routes.value:.2e} at {routes.case}; vs oracle max {vs_oracle.value:.2e} at {vs_oracle.case}"
    return routes.ok and vs_oracle.ok, detail


def criterion_5():
    start = time.perf_counter()
    w = Worst()
    failures = 0
    total = 0
    for m in range(1, 6):
        for z in (0.25, 0.5, 1.0, 2.0, 4.0, 10.0):
            for xi in (0.3, 0.8, 1.2):
                p = SqueezeParams(xi)
                st = VacuumFockInput(m, z)
                exact = oracle.spectral_entropy(oracle.output_spectrum(p, st))
                law = replica.superposition_entropy(p, st)
                tol = 1e-8 + exact.error_estimate + law.error_estimate
                d = abs(exact.value - law.value)
                total += 1
                failures += d > tol
                w.add(d, tol, f"m={m} z={z} xi={xi} (oracle {exact.value:.6f}, law {law.value:.6f})")
    elapsed = time.perf_counter() - start
    detail = f"{failures}/{total} points off; max {w.value:.2e} at {w.case}; {elapsed:.1f} s (limit 120 s)"
    return w.ok and elapsed < 120.0, detail


def _sweep(xi, z_min, z_max, z_step):
    buf = io.StringIO()
    code = cli_main(["sweep", "--m", "1", "--xi", str(xi), "--z-min", str(z_min), "--z-max", str(z_max),
                     "--z-step", str(z_step), "--method", "both"], out=buf)
    assert code == 0
    lines = buf.getvalue().splitlines()[2:]
    return np.array([[float(v) for v in line.split(",")] for line in lines])


def criterion_6():
    ok = True
    notes = []
    for xi in (0.5, 1.0, 1.5):
        p = SqueezeParams(xi)
        s0 = replica.thermal_entropy(p).value
        s1 = replica.fock_entropy(p, 1).value
        rows = _sweep(xi, 0, 10, 0.25)
        far = _sweep(xi, 1000, 1000, 1)[0]
        for col, name in ((3, "closed"), (4, "oracle")):
            start_ok = abs(rows[0, col] - s0) <= 1e-12
            mono = bool(np.all(np.diff(rows[:, col]) >= 0))
            gap = abs(far[col] - s1)
            ok &= start_ok and mono and gap <= 1e-6
            notes.append(f"xi={xi} {name}: S(0)=S0 {start_ok}, monotone {mono}, |S(1e3)-S1|={gap:.1e}")
    return ok, "; ".join(notes)


def criterion_7():
    w = Worst()
    for xi in (0.3, 0.8, 1.2):
        p = SqueezeParams(xi)
        states = [0, 1, 2, 3] + [VacuumFockInput(m, z) for m in (1, 2, 3) for z in (0.5, 1.0, 2.0)]
        for st in states:
            spec = oracle.output_spectrum(p, st)
            d = abs(oracle.replica_entropy(spec, step=1e-5).value - oracle.spectral_entropy(spec).value)
            w.add(d, 1e-7, f"xi={xi} state={st}")
    return w.ok, f"max {w.value:.2e} at {w.case}"


def criterion_8():
    at_one, poly = Worst(), Worst()
    fit_z = (0.5, 1.0, 1.5, 2.0, 2.5)
    held_out = (0.75, 1.25, 3.0)
    for m in (1, 2, 3):
        for xi in (0.3, 0.8, 1.2):
            p = SqueezeParams(xi)
            for z in (0.25, 0.5, 1.0, 2.0, 4.0):
                f1 = oracle.extract_f(p, VacuumFockInput(m, z), 1).f_value
                at_one.add(abs(f1), 1e-9, f"m={m} xi={xi} z={z}")
            for n in (2, 3):
                # F = a_1 z^2 + ... + a_{n-1} z^(2(n-1)), no constant term
                basis = np.array([[z ** (2 * i) for i in range(1, n)] for z in fit_z])
                f_fit = np.array([oracle.extract_f(p, VacuumFockInput(m, z), n).f_value for z in fit_z])
                coeffs = np.linalg.lstsq(basis, f_fit, rcond=None)[0]
                for z in held_out:
                    f = oracle.extract_f(p, VacuumFockInput(m, z), n).f_value
                    pred = sum(a * z ** (2 * (i + 1)) for i, a in enumerate(coeffs))
                    poly.add(abs(pred - f) / abs(f), 1e-7, f"m={m} xi={xi} n={n} z={z}")
    detail = f"F(1) max {at_one.value:.2e} at {at_one.case}; held-out fit max {poly.value:.2e} at {poly.case}"
    return at_one.ok and poly.ok, detail


def criterion_9():
    w = Worst()
    count = 0
    for xi in (0.3, 0.8, 1.2, 1.5):
        p = SqueezeParams(xi)
        states = list(range(6)) + [VacuumFockInput(m, z) for m in (1, 3, 5) for z in (0.5, 2.0)]
        for st in states:
            moments = oracle.spectral_moments(oracle.output_spectrum(p, st), 16)
            rep = oracle.hausdorff_check(moments, 8, 8)
            count += 1
            # worst_ratio is the most negative difference over m_n; <= 1e-12 is the pass band
            w.add(max(rep.worst_ratio, 0.0), 1e-12 if rep.passed else -1.0, f"xi={xi} state={st}")
    return w.ok, f"{count} spectra, n,k <= 8; worst violation ratio {w.value:.2e}"


def criterion_10():
    w = Worst()
    for sigma in (0.1, 0.3, 0.7, 1.0, 2.5, 10.0):
        target = 0.5 * math.log(2 * math.pi * math.e * sigma**2)
        w.add(abs(classical.gaussian_entropy_replica(sigma) - target), 1e-10, f"gaussian sigma={sigma} analytic")
        fd = classical.gaussian_moments(sigma).replica_entropy(step=1e-6)
        w.add(abs(fd - target), 1e-8, f"gaussian sigma={sigma} finite difference")
    k = np.arange(80)
    pmf = stats.poisson.pmf(k, 1.0)
    direct = -math.fsum(pmf * np.log(pmf))
    w.add(abs(classical.poisson_entropy_replica(1.0) - direct), 1e-10, "poisson lambda=1")
    return w.ok, f"max {w.value:.2e} at {w.case}"


def criterion_11():
    w = Worst()
    for n in range(1, 13):
        row_sum = sum(specfun.eulerian_number(n, k) for k in range(n))
        w.add(0.0 if row_sum == math.factorial(n) else math.inf, 0.0, f"eulerian n={n}")
    for n in range(1, 9):
        for zeta in (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9):
            a = specfun.polylog_m1_closed(n, zeta)
            b = specfun.polylog_general(1, n, zeta).value
            w.add(abs(a - b) / abs(b), 1e-12, f"polylog n={n} zeta={zeta}")
    for n in range(2, 13):
        for t in (0.1, 0.5, 0.9, 0.99):
            w.add(replica.circulant_det_check(t, n).rel_error, 1e-10, f"circulant n={n} t={t}")
    return w.ok, f"max {w.value:.2e} at {w.case}"


CRITERIA = {
    1: ("thermal closed form", criterion_1),
    2: ("Fock spectra", criterion_2),
    3: ("Fock moments", criterion_3),
    4: ("S_m dual route", criterion_4),
    5: ("convex-combination law", criterion_5),
    6: ("S(z) sweep for m=1", criterion_6),
    7: ("replica identity", criterion_7),
    8: ("F-function structure", criterion_8),
    9: ("Hausdorff positivity", criterion_9),
    10: ("classical cases", criterion_10),
    11: ("special functions", criterion_11),
}


def run_criterion(number):
    name, fn = CRITERIA[number]
    ok, detail = fn()
    return ok, f"{'PASS' if ok else 'FAIL'} criterion {number:>2} ({name}): {detail}"


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, capsys):
    ok, line = run_criterion(number)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [run_criterion(n) for n in sorted(CRITERIA)]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)

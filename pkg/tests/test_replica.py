import math

import numpy as np
import pytest

from opa_entropy import oracle
from opa_entropy.core import SqueezeParams, VacuumFockInput, g_function
from opa_entropy.replica import (
    circulant_det_check,
    circulant_matrix,
    fock_entropy,
    fock_entropy_polylog,
    fock_moment,
    fock_spectrum,
    superposition_entropy,
    superposition_moment_closed,
    thermal_entropy,
    thermal_moment,
    thermal_moments,
)
from opa_entropy.core import DomainError

# mpmath sums
THERMAL_XI1_N3 = 0.092033681304735023890
FOCK_M2_N3_HALF = 0.021333433712629455900
G_SINH2_1 = 1.6198220928977022644


def from_t(t):
    return SqueezeParams(math.atanh(math.sqrt(t)))


def test_thermal_moment_values():
    assert thermal_moment(from_t(0.5), 2) == pytest.approx(1 / 3, rel=1e-14)
    for t in (0.0, 0.3, 0.9):
        assert thermal_moment(from_t(t), 1) == pytest.approx(1.0, rel=1e-14)
    assert thermal_moment(SqueezeParams(0), 5) == 1.0


def test_thermal_moment_against_spectral_sum():
    p = SqueezeParams(1.0)
    t = p.tau_sq
    k = np.arange(2000)
    direct = math.fsum(((1 - t) * t**k) ** 3)
    assert thermal_moment(p, 3) == pytest.approx(direct, rel=1e-13)
    assert thermal_moment(p, 3) == pytest.approx(THERMAL_XI1_N3, rel=1e-13)


def test_circulant_structure():
    mat = circulant_matrix(0.3, 4)
    expected = np.array([[1, -0.3, 0, 0], [0, 1, -0.3, 0], [0, 0, 1, -0.3], [-0.3, 0, 0, 1]])
    np.testing.assert_array_equal(mat, expected)


def test_circulant_det():
    assert circulant_det_check(0.4, 2).det_direct == pytest.approx(1 - 0.16, rel=1e-14)
    assert circulant_det_check(0.5, 5).det_direct == pytest.approx(0.96875, rel=1e-14)
    assert circulant_det_check(0.0, 7).det_direct == 1.0
    for n in range(2, 13):
        for t in (0.1, 0.5, 0.95):
            assert circulant_det_check(t, n).rel_error < 1e-10
    with pytest.raises(DomainError):
        circulant_det_check(0.5, 13)


def test_thermal_entropy():
    assert thermal_entropy(SqueezeParams(0)).value == 0
    assert thermal_entropy(SqueezeParams(1.0)).value == pytest.approx(G_SINH2_1, rel=1e-14)
    for r in np.linspace(0.01, 4, 25):
        p = SqueezeParams(r)
        # N from tau_sq cancels near t = 1, hence a relative bound
        assert thermal_entropy(p).value == pytest.approx(g_function(p.tau_sq / (1 - p.tau_sq)), rel=1e-12)


def test_fock_moment_reductions():
    for t in (0.2, 0.7):
        p = from_t(t)
        for n in range(1, 6):
            assert fock_moment(p, 0, n) == pytest.approx(thermal_moment(p, n), rel=1e-12)
        for m in range(6):
            assert fock_moment(p, m, 1) == pytest.approx(1.0, rel=1e-12)
    assert fock_moment(SqueezeParams(0), 3, 4) == 1.0


def test_fock_moment_value():
    k = np.arange(400)
    direct = math.fsum((0.125 * (k + 1) * (k + 2) / 2 * 0.5**k) ** 3)
    assert fock_moment(from_t(0.5), 2, 3) == pytest.approx(direct, rel=1e-13)
    assert fock_moment(from_t(0.5), 2, 3) == pytest.approx(FOCK_M2_N3_HALF, rel=1e-13)


@pytest.mark.parametrize("t", [0.2, 0.5, 0.8])
@pytest.mark.parametrize("m", range(6))
def test_fock_moment_equals_eigenvalue_sum(t, m):
    p = from_t(t)
    p_k = np.sort(fock_spectrum(p, m, 3000))
    for n in range(1, 7):
        assert fock_moment(p, m, n) == pytest.approx(math.fsum(p_k**n), rel=1e-11)


@pytest.mark.parametrize("t", [0.2, 0.5, 0.8])
@pytest.mark.parametrize("m", range(6))
def test_fock_entropy_two_routes(t, m):
    p = from_t(t)
    assert fock_entropy(p, m).value == pytest.approx(fock_entropy_polylog(p, m).value, abs=1e-10)


def test_fock_entropy_reductions():
    p = SqueezeParams(0.9)
    assert fock_entropy(p, 0).value == pytest.approx(thermal_entropy(p).value, rel=1e-15)
    assert fock_entropy(SqueezeParams(0), 4).value == 0


def test_fock_entropy_against_oracle():
    p = SqueezeParams(1.0)
    spec = oracle.output_spectrum(p, 1)
    assert fock_entropy(p, 1).value == pytest.approx(oracle.spectral_entropy(spec).value, abs=1e-9)


def test_superposition_entropy_limits():
    p = SqueezeParams(1.0)
    s0 = thermal_entropy(p).value
    s1 = fock_entropy(p, 1).value
    assert superposition_entropy(p, VacuumFockInput(1, 0.0)).value == s0
    assert superposition_entropy(p, VacuumFockInput(1, 1e6)).value == pytest.approx(s1, abs=1e-10)
    assert superposition_entropy(p, VacuumFockInput(1, 1.0)).value == pytest.approx((s0 + s1) / 2, rel=1e-15)


def test_superposition_entropy_against_oracle():
    # the convex-combination law compared with the exact output spectrum
    p = SqueezeParams(1.0)
    st = VacuumFockInput(1, 1.0)
    exact = oracle.spectral_entropy(oracle.output_spectrum(p, st)).value
    assert superposition_entropy(p, st).value == pytest.approx(exact, abs=1e-8)


@pytest.mark.parametrize("m", [1, 2, 4])
@pytest.mark.parametrize("xi", [0.4, 1.0])
def test_superposition_entropy_monotone(m, xi):
    p = SqueezeParams(xi)
    assert fock_entropy(p, m).value > thermal_entropy(p).value
    values = [superposition_entropy(p, VacuumFockInput(m, z)).value for z in np.arange(0, 10.05, 0.1)]
    assert all(b >= a for a, b in zip(values, values[1:]))


def test_superposition_entropy_phase_invariant():
    st = VacuumFockInput(2, 1.3)
    a = superposition_entropy(SqueezeParams(0.8, 0.0), st).value
    b = superposition_entropy(SqueezeParams(0.8, math.pi / 3), st).value
    assert a == b


def test_superposition_moment_zero_z():
    p = SqueezeParams(0.7)
    for n in range(1, 6):
        got = superposition_moment_closed(p, VacuumFockInput(2, 0.0), n, 0.0)
        assert got == pytest.approx(thermal_moment(p, n), rel=1e-13)


@pytest.mark.parametrize("m", [1, 3])
@pytest.mark.parametrize("z", [0.0, 0.5, 2.0, 7.0])
@pytest.mark.parametrize("t", [0.1, 0.5, 0.9])
def test_superposition_moment_normalized(m, z, t):
    assert superposition_moment_closed(from_t(t), VacuumFockInput(m, z), 1, 0.0) == pytest.approx(1.0, rel=1e-12)


def test_superposition_moment_with_oracle_f():
    p = SqueezeParams(1.0)
    st = VacuumFockInput(1, 1.0)
    spec = oracle.output_spectrum(p, st)
    f = oracle.extract_f(p, st, 2, spec).f_value
    closed = superposition_moment_closed(p, st, 2, f)
    assert closed == pytest.approx(oracle.spectral_moment(spec, 2), abs=1e-9)


def test_thermal_moment_sequence_properties():
    seq = thermal_moments(SqueezeParams(0.8), 10)
    assert seq[1] == pytest.approx(1.0, abs=1e-10)
    vals = np.array(seq.values)
    assert np.all(vals > 0)
    assert np.all(np.diff(vals) <= 0)

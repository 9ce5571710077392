import math

import numpy as np
import pytest
from conftest import UNIT_LOADS, section

from koitertube.circular import circle_coefficients, circle_field
from koitertube.ebt import ResultantLoads
from koitertube.shell import stiffnesses
from koitertube.thin import thin_coefficients, thin_coupling, thin_stress
from koitertube.verification import check_resultants, displacement_gap

ELLIPSE_THIN_TWIST = -15.951731922155117
ELLIPSE_THIN_R2_K_TILDE = 0.657916929
ELLIPSE_THIN_R2_K0 = -79.94694823

MIXED = ResultantLoads((0.4, -0.3, 0.8), (0.5, 0.2, -0.7))


def test_ellipse_values(mat):
    curve = section("ellipse", 512)
    assert thin_coefficients(curve, mat, UNIT_LOADS["M3"]).K == pytest.approx(ELLIPSE_THIN_TWIST, rel=1e-12)
    sol = thin_coefficients(curve, mat, UNIT_LOADS["R2"])
    assert sol.K_tilde == pytest.approx(ELLIPSE_THIN_R2_K_TILDE, rel=1e-8)
    assert sol.K0 == pytest.approx(ELLIPSE_THIN_R2_K0, rel=1e-9)


def test_bending_constants_solve_inertia_system(ellipse, mat):
    sol = thin_coefficients(ellipse, mat, MIXED)
    Eh = mat.E * mat.h
    M, R = MIXED.M, MIXED.R
    np.testing.assert_allclose(ellipse.inertia @ sol.A[:2], [M[1] / Eh, -M[0] / Eh], rtol=1e-12)
    np.testing.assert_allclose(ellipse.inertia @ sol.A_hat[:2], -R[:2] / Eh, rtol=1e-12)
    assert sol.A_bar[2] == pytest.approx(-R[2] / (ellipse.length * Eh), rel=1e-13)


def test_hoop_membrane_force_vanishes(ellipse, mat):
    sol = thin_coefficients(ellipse, mat, MIXED)
    for z in (0.0, 1.7):
        assert not np.any(thin_stress(sol, None, z).N_ss)


def test_coupling_is_bending_order(ellipse, mat):
    # B is O(D) times A, so it shrinks like h^2 relative to the stretching terms
    A = np.array([0.3, -0.2, 0.1])
    B1 = thin_coupling(ellipse, mat, A)
    B2 = thin_coupling(ellipse, mat.with_thickness(mat.h / 2), A)
    np.testing.assert_allclose(B2, B1 / 8, rtol=1e-12)


def test_circle_matches_closed_form(circle, mat):
    sol = thin_coefficients(circle, mat, MIXED)
    oc = circle_coefficients(1.0, mat, MIXED)
    for a, b in ((sol.K, oc.K), (sol.A, oc.A), (sol.A_hat, oc.A_hat), (sol.B, oc.B), (sol.B_hat, oc.B_hat)):
        np.testing.assert_allclose(a, b, rtol=1e-10, atol=1e-10 * np.max(np.abs(b)))
    assert sol.K0 == pytest.approx(oc.K0, rel=1e-10)
    assert abs(sol.K_tilde) < 1e-10 * abs(oc.K0)
    z = np.linspace(0.0, 2.0, 5)
    gap = displacement_gap(sol.field(), circle_field(oc, circle), z)
    assert gap < 1e-10 * np.max(np.abs(sol.field().displacement(None, 2.0)))


def test_zero_loads(ellipse, mat):
    sol = thin_coefficients(ellipse, mat, ResultantLoads())
    assert sol.K == 0.0 and sol.K0 == 0.0 and sol.K_tilde == 0.0
    assert not np.any(sol.A) and not np.any(sol.B)
    assert np.max(np.abs(sol.field().displacement(None, 1.0))) == 0.0


def test_no_transverse_force_means_no_flexure(ellipse, mat):
    sol = thin_coefficients(ellipse, mat, UNIT_LOADS["M1"])
    assert not np.any(sol.A_hat) and not np.any(sol.B_hat)
    assert np.max(np.abs(sol.psi.values)) == 0.0


def test_resultant_deviation_is_thickness_squared(ellipse, mat):
    dev = []
    for h in (mat.h, mat.h / 2):
        m = stiffnesses(mat.E, mat.nu, h)
        field = thin_coefficients(ellipse, m, UNIT_LOADS["M3"]).field()
        dev.append(check_resultants(field, ellipse, m, UNIT_LOADS["M3"]).deviation)
    assert dev[0] < 1e-4
    assert dev[0] / dev[1] == pytest.approx(4.0, rel=0.05)


def test_torsion_closed_form(mat):
    # thin-tube twist -M3 length / (4 mu h area^2)
    curve = section("ellipse", 256)
    expected = -curve.length / (4 * mat.mu * mat.h * (2 * math.pi) ** 2)
    assert thin_coefficients(curve, mat, UNIT_LOADS["M3"]).K == pytest.approx(expected, rel=1e-12)

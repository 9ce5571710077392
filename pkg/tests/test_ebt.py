import numpy as np
import pytest
from conftest import EBT_LOADS, UNIT_LOADS, section

from koitertube.ebt import (
    ResultantLoads,
    ebt_stress,
    guarded_solve,
    seam_matrices,
    solve_ebt,
    torsion_function,
)
from koitertube.errors import NonAxialForce, SingularSystem
from koitertube.shell import stiffnesses
from koitertube.verification import check_resultants, continuity_check

ELLIPSE_TWIST = -15.951415864218959  # K for a unit torque on ellipse(2, 1), E = 1, nu = 0.3, h = 0.01


def test_ellipse_twist_value(mat):
    sol = solve_ebt(section("ellipse", 256), mat, UNIT_LOADS["M3"])
    assert sol.K == pytest.approx(ELLIPSE_TWIST, rel=1e-12)
    np.testing.assert_allclose(sol.A, 0.0, atol=1e-14)


def test_torsion_function_is_periodic(ellipse):
    phi = torsion_function(ellipse)
    assert abs(phi(np.array([0.0]))[0]) < 1e-15
    assert abs(phi.at_end()) < 1e-12


@pytest.mark.parametrize("name", EBT_LOADS)
def test_seams_close(ellipse, mat, name):
    field = solve_ebt(ellipse, mat, UNIT_LOADS[name]).field()
    assert continuity_check(field, (0.0, 1.0)).worst < 1e-10


@pytest.mark.parametrize("name", EBT_LOADS)
def test_coupling_satisfies_seam_system(ellipse, mat, name):
    sol = solve_ebt(ellipse, mat, UNIT_LOADS[name])
    GA, GB = seam_matrices(ellipse, mat)
    resid = GA @ sol.A + GB @ sol.B
    assert np.max(np.abs(resid)) < 1e-12 * (np.max(np.abs(GA)) * np.max(np.abs(sol.A)) + 1e-300)


def test_resultants_reproduce_loads(ellipse, mat):
    loads = ResultantLoads((0.0, 0.0, 0.7), (0.2, -0.4, 1.1))
    field = solve_ebt(ellipse, mat, loads).field()
    assert check_resultants(field, ellipse, mat, loads, 0.5).deviation < 1e-10


def test_shear_flow_is_constant(ellipse, mat):
    st = ebt_stress(solve_ebt(ellipse, mat, UNIT_LOADS["M3"]))
    assert np.ptp(st.N_sz) < 1e-14 * np.max(np.abs(st.N_sz))


def test_zero_load_gives_zero_solution(ellipse, mat):
    sol = solve_ebt(ellipse, mat, ResultantLoads())
    assert sol.K == 0.0
    assert not np.any(sol.A) and not np.any(sol.B)
    assert sol.field().displacement(None, 2.0).max() == 0.0


def test_transverse_force_rejected(ellipse, mat):
    with pytest.raises(NonAxialForce):
        solve_ebt(ellipse, mat, UNIT_LOADS["R1"])


def test_guarded_solve():
    sol, cond = guarded_solve(np.diag([1e-6, 1.0, 1e6]), np.array([1e-6, 2.0, 3e6]), "test")
    np.testing.assert_allclose(sol, [1.0, 2.0, 3.0])
    assert cond == pytest.approx(1.0)
    with pytest.raises(SingularSystem) as info:
        guarded_solve(np.array([[1.0, 2.0], [2.0, 4.0 + 1e-15]]), np.ones(2), "test")
    assert info.value.condition > 1e12


def test_loads_scale_linearly(ellipse, mat):
    a = solve_ebt(ellipse, mat, UNIT_LOADS["M1"])
    b = solve_ebt(ellipse, mat, UNIT_LOADS["M1"] * -3.5)
    np.testing.assert_allclose(b.A, -3.5 * a.A, rtol=1e-13)
    np.testing.assert_allclose(b.B, -3.5 * a.B, rtol=1e-13)


def test_thickness_reduces_twist(ellipse):
    thin = solve_ebt(ellipse, stiffnesses(1.0, 0.3, 0.005), UNIT_LOADS["M3"]).K
    thick = solve_ebt(ellipse, stiffnesses(1.0, 0.3, 0.01), UNIT_LOADS["M3"]).K
    assert thin / thick == pytest.approx(2.0, rel=1e-4)

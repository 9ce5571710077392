import numpy as np
import pytest

from koitertube.errors import InvalidMaterial, TooFewZStations
from koitertube.shell import (
    constitutive,
    fd_weights,
    stiffnesses,
    strains_from_displacement,
    z_derivative,
)


def test_stiffnesses():
    mat = stiffnesses(2.0, 0.25, 0.1)
    assert mat.C == pytest.approx(2.0 * 0.1 / (1 - 0.0625))
    assert mat.D == pytest.approx(2.0 * 0.001 / (12 * (1 - 0.0625)))
    assert mat.mu == pytest.approx(0.8)
    assert mat.D / mat.C == pytest.approx(0.1**2 / 12)


@pytest.mark.parametrize(
    "E, nu, h, field",
    [(0.0, 0.3, 0.01, "E"), (1.0, 0.5, 0.01, "nu"), (1.0, -1.0, 0.01, "nu"), (1.0, 0.3, -1e-3, "h"), ("x", 0.3, 0.1, "E")],
)
def test_invalid_material_names_field(E, nu, h, field):
    with pytest.raises(InvalidMaterial) as info:
        stiffnesses(E, nu, h)
    assert info.value.field == field


def test_fd_weights_five_point():
    w = fd_weights(np.arange(-2.0, 3.0), 0.0, 2)
    np.testing.assert_allclose(w[1], [1 / 12, -2 / 3, 0, 2 / 3, -1 / 12], atol=1e-15)
    np.testing.assert_allclose(w[2], [-1 / 12, 4 / 3, -5 / 2, 4 / 3, -1 / 12], atol=1e-14)


def test_z_derivative_exact_for_quartics():
    z = np.array([0.0, 0.4, 1.0, 1.3, 2.0, 2.2])
    vals = (z**4 - 2 * z)[:, None]
    np.testing.assert_allclose(z_derivative(vals, z)[:, 0], 4 * z**3 - 2, atol=1e-11)
    with pytest.raises(TooFewZStations):
        z_derivative(vals[:4], z[:4])


def test_axial_stretch_strain(circle, mat):
    # u3 = a z: only eps_zz = a, with N_zz = C a and N_ss = nu C a
    z = np.arange(5) * 0.1
    a = 1e-3
    u = np.zeros((3, 5, circle.n))
    u[2] = a * z[:, None]
    strain = strains_from_displacement(u, z, circle)
    np.testing.assert_allclose(strain.eps_zz, a, atol=1e-15)
    for name in ("eps_ss", "eps_sz", "rho_ss", "rho_sz", "rho_zz"):
        assert np.max(np.abs(getattr(strain, name))) < 1e-14
    nm = constitutive(strain, mat)
    np.testing.assert_allclose(nm.N_zz, mat.C * a, rtol=1e-13)
    np.testing.assert_allclose(nm.N_ss, mat.nu * mat.C * a, rtol=1e-13)


def test_radial_expansion_of_circle(circle):
    # u = w n on the unit circle: eps_ss = w, rho_ss = -w (change of curvature)
    z = np.arange(5) * 0.1
    w = 2e-3
    u = np.zeros((3, 5, circle.n))
    u[:2] = w * circle.normal[:, None, :]
    strain = strains_from_displacement(u, z, circle)
    np.testing.assert_allclose(strain.eps_ss, w, atol=1e-14)
    np.testing.assert_allclose(np.abs(strain.rho_ss), w, atol=1e-12)

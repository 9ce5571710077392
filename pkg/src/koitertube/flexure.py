"""Flexure of a tube by a transverse end force.

The z-derivative of the flexure displacement is a bending solution of the
extension-bending-torsion family, with strain measures ``A_hat`` driven by
the transverse force.  What remains is an axial warping profile ``psi``
(the flexure function) and a twist correction ``K_tilde`` that cancels the
torque the shear flow would otherwise carry.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ebt import (
    LOAD_TOLERANCE,
    ResultantLoads,
    _n_dot,
    _r_cross_e3_dot,
    _rhat_dot,
    _rhat_series,
    coupling_matrix,
    guarded_solve,
    resample_stress,
    resultant_matrix,
    torsion_function,
    torsional_stiffness,
    warping_kernel,
    warping_vector,
)
from .errors import NonTransverseLoad
from .fields import PolyZField, vector_series
from .geometry import ArcSeries, SectionCurve, closed_integral, cumulative_integral
from .shell import MembraneCouple, ShellMaterial, StressState, effective_tractions


def axial_force_density(curve, mat, A_hat, B_hat):
    """``C (1 - nu^2) A.r_hat - nu B.(n + r_hat / R)`` on the grid."""
    nu = mat.nu
    kappa = curve.curvature
    Bn = _n_dot(B_hat, curve) + kappa * _rhat_dot(B_hat, curve)
    return mat.C * (1.0 - nu**2) * _rhat_dot(A_hat, curve) - nu * Bn


def flexure_function(A_hat, B_hat, curve: SectionCurve, mat: ShellMaterial):
    """Flexure function and its closing constant ``K0``.

    Returns
    -------
    psi : ArcSeries
        Periodic warping profile with ``psi(0) = 0``.
    K0 : float
        Slope that makes ``psi(0) = psi(length)``.
    """
    A_hat = np.asarray(A_hat, dtype=float)
    B_hat = np.asarray(B_hat, dtype=float)
    nu, C = mat.nu, mat.C
    w = warping_vector(curve, mat, A_hat, B_hat)
    q_int = cumulative_integral(curve, axial_force_density(curve, mat, A_hat, B_hat))
    integrand = w.dot(curve.frame.tau) + q_int * (2.0 / (C * (1.0 - nu)))
    total = cumulative_integral(curve, integrand)
    K0 = float(total.at_end() / curve.length)
    psi = ArcSeries.linear(K0, curve.n, curve.length) - total
    return psi, K0


def twist_correction(curve, mat, A_hat, B_hat, K0):
    """``K_tilde`` from the vanishing end torque."""
    nu, C, D = mat.nu, mat.C, mat.D
    q_int = cumulative_integral(curve, axial_force_density(curve, mat, A_hat, B_hat))
    kernel = warping_kernel(curve, mat, A_hat, B_hat)
    rhs = -C * (1.0 - nu) * curve.area * K0
    rhs += 2.0 * D * (1.0 - nu) * (
        closed_integral(curve, nu * _r_cross_e3_dot(A_hat, curve)) - closed_integral(curve, kernel)
    )
    bend = D * (1.0 - nu**2) * _n_dot(A_hat, curve) + nu * _rhat_dot(B_hat, curve)
    rhs += closed_integral(curve, curve.r_dot_tau * bend)
    rhs += closed_integral(curve, q_int * curve.r_dot_n)
    return float(rhs / torsional_stiffness(curve, mat))


@dataclass(frozen=True, eq=False)
class FlexureSolution:
    """Constants and profiles of the flexure solution (``K_hat = 0`` gauge)."""

    curve: SectionCurve
    material: ShellMaterial
    loads: ResultantLoads
    A_hat: np.ndarray
    B_hat: np.ndarray
    K_tilde: float
    K0: float
    psi: ArcSeries
    phi: ArcSeries
    L: np.ndarray
    H: np.ndarray
    seam_condition: float
    resultant_condition: float

    def field(self):
        return flexure_field(self)

    def stress(self, s=None, z=0.0):
        return flexure_stress(self, s, z)

    def coefficients(self):
        return {
            "A_hat": [float(v) for v in self.A_hat],
            "B_hat": [float(v) for v in self.B_hat],
            "K_tilde": self.K_tilde,
            "K0": self.K0,
            "condition_seam": self.seam_condition,
            "condition_resultant": self.resultant_condition,
        }


def solve_flexure(curve: SectionCurve, mat: ShellMaterial, loads: ResultantLoads) -> FlexureSolution:
    """Flexure constants for a transverse end force about the centroid.

    Raises
    ------
    NonTransverseLoad
        The load carries an axial force or any moment.
    SingularSystem
        Either 3x3 system is numerically singular.
    """
    scale = max(loads.scale(curve.length), np.finfo(float).tiny)
    if abs(loads.force[2]) > LOAD_TOLERANCE * scale or np.linalg.norm(loads.M) > LOAD_TOLERANCE * scale * curve.length:
        raise NonTransverseLoad("flexure loads must consist of a transverse force only")
    L, cond_seam = coupling_matrix(curve, mat)
    H = resultant_matrix(curve, mat, L)
    R = loads.R
    A_hat, cond_res = guarded_solve(H, np.array([0.0, -R[0], -R[1]]), "resultant system")
    B_hat = L @ A_hat
    psi, K0 = flexure_function(A_hat, B_hat, curve, mat)
    K_tilde = twist_correction(curve, mat, A_hat, B_hat, K0)
    return FlexureSolution(
        curve=curve,
        material=mat,
        loads=loads,
        A_hat=A_hat,
        B_hat=B_hat,
        K_tilde=K_tilde,
        K0=K0,
        psi=psi,
        phi=torsion_function(curve),
        L=L,
        H=H,
        seam_condition=cond_seam,
        resultant_condition=cond_res,
    )


def flexure_field(sol: FlexureSolution) -> PolyZField:
    """Displacement as a cubic polynomial in ``z``."""
    curve = sol.curve
    Ah, Kt = sol.A_hat, sol.K_tilde
    w = warping_vector(curve, sol.material, Ah, sol.B_hat)
    t0 = vector_series(curve, (0.0, 0.0, sol.phi * Kt + sol.psi))
    X = curve.frame.x
    t1 = w + vector_series(curve, (X[1] * -Kt, X[0] * Kt, 0.0))
    t2 = vector_series(curve, (0.0, 0.0, _rhat_series(Ah, curve) * 0.5))
    t3 = vector_series(curve, (-Ah[0] / 6.0, -Ah[1] / 6.0, 0.0))
    return PolyZField(curve, {0: t0, 1: t1, 2: t2, 3: t3})


def flexure_displacement(sol: FlexureSolution, s=None, z=0.0):
    """Displacement at arc positions ``s`` (default: the grid) and height ``z``."""
    return flexure_field(sol).displacement(s, z)


def flexure_stress(sol: FlexureSolution, s=None, z=0.0) -> StressState:
    """Closed-form stress state at height ``z``; linear in ``z`` componentwise."""
    curve, mat = sol.curve, sol.material
    nu, C, D = mat.nu, mat.C, mat.D
    Ah, Bh = sol.A_hat, sol.B_hat
    kappa = curve.curvature
    Br = _rhat_dot(Bh, curve)
    Bn = _n_dot(Bh, curve) + kappa * Br
    q = axial_force_density(curve, mat, Ah, Bh)
    q_int = cumulative_integral(curve, q).values
    kernel = warping_kernel(curve, mat, Ah, Bh).values
    bend = D * (1.0 - nu**2) * _n_dot(Ah, curve) + nu * Br
    tau_b = Bh[0] * curve.tangent[0] + Bh[1] * curve.tangent[1]
    nm = MembraneCouple(
        N_ss=-z * Bn,
        N_sz=C * (1.0 - nu) * (sol.K_tilde * curve.area / curve.length + 0.5 * sol.K0) - q_int,
        N_zz=z * q,
        M_ss=-z * Br,
        M_sz=D * (1.0 - nu) * (-sol.K_tilde + nu * _r_cross_e3_dot(Ah, curve) + tau_b / C - kernel),
        M_zz=-z * bend,
    )
    return resample_stress(effective_tractions(nm, curve, M_zz_z=-bend), curve, s)

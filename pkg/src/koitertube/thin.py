"""Simplified solution for very thin tubes.

Terms of relative order ``(h / length)^2`` are dropped throughout: the
``1/C`` parts of the section profile, the ``1/(C R^2)`` part of the
kernel, the ``D length`` part of the torsional stiffness and the coupling
of ``B`` back into the resultant equations.  The constants then follow
from the section inertia alone, and a general load is handled as the
superposition of its axial and transverse parts.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ebt import (
    ResultantLoads,
    _n_dot,
    _r_cross_e3_dot,
    _rhat_dot,
    _rhat_series,
    guarded_solve,
    resample_stress,
    torsion_function,
    warping_kernel,
    warping_vector,
)
from .errors import GridMismatch
from .fields import PolyZField, vector_series
from .geometry import ArcSeries, SectionCurve, closed_integral, cumulative_integral
from .shell import MembraneCouple, ShellMaterial, StressState, effective_tractions


def thin_coupling(curve: SectionCurve, mat: ShellMaterial, A):
    """``B`` in terms of ``A`` from the simplified single-valuedness conditions."""
    A = np.asarray(A, dtype=float)
    nu, D, L = mat.nu, mat.D, curve.length
    kappa, x = curve.curvature, curve.x
    kx = closed_integral(curve, kappa * x)
    kxx = closed_integral(curve, kappa * x[:, None, :] * x[None, :, :])
    rhs = -nu * D * (kxx @ A[:2] + A[2] * L * kx)
    B_in, _ = guarded_solve(curve.inertia, rhs, "section inertia")
    B3 = -nu * D / L**2 * (A[:2] @ kx + 2.0 * np.pi * A[2] * L)
    return np.array([B_in[0], B_in[1], B3])


def _check_vectors(*vectors):
    for v in vectors:
        if np.shape(v) != (3,):
            raise GridMismatch("strain measures must be 3-vectors")


def _flexure_parts(A_hat, B_hat, curve, mat):
    """Integrand pieces shared by the flexure function and its constants."""
    nu = mat.nu
    frame = curve.frame
    X, T = frame.x, frame.tau
    a_in = np.array([A_hat[0], A_hat[1], 0.0])
    g = warping_kernel(curve, mat, A_hat, B_hat, thin=True)
    nested = cumulative_integral(curve, g * frame.normal).dot(T)
    ax = X.dot(a_in)
    local = T.dot(a_in) * X.dot(X) * (0.5 * nu) - ax * X.dot(T) * nu
    return local, nested, ax


def thin_flexure_function(A_hat, B_hat, curve: SectionCurve, mat: ShellMaterial):
    """Flexure function of the thin solution and its two constants.

    Returns
    -------
    psi : ArcSeries
        Warping profile with ``psi(0) = 0``.
    K0 : float
    K_tilde : float
    """
    A_hat = np.asarray(A_hat, dtype=float)
    B_hat = np.asarray(B_hat, dtype=float)
    _check_vectors(A_hat, B_hat)
    nu, area, L = mat.nu, curve.area, curve.length
    local, nested, ax = _flexure_parts(A_hat, B_hat, curve, mat)
    phi = torsion_function(curve)
    K_tilde = -closed_integral(curve, local - ax * phi * ((1.0 + nu) * L / area) - nested) / (2.0 * area)
    frame = curve.frame
    rn_int = cumulative_integral(curve, frame.x.dot(frame.normal))
    K0 = -K_tilde * 2.0 * area / L - (1.0 + nu) / area * closed_integral(curve, ax * rn_int)
    x_int = cumulative_integral(curve, frame.x).dot(np.array([A_hat[0], A_hat[1], 0.0]))
    integrand = local + x_int * (2.0 * (1.0 + nu)) - nested
    psi = ArcSeries.linear(K0, curve.n, L) - cumulative_integral(curve, integrand)
    return psi, float(K0), float(K_tilde)


@dataclass(frozen=True, eq=False)
class ThinSolution:
    """Constants and profiles of the thin-tube solution for a general load."""

    curve: SectionCurve
    material: ShellMaterial
    loads: ResultantLoads
    A: np.ndarray
    B: np.ndarray
    K: float
    A_hat: np.ndarray
    B_hat: np.ndarray
    K_tilde: float
    K0: float
    psi: ArcSeries
    phi: ArcSeries

    @property
    def A_bar(self):
        return np.array([self.A[0], self.A[1], self.A[2] * self.curve.length])

    def field(self):
        return thin_poly_field(self)

    def stress(self, s=None, z=0.0):
        return thin_stress(self, s, z)

    def coefficients(self):
        return {
            "A": [float(v) for v in self.A],
            "A_bar3": float(self.A[2] * self.curve.length),
            "B": [float(v) for v in self.B],
            "K": float(self.K),
            "A_hat": [float(v) for v in self.A_hat],
            "B_hat": [float(v) for v in self.B_hat],
            "K_tilde": float(self.K_tilde),
            "K0": float(self.K0),
        }


def thin_coefficients(curve: SectionCurve, mat: ShellMaterial, loads: ResultantLoads) -> ThinSolution:
    """All constants of the thin solution; loads about the centroid, mixed loads allowed.

    Raises
    ------
    SingularSystem
        The section inertia is singular.
    """
    Eh = mat.E * mat.h
    L, area = curve.length, curve.area
    R, M = loads.R, loads.M
    A_in, _ = guarded_solve(curve.inertia, np.array([M[1], -M[0]]) / Eh, "section inertia")
    A = np.array([A_in[0], A_in[1], -R[2] / (L * Eh) / L])
    K = -M[2] * L / (4.0 * mat.mu * mat.h * area**2)
    Ah_in, _ = guarded_solve(curve.inertia, -R[:2] / Eh, "section inertia")
    A_hat = np.array([Ah_in[0], Ah_in[1], 0.0])
    B = thin_coupling(curve, mat, A)
    B_hat = thin_coupling(curve, mat, A_hat)
    psi, K0, K_tilde = thin_flexure_function(A_hat, B_hat, curve, mat)
    return ThinSolution(
        curve=curve,
        material=mat,
        loads=loads,
        A=A,
        B=B,
        K=float(K),
        A_hat=A_hat,
        B_hat=B_hat,
        K_tilde=K_tilde,
        K0=K0,
        psi=psi,
        phi=torsion_function(curve),
    )


def thin_poly_field(sol: ThinSolution) -> PolyZField:
    """Displacement of the thin solution as a cubic polynomial in ``z``."""
    curve, mat = sol.curve, sol.material
    A, Ah = sol.A, sol.A_hat
    Kt = sol.K + sol.K_tilde
    X = curve.frame.x
    t0 = warping_vector(curve, mat, A, sol.B, thin=True) + vector_series(curve, (0.0, 0.0, sol.phi * Kt + sol.psi))
    t1 = warping_vector(curve, mat, Ah, sol.B_hat, thin=True) + vector_series(
        curve, (X[1] * -Kt, X[0] * Kt, _rhat_series(A, curve))
    )
    t2 = vector_series(curve, (-0.5 * A[0], -0.5 * A[1], _rhat_series(Ah, curve) * 0.5))
    t3 = vector_series(curve, (-Ah[0] / 6.0, -Ah[1] / 6.0, 0.0))
    return PolyZField(curve, {0: t0, 1: t1, 2: t2, 3: t3})


def shear_flow_profile(curve: SectionCurve, A_hat):
    """``A_hat . (int_0^s r + (1 / 2 area) closed int r int_0^s r.n)`` on the grid."""
    frame = curve.frame
    a = np.array([A_hat[0], A_hat[1], 0.0])
    rn_int = cumulative_integral(curve, frame.x.dot(frame.normal))
    offset = closed_integral(curve, frame.x.dot(a) * rn_int) / (2.0 * curve.area)
    return cumulative_integral(curve, frame.x).dot(a).values + offset


def thin_stress(sol: ThinSolution, s=None, z=0.0) -> StressState:
    """Stress state of the thin solution at height ``z``; ``N_ss`` vanishes."""
    curve, mat = sol.curve, sol.material
    nu, C, D = mat.nu, mat.C, mat.D
    Eh = mat.E * mat.h
    A, B, Ah, Bh = sol.A, sol.B, sol.A_hat, sol.B_hat
    Az = Ah * z + A
    Bz_r = _rhat_dot(Bh * z + B, curve)
    zero = np.zeros(curve.n)
    kernel = warping_kernel(curve, mat, Ah, Bh, thin=True).values
    nm = MembraneCouple(
        N_ss=zero,
        N_sz=C * (1.0 - nu) * sol.K * curve.area / curve.length - Eh * shear_flow_profile(curve, Ah),
        N_zz=Eh * _rhat_dot(Az, curve),
        M_ss=-Bz_r,
        M_sz=-D * (1.0 - nu) * (sol.K + sol.K_tilde - nu * _r_cross_e3_dot(Ah, curve) + kernel),
        M_zz=-D * (1.0 - nu**2) * _n_dot(Az, curve) - nu * Bz_r,
    )
    M_zz_z = -D * (1.0 - nu**2) * _n_dot(Ah, curve) - nu * _rhat_dot(Bh, curve)
    return resample_stress(effective_tractions(nm, curve, M_zz_z=M_zz_z), curve, s)


def thin_field(sol: ThinSolution, s=None, z=0.0):
    """Displacement (shape ``(3, len(s))``) and stress state at height ``z``."""
    return thin_poly_field(sol).displacement(s, z), thin_stress(sol, s, z)

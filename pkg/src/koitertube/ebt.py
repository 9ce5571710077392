"""Extension, bending and torsion of a tube loaded by an axial force and end moments.

The displacement is quadratic in ``z``.  Its section profile contains a
vector of constants ``B`` fixed by single-valuedness around the closed
section; ``B`` is linear in the strain measures ``A`` (``B = L A``), and
``A`` in turn is fixed by the end resultants.  The twist rate ``K``
decouples and follows from the applied torque alone.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NonAxialForce, SingularSystem
from .fields import PolyZField, vector_series
from .geometry import ArcSeries, SectionCurve, closed_integral, cumulative_integral
from .shell import MembraneCouple, ShellMaterial, StressState, effective_tractions

CONDITION_LIMIT = 1e12
LOAD_TOLERANCE = 1e-12


@dataclass(frozen=True)
class ResultantLoads:
    """End force and end moment about the working origin, as 3-vectors."""

    force: tuple = (0.0, 0.0, 0.0)
    moment: tuple = (0.0, 0.0, 0.0)

    def __post_init__(self):
        for name in ("force", "moment"):
            v = np.asarray(getattr(self, name), dtype=float)
            if v.shape != (3,) or not np.all(np.isfinite(v)):
                raise ValueError(f"{name} must be a finite 3-vector")
            object.__setattr__(self, name, tuple(float(x) for x in v))

    @property
    def R(self):
        return np.array(self.force)

    @property
    def M(self):
        return np.array(self.moment)

    def axial_part(self):
        """Axial force with all moments."""
        return ResultantLoads((0.0, 0.0, self.force[2]), self.moment)

    def transverse_part(self):
        """Transverse force only."""
        return ResultantLoads((self.force[0], self.force[1], 0.0), (0.0, 0.0, 0.0))

    def scale(self, length):
        """Force scale combining both resultants for a section of perimeter ``length``."""
        return float(np.linalg.norm(self.R) + np.linalg.norm(self.M) / length)

    def __add__(self, other):
        return ResultantLoads(self.R + other.R, self.M + other.M)

    def __mul__(self, a):
        return ResultantLoads(self.R * a, self.M * a)

    __rmul__ = __mul__


def _rhat_dot(vec, curve):
    """``vec . r_hat`` on the grid."""
    vec = np.asarray(vec, dtype=float)
    return vec[0] * curve.x[0] + vec[1] * curve.x[1] + vec[2] * curve.length


def _rhat_series(vec, curve):
    """``vec . r_hat`` as a series carrying its exact derivative."""
    vec = np.asarray(vec, dtype=float)
    return curve.frame.x.dot(np.array([vec[0], vec[1], 0.0])) + vec[2] * curve.length


def _n_dot(vec, curve):
    vec = np.asarray(vec, dtype=float)
    return vec[0] * curve.normal[0] + vec[1] * curve.normal[1]


def _r_cross_e3_dot(vec, curve):
    """``vec . (r x e3)`` with ``r x e3 = (x2, -x1, 0)``."""
    vec = np.asarray(vec, dtype=float)
    return vec[0] * curve.x[1] - vec[1] * curve.x[0]


def guarded_solve(matrix, rhs, what):
    """Solve a small dense system after checking its scaled condition number.

    Rows and columns are equilibrated before the check so the guard does
    not depend on the choice of units.

    Raises
    ------
    SingularSystem
        Condition number above ``CONDITION_LIMIT``.
    """
    matrix = np.asarray(matrix, dtype=float)
    rows = np.abs(matrix).max(axis=1)
    rows[rows == 0.0] = 1.0
    scaled = matrix / rows[:, None]
    cols = np.abs(scaled).max(axis=0)
    cols[cols == 0.0] = 1.0
    scaled = scaled / cols[None, :]
    cond = float(np.linalg.cond(scaled))
    if not np.isfinite(cond) or cond > CONDITION_LIMIT:
        raise SingularSystem(f"{what} is singular to working precision (condition {cond:.3e})", matrix, cond)
    rhs = np.asarray(rhs, dtype=float)
    rhs_scaled = rhs / (rows if rhs.ndim == 1 else rows[:, None])
    sol = np.linalg.solve(scaled, rhs_scaled)
    return (sol / cols if sol.ndim == 1 else sol / cols[:, None]), cond


def torsion_function(curve: SectionCurve) -> ArcSeries:
    """Axial warping profile under unit twist, zero at ``s = 0``."""
    slope = 2.0 * curve.area / curve.length
    frame = curve.frame
    return ArcSeries.linear(slope, curve.n, curve.length) - cumulative_integral(curve, frame.x.dot(frame.normal))


def torsional_stiffness(curve, mat):
    """``2 (1 - nu) (C A^2 / length + D length)``; the torque per unit twist, up to sign."""
    return 2.0 * (1.0 - mat.nu) * (mat.C * curve.area**2 / curve.length + mat.D * curve.length)


def seam_matrices(curve: SectionCurve, mat: ShellMaterial):
    """Single-valuedness conditions ``G_A A + G_B B = 0`` as two 3x3 matrices."""
    nu, C, D = mat.nu, mat.C, mat.D
    kappa, x, rh = curve.curvature, curve.x, curve.r_hat
    w = 1.0 / D + kappa**2 / C
    tau3 = curve.tau3
    GA = np.empty((3, 3))
    GB = np.empty((3, 3))
    GA[0] = nu * closed_integral(curve, kappa * rh)
    GB[0] = closed_integral(curve, w * rh)
    for a in range(2):
        e = np.zeros((3, 1))
        e[a] = 1.0
        GA[a + 1] = nu * closed_integral(curve, x[a] * kappa * rh)
        GB[a + 1] = closed_integral(curve, x[a] * w * rh + (e + curve.tangent[a] * tau3) / C)
    return GA, GB


def coupling_matrix(curve: SectionCurve, mat: ShellMaterial):
    """Matrix ``L`` with ``B = L A``, built column by column from unit ``A``."""
    GA, GB = seam_matrices(curve, mat)
    L, cond = guarded_solve(GB, -GA, "seam system")
    return L, cond


def resultant_matrix(curve: SectionCurve, mat: ShellMaterial, L):
    """Matrix ``H`` mapping ``A`` to ``(-R3, M2, -M1)`` once ``B = L A`` is substituted."""
    nu, C, D = mat.nu, mat.C, mat.D
    Eh = C * (1.0 - nu**2)
    kappa, x, rh, n3 = curve.curvature, curve.x, curve.r_hat, curve.n3
    HA = np.empty((3, 3))
    HB = np.empty((3, 3))
    HA[0] = Eh * closed_integral(curve, rh)
    HB[0] = -nu * closed_integral(curve, kappa * rh)
    for a in range(2):
        na = curve.normal[a]
        HA[a + 1] = Eh * closed_integral(curve, x[a] * rh + (D / C) * na * n3)
        HB[a + 1] = -nu * closed_integral(curve, x[a] * (kappa * rh + n3) - na * rh)
    return HA + HB @ L


def warping_vector(curve: SectionCurve, mat: ShellMaterial, A, B, thin=False) -> ArcSeries:
    """Section profile ``w(s)`` of the displacement for strain measures ``A``, ``B``.

    With ``thin=True`` the terms of relative order ``(h / length)^2`` are
    dropped: the ``1/C`` contributions and the ``1/(C R^2)`` part of the
    kernel.
    """
    nu, C, D = mat.nu, mat.C, mat.D
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    kappa = curve.curvature
    X = curve.frame.x
    A_in = np.array([A[0], A[1], 0.0])
    Ar = _rhat_dot(A, curve)
    Br = _rhat_dot(B, curve)
    w = 1.0 / D if thin else 1.0 / D + kappa**2 / C
    g = nu * kappa * Ar + w * Br
    G = cumulative_integral(curve, g)
    profile = X.dot(X) * (0.5 * nu * A_in) - X * _rhat_series(A, curve) * nu
    profile = profile - cumulative_integral(curve, G * curve.frame.normal)
    if not thin:
        b_cross = np.array([B[1], -B[0], 0.0])
        profile = profile + ArcSeries.linear(b_cross / C, curve.n, curve.length)
        profile = profile - cumulative_integral(curve, kappa * Br * curve.tau3) / C
    return profile


def warping_kernel(curve, mat, A, B, thin=False):
    """``int_0^s [nu A / R + (1/D + 1/(C R^2)) B] . r_hat`` as an :class:`ArcSeries`."""
    kappa = curve.curvature
    w = 1.0 / mat.D if thin else 1.0 / mat.D + kappa**2 / mat.C
    return cumulative_integral(curve, mat.nu * kappa * _rhat_dot(A, curve) + w * _rhat_dot(B, curve))


@dataclass(frozen=True, eq=False)
class EBTSolution:
    """Constants and profiles of the extension-bending-torsion solution.

    ``A`` holds ``(A1, A2, A3)``; the stretch measure ``A3 * length`` is
    :attr:`A_bar`.  ``B = L A``.  ``phi`` is the torsion function.
    """

    curve: SectionCurve
    material: ShellMaterial
    loads: ResultantLoads
    A: np.ndarray
    B: np.ndarray
    K: float
    L: np.ndarray
    H: np.ndarray
    phi: ArcSeries
    seam_condition: float
    resultant_condition: float

    @property
    def A_bar(self):
        return np.array([self.A[0], self.A[1], self.A[2] * self.curve.length])

    def field(self):
        return ebt_field(self)

    def coefficients(self):
        return {
            "A": [float(v) for v in self.A],
            "A_bar3": float(self.A[2] * self.curve.length),
            "B": [float(v) for v in self.B],
            "K": float(self.K),
            "condition_seam": self.seam_condition,
            "condition_resultant": self.resultant_condition,
        }


def _check_axial(loads, curve):
    scale = max(loads.scale(curve.length), np.finfo(float).tiny)
    if abs(loads.force[0]) > LOAD_TOLERANCE * scale or abs(loads.force[1]) > LOAD_TOLERANCE * scale:
        raise NonAxialForce("extension-bending-torsion loads must have zero transverse force")


def solve_ebt(curve: SectionCurve, mat: ShellMaterial, loads: ResultantLoads) -> EBTSolution:
    """Constants ``A, B, K`` for an axial force and arbitrary end moments.

    Loads are taken about the section centroid.

    Raises
    ------
    NonAxialForce
        The load has a transverse force component.
    SingularSystem
        Either 3x3 system is numerically singular.
    """
    _check_axial(loads, curve)
    L, cond_seam = coupling_matrix(curve, mat)
    H = resultant_matrix(curve, mat, L)
    R, M = loads.R, loads.M
    rhs = np.array([-R[2], M[1], -M[0]])
    A, cond_res = guarded_solve(H, rhs, "resultant system")
    K = -M[2] / torsional_stiffness(curve, mat)
    return EBTSolution(
        curve=curve,
        material=mat,
        loads=loads,
        A=A,
        B=L @ A,
        K=float(K),
        L=L,
        H=H,
        phi=torsion_function(curve),
        seam_condition=cond_seam,
        resultant_condition=cond_res,
    )


def _e3_series(curve, scalar):
    return vector_series(curve, (0.0, 0.0, scalar))


def ebt_field(sol: EBTSolution) -> PolyZField:
    """Displacement as a quadratic polynomial in ``z``."""
    curve = sol.curve
    A, K = sol.A, sol.K
    w = warping_vector(curve, sol.material, A, sol.B)
    t0 = w + _e3_series(curve, sol.phi * K)
    X = curve.frame.x
    t1 = vector_series(curve, (X[1] * -K, X[0] * K, _rhat_series(A, curve)))
    t2 = vector_series(curve, (-0.5 * A[0], -0.5 * A[1], 0.0))
    return PolyZField(curve, {0: t0, 1: t1, 2: t2})


def ebt_displacement(sol: EBTSolution, s=None, z=0.0):
    """Displacement at arc positions ``s`` (default: the grid) and height ``z``; shape (3, len(s))."""
    return ebt_field(sol).displacement(s, z)


def ebt_stress(sol: EBTSolution, s=None) -> StressState:
    """Closed-form stress state; identical at every height ``z``."""
    curve, mat = sol.curve, sol.material
    nu, C, D = mat.nu, mat.C, mat.D
    A, B, K = sol.A, sol.B, sol.K
    kappa = curve.curvature
    Br = _rhat_dot(B, curve)
    Bn = _n_dot(B, curve) + kappa * Br
    one = np.ones(curve.n)
    nm = MembraneCouple(
        N_ss=-Bn,
        N_sz=C * (1.0 - nu) * K * curve.area / curve.length * one,
        N_zz=C * (1.0 - nu**2) * _rhat_dot(A, curve) - nu * Bn,
        M_ss=-Br,
        M_sz=-D * (1.0 - nu) * K * one,
        M_zz=-D * (1.0 - nu**2) * _n_dot(A, curve) - nu * Br,
    )
    return resample_stress(effective_tractions(nm, curve), curve, s)


def resample_stress(stress: StressState, curve, s):
    if s is None:
        return stress
    return StressState(**{k: curve.interpolate(np.asarray(v), s) for k, v in stress.as_dict().items()})


@dataclass(frozen=True, eq=False)
class ExactSolution:
    """Superposition of the extension-bending-torsion and flexure solutions."""

    ebt: EBTSolution
    flexure: "object"

    def field(self):
        return self.ebt.field() + self.flexure.field()

    def stress(self, s=None, z=0.0):
        return ebt_stress(self.ebt, s) + self.flexure.stress(s, z)


def solve_exact(curve: SectionCurve, mat: ShellMaterial, loads: ResultantLoads) -> ExactSolution:
    """Split a general load into its two sub-problems and solve both."""
    from .flexure import solve_flexure

    return ExactSolution(
        ebt=solve_ebt(curve, mat, loads.axial_part()),
        flexure=solve_flexure(curve, mat, loads.transverse_part()),
    )

"""Independent numerical checks of a candidate displacement field.

Nothing here uses the closed-form stress expressions of the solvers.
Stresses are rebuilt from the displacement alone (strains, then the
constitutive law, then the effective tractions) and tested against the
equilibrium equations, the end resultants, single-valuedness around the
section and the balance between the two end edges.

Derivatives along the section are spectral.  Fields that carry exact
s-derivatives of their own supply ``u_s`` and ``u_ss`` directly; only the
stresses are then differentiated from samples.  Derivatives in ``z`` come
from a five-station stencil; for fields that declare a polynomial degree
of at most four the stencil is exact and its spacing is set to the
section's characteristic length, otherwise a small spacing is used.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .fields import ZDerivativeField
from .geometry import SectionCurve, closed_integral, spectral_derivative
from .shell import (
    STENCIL,
    ShellMaterial,
    StressState,
    constitutive,
    effective_tractions,
    strains_from_displacement,
    z_derivative,
)

FD_STEP_FRACTION = 1e-2
EQUATIONS = ("tangential", "axial", "normal")


def _stencil_step(field, curve):
    deg = getattr(field, "z_degree", None)
    if deg is not None and deg < STENCIL:
        return curve.char_length
    return FD_STEP_FRACTION * curve.char_length


def _stencil(z0, step):
    return z0 + step * np.arange(-(STENCIL // 2), STENCIL // 2 + 1)


def _is_tabulated(field):
    return hasattr(field, "z") and hasattr(field, "u")


def _local_stations(field, curve, z0):
    """Five stations around ``z0`` and the position of ``z0`` among them.

    Tabulated fields use their own neighbouring stations, so ``z0`` must
    be one of them.
    """
    if _is_tabulated(field):
        idx = field.station(z0)
        lo = min(max(idx - STENCIL // 2, 0), len(field.z) - STENCIL)
        return field.z[lo : lo + STENCIL], idx - lo
    return _stencil(float(z0), _stencil_step(field, curve)), STENCIL // 2


def sample_field(field, z, s_order=0):
    """Grid displacement (or an s-derivative) at each station; shape (3, nz, n)."""
    return np.stack([field.displacement(None, float(zk), s_order) for zk in z], axis=1)


def sample_with_derivatives(field, z):
    """``(u, u_s, u_ss)`` on the grid; derivatives come from the field itself."""
    return tuple(sample_field(field, z, k) for k in range(3))


def stresses_from_displacement(u, z, curve: SectionCurve, mat: ShellMaterial, u_s=None, u_ss=None):
    """Rebuild the full stress state from station samples of ``u``."""
    strain = strains_from_displacement(u, z, curve, u_s, u_ss)
    nm = constitutive(strain, mat)
    stress = effective_tractions(
        nm, curve, M_sz_z=z_derivative(nm.M_sz, z), M_zz_z=z_derivative(nm.M_zz, z)
    )
    return strain, stress


def station_residuals(u, z, curve: SectionCurve, mat: ShellMaterial, u_s=None, u_ss=None):
    """Residuals of the three equilibrium equations at every station.

    Returns
    -------
    residual : ndarray, shape (3, nz, n)
    stress : StressState with components of shape (nz, n)
    """
    _, st = stresses_from_displacement(u, z, curve, mat, u_s, u_ss)
    L = curve.length
    kappa = curve.curvature

    def ds(a):
        return spectral_derivative(a, L)

    def dz(a):
        return z_derivative(a, z)

    res = np.stack(
        [
            ds(st.P_ss) + dz(st.P_sz) + kappa * st.S_s,
            ds(st.P_zs) + dz(st.P_zz),
            ds(st.S_s) + dz(st.S_z) - kappa * st.P_ss,
        ]
    )
    return res, st


def stress_scale(stress: StressState, curve: SectionCurve):
    """Characteristic force per length of a stress state."""
    lc = curve.char_length
    d = stress.as_dict()
    force_like = [d[k] for k in ("N_ss", "N_sz", "N_zz", "P_ss", "P_sz", "P_zs", "P_zz", "S_s", "S_z")]
    couple = [d[k] for k in ("M_ss", "M_sz", "M_zz")]
    vals = [np.max(np.abs(v)) for v in force_like] + [np.max(np.abs(v)) / lc for v in couple]
    return float(max(vals))


@dataclass
class EquilibriumReport:
    """Residual norms of the three equilibrium equations.

    ``relative`` is ``max|residual| * char_length / stress_scale``: the
    imbalance per unit length expressed against the largest stress.
    """

    max_abs: np.ndarray
    l2: np.ndarray
    relative: np.ndarray
    stress_scale: float
    z_stations: list
    grid_n: int

    @property
    def worst(self):
        return float(np.max(self.relative))

    def as_dict(self):
        return {
            "max_abs": dict(zip(EQUATIONS, map(float, self.max_abs))),
            "l2": dict(zip(EQUATIONS, map(float, self.l2))),
            "relative": dict(zip(EQUATIONS, map(float, self.relative))),
            "relative_max": self.worst,
            "stress_scale": self.stress_scale,
            "z_stations": [float(v) for v in self.z_stations],
            "grid_n": self.grid_n,
        }


def _equilibrium_from_rows(res, stress, curve, z_list, rows):
    lc = curve.char_length
    picked = res[:, rows, :]
    max_abs = np.max(np.abs(picked), axis=(1, 2))
    l2 = np.sqrt(np.mean(picked**2, axis=(1, 2)) * curve.length)
    scale = stress_scale(stress, curve)
    rel = max_abs * lc / scale if scale > 0 else np.zeros(3)
    return EquilibriumReport(max_abs, l2, rel, scale, list(z_list), curve.n)


def equilibrium_residual(field, curve: SectionCurve, mat: ShellMaterial, z_stations=(0.0,)) -> EquilibriumReport:
    """Equilibrium residuals of ``field`` at the requested heights.

    Fields evaluable at any height are sampled on a five-point stencil
    around each requested station.  Tabulated fields are used at their
    own stations (``z_stations`` is then ignored).
    """
    if _is_tabulated(field):
        res, st = station_residuals(field.u, field.z, curve, mat)
        return _equilibrium_from_rows(res, st, curve, field.z, slice(None))
    step = _stencil_step(field, curve)
    res_all, scales = [], []
    for z0 in z_stations:
        z = _stencil(float(z0), step)
        u, u_s, u_ss = sample_with_derivatives(field, z)
        res, st = station_residuals(u, z, curve, mat, u_s, u_ss)
        res_all.append(res[:, STENCIL // 2])
        scales.append(st)
    res = np.stack(res_all, axis=1)
    merged = StressState(**{k: np.stack([s.as_dict()[k] for s in scales]) for k in StressState.NAMES})
    return _equilibrium_from_rows(res, merged, curve, z_stations, slice(None))


# ---------------------------------------------------------------------------
# end resultants
# ---------------------------------------------------------------------------


def _cross_r(curve, v):
    """``r x v`` for in-plane positions ``r`` and sampled 3-vectors ``v``."""
    x1, x2 = curve.x
    return np.stack([x2 * v[2], -x1 * v[2], x1 * v[1] - x2 * v[0]])


def resultants_from_stress(stress: StressState, M_zz_z, curve: SectionCurve, form="membrane"):
    """Force and moment functionals of a single station, about the section centre.

    ``form="membrane"`` integrates the membrane and couple resultants
    directly; ``form="traction"`` integrates the effective edge tractions.
    The two agree for any displacement field.
    """
    tau, nrm = curve.tau3, curve.n3
    e3 = np.array([0.0, 0.0, 1.0])[:, None]
    if form == "membrane":
        N_sz, N_zz, M_sz, M_zz = stress.N_sz, stress.N_zz, stress.M_sz, stress.M_zz
        R = -closed_integral(curve, N_sz * tau + N_zz * e3 - M_zz_z * nrm)
        r_x_e3 = np.vstack([curve.x[1], -curve.x[0], np.zeros(curve.n)])
        axial = N_sz * curve.r_dot_n - 2.0 * M_sz + M_zz_z * curve.r_dot_tau
        M = -closed_integral(curve, N_zz * r_x_e3 + M_zz * tau + axial * e3)
    elif form == "traction":
        t = stress.P_sz * tau + stress.P_zz * e3 + stress.S_z * nrm
        R = -closed_integral(curve, t)
        M = -closed_integral(curve, _cross_r(curve, t) - stress.M_sz * e3 + stress.M_zz * tau)
    else:
        raise ValueError(f"unknown resultant form {form!r}")
    return R, M


def _stress_on_stations(field, curve, mat, z0):
    z, mid = _local_stations(field, curve, z0)
    u, u_s, u_ss = sample_with_derivatives(field, z)
    _, st = stresses_from_displacement(u, z, curve, mat, u_s, u_ss)
    one = StressState(**{k: np.asarray(v)[mid] for k, v in st.as_dict().items()})
    return one, st, z, mid


def stress_at(field, curve: SectionCurve, mat: ShellMaterial, z0=0.0) -> StressState:
    """Stress state at height ``z0`` rebuilt from the displacement alone."""
    return _stress_on_stations(field, curve, mat, z0)[0]


def end_resultants(field, curve: SectionCurve, mat: ShellMaterial, z0=0.0, form="membrane"):
    """Resultant force and moment transmitted across the section at height ``z0``.

    The moment is taken about the origin of the coordinate system (the
    centroid of the section at ``z = 0``).
    """
    one, st, z, mid = _stress_on_stations(field, curve, mat, z0)
    nm_zz_z = z_derivative(st.M_zz, z)[mid]
    R, M = resultants_from_stress(one, nm_zz_z, curve, form)
    M = M + float(z0) * np.cross([0.0, 0.0, 1.0], R)
    return R, M


@dataclass
class ResultantReport:
    force: np.ndarray
    moment: np.ndarray
    prescribed_force: np.ndarray
    prescribed_moment: np.ndarray
    deviation: float

    def as_dict(self):
        return {
            "force": [float(v) for v in self.force],
            "moment": [float(v) for v in self.moment],
            "prescribed_force": [float(v) for v in self.prescribed_force],
            "prescribed_moment": [float(v) for v in self.prescribed_moment],
            "relative_deviation": self.deviation,
        }


def resultant_deviation(R, M, R0, M0, length):
    """Largest of the force and moment mismatches relative to the load scale."""
    R0, M0 = np.asarray(R0, float), np.asarray(M0, float)
    scale = np.linalg.norm(R0) + np.linalg.norm(M0) / length
    if scale == 0.0:
        scale = np.linalg.norm(R) + np.linalg.norm(M) / length
    if scale == 0.0:
        return 0.0
    return float(max(np.linalg.norm(R - R0) / scale, np.linalg.norm(M - M0) / (scale * length)))


def check_resultants(field, curve, mat, loads, z0=0.0, form="membrane") -> ResultantReport:
    R, M = end_resultants(field, curve, mat, z0, form)
    return ResultantReport(R, M, loads.R, loads.M, resultant_deviation(R, M, loads.R, loads.M, curve.length))


# ---------------------------------------------------------------------------
# seams and balance
# ---------------------------------------------------------------------------


@dataclass
class SeamReport:
    defects: np.ndarray  # value, first and second s-derivative
    relative: np.ndarray
    field_scale: float

    @property
    def worst(self):
        return float(np.max(self.relative))

    def as_dict(self):
        keys = ("value", "first_derivative", "second_derivative")
        return {
            "absolute": dict(zip(keys, map(float, self.defects))),
            "relative": dict(zip(keys, map(float, self.relative))),
            "relative_max": self.worst,
            "field_scale": self.field_scale,
        }


def continuity_check(field, z_stations=(0.0,)) -> SeamReport:
    """Mismatch of ``u``, ``u_s`` and ``u_ss`` between ``s = 0`` and ``s = length``."""
    curve = field.curve
    ends = np.array([0.0, curve.length])
    defects = np.zeros(3)
    scale = 0.0
    for z in z_stations:
        scale = max(scale, float(np.max(np.abs(field.displacement(None, float(z))))))
        for k in range(3):
            u = field.displacement(ends, float(z), s_order=k)
            defects[k] = max(defects[k], float(np.max(np.abs(u[:, 0] - u[:, 1]))))
    wave = 2.0 * np.pi / curve.length
    if scale > 0.0:
        relative = defects / (scale * wave ** np.arange(3))
    else:
        relative = np.where(defects > 0.0, np.inf, 0.0)
    return SeamReport(defects, relative, scale)


@dataclass
class BalanceReport:
    force_start: np.ndarray
    moment_start: np.ndarray
    force_end: np.ndarray
    moment_end: np.ndarray
    local_moment_end: np.ndarray
    defect: float
    length: float

    def as_dict(self):
        return {
            "tube_length": self.length,
            "force_z0": [float(v) for v in self.force_start],
            "moment_z0": [float(v) for v in self.moment_start],
            "force_zl": [float(v) for v in self.force_end],
            "moment_zl_about_origin": [float(v) for v in self.moment_end],
            "moment_zl_about_section": [float(v) for v in self.local_moment_end],
            "relative_defect": self.defect,
        }


def global_balance(field, curve: SectionCurve, mat: ShellMaterial, length) -> BalanceReport:
    """Compare the loads carried across ``z = 0`` and ``z = length``.

    The far end edge carries the negatives of these resultants, so the
    two must agree once moments are referred to the same origin.
    """
    if length <= 0:
        raise ValueError("tube length must be positive")
    R0, M0 = end_resultants(field, curve, mat, 0.0)
    R1, M1 = end_resultants(field, curve, mat, float(length))
    local = M1 - float(length) * np.cross([0.0, 0.0, 1.0], R1)
    defect = resultant_deviation(R1, M1, R0, M0, curve.length)
    return BalanceReport(R0, M0, R1, M1, local, defect, float(length))


# ---------------------------------------------------------------------------
# derived-field properties and diagnostics
# ---------------------------------------------------------------------------


def z_derivative_field(field, step=None):
    """Five-point ``du/dz`` of ``field`` (exact for polynomial degree <= 4)."""
    return ZDerivativeField(field, step if step is not None else _stencil_step(field, field.curve))


def strain_diagnostic(field, curve, mat, z_stations=(0.0,)):
    """Ratio ``max|eps| / (h max|rho|)``; large values flag strong extension."""
    eps_max = rho_max = 0.0
    for z0 in z_stations:
        z, mid = _local_stations(field, curve, z0)
        u, u_s, u_ss = sample_with_derivatives(field, z)
        strain = strains_from_displacement(u, z, curve, u_s, u_ss)
        eps = np.sqrt(strain.eps_ss[mid] ** 2 + 2 * strain.eps_sz[mid] ** 2 + strain.eps_zz[mid] ** 2)
        rho = np.sqrt(strain.rho_ss[mid] ** 2 + 2 * strain.rho_sz[mid] ** 2 + strain.rho_zz[mid] ** 2)
        eps_max = max(eps_max, float(eps.max()))
        rho_max = max(rho_max, float(rho.max()))
    denom = mat.h * rho_max
    ratio = eps_max / denom if denom > 0 else (np.inf if eps_max > 0 else 0.0)
    return {"max_strain_norm": eps_max, "thickness_times_max_curvature_norm": denom, "ratio": float(ratio)}


def rigid_fit(u, points):
    """Least-squares rigid motion ``c + d x p`` for displacements ``u`` at ``points``.

    Both arrays have shape (3, m).  Returns ``(c, d)``.
    """
    u = np.asarray(u, float)
    p = np.asarray(points, float)
    m = p.shape[1]
    rows = np.zeros((3, m, 6))
    rows[0, :, 0] = rows[1, :, 1] = rows[2, :, 2] = 1.0
    # d x p = (d2 p3 - d3 p2, d3 p1 - d1 p3, d1 p2 - d2 p1)
    rows[0, :, 4], rows[0, :, 5] = p[2], -p[1]
    rows[1, :, 5], rows[1, :, 3] = p[0], -p[2]
    rows[2, :, 3], rows[2, :, 4] = p[1], -p[0]
    coef, *_ = np.linalg.lstsq(rows.reshape(3 * m, 6), u.reshape(3 * m), rcond=None)
    return coef[:3], coef[3:]


def remove_rigid(u, points):
    """``u`` minus its least-squares rigid part."""
    c, d = rigid_fit(u, points)
    return u - (c[:, None] + np.cross(d, np.asarray(points, float).T).T)


def grid_points(curve, z, s=None):
    """Cartesian points of the ``(z, s)`` evaluation grid, shape (3, nz * ns)."""
    if s is None:
        x = curve.x
    else:
        from .geometry import trig_interpolate

        x = trig_interpolate(curve.x, curve.length, s)
    pts = [np.vstack([x, np.full(x.shape[1], zk)]) for zk in z]
    return np.hstack(pts)


def sample_on(field, z, s=None):
    """Displacements of ``field`` on the ``(z, s)`` grid flattened to (3, nz * ns)."""
    return np.hstack([field.displacement(s, float(zk)) for zk in z])


def displacement_gap(field_a, field_b, z, s=None, rigid=True):
    """Largest pointwise displacement difference, optionally modulo rigid motion."""
    curve = field_a.curve
    diff = sample_on(field_a, z, s) - sample_on(field_b, z, s)
    if rigid:
        diff = remove_rigid(diff, grid_points(curve, z, s))
    return float(np.max(np.abs(diff)))


@dataclass
class ResidualReport:
    """Everything the verification suite measured for one field."""

    equilibrium: EquilibriumReport
    resultants: ResultantReport
    seams: SeamReport
    balance: BalanceReport
    diagnostic: dict = field(default_factory=dict)

    def as_dict(self):
        return {
            "equilibrium": self.equilibrium.as_dict(),
            "resultants": self.resultants.as_dict(),
            "seams": self.seams.as_dict(),
            "balance": self.balance.as_dict(),
            "strain_diagnostic": self.diagnostic,
        }


def verify_field(field, curve, mat, loads, length, z_stations=None) -> ResidualReport:
    """Run the whole suite on ``field`` for a tube of the given length."""
    if z_stations is None:
        z_stations = tuple(field.z) if _is_tabulated(field) else (0.0, 0.5 * length, float(length))
    return ResidualReport(
        equilibrium=equilibrium_residual(field, curve, mat, z_stations),
        resultants=check_resultants(field, curve, mat, loads),
        seams=continuity_check(field, z_stations),
        balance=global_balance(field, curve, mat, length),
        diagnostic=strain_diagnostic(field, curve, mat, z_stations),
    )

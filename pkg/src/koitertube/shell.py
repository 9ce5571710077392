"""Material constants and the strain, stress and traction maps on the cylinder.

Arrays follow one convention throughout: the arc-length sample index is the
last axis, so a field on an ``(nz, n)`` grid of z-stations by section
samples has shape ``(nz, n)`` per component.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields

import numpy as np

from .errors import GridMismatch, InvalidMaterial, TooFewZStations
from .geometry import SectionCurve, spectral_derivative


@dataclass(frozen=True)
class ShellMaterial:
    """Isotropic shell of thickness ``h`` made of a material ``(E, nu)``."""

    E: float
    nu: float
    h: float

    @property
    def C(self):
        """Stretching stiffness ``E h / (1 - nu^2)``."""
        return self.E * self.h / (1.0 - self.nu**2)

    @property
    def D(self):
        """Bending stiffness ``E h^3 / (12 (1 - nu^2))``."""
        return self.E * self.h**3 / (12.0 * (1.0 - self.nu**2))

    @property
    def mu(self):
        """Shear modulus."""
        return self.E / (2.0 * (1.0 + self.nu))

    def with_thickness(self, h):
        return stiffnesses(self.E, self.nu, h)

    def as_dict(self):
        return {"E": self.E, "nu": self.nu, "h": self.h, "C": self.C, "D": self.D, "mu": self.mu}


def stiffnesses(E, nu, h) -> ShellMaterial:
    """Validate ``(E, nu, h)`` and return the material record.

    Raises
    ------
    InvalidMaterial
        With ``field`` set to the offending parameter.
    """
    checks = (
        ("E", E, lambda v: v > 0.0, "must be positive"),
        ("nu", nu, lambda v: -1.0 < v < 0.5, "must lie in (-1, 0.5)"),
        ("h", h, lambda v: v > 0.0, "must be positive"),
    )
    for name, value, ok, why in checks:
        try:
            value = float(value)
        except (TypeError, ValueError):
            raise InvalidMaterial(name, f"{name} is not a number: {value!r}") from None
        if not math.isfinite(value) or not ok(value):
            raise InvalidMaterial(name, f"{name} {why}, got {value!r}")
    return ShellMaterial(float(E), float(nu), float(h))


class _Components:
    """Small mixin giving linear algebra over named array components."""

    def _map(self, fn, *others):
        vals = {}
        for f in fields(self):
            mine = getattr(self, f.name)
            theirs = [getattr(o, f.name) for o in others]
            vals[f.name] = fn(mine, *theirs)
        return type(self)(**vals)

    def __add__(self, other):
        return self._map(lambda a, b: a + b, other)

    def __sub__(self, other):
        return self._map(lambda a, b: a - b, other)

    def __mul__(self, scalar):
        return self._map(lambda a: a * scalar)

    __rmul__ = __mul__

    def as_dict(self):
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def max_abs(self):
        return max(float(np.max(np.abs(v))) for v in self.as_dict().values())


@dataclass(frozen=True)
class StrainState(_Components):
    """Change of metric ``eps_*`` and change of curvature ``rho_*``."""

    eps_ss: np.ndarray
    eps_sz: np.ndarray
    eps_zz: np.ndarray
    rho_ss: np.ndarray
    rho_sz: np.ndarray
    rho_zz: np.ndarray


@dataclass(frozen=True)
class MembraneCouple(_Components):
    """Stress resultants ``N`` and couple resultants ``M`` (symmetric)."""

    N_ss: np.ndarray
    N_sz: np.ndarray
    N_zz: np.ndarray
    M_ss: np.ndarray
    M_sz: np.ndarray
    M_zz: np.ndarray


@dataclass(frozen=True)
class StressState(_Components):
    """Full stress state: ``N``, ``M``, effective tractions ``P`` and shears ``S``.

    ``P_sz`` and ``P_zs`` differ in general; ``P_zs`` always equals ``N_sz``.
    """

    N_ss: np.ndarray
    N_sz: np.ndarray
    N_zz: np.ndarray
    M_ss: np.ndarray
    M_sz: np.ndarray
    M_zz: np.ndarray
    P_ss: np.ndarray
    P_sz: np.ndarray
    P_zs: np.ndarray
    P_zz: np.ndarray
    S_s: np.ndarray
    S_z: np.ndarray

    NAMES = (
        "N_ss", "N_sz", "N_zz", "M_ss", "M_sz", "M_zz",
        "P_ss", "P_sz", "P_zs", "P_zz", "S_s", "S_z",
    )

    def stack(self):
        return np.stack([np.broadcast_to(getattr(self, k), self.N_ss.shape) for k in self.NAMES])


def constitutive(strain: StrainState, mat: ShellMaterial) -> MembraneCouple:
    """Linear isotropic law mapping strains to ``N`` and ``M``."""
    C, D, nu = mat.C, mat.D, mat.nu
    return MembraneCouple(
        N_ss=C * (strain.eps_ss + nu * strain.eps_zz),
        N_sz=C * (1.0 - nu) * strain.eps_sz,
        N_zz=C * (nu * strain.eps_ss + strain.eps_zz),
        M_ss=D * (strain.rho_ss + nu * strain.rho_zz),
        M_sz=D * (1.0 - nu) * strain.rho_sz,
        M_zz=D * (nu * strain.rho_ss + strain.rho_zz),
    )


def effective_tractions(nm: MembraneCouple, curve: SectionCurve, M_sz_z=0.0, M_zz_z=0.0) -> StressState:
    """Complete ``N, M`` with ``P`` and ``S``.

    The s-derivatives of the couple resultants are spectral; the
    z-derivatives ``M_sz_z`` and ``M_zz_z`` must be supplied by the caller
    (scalars or arrays broadcastable to the component shape).
    """
    shape = np.broadcast_shapes(*(np.shape(v) for v in nm.as_dict().values()))
    if not shape or shape[-1] != curve.n:
        raise GridMismatch(f"stress samples must end with an axis of length {curve.n}")
    nm = MembraneCouple(**{k: np.broadcast_to(v, shape) for k, v in nm.as_dict().items()})
    kappa = curve.curvature
    return StressState(
        N_ss=nm.N_ss,
        N_sz=nm.N_sz,
        N_zz=nm.N_zz,
        M_ss=nm.M_ss,
        M_sz=nm.M_sz,
        M_zz=nm.M_zz,
        P_ss=nm.N_ss - kappa * nm.M_ss,
        P_sz=nm.N_sz - kappa * nm.M_sz,
        P_zs=nm.N_sz,
        P_zz=nm.N_zz,
        S_s=-spectral_derivative(nm.M_ss, curve.length) - M_sz_z,
        S_z=-spectral_derivative(nm.M_sz, curve.length) - M_zz_z,
    )


# ---------------------------------------------------------------------------
# z-differentiation on a set of stations
# ---------------------------------------------------------------------------

STENCIL = 5


def fd_weights(nodes, x0, order):
    """Finite-difference weights for derivatives 0..order at ``x0`` (Fornberg)."""
    nodes = np.asarray(nodes, dtype=float)
    m = len(nodes)
    c = np.zeros((order + 1, m))
    c[0, 0] = 1.0
    c1 = 1.0
    c4 = nodes[0] - x0
    for i in range(1, m):
        mn = min(i, order)
        c2 = 1.0
        c5 = c4
        c4 = nodes[i] - x0
        for j in range(i):
            c3 = nodes[i] - nodes[j]
            c2 *= c3
            if j == i - 1:
                for k in range(mn, 0, -1):
                    c[k, i] = c1 * (k * c[k - 1, i - 1] - c5 * c[k, i - 1]) / c2
                c[0, i] = -c1 * c5 * c[0, i - 1] / c2
            for k in range(mn, 0, -1):
                c[k, j] = (c4 * c[k, j] - k * c[k - 1, j]) / c3
            c[0, j] = c4 * c[0, j] / c3
        c1 = c2
    return c


def z_difference_matrix(z, order):
    """Matrix mapping station values to the ``order``-th z-derivative.

    Each row uses the ``STENCIL`` stations nearest to its own station, so
    the result is exact for polynomials of degree below ``STENCIL``.
    """
    z = np.asarray(z, dtype=float)
    nz = len(z)
    if nz < STENCIL:
        raise TooFewZStations(f"need at least {STENCIL} z-stations, got {nz}")
    if np.any(np.diff(z) <= 0):
        raise ValueError("z-stations must be strictly increasing")
    out = np.zeros((nz, nz))
    for i in range(nz):
        lo = min(max(i - STENCIL // 2, 0), nz - STENCIL)
        idx = np.arange(lo, lo + STENCIL)
        out[i, idx] = fd_weights(z[idx], z[i], order)[order]
    return out


def z_derivative(values, z, order=1):
    """Apply :func:`z_difference_matrix` along the z-axis (second to last)."""
    values = np.asarray(values, dtype=float)
    mat = z_difference_matrix(z, order)
    return np.einsum("ij,...jn->...in", mat, values)


def strains_from_displacement(u, z, curve: SectionCurve, u_s=None, u_ss=None) -> StrainState:
    """Strain measures of a displacement sampled on the ``(z, s)`` grid.

    Parameters
    ----------
    u : array, shape (3, nz, n)
        Cartesian displacement components at each z-station and arc sample.
    z : array, shape (nz,)
        Strictly increasing z-stations, at least five.
    u_s, u_ss : array, shape (3, nz, n), optional
        First and second s-derivatives when the caller knows them more
        accurately than spectral differentiation of ``u`` would give.
    """
    u = np.asarray(u, dtype=float)
    if u.ndim != 3 or u.shape[0] != 3:
        raise ValueError("u must have shape (3, nz, n)")
    if u.shape[-1] != curve.n:
        raise GridMismatch(f"expected {curve.n} samples along the section, got {u.shape[-1]}")
    if u.shape[1] != len(z):
        raise ValueError("u and z disagree on the number of z-stations")
    tau, nrm = curve.tau3[:, None, :], curve.n3[:, None, :]
    u_s = spectral_derivative(u, curve.length) if u_s is None else np.asarray(u_s, dtype=float)
    u_ss = spectral_derivative(u, curve.length, 2) if u_ss is None else np.asarray(u_ss, dtype=float)
    u_z = z_derivative(u, z, 1)
    u_zz = z_derivative(u, z, 2)
    u_sz = spectral_derivative(u_z, curve.length)
    return StrainState(
        eps_ss=np.sum(u_s * tau, axis=0),
        eps_sz=0.5 * (np.sum(u_z * tau, axis=0) + u_s[2]),
        eps_zz=u_z[2],
        rho_ss=np.sum(u_ss * nrm, axis=0),
        rho_sz=np.sum(u_sz * nrm, axis=0),
        rho_zz=np.sum(u_zz * nrm, axis=0),
    )

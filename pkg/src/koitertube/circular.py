"""Closed-form solution for circular tubes.

On a circle of radius ``R0`` the torsion function vanishes, ``B`` is
parallel to ``A`` and every constant is an explicit multiple of a load
component.  Two coefficients for the flexure part of ``u3`` are offered:
``"corollary"`` (``2 (1 + nu) R0^2``) and ``"flexure-fn"``
(``(4 + 3 nu) R0^2 / 2``).  They differ by ``nu R0^2 / 2`` times
``A_hat . x``, which is not a rigid motion once the ``nu x.x / 2`` terms
are left out of the in-plane displacement, so at most one of them is an
equilibrium field.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .ebt import ResultantLoads
from .errors import GridMismatch, InvalidRadius
from .fields import PolyZField, vector_series
from .geometry import SectionCurve
from .shell import ShellMaterial

PSI_VARIANTS = ("corollary", "flexure-fn")


def psi_coefficient(nu, variant):
    """Multiplier of ``R0^2 A_hat . x`` in ``u3`` for the chosen variant."""
    if variant == "corollary":
        return 2.0 * (1.0 + nu)
    if variant == "flexure-fn":
        return 0.5 * (4.0 + 3.0 * nu)
    raise ValueError(f"psi_variant must be one of {PSI_VARIANTS}, got {variant!r}")


@dataclass(frozen=True)
class CircularCase:
    """Constants of the circular-tube solution.

    ``A`` holds ``(A1, A2, A3)`` with ``A3 = A_bar3 / length``; ``B`` and
    ``B_hat`` are the matching constants of the section profile.
    """

    R0: float
    material: ShellMaterial
    loads: ResultantLoads
    K: float
    A: np.ndarray
    A_bar3: float
    A_hat: np.ndarray
    B: np.ndarray
    B_hat: np.ndarray
    K_tilde: float
    K0: float

    @property
    def length(self):
        return 2.0 * math.pi * self.R0

    @property
    def area(self):
        return math.pi * self.R0**2

    @property
    def inertia(self):
        return math.pi * self.R0**3 * np.eye(2)

    def coefficients(self):
        return {
            "A": [float(v) for v in self.A],
            "A_bar3": float(self.A_bar3),
            "B": [float(v) for v in self.B],
            "K": float(self.K),
            "A_hat": [float(v) for v in self.A_hat],
            "B_hat": [float(v) for v in self.B_hat],
            "K_tilde": float(self.K_tilde),
            "K0": float(self.K0),
        }


def circle_coefficients(R0, mat: ShellMaterial, loads: ResultantLoads) -> CircularCase:
    """Constants for a circular tube of radius ``R0`` under loads about its centre.

    Raises
    ------
    InvalidRadius
        ``R0`` is not a positive finite number.
    """
    try:
        R0 = float(R0)
    except (TypeError, ValueError):
        raise InvalidRadius(f"radius is not a number: {R0!r}") from None
    if not math.isfinite(R0) or R0 <= 0.0:
        raise InvalidRadius(f"radius must be positive, got {R0!r}")
    Eh = mat.E * mat.h
    R, M = loads.R, loads.M
    I0 = math.pi * R0**3
    K = -M[2] / (2.0 * math.pi * R0**3 * mat.mu * mat.h)
    A_bar3 = -R[2] / (2.0 * math.pi * R0 * Eh)
    A = np.array([M[1] / (I0 * Eh), -M[0] / (I0 * Eh), A_bar3 / (2.0 * math.pi * R0)])
    A_hat = np.array([-R[0] / (I0 * Eh), -R[1] / (I0 * Eh), 0.0])
    factor = -mat.nu * mat.D / R0
    return CircularCase(
        R0=R0,
        material=mat,
        loads=loads,
        K=float(K),
        A=A,
        A_bar3=float(A_bar3),
        A_hat=A_hat,
        B=factor * A,
        B_hat=factor * A_hat,
        K_tilde=0.0,
        K0=float(2.0 * (1.0 + mat.nu) * R0**2 * A_hat[1]),
    )


def circle_points(R0, s):
    """Points ``R0 (cos(s / R0), sin(s / R0))``; shape ``(2, len(s))``."""
    t = np.atleast_1d(np.asarray(s, dtype=float)) / R0
    return R0 * np.array([np.cos(t), np.sin(t)])


def circle_displacement(case: CircularCase, s, z, psi_variant="corollary"):
    """Displacement of the circular solution at arc positions ``s`` and height ``z``.

    Returns an array of shape ``(3, len(s))``.
    """
    c = psi_coefficient(case.material.nu, psi_variant)
    nu, K = case.material.nu, case.K
    A, Ah = case.A[:2], case.A_hat[:2]
    x = circle_points(case.R0, s)
    ax = A @ x + case.A_bar3
    ahx = Ah @ x
    u_in = (
        -(z**3 / 6.0) * Ah[:, None]
        - 0.5 * z**2 * A[:, None]
        - nu * z * ahx * x
        - nu * ax * x
        - K * z * np.array([x[1], -x[0]])
    )
    u3 = (0.5 * z**2 + c * case.R0**2) * ahx + z * ax
    return np.vstack([u_in, u3])


def circle_field(case: CircularCase, curve: SectionCurve, psi_variant="corollary") -> PolyZField:
    """The circular solution as a polynomial field on a circle section grid.

    Raises
    ------
    GridMismatch
        ``curve`` is not a circle of radius ``case.R0`` centred at the origin
        and starting at ``(R0, 0)``.
    """
    expected = circle_points(case.R0, curve.s)
    if not np.allclose(curve.x, expected, rtol=0.0, atol=1e-9 * case.R0):
        raise GridMismatch("section grid is not the circle of this case")
    c = psi_coefficient(case.material.nu, psi_variant)
    nu, K, R0 = case.material.nu, case.K, case.R0
    A, Ah = case.A, case.A_hat
    X = curve.frame.x
    ax = X.dot(np.array([A[0], A[1], 0.0])) + case.A_bar3
    ahx = X.dot(np.array([Ah[0], Ah[1], 0.0]))
    rot = vector_series(curve, (X[1] * -K, X[0] * K, 0.0))
    t0 = X * ax * -nu + vector_series(curve, (0.0, 0.0, ahx * (c * R0**2)))
    t1 = X * ahx * -nu + rot + vector_series(curve, (0.0, 0.0, ax))
    t2 = vector_series(curve, (-0.5 * A[0], -0.5 * A[1], ahx * 0.5))
    t3 = vector_series(curve, (-Ah[0] / 6.0, -Ah[1] / 6.0, 0.0))
    return PolyZField(curve, {0: t0, 1: t1, 2: t2, 3: t3})

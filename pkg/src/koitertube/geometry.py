"""Closed cross-section curves in arc-length form and spectral quadrature.

A section is described by a truncated Fourier series in an arbitrary
angle-like parameter ``t``.  :func:`build_section` reparametrizes it by arc
length, places ``N`` uniform samples, recentres the curve on its line
centroid and precomputes every geometric quantity the solvers need.

All integrals along the section are carried out on the uniform arc-length
grid.  Integrands are smooth and periodic, so the periodic trapezoid rule
and trigonometric antiderivatives are spectrally accurate.  Antiderivatives
of periodic functions are not periodic in general (a mean value produces a
linear term), so nested integrals are represented by :class:`ArcSeries`,
a polynomial in ``s`` whose coefficients are periodic sampled functions.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping

import numpy as np
import shapely

from .errors import (
    DegenerateCurve,
    GridMismatch,
    GridTooCoarse,
    OrientationError,
    SelfIntersection,
)

DEFAULT_GRID = 512
ARC_TOLERANCE = 1e-12


# ---------------------------------------------------------------------------
# spectral primitives on a uniform periodic grid
# ---------------------------------------------------------------------------


def _wavenumbers(n, length):
    return 2.0 * np.pi * np.fft.rfftfreq(n, d=length / n)


def spectral_derivative(samples, length, order=1):
    """Derivative of periodic samples along the last axis."""
    samples = np.asarray(samples, dtype=float)
    if order == 0:
        return samples.copy()
    n = samples.shape[-1]
    coef = np.fft.rfft(samples, axis=-1)
    k = _wavenumbers(n, length)
    coef = coef * (1j * k) ** order
    if n % 2 == 0 and order % 2 == 1:
        coef[..., -1] = 0.0
    return np.fft.irfft(coef, n=n, axis=-1)


def _zero_mean_antiderivative(samples, length):
    """Periodic zero-mean Q with Q' = f - mean(f)."""
    n = samples.shape[-1]
    coef = np.fft.rfft(samples, axis=-1)
    k = _wavenumbers(n, length)
    out = np.zeros_like(coef)
    out[..., 1:] = coef[..., 1:] / (1j * k[1:])
    if n % 2 == 0:
        out[..., -1] = 0.0
    return np.fft.irfft(out, n=n, axis=-1)


def trig_interpolate(samples, length, s):
    """Evaluate the trigonometric interpolant of periodic samples at ``s``.

    Returns an array of shape ``samples.shape[:-1] + (len(s),)``.
    """
    samples = np.asarray(samples, dtype=float)
    s = np.atleast_1d(np.asarray(s, dtype=float))
    n = samples.shape[-1]
    coef = np.fft.rfft(samples, axis=-1)
    k = _wavenumbers(n, length)
    weight = np.full(k.shape, 2.0)
    weight[0] = 1.0
    if n % 2 == 0:
        weight[-1] = 1.0
    phase = np.exp(1j * np.outer(k, s))  # (nk, ns)
    return np.real((coef * weight) @ phase) / n


class ArcSeries:
    """Function of arc length of the form ``sum_k s**k * p_k(s)``.

    Each ``p_k`` is periodic and stored by its samples on the uniform grid,
    so ``coeffs`` has shape ``(degree + 1, *value_shape, n)``.  Integration
    from 0 is exact in this representation, which keeps nested integrals
    of non-periodic intermediate quantities spectrally accurate.

    A series may also carry its exact first derivative (``deriv``, a series
    or a zero-argument callable producing one).  Antiderivatives record
    their integrand, and sums and products propagate the rule, so
    differentiating a nested integral returns the integrand instead of
    re-differentiating samples, which would amplify rounding noise.
    """

    __array_priority__ = 100

    def __init__(self, coeffs, length, deriv=None):
        self.coeffs = np.asarray(coeffs, dtype=float)
        self.length = float(length)
        self._deriv = deriv

    # construction -------------------------------------------------------
    @classmethod
    def periodic(cls, samples, length, deriv=None):
        samples = np.asarray(samples, dtype=float)
        if deriv is not None and not isinstance(deriv, ArcSeries) and not callable(deriv):
            deriv = cls.periodic(deriv, length)
        return cls(samples[None], length, deriv)

    @classmethod
    def constant(cls, value, n, length):
        value = np.asarray(value, dtype=float)
        c = np.broadcast_to(value[..., None], value.shape + (n,))[None]
        return cls(c, length, lambda: cls(np.zeros_like(c), length))

    @classmethod
    def linear(cls, slope, n, length):
        """The function ``s * slope`` with a constant (possibly vector) slope."""
        slope = np.asarray(slope, dtype=float)
        c = np.zeros((2,) + slope.shape + (n,))
        c[1] = slope[..., None]
        return cls(c, length, cls.constant(slope, n, length))

    # basic properties ---------------------------------------------------
    @property
    def n(self):
        return self.coeffs.shape[-1]

    @property
    def degree(self):
        return self.coeffs.shape[0] - 1

    @property
    def shape(self):
        return self.coeffs.shape[1:-1]

    @property
    def grid(self):
        return np.arange(self.n) * (self.length / self.n)

    @property
    def values(self):
        """Samples on the uniform grid ``s_j = j * length / n``."""
        s = self.grid
        out = np.zeros(self.coeffs.shape[1:])
        for k in range(self.degree, -1, -1):
            out = out * s + self.coeffs[k]
        return out

    def __call__(self, s):
        s = np.atleast_1d(np.asarray(s, dtype=float))
        out = 0.0
        for k in range(self.degree, -1, -1):
            out = out * s + trig_interpolate(self.coeffs[k], self.length, s)
        return np.asarray(out) * np.ones(self.shape + s.shape)

    def at_end(self):
        """Value at ``s = length`` (periodic parts wrap to their value at 0)."""
        sbar = self.length
        return sum(self.coeffs[k][..., 0] * sbar**k for k in range(self.degree + 1))

    def __getitem__(self, idx):
        if not isinstance(idx, tuple):
            idx = (idx,)
        key = (slice(None),) + idx
        deriv = None if self._deriv is None else (lambda: self._first_derivative()[idx])
        return ArcSeries(self.coeffs[key], self.length, deriv)

    # calculus -----------------------------------------------------------
    def spectral_derivative(self):
        """First derivative computed from the samples alone."""
        c = self.coeffs
        new = np.zeros_like(c)
        for k in range(c.shape[0]):
            new[k] += spectral_derivative(c[k], self.length)
            if k > 0:
                new[k - 1] += k * c[k]
        return ArcSeries(new, self.length)

    def _first_derivative(self):
        d = self._deriv
        if d is None:
            return self.spectral_derivative()
        if not isinstance(d, ArcSeries):
            d = d()
            self._deriv = d
        return d

    def derivative(self, order=1):
        out = self
        for _ in range(order):
            out = out._first_derivative()
        return out

    def integral(self):
        """Antiderivative ``F`` with ``F(0) = 0``."""
        deg = self.degree
        out = np.zeros((deg + 2,) + self.coeffs.shape[1:])
        for k in range(deg + 1):
            out += self._integrate_power(k, self.coeffs[k], deg + 2)
        return ArcSeries(out, self.length, self)

    def _integrate_power(self, k, p, size):
        # int_0^s sigma**k p(sigma) d sigma, by parts on the zero-mean part
        out = np.zeros((size,) + p.shape)
        mean = p.mean(axis=-1, keepdims=True)
        out[k + 1] += np.broadcast_to(mean / (k + 1), p.shape)
        q = _zero_mean_antiderivative(p - mean, self.length)
        out[k] += q
        if k == 0:
            out[0] -= q[..., :1]
        else:
            out -= k * self._integrate_power(k - 1, q, size)
        return out

    def total(self):
        """Integral over the whole closed curve."""
        return self.integral().at_end()

    # algebra ------------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, ArcSeries):
            return other
        other = np.asarray(other, dtype=float)
        if other.ndim and other.shape[-1] == self.n:
            return ArcSeries.periodic(other, self.length)
        return ArcSeries.constant(other, self.n, self.length)

    @staticmethod
    def _pad(a, b):
        da, db = a.coeffs.shape[0], b.coeffs.shape[0]
        size = max(da, db)
        ca = np.concatenate([a.coeffs, np.zeros((size - da,) + a.coeffs.shape[1:])]) if da < size else a.coeffs
        cb = np.concatenate([b.coeffs, np.zeros((size - db,) + b.coeffs.shape[1:])]) if db < size else b.coeffs
        return ca, cb

    @staticmethod
    def _tracked(*parts):
        return any(p._deriv is not None for p in parts)

    def __add__(self, other):
        other = self._coerce(other)
        ca, cb = self._pad(self, other)
        deriv = None
        if self._tracked(self, other):
            deriv = lambda: self._first_derivative() + other._first_derivative()  # noqa: E731
        return ArcSeries(ca + cb, self.length, deriv)

    __radd__ = __add__

    def __neg__(self):
        return self * -1.0

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if np.isscalar(other):
            deriv = None if self._deriv is None else (lambda: self._first_derivative() * other)
            return ArcSeries(self.coeffs * other, self.length, deriv)
        other = self._coerce(other)
        da, db = self.degree, other.degree
        shape = np.broadcast_shapes(self.coeffs.shape[1:], other.coeffs.shape[1:])
        out = np.zeros((da + db + 1,) + shape)
        for i in range(da + 1):
            for j in range(db + 1):
                out[i + j] += self.coeffs[i] * other.coeffs[j]
        deriv = None
        if self._tracked(self, other):
            deriv = lambda: self._first_derivative() * other + self * other._first_derivative()  # noqa: E731
        return ArcSeries(out, self.length, deriv)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self * (1.0 / scalar)

    def sum_first_axis(self):
        deriv = None if self._deriv is None else (lambda: self._first_derivative().sum_first_axis())
        return ArcSeries(self.coeffs.sum(axis=1), self.length, deriv)

    def dot(self, other):
        """Contract the leading value axis with a vector (constant or sampled)."""
        return (self * other).sum_first_axis()


def _check_grid(curve, samples):
    samples = np.asarray(samples, dtype=float)
    if samples.shape[-1] != curve.n:
        raise GridMismatch(f"expected {curve.n} samples along the section, got {samples.shape[-1]}")
    return samples


def closed_integral(curve, samples):
    """Integral over the closed curve by the periodic trapezoid rule."""
    if isinstance(samples, ArcSeries):
        if samples.n != curve.n:
            raise GridMismatch(f"expected {curve.n} samples along the section, got {samples.n}")
        return samples.total()
    samples = _check_grid(curve, samples)
    return samples.mean(axis=-1) * curve.length


def cumulative_integral(curve, samples):
    """``F(s) = int_0^s f`` as an :class:`ArcSeries`.

    Accepts periodic samples on the section grid or an :class:`ArcSeries`
    (for nested integrals).  ``F.values`` gives the grid samples and
    ``F(s)`` evaluates off the grid.
    """
    if isinstance(samples, ArcSeries):
        if samples.n != curve.n:
            raise GridMismatch(f"expected {curve.n} samples along the section, got {samples.n}")
        return samples.integral()
    samples = _check_grid(curve, samples)
    return ArcSeries.periodic(samples, curve.length).integral()


# ---------------------------------------------------------------------------
# curve description
# ---------------------------------------------------------------------------

_SHAPE_RE = re.compile(r"^\s*(circle|ellipse)\s*\(([^)]*)\)\s*$", re.IGNORECASE)


@dataclass(frozen=True)
class FourierCurveSpec:
    """Truncated Fourier description of a closed planar curve.

    ``x_alpha(t) = sum_k cos_alpha[k] cos(k t) + sin_alpha[k] sin(k t)``
    for ``t`` in ``[0, 2 pi)``.  Index ``k`` is the harmonic number.
    """

    x1_cos: tuple
    x1_sin: tuple
    x2_cos: tuple
    x2_sin: tuple

    def __post_init__(self):
        order = max(len(self.x1_cos), len(self.x1_sin), len(self.x2_cos), len(self.x2_sin))
        for name in ("x1_cos", "x1_sin", "x2_cos", "x2_sin"):
            vals = [float(v) for v in getattr(self, name)]
            vals += [0.0] * (order - len(vals))
            if not all(math.isfinite(v) for v in vals):
                raise ValueError(f"non-finite Fourier coefficient in {name}")
            object.__setattr__(self, name, tuple(vals))

    @property
    def order(self):
        """Highest harmonic index."""
        return len(self.x1_cos) - 1

    @classmethod
    def circle(cls, radius, center=(0.0, 0.0)):
        return cls((center[0], radius), (0.0, 0.0), (center[1], 0.0), (0.0, radius))

    @classmethod
    def ellipse(cls, a, b, center=(0.0, 0.0)):
        return cls((center[0], a), (0.0, 0.0), (center[1], 0.0), (0.0, b))

    @classmethod
    def from_harmonics(cls, x1: Mapping, x2: Mapping):
        """Build from ``{harmonic: (a_cos, a_sin)}`` tables, one per coordinate."""
        def unpack(table):
            table = {int(k): v for k, v in table.items()}
            if any(k < 0 for k in table):
                raise ValueError("harmonic indices must be non-negative")
            size = max(table, default=0) + 1
            cos, sin = [0.0] * size, [0.0] * size
            for k, pair in table.items():
                a, b = pair
                cos[k], sin[k] = float(a), float(b)
            return cos, sin

        c1, s1 = unpack(x1)
        c2, s2 = unpack(x2)
        return cls(c1, s1, c2, s2)

    def to_harmonics(self):
        def pack(cos, sin):
            return {str(k): [cos[k], sin[k]] for k in range(len(cos)) if cos[k] or sin[k]}

        return {"x1": pack(self.x1_cos, self.x1_sin), "x2": pack(self.x2_cos, self.x2_sin)}

    @classmethod
    def parse(cls, text):
        """Parse the built-ins ``circle(R0)`` and ``ellipse(a, b)``."""
        m = _SHAPE_RE.match(text)
        if not m:
            raise ValueError(f"unrecognized section shape {text!r}")
        kind = m.group(1).lower()
        try:
            args = [float(a) for a in m.group(2).split(",") if a.strip()]
        except ValueError as exc:
            raise ValueError(f"bad arguments in {text!r}") from exc
        if kind == "circle" and len(args) == 1:
            return cls.circle(args[0])
        if kind == "ellipse" and len(args) == 2:
            return cls.ellipse(*args)
        raise ValueError(f"wrong number of arguments in {text!r}")

    def translated(self, offset):
        c1, c2 = list(self.x1_cos), list(self.x2_cos)
        c1[0] += offset[0]
        c2[0] += offset[1]
        return FourierCurveSpec(c1, self.x1_sin, c2, self.x2_sin)

    def rotated(self, angle):
        c, s = math.cos(angle), math.sin(angle)
        a1, b1 = np.array(self.x1_cos), np.array(self.x1_sin)
        a2, b2 = np.array(self.x2_cos), np.array(self.x2_sin)
        return FourierCurveSpec(c * a1 - s * a2, c * b1 - s * b2, s * a1 + c * a2, s * b1 + c * b2)

    def evaluate(self, t, derivative=0):
        """Position (or its t-derivative) at parameters ``t``; shape (2, len(t))."""
        t = np.atleast_1d(np.asarray(t, dtype=float))
        k = np.arange(self.order + 1)
        kt = np.outer(t, k)
        cos, sin = np.cos(kt), np.sin(kt)
        # d^m/dt^m of (a cos + b sin) cycles through four patterns
        kd = k.astype(float) ** derivative
        pattern = derivative % 4
        if pattern == 0:
            fc, fs = cos, sin
            sa, sb = 1.0, 1.0
        elif pattern == 1:
            fc, fs = sin, cos
            sa, sb = -1.0, 1.0
        elif pattern == 2:
            fc, fs = cos, sin
            sa, sb = -1.0, -1.0
        else:
            fc, fs = sin, cos
            sa, sb = 1.0, -1.0
        out = np.empty((2, t.size))
        for row, (a, b) in enumerate(((self.x1_cos, self.x1_sin), (self.x2_cos, self.x2_sin))):
            a = np.asarray(a) * kd
            b = np.asarray(b) * kd
            out[row] = sa * (fc @ a) + sb * (fs @ b)
        return out


# ---------------------------------------------------------------------------
# the sampled section
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _Frame:
    x: ArcSeries
    tau: ArcSeries
    normal: ArcSeries


def _frozen(a):
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class SectionCurve:
    """Uniform arc-length samples of a closed section, centroid at the origin.

    Attributes
    ----------
    n : int
        Number of samples; ``s_j = j * length / n``.
    length : float
        Perimeter of the section.
    x, tangent, normal : ndarray, shape (2, n)
        Positions, unit tangents and in-plane unit normals.  The normal
        is ``tau x e3`` and points outward for a counterclockwise curve.
    curvature : ndarray, shape (n,)
        Signed curvature ``1/R``.
    area : float
        Enclosed area.
    centroid : ndarray, shape (2,)
        Line centroid of the input curve before recentring.
    inertia : ndarray, shape (2, 2)
        ``int x_a x_b ds`` about the centroid.
    """

    n: int
    length: float
    x: np.ndarray
    tangent: np.ndarray
    normal: np.ndarray
    curvature: np.ndarray
    area: float
    centroid: np.ndarray
    inertia: np.ndarray
    spec: FourierCurveSpec = field(repr=False)

    @property
    def s(self):
        return np.arange(self.n) * (self.length / self.n)

    @property
    def ds(self):
        return self.length / self.n

    @property
    def x3(self):
        """Positions embedded in 3D, shape (3, n)."""
        return np.vstack([self.x, np.zeros(self.n)])

    @property
    def tau3(self):
        return np.vstack([self.tangent, np.zeros(self.n)])

    @property
    def n3(self):
        return np.vstack([self.normal, np.zeros(self.n)])

    @property
    def r_hat(self):
        """``x_a e_a + length e_3``, shape (3, n)."""
        return np.vstack([self.x, np.full(self.n, self.length)])

    @property
    def r_dot_n(self):
        return np.einsum("in,in->n", self.x, self.normal)

    @property
    def r_dot_tau(self):
        return np.einsum("in,in->n", self.x, self.tangent)

    @property
    def char_length(self):
        """Radius of the circle with the same perimeter."""
        return self.length / (2.0 * np.pi)

    @cached_property
    def frame(self):
        """Position, tangent and normal (3D) as series with exact derivatives.

        Uses ``x' = tau``, ``tau' = -n / R`` and ``n' = tau / R``.
        """
        L = self.length
        kappa = ArcSeries.periodic(self.curvature, L)
        tau = ArcSeries.periodic(self.tau3, L, lambda: -(kappa * nrm))
        nrm = ArcSeries.periodic(self.n3, L, lambda: kappa * tau)
        x = ArcSeries.periodic(self.x3, L, tau)
        return _Frame(x, tau, nrm)

    def interpolate(self, samples, s):
        """Trigonometric interpolation of periodic grid samples at ``s``."""
        return trig_interpolate(_check_grid(self, samples), self.length, s)

    def derivative(self, samples, order=1):
        return spectral_derivative(_check_grid(self, samples), self.length, order)

    def is_grid(self, s):
        s = np.atleast_1d(np.asarray(s, dtype=float))
        return s.shape == (self.n,) and np.allclose(s, self.s, rtol=0.0, atol=1e-12 * self.length)


@dataclass(frozen=True)
class SectionProperties:
    length: float
    area: float
    centroid: np.ndarray
    inertia: np.ndarray
    total_turning: float
    centroid_moment: np.ndarray  # int x_a ds after recentring, ~0

    def as_dict(self):
        return {
            "length": self.length,
            "area": self.area,
            "centroid": [float(v) for v in self.centroid],
            "inertia": [[float(v) for v in row] for row in self.inertia],
            "total_turning": self.total_turning,
            "first_moment_after_recentring": [float(v) for v in self.centroid_moment],
        }


def _fine_parameter_grid(spec, grid_n):
    m = max(4 * grid_n, 64 * (spec.order + 1))
    m = 1 << (m - 1).bit_length()
    while True:
        t = np.arange(m) * (2.0 * np.pi / m)
        speed = np.linalg.norm(spec.evaluate(t, 1), axis=0)
        coef = np.abs(np.fft.rfft(speed))
        tail = coef[3 * len(coef) // 4 :].max()
        if tail <= 1e-15 * coef.max() or m >= 1 << 18:
            return t, speed
        m *= 2


def _check_simple(spec, t):
    pts = spec.evaluate(t).T
    ring = shapely.LinearRing(pts)
    if not ring.is_simple:
        raise SelfIntersection("section curve intersects itself")


def build_section(spec: FourierCurveSpec, grid_n: int = DEFAULT_GRID) -> SectionCurve:
    """Sample a Fourier curve uniformly in arc length.

    Raises
    ------
    GridTooCoarse
        ``grid_n`` below 64 or odd.
    DegenerateCurve
        The parametrization speed vanishes somewhere.
    SelfIntersection, OrientationError
        The curve is not simple, or is traversed clockwise.
    """
    if int(grid_n) != grid_n or grid_n < 64 or grid_n % 2:
        raise GridTooCoarse(f"grid_n must be an even integer >= 64, got {grid_n}")
    grid_n = int(grid_n)

    t_fine, speed = _fine_parameter_grid(spec, grid_n)
    if speed.max() == 0.0 or speed.min() <= 1e-9 * speed.max():
        raise DegenerateCurve("|dx/dt| vanishes on the section curve")
    _check_simple(spec, t_fine)

    two_pi = 2.0 * np.pi
    mean_speed = speed.mean()
    length = two_pi * mean_speed
    periodic = _zero_mean_antiderivative(speed, two_pi)
    periodic = periodic - periodic[0]

    # the arc-length spectrum decays fast; keeping only modes above
    # roundoff makes each Newton sweep cost O(modes * N) instead of O(m * N)
    coef = np.fft.rfft(periodic) / len(periodic)
    coef[1:] *= 2.0
    if len(periodic) % 2 == 0:
        coef[-1] /= 2.0
    keep = np.flatnonzero(np.abs(coef) > 1e-18 * max(np.abs(coef).max(), mean_speed))
    coef, modes = coef[keep], np.arange(len(coef))[keep]

    def arc(t):
        return mean_speed * t + np.real(np.exp(1j * np.outer(t, modes)) @ coef)

    # invert s(t) on the uniform arc grid: safeguarded Newton from a
    # piecewise-linear first guess
    target = np.arange(grid_n) * (length / grid_n)
    s_fine = np.append(mean_speed * t_fine + periodic, length)
    t_ext = np.append(t_fine, two_pi)
    t = np.interp(target, s_fine, t_ext)
    idx = np.clip(np.searchsorted(s_fine, target, side="right") - 1, 0, len(t_fine) - 1)
    lo, hi = t_ext[idx], t_ext[idx + 1]
    for _ in range(50):
        err = arc(t) - target
        if np.max(np.abs(err)) < ARC_TOLERANCE * max(1.0, length) * 1e-2:
            break
        lo = np.where(err < 0, t, lo)
        hi = np.where(err > 0, t, hi)
        step = t - err / np.linalg.norm(spec.evaluate(t, 1), axis=0)
        t = np.where((step > lo) & (step < hi), step, 0.5 * (lo + hi))
    err = np.max(np.abs(arc(t) - target))
    if err > ARC_TOLERANCE * max(1.0, length):
        raise DegenerateCurve(f"arc-length inversion did not converge (error {err:.2e})")

    d1 = spec.evaluate(t, 1)
    d2 = spec.evaluate(t, 2)
    sp = np.linalg.norm(d1, axis=0)
    tangent = d1 / sp
    normal = np.vstack([tangent[1], -tangent[0]])
    curvature = (d1[0] * d2[1] - d1[1] * d2[0]) / sp**3

    x = spec.evaluate(t)
    centroid = x.mean(axis=1)
    x = x - centroid[:, None]
    area = 0.5 * np.mean(np.einsum("in,in->n", x, normal)) * length
    if area <= 0.0:
        raise OrientationError("section must be traversed counterclockwise (enclosed area <= 0)")
    inertia = (x @ x.T) * (length / grid_n)

    return SectionCurve(
        n=grid_n,
        length=float(length),
        x=_frozen(x),
        tangent=_frozen(tangent),
        normal=_frozen(normal),
        curvature=_frozen(curvature),
        area=float(area),
        centroid=_frozen(centroid),
        inertia=_frozen(inertia),
        spec=spec,
    )


def section_properties(curve: SectionCurve) -> SectionProperties:
    area = 0.5 * closed_integral(curve, curve.r_dot_n)
    return SectionProperties(
        length=curve.length,
        area=float(area),
        centroid=curve.centroid.copy(),
        inertia=np.array(closed_integral(curve, curve.x[:, None, :] * curve.x[None, :, :])),
        total_turning=float(closed_integral(curve, curve.curvature)),
        centroid_moment=np.array(closed_integral(curve, curve.x)),
    )

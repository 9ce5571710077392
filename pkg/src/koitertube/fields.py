"""Displacement fields on the tube surface.

Every solver returns its displacement as a polynomial in ``z`` whose
coefficients are functions of arc length (:class:`PolyZField`).  The
verification routines only need the small protocol shared by all field
classes here: ``curve``, ``z_degree`` and ``displacement(s, z, s_order)``.
"""

from __future__ import annotations

import numpy as np

from .errors import GridMismatch, TooFewZStations
from .geometry import ArcSeries, SectionCurve, spectral_derivative
from .shell import STENCIL, fd_weights


class PolyZField:
    """``u(s, z) = sum_k z**k T_k(s)`` with each ``T_k`` a 3-vector :class:`ArcSeries`.

    ``T_k`` need not be periodic: evaluating at ``s = length`` uses the
    non-periodic representation, which is what the seam checks rely on.
    """

    def __init__(self, curve: SectionCurve, terms):
        self.curve = curve
        self.terms = {int(k): v for k, v in terms.items() if v is not None}
        for k, t in self.terms.items():
            if t.n != curve.n or t.shape != (3,):
                raise GridMismatch(f"term z^{k} does not live on this section grid")

    @property
    def z_degree(self):
        return max(self.terms, default=0)

    def displacement(self, s=None, z=0.0, s_order=0):
        """Displacement (or its s-derivative) at arc positions ``s`` and height ``z``.

        ``s=None`` selects the uniform grid of the section.  Returns shape
        ``(3, len(s))``.
        """
        n = self.curve.n if s is None else np.atleast_1d(s).size
        out = np.zeros((3, n))
        for k, term in self.terms.items():
            t = term.derivative(s_order) if s_order else term
            vals = t.values if s is None else t(s)
            out += (z**k) * vals
        return out

    def z_derivative(self):
        """Exact ``du/dz`` as another field."""
        return PolyZField(self.curve, {k - 1: self.terms[k] * k for k in self.terms if k > 0})

    def __add__(self, other):
        if not isinstance(other, PolyZField):
            return NotImplemented
        if other.curve is not self.curve:
            raise GridMismatch("fields live on different sections")
        terms = dict(self.terms)
        for k, t in other.terms.items():
            terms[k] = terms[k] + t if k in terms else t
        return PolyZField(self.curve, terms)

    def __mul__(self, scalar):
        return PolyZField(self.curve, {k: t * float(scalar) for k, t in self.terms.items()})

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1.0

    def __sub__(self, other):
        return self + (-other)


def zero_field(curve):
    return PolyZField(curve, {})


def vector_series(curve, components):
    """Assemble a 3-vector :class:`ArcSeries` from per-component pieces.

    ``components`` holds three entries, each a scalar, a grid-sampled array
    or a scalar :class:`ArcSeries`.
    """
    parts = []
    for c in components:
        if isinstance(c, ArcSeries):
            parts.append(c)
        else:
            c = np.broadcast_to(np.asarray(c, dtype=float), (curve.n,))
            parts.append(ArcSeries.periodic(c, curve.length))
    degree = max(p.degree for p in parts)
    coeffs = np.zeros((degree + 1, 3, curve.n))
    for i, p in enumerate(parts):
        coeffs[: p.degree + 1, i] = p.coeffs
    deriv = None
    if any(p._deriv is not None for p in parts):
        deriv = lambda: vector_series(curve, [p._first_derivative() for p in parts])  # noqa: E731
    return ArcSeries(coeffs, curve.length, deriv)


class ZDerivativeField:
    """Five-point central-difference ``du/dz`` of any field.

    For inputs of z-degree at most four the stencil is exact, and the
    declared degree of the result drops by one.
    """

    def __init__(self, field, step):
        self.field = field
        self.curve = field.curve
        self.step = float(step)
        offsets = np.arange(-(STENCIL // 2), STENCIL // 2 + 1) * self.step
        self._offsets = offsets
        self._weights = fd_weights(offsets, 0.0, 1)[1]
        deg = getattr(field, "z_degree", None)
        self.z_degree = max(deg - 1, 0) if deg is not None and deg < STENCIL else None

    def displacement(self, s=None, z=0.0, s_order=0):
        return sum(w * self.field.displacement(s, z + dz, s_order) for w, dz in zip(self._weights, self._offsets))


class TabulatedField:
    """Displacement known only on the section grid at a fixed set of z-stations."""

    z_degree = None

    def __init__(self, curve: SectionCurve, z, u):
        z = np.asarray(z, dtype=float)
        u = np.asarray(u, dtype=float)
        if u.shape != (3, len(z), curve.n):
            raise GridMismatch(f"table of shape {u.shape} does not match {(3, len(z), curve.n)}")
        if len(z) < STENCIL:
            raise TooFewZStations(f"need at least {STENCIL} z-stations, got {len(z)}")
        self.curve = curve
        self.z = z
        self.u = u

    def station(self, z):
        hit = np.flatnonzero(np.isclose(self.z, z, rtol=0.0, atol=1e-12 * max(1.0, np.abs(self.z).max())))
        if hit.size == 0:
            raise KeyError(f"z = {z!r} is not a tabulated station")
        return int(hit[0])

    def displacement(self, s=None, z=0.0, s_order=0):
        vals = self.u[:, self.station(z)]
        if s_order:
            vals = spectral_derivative(vals, self.curve.length, s_order)
        if s is None:
            return vals
        return self.curve.interpolate(vals, s)

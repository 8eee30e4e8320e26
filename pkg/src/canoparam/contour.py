"""Contour representation, arc-length tables and uniform resampling.

A contour is an ordered point sequence, open or closed.  Closed contours
never repeat their first point at the end; the closing edge is implicit.

Two interpolants are available:

* ``polyline`` -- linear interpolation between consecutive vertices.
* ``spline`` -- a component-wise cubic spline over cumulative chord length
  (periodic for closed contours, natural for open ones), re-indexed by its
  own arc length so that the parameter is proportional to distance travelled
  along the smooth curve.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import ContourError, NonFiniteCoordinate, ParameterOutOfRange, TooFewPoints

#: consecutive points closer than this are considered coincident
MERGE_TOL = 1e-12
#: slack allowed on the parameter range of open contours
PARAM_TOL = 1e-12
#: spline refinement: subintervals per knot interval
SPLINE_SUBDIVISIONS = 32
#: bisection stopping width, relative to the knot parameter range
SPLINE_BISECTION_TOL = 1e-10

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(5)


class InterpolationMode(str, enum.Enum):
    POLYLINE = "polyline"
    SPLINE = "spline"


def _as_mode(mode) -> InterpolationMode:
    try:
        return InterpolationMode(mode)
    except ValueError:
        raise ValueError(f"unknown interpolation mode {mode!r}") from None


@dataclass(frozen=True, eq=False)
class PlanarContour:
    """Validated, immutable ordered point sequence.

    Use :func:`validate_contour` to build one from raw data; the constructor
    only checks invariants and refuses coincident consecutive points.
    """

    points: np.ndarray
    closed: bool = False
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        pts = _as_point_array(self.points)
        _check_count(len(pts), self.closed)
        edges = _edge_vectors(pts, self.closed)
        if np.any(np.hypot(edges[:, 0], edges[:, 1]) < MERGE_TOL):
            raise ContourError("coincident consecutive points (use validate_contour to merge them)")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "closed", bool(self.closed))

    def __len__(self):
        return len(self.points)

    @property
    def edges(self) -> np.ndarray:
        """Edge vectors, ``len(self)`` of them when closed, one fewer when open."""
        return _edge_vectors(self.points, self.closed)

    @property
    def edge_lengths(self) -> np.ndarray:
        e = self.edges
        return np.hypot(e[:, 0], e[:, 1])

    @property
    def signed_area(self) -> float:
        """Shoelace area of the closed polygon; positive when counterclockwise."""
        x, y = self.points[:, 0], self.points[:, 1]
        return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))

    def reversed(self) -> "PlanarContour":
        """Same curve traversed the other way.

        Closed contours keep their first vertex, so parameter ``s`` on the
        original corresponds to ``1 - s`` on the result.
        """
        if self.closed:
            pts = np.concatenate([self.points[:1], self.points[:0:-1]])
        else:
            pts = self.points[::-1]
        return PlanarContour(pts.copy(), self.closed)

    def counterclockwise(self) -> "PlanarContour":
        if self.closed and self.signed_area < 0:
            return self.reversed()
        return self

    def interpolant(self, mode=InterpolationMode.POLYLINE):
        mode = _as_mode(mode)
        if mode not in self._cache:
            cls = _PolylineInterpolant if mode is InterpolationMode.POLYLINE else _SplineInterpolant
            self._cache[mode] = cls(self)
        return self._cache[mode]


@dataclass(frozen=True, eq=False)
class ArcLengthTable:
    """Cumulative chord lengths of a polygonal contour.

    ``cumulative`` has one entry per vertex, plus a final entry equal to
    ``total_length`` for closed contours (the return to the first vertex).
    ``normalized`` has exactly one entry per vertex, so it ends at 1 for open
    contours and stays below 1 for closed ones.
    """

    cumulative: np.ndarray
    total_length: float
    normalized: np.ndarray


def _as_point_array(points) -> np.ndarray:
    pts = np.array(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2:
        if pts.size == 0:
            pts = pts.reshape(0, 2)
        else:
            raise ContourError(f"points must have shape (n, 2), got {pts.shape}")
    if not np.all(np.isfinite(pts)):
        bad = int(np.argwhere(~np.isfinite(pts))[0, 0])
        raise NonFiniteCoordinate(f"point {bad} has a non-finite coordinate: {pts[bad].tolist()}")
    return pts


def _check_count(n: int, closed: bool):
    need = 3 if closed else 2
    if n < need:
        kind = "closed" if closed else "open"
        raise TooFewPoints(f"{kind} contour needs at least {need} distinct points, got {n}")


def _edge_vectors(pts: np.ndarray, closed: bool) -> np.ndarray:
    if closed:
        return np.roll(pts, -1, axis=0) - pts
    return np.diff(pts, axis=0)


def validate_contour(points, closed: bool = False) -> PlanarContour:
    """Build a :class:`PlanarContour`, merging coincident consecutive points.

    For closed input a trailing copy of the first point is dropped as well.

    Raises
    ------
    NonFiniteCoordinate
        If any coordinate is NaN or infinite.
    TooFewPoints
        If fewer than 2 (open) or 3 (closed) distinct points remain.
    """
    pts = _as_point_array(points)
    kept = []
    for p in pts:
        if not kept or np.hypot(*(p - kept[-1])) >= MERGE_TOL:
            kept.append(p)
    if closed:
        while len(kept) > 1 and np.hypot(*(kept[-1] - kept[0])) < MERGE_TOL:
            kept.pop()
    _check_count(len(kept), closed)
    return PlanarContour(np.array(kept).reshape(-1, 2), closed)


def arc_length_table(contour: PlanarContour) -> ArcLengthTable:
    cumulative = np.concatenate([[0.0], np.cumsum(contour.edge_lengths)])
    total = float(cumulative[-1])
    normalized = cumulative[: len(contour)] / total
    if not contour.closed:
        normalized[-1] = 1.0
    cumulative.setflags(write=False)
    normalized.setflags(write=False)
    return ArcLengthTable(cumulative, total, normalized)


def _wrap_parameter(s, closed: bool) -> np.ndarray:
    s = np.asarray(s, dtype=float)
    if closed:
        return np.mod(s, 1.0)
    if np.any((s < -PARAM_TOL) | (s > 1.0 + PARAM_TOL)) or np.any(np.isnan(s)):
        raise ParameterOutOfRange(f"parameter outside [0, 1] on an open contour: {s}")
    return np.clip(s, 0.0, 1.0)


class _PolylineInterpolant:
    def __init__(self, contour: PlanarContour):
        self.closed = contour.closed
        table = arc_length_table(contour)
        self.cumulative = table.cumulative
        self.length = table.total_length
        pts = contour.points
        self.knots = np.concatenate([pts, pts[:1]]) if contour.closed else pts

    def __call__(self, s) -> np.ndarray:
        d = _wrap_parameter(s, self.closed) * self.length
        x = np.interp(d, self.cumulative, self.knots[:, 0])
        y = np.interp(d, self.cumulative, self.knots[:, 1])
        return np.stack([x, y], axis=-1)


class _SplineInterpolant:
    """Cubic spline over chord-length knots, re-indexed by its arc length.

    The arc length is tabulated on a refinement of the knot intervals with
    5-point Gauss-Legendre quadrature per subinterval; the parameter for a
    requested arc length is then found by bisection inside the bracketing
    subinterval.
    """

    def __init__(self, contour: PlanarContour):
        self.closed = contour.closed
        pts = contour.points
        table = arc_length_table(contour)
        if contour.closed:
            knots = np.concatenate([pts, pts[:1]])
            self.spline = CubicSpline(table.cumulative, knots, bc_type="periodic", axis=0)
        else:
            self.spline = CubicSpline(table.cumulative, pts, bc_type="natural", axis=0)
        self.velocity = self.spline.derivative()
        t = table.cumulative
        frac = np.arange(SPLINE_SUBDIVISIONS) / SPLINE_SUBDIVISIONS
        bounds = (t[:-1, None] + np.diff(t)[:, None] * frac).ravel()
        bounds = np.concatenate([bounds, t[-1:]])
        self.lo, self.hi = bounds[:-1], bounds[1:]
        self.cumulative = np.concatenate([[0.0], np.cumsum(self._length(self.lo, self.hi))])
        self.length = float(self.cumulative[-1])
        self.param_tol = SPLINE_BISECTION_TOL * float(t[-1])

    def _length(self, a, b):
        mid, half = 0.5 * (a + b), 0.5 * (b - a)
        x = mid[..., None] + half[..., None] * _GL_NODES
        v = self.velocity(x)
        speed = np.hypot(v[..., 0], v[..., 1])
        return half * (speed @ _GL_WEIGHTS)

    def knot_parameter(self, s) -> np.ndarray:
        """Chord-length knot parameter at normalized spline arc length ``s``."""
        target = np.atleast_1d(_wrap_parameter(s, self.closed) * self.length)
        j = np.clip(np.searchsorted(self.cumulative, target, side="right") - 1, 0, len(self.lo) - 1)
        a, lo, hi = self.lo[j], self.lo[j].copy(), self.hi[j].copy()
        base = self.cumulative[j]
        while np.max(hi - lo) > self.param_tol:
            mid = 0.5 * (lo + hi)
            short = base + self._length(a, mid) < target
            lo = np.where(short, mid, lo)
            hi = np.where(short, hi, mid)
        return 0.5 * (lo + hi)

    def __call__(self, s) -> np.ndarray:
        scalar = np.ndim(s) == 0
        out = self.spline(self.knot_parameter(s))
        return out[0] if scalar else out


def evaluate(contour: PlanarContour, s, mode=InterpolationMode.POLYLINE) -> np.ndarray:
    """Point(s) at normalized arc length ``s`` along the chosen interpolant.

    ``s`` may be a scalar (returns shape ``(2,)``) or an array (returns
    ``s.shape + (2,)``).  Closed contours take ``s`` modulo 1; open contours
    reject values outside ``[0, 1]`` by more than ``PARAM_TOL``.
    """
    return contour.interpolant(mode)(s)


def interpolant_length(contour: PlanarContour, mode=InterpolationMode.POLYLINE) -> float:
    return contour.interpolant(mode).length


def uniform_parameters(n: int, closed: bool) -> np.ndarray:
    """``k/n`` for closed contours, ``k/(n-1)`` for open ones, ``k = 0..n-1``."""
    need = 3 if closed else 2
    if n < need:
        raise TooFewPoints(f"need at least {need} output points, got {n}")
    if closed:
        return np.arange(n) / n
    s = np.arange(n) / (n - 1)
    s[-1] = 1.0
    return s


def resample_uniform(contour: PlanarContour, n: int, mode=InterpolationMode.POLYLINE) -> PlanarContour:
    """Resample ``n`` points equally spaced in arc length along the interpolant."""
    pts = evaluate(contour, uniform_parameters(n, contour.closed), mode)
    return validate_contour(pts, contour.closed)

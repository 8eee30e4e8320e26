"""Geometric invariants of polygonal contours.

Turning angles and signed curvature, moving frames, the total
curvature-length and curvarc-length, and the inverse operation that rebuilds
a polygon from its edge lengths and turning angles.

Curvature at a vertex is its turning angle divided by the mean length of the
two incident edges.  With that estimator the trapezoidal integral of the
curvature profile reproduces the sum of turning angles exactly, which is the
discrete counterpart of the Gauss-Bonnet identity.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .contour import MERGE_TOL, PlanarContour, arc_length_table, validate_contour
from .errors import DegenerateAngle, DegenerateTangent, InconsistentCounts


@dataclass(frozen=True, eq=False)
class TurningAngleSequence:
    """Edge lengths and signed turning angles of a polygon.

    ``angles[k]`` belongs to vertex ``k`` for closed polygons and to vertex
    ``k + 1`` for open ones (open endpoints have no turning angle).
    """

    angles: np.ndarray
    edge_lengths: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "angles", np.asarray(self.angles, dtype=float))
        object.__setattr__(self, "edge_lengths", np.asarray(self.edge_lengths, dtype=float))

    def check(self, closed: bool):
        m = len(self.edge_lengths)
        expected = m if closed else m - 1
        if len(self.angles) != expected:
            kind = "closed" if closed else "open"
            raise InconsistentCounts(
                f"{kind} polygon with {m} edges needs {expected} turning angles, got {len(self.angles)}"
            )
        if m < (3 if closed else 1):
            raise InconsistentCounts(f"too few edges ({m})")
        if np.any(~(self.edge_lengths > 0)):
            raise InconsistentCounts("edge lengths must be positive")


@dataclass(frozen=True, eq=False)
class CurvatureProfile:
    """Signed curvature samples over normalized arc length.

    Closed contours sample every vertex, open contours only the interior ones.
    """

    s: np.ndarray
    kappa: np.ndarray
    total_length: float
    closed: bool = True

    def __post_init__(self):
        s = np.asarray(self.s, dtype=float)
        kappa = np.asarray(self.kappa, dtype=float)
        if s.shape != kappa.shape or s.ndim != 1:
            raise InconsistentCounts("s and kappa must be 1-d sequences of equal length")
        if np.any(np.diff(s) <= 0):
            raise ValueError("profile parameters must be strictly increasing")
        if len(s) and (s[0] < 0 or s[-1] > 1 or (self.closed and s[-1] >= 1)):
            raise ValueError("profile parameters must lie in [0, 1)")
        if not self.total_length > 0:
            raise ValueError("total length must be positive")
        if self.closed and len(s) == 0:
            raise ValueError("closed profile needs at least one sample")
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "kappa", kappa)
        object.__setattr__(self, "total_length", float(self.total_length))


@dataclass(frozen=True)
class MovingFrame:
    """Rigid motion attached to a curve point: position, tangent, frame angle."""

    P: np.ndarray
    v: np.ndarray
    theta: float

    @property
    def n(self) -> np.ndarray:
        return np.array([-self.v[1], self.v[0]])


def profile_grid(profile: CurvatureProfile):
    """Integration grid covering all of ``[0, 1]`` and matching curvature values.

    Closed profiles repeat their first sample at ``s = 1``.  Open profiles get
    zero curvature at both endpoints, where no turning angle exists.
    """
    if profile.closed:
        grid = np.concatenate([profile.s, [1.0]])
        kappa = np.concatenate([profile.kappa, profile.kappa[:1]])
    else:
        grid = np.concatenate([[0.0], profile.s, [1.0]])
        kappa = np.concatenate([[0.0], profile.kappa, [0.0]])
    return grid, kappa


def _incident_edges(contour: PlanarContour):
    """Incoming and outgoing edge vectors at every vertex that has both."""
    e = contour.edges
    if contour.closed:
        return np.roll(e, 1, axis=0), e
    return e[:-1], e[1:]


def _signed_angle(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    cross = a[:, 0] * b[:, 1] - a[:, 1] * b[:, 0]
    dot = np.einsum("ij,ij->i", a, b)
    theta = np.arctan2(cross, dot)
    return np.where(theta <= -np.pi, np.pi, theta)


def turning_angles(contour: PlanarContour) -> TurningAngleSequence:
    """Signed exterior angles, counterclockwise positive, in ``(-pi, pi]``."""
    lengths = contour.edge_lengths
    if np.any(lengths < MERGE_TOL):
        raise DegenerateAngle("edge shorter than merge tolerance")
    incoming, outgoing = _incident_edges(contour)
    return TurningAngleSequence(_signed_angle(incoming, outgoing), lengths)


def total_turning(angles: TurningAngleSequence) -> float:
    """Sum of absolute turning angles: the total curvature-length of a polygon."""
    return float(np.sum(np.abs(angles.angles)))


def discrete_curvature(contour: PlanarContour) -> CurvatureProfile:
    seq = turning_angles(contour)
    ell = seq.edge_lengths
    if contour.closed:
        dual = 0.5 * (np.roll(ell, 1) + ell)
    else:
        dual = 0.5 * (ell[:-1] + ell[1:])
    table = arc_length_table(contour)
    s = table.normalized if contour.closed else table.normalized[1:-1]
    return CurvatureProfile(s.copy(), seq.angles / dual, table.total_length, contour.closed)


def moving_frames(contour: PlanarContour) -> list[MovingFrame]:
    """Frame at every vertex, tangent along the bisector of the incident edges.

    The frame angle is unwrapped by accumulating turning angles, so over a
    closed counterclockwise convex loop it advances by exactly the total
    turning.
    """
    e = contour.edges
    unit = e / np.hypot(e[:, 0], e[:, 1])[:, None]
    angles = turning_angles(contour).angles
    if contour.closed:
        bisector = np.roll(unit, 1, axis=0) + unit
        # heading of edge k is h0 + sum of the turns at vertices 1..k
        headings = np.arctan2(unit[0, 1], unit[0, 0]) + np.concatenate([[0.0], np.cumsum(angles[1:])])
        theta = np.concatenate([[headings[0] - 0.5 * angles[0]], headings[:-1] + 0.5 * angles[1:]])
    else:
        bisector = np.concatenate([unit[:1], unit[:-1] + unit[1:], unit[-1:]])
        headings = np.arctan2(unit[0, 1], unit[0, 0]) + np.concatenate([[0.0], np.cumsum(angles)])
        theta = np.concatenate([[headings[0]], headings[:-1] + 0.5 * angles, [headings[-1]]])
    norm = np.hypot(bisector[:, 0], bisector[:, 1])
    if np.any(norm < 1e-12):
        bad = int(np.argmin(norm))
        raise DegenerateTangent(f"cusp at vertex {bad}: incident edges reverse direction")
    v = bisector / norm[:, None]
    return [MovingFrame(p.copy(), vi, float(t)) for p, vi, t in zip(contour.points, v, theta)]


def total_curvature_length(profile: CurvatureProfile) -> float:
    """``L`` times the trapezoidal integral of ``|kappa|`` over ``[0, 1]``."""
    grid, kappa = profile_grid(profile)
    return profile.total_length * float(np.trapezoid(np.abs(kappa), grid))


def curvarc_length(profile: CurvatureProfile) -> float:
    """Length of the frame curve in SE(2): ``L + C / L``."""
    L = profile.total_length
    return L + total_curvature_length(profile) / L


def _trace(angles: TurningAngleSequence, initial_point, initial_heading: float, closed: bool) -> np.ndarray:
    angles.check(closed)
    turns = angles.angles[1:] if closed else angles.angles
    headings = initial_heading + np.concatenate([[0.0], np.cumsum(turns)])
    if closed:
        headings = headings[: len(angles.edge_lengths)]
    steps = angles.edge_lengths[:, None] * np.stack([np.cos(headings), np.sin(headings)], axis=1)
    start = np.asarray(initial_point, dtype=float).reshape(1, 2)
    return np.concatenate([start, start + np.cumsum(steps, axis=0)])


def reconstruct_from_curvature(
    angles: TurningAngleSequence, initial_point=(0.0, 0.0), initial_heading: float = 0.0, closed: bool = True
) -> PlanarContour:
    """Rebuild a polygon from edge lengths and turning angles.

    Starting at ``initial_point`` with the first edge pointing along
    ``initial_heading``, each edge is laid down and the heading is turned by
    the angle at the next vertex.  For closed input the final edge is implied
    by the wrap; see :func:`closure_defect` for how well it closes.
    """
    path = _trace(angles, initial_point, initial_heading, closed)
    return validate_contour(path[:-1] if closed else path, closed)


def closure_defect(angles: TurningAngleSequence, initial_point=(0.0, 0.0), initial_heading: float = 0.0) -> float:
    """Distance between the end of the last edge and the first vertex."""
    path = _trace(angles, initial_point, initial_heading, True)
    return float(np.hypot(*(path[-1] - path[0])))

"""Canonical landmark placement and landmark correspondence scoring.

Landmarks are spaced uniformly in a reparameterization map ``u`` starting
from a caller-chosen anchor.  Two contours landmarked with the same weight
and count then have corresponding indices at geometrically corresponding
positions, to the extent that the weight captures the shape.

Contours are re-oriented counterclockwise before landmarking; the returned
parameters refer to that orientation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .contour import InterpolationMode, PlanarContour, arc_length_table, evaluate
from .errors import ContourError, CountMismatch
from .invariants import discrete_curvature
from .reparam import WeightSpec, build_map, invert, normalize_profile


@dataclass(frozen=True, eq=False)
class LandmarkSet:
    indices: np.ndarray
    points: np.ndarray
    source_s: np.ndarray

    def __len__(self):
        return len(self.indices)


@dataclass(frozen=True)
class CorrespondenceReport:
    distances: np.ndarray
    mean: float
    max: float


def project_to_contour(contour: PlanarContour, point) -> float:
    """Normalized arc-length parameter of the polyline point nearest ``point``."""
    p = np.asarray(point, dtype=float)
    starts = contour.points
    edges = contour.edges
    lengths2 = np.einsum("ij,ij->i", edges, edges)
    t = np.clip(np.einsum("ij,ij->i", p - starts[: len(edges)], edges) / lengths2, 0.0, 1.0)
    feet = starts[: len(edges)] + t[:, None] * edges
    k = int(np.argmin(np.hypot(*(feet - p).T)))
    table = arc_length_table(contour)
    s = (table.cumulative[k] + t[k] * np.sqrt(lengths2[k])) / table.total_length
    return float(s % 1.0) if contour.closed else float(s)


def max_curvature_anchor(contour: PlanarContour) -> float:
    """Parameter of the vertex with the largest ``|kappa|``.

    A convenience for automatic anchoring; the first maximum wins on ties.
    """
    profile = discrete_curvature(contour)
    return float(profile.s[int(np.argmax(np.abs(profile.kappa)))])


def place_landmarks(
    contour: PlanarContour,
    spec: WeightSpec,
    n: int,
    anchor_s: float = 0.0,
    mode=InterpolationMode.POLYLINE,
    normalize_length: bool = False,
) -> LandmarkSet:
    """Place ``n`` landmarks uniformly in the ``(c, lambda)`` map.

    Landmark 0 sits at ``anchor_s``; landmark ``k`` sits where the map has
    advanced by ``k / n`` past the anchor, modulo 1.  ``anchor_s`` is given
    in the parameterization of ``contour`` as passed in; it is converted
    when the contour has to be reversed to run counterclockwise.
    """
    if not contour.closed:
        raise ContourError("landmarks are placed on closed contours only")
    if n < 1:
        raise ValueError(f"landmark count must be positive, got {n}")
    oriented = contour.counterclockwise()
    if oriented is not contour:
        anchor_s = (1.0 - anchor_s) % 1.0
    anchor_s = float(anchor_s) % 1.0
    profile = discrete_curvature(oriented)
    if normalize_length:
        profile = normalize_profile(profile)
    rmap = build_map(profile, spec)
    targets = (rmap(anchor_s) + np.arange(n) / n) % 1.0
    s = invert(rmap, targets)
    s[0] = anchor_s
    points = evaluate(oriented, s, mode)
    return LandmarkSet(np.arange(n), points, s)


def correspondence_error(candidate: LandmarkSet, reference: LandmarkSet) -> CorrespondenceReport:
    """Per-index Euclidean distances between two landmark sets."""
    if len(candidate) != len(reference):
        raise CountMismatch(f"{len(candidate)} candidate landmarks vs {len(reference)} reference landmarks")
    ref_points = np.asarray(reference.points)[np.argsort(reference.indices)]
    cand_points = np.asarray(candidate.points)[np.argsort(candidate.indices)]
    d = np.hypot(*(cand_points - ref_points).T)
    return CorrespondenceReport(d, float(np.mean(d)), float(np.max(d)))


def transfer_landmarks(
    source: PlanarContour,
    target: PlanarContour,
    spec: WeightSpec,
    n: int,
    source_anchor_s: float = 0.0,
    target_anchor_s: float = 0.0,
    mode=InterpolationMode.POLYLINE,
    normalize_length: bool = False,
) -> tuple[LandmarkSet, LandmarkSet]:
    """Landmark both contours with the same weight and count."""
    a = place_landmarks(source, spec, n, source_anchor_s, mode, normalize_length)
    b = place_landmarks(target, spec, n, target_anchor_s, mode, normalize_length)
    return a, b

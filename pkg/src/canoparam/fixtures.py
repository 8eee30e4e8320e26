"""Synthetic contours with known geometry, for tests and demonstrations."""

from __future__ import annotations

import numpy as np

from .contour import PlanarContour, validate_contour


def circle(n: int = 360, radius: float = 1.0, center=(0.0, 0.0), phase: float = 0.0) -> PlanarContour:
    """Regular counterclockwise ``n``-gon inscribed in a circle, first vertex at angle ``phase``."""
    t = phase + 2 * np.pi * np.arange(n) / n
    pts = np.column_stack([np.cos(t), np.sin(t)]) * radius + np.asarray(center, dtype=float)
    return PlanarContour(pts, closed=True)


def square(side: float = 1.0, clockwise: bool = False) -> PlanarContour:
    pts = np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]) * side
    c = PlanarContour(pts, closed=True)
    return c.reversed() if clockwise else c


def ellipse(a: float = 2.0, b: float = 1.0, n: int = 2048) -> PlanarContour:
    """Ellipse sampled uniformly in the angular parameter, starting at ``(a, 0)``.

    ``n`` divisible by 4 keeps both reflection symmetries in the vertex set.
    """
    t = 2 * np.pi * np.arange(n) / n
    return PlanarContour(np.column_stack([a * np.cos(t), b * np.sin(t)]), closed=True)


def semicircle_diameter(radius: float = 1.0, arc_edges: int = 157, diameter_edges: int = 100) -> PlanarContour:
    """Upper half-disc boundary.

    Starts at ``(radius, 0)``, runs counterclockwise over the arc to
    ``(-radius, 0)`` and returns along the diameter, which is subdivided
    into ``diameter_edges`` collinear edges.
    """
    t = np.pi * np.arange(arc_edges + 1) / arc_edges
    arc = np.column_stack([np.cos(t), np.sin(t)]) * radius
    arc[-1] = [-radius, 0.0]
    x = np.linspace(-radius, radius, diameter_edges + 1)[1:-1]
    diameter = np.column_stack([x, np.zeros_like(x)])
    return PlanarContour(np.concatenate([arc, diameter]), closed=True)


def random_convex_polygon(rng: np.random.Generator, n: int) -> PlanarContour:
    """Counterclockwise convex polygon: sorted angles on a circle under a random affine map."""
    while True:
        t = np.sort(rng.uniform(0, 2 * np.pi, n))
        if np.min(np.diff(np.concatenate([t, t[:1] + 2 * np.pi]))) > 1e-7:
            break
    pts = np.column_stack([np.cos(t), np.sin(t)])
    phi = rng.uniform(0, 2 * np.pi)
    rot = np.array([[np.cos(phi), -np.sin(phi)], [np.sin(phi), np.cos(phi)]])
    A = rot @ np.diag(rng.uniform(0.3, 3.0, 2))
    pts = pts @ A.T + rng.uniform(-5, 5, 2)
    contour = validate_contour(pts, closed=True)
    return contour.counterclockwise()


def random_simple_polygon(rng: np.random.Generator, n: int, extent: float = 10.0) -> PlanarContour:
    """Star-shaped (hence simple) polygon with coordinates in ``[-extent, extent]``."""
    while True:
        t = np.sort(rng.uniform(0, 2 * np.pi, n))
        # the origin sees every edge only if no angular gap reaches pi
        if np.max(np.diff(np.concatenate([t, t[:1] + 2 * np.pi]))) < np.pi:
            break
    r = rng.uniform(0.1, 1.0, n) * extent
    pts = np.column_stack([r * np.cos(t), r * np.sin(t)])
    return validate_contour(pts, closed=True)


def rigid_motion(contour: PlanarContour, angle: float, shift=(0.0, 0.0), scale: float = 1.0) -> PlanarContour:
    c, s = np.cos(angle), np.sin(angle)
    R = np.array([[c, -s], [s, c]]) * scale
    return PlanarContour(contour.points @ R.T + np.asarray(shift, dtype=float), contour.closed)


FIXTURES = {
    "circle": lambda: circle(360),
    "square": square,
    "ellipse": lambda: ellipse(2.0, 1.0, 2048),
    "semicircle_diameter": semicircle_diameter,
}

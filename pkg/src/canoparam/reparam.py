"""Canonical reparameterization maps built from arc length and curvature.

Every map ``u: [0, 1] -> [0, 1]`` here is the normalized cumulative integral
of a weight ``w(s) = c * L + |kappa(s)| ** lambda_exp`` over the arc-length
parameter ``s``:

* ``c = 0, lambda_exp = 1`` -- curvature-length parameter,
* ``c = 1, lambda_exp = 1`` -- curvarc-length parameter,
* ``c = lam, lambda_exp = 1`` -- weight ``L * lam + |kappa|``,
* ``c -> infinity`` -- tends to the arc-length parameter itself.

Resampling a contour uniformly in ``u`` places more points where the weight
is large.  When ``c = 0`` straight pieces carry no weight at all and map to
plateaus of ``u``; samples never land strictly inside them.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .contour import InterpolationMode, PlanarContour, evaluate, uniform_parameters, validate_contour
from .errors import ParameterOutOfRange, ZeroTotalWeight
from .invariants import CurvatureProfile, discrete_curvature, profile_grid

#: consecutive map values closer than this form a plateau
PLATEAU_TOL = 1e-14
#: weights below this fraction of the largest weight count as exactly zero
FLAT_RTOL = 1e-12


@dataclass(frozen=True)
class WeightSpec:
    """Member ``(c, lambda_exp)`` of the weight family ``c * L + |kappa| ** lambda_exp``."""

    c: float = 0.0
    lambda_exp: float = 1.0

    def __post_init__(self):
        if not (np.isfinite(self.c) and self.c >= 0):
            raise ValueError(f"c must be finite and non-negative, got {self.c}")
        if not (np.isfinite(self.lambda_exp) and self.lambda_exp > 0):
            raise ValueError(f"lambda_exp must be finite and positive, got {self.lambda_exp}")

    @classmethod
    def curvature_length(cls) -> "WeightSpec":
        return cls(0.0, 1.0)

    @classmethod
    def curvarc_length(cls) -> "WeightSpec":
        return cls(1.0, 1.0)

    @classmethod
    def blended(cls, lam: float) -> "WeightSpec":
        """Weight ``L * lam + |kappa|``: 0 is curvature-length, 1 curvarc-length."""
        return cls(float(lam), 1.0)


class TieBreak(str, enum.Enum):
    PLATEAU_START = "start"
    PLATEAU_END = "end"


@dataclass(frozen=True, eq=False)
class ReparamMap:
    """Sampled monotone map from ``[0, 1]`` onto ``[0, 1]``.

    ``plateaus`` lists maximal ``(first, last)`` index pairs into ``s_grid``
    over which ``u_values`` stays constant.
    """

    s_grid: np.ndarray
    u_values: np.ndarray
    plateaus: tuple = ()

    def __call__(self, s):
        return np.interp(s, self.s_grid, self.u_values)

    @property
    def is_strict(self) -> bool:
        return not self.plateaus

    def inverse(self, u, tie_break=TieBreak.PLATEAU_START):
        return invert(self, u, tie_break)

    def deviation_from_identity(self) -> float:
        """``max |u(s_i) - s_i|`` over the grid."""
        return float(np.max(np.abs(self.u_values - self.s_grid)))


def normalize_profile(profile: CurvatureProfile) -> CurvatureProfile:
    """The profile of the same contour scaled to unit length."""
    L = profile.total_length
    return CurvatureProfile(profile.s, profile.kappa * L, 1.0, profile.closed)


def weight_samples(profile: CurvatureProfile, spec: WeightSpec) -> np.ndarray:
    return spec.c * profile.total_length + np.abs(profile.kappa) ** spec.lambda_exp


def _plateaus(u: np.ndarray) -> tuple:
    flat = np.diff(u) <= PLATEAU_TOL
    runs = []
    i, m = 0, len(flat)
    while i < m:
        if flat[i]:
            j = i
            while j < m and flat[j]:
                j += 1
            runs.append((i, j))
            i = j
        else:
            i += 1
    return tuple(runs)


def _edge_increments(grid: np.ndarray, w: np.ndarray, closed: bool) -> np.ndarray:
    """Trapezoidal increments, with corner weight kept off straight pieces.

    Each grid vertex contributes ``w_i * ds / 2`` to each of its incident
    intervals.  An interval with a zero-weight endpoint is straight; the
    other endpoint's share is then moved onto that vertex's opposite
    interval, provided that one is not straight as well.  With every weight
    positive this is exactly the trapezoidal rule.  Total mass is preserved.
    """
    ds = np.diff(grid)
    left = w[:-1] * ds / 2  # share of vertex j on interval j
    right = w[1:] * ds / 2  # share of vertex j + 1 on interval j
    zero = w == 0
    if not zero.any():
        return left + right
    m = len(ds)
    flat = zero[:-1] | zero[1:]
    inc = np.where(flat, 0.0, left + right)
    idx = np.arange(m)
    # neighbours across the vertex at each end of interval j
    before = idx - 1
    after = idx + 1
    if closed:
        before[0], after[-1] = m - 1, 0
    else:
        before[0], after[-1] = -1, -1
    for share, other in ((left, before), (right, after)):
        moving = flat & (share > 0)
        target = np.where(moving & (other >= 0), other, -1)
        ok = target >= 0
        ok[ok] = ~flat[target[ok]]
        np.add.at(inc, target[ok], share[ok])
        stuck = moving & ~ok
        np.add.at(inc, idx[stuck], share[stuck])
    return inc


def map_from_weights(grid, weights, closed: bool = True) -> ReparamMap:
    """Normalized cumulative integral of ``weights`` sampled on ``grid``.

    ``grid`` must run from 0 to 1; for closed curves its last entry is the
    wrap-around copy of the first sample.
    """
    grid = np.asarray(grid, dtype=float)
    w = np.array(weights, dtype=float)
    if not (len(w) and np.max(w) > 0):
        raise ZeroTotalWeight("weight vanishes everywhere; no map can be normalized")
    cumulative = np.concatenate([[0.0], np.cumsum(_edge_increments(grid, w, closed))])
    total = cumulative[-1]
    if not total > 0:
        raise ZeroTotalWeight("weight integrates to zero")
    u = cumulative / total
    u[-1] = 1.0
    grid.setflags(write=False)
    u.setflags(write=False)
    return ReparamMap(grid, u, _plateaus(u))


def build_map(profile: CurvatureProfile, spec: WeightSpec) -> ReparamMap:
    """Map ``s -> u`` for the weight ``c * L + |kappa| ** lambda_exp``.

    Raises
    ------
    ZeroTotalWeight
        When ``c = 0`` and the curvature vanishes identically.
    """
    grid, kappa = profile_grid(profile)
    bend = np.abs(kappa)
    # rounding leaves straight pieces with |kappa| ~ 1e-16; call those flat
    if len(bend):
        bend[bend <= FLAT_RTOL * np.max(bend)] = 0.0
    bend = bend**spec.lambda_exp
    return map_from_weights(grid, spec.c * profile.total_length + bend, profile.closed)


def _snap_to_plateaus(rmap: ReparamMap, u: np.ndarray) -> np.ndarray:
    if not rmap.plateaus:
        return u
    levels = rmap.u_values[[first for first, _ in rmap.plateaus]]
    k = np.clip(np.searchsorted(levels, u), 1, len(levels)) - 1
    out = u.copy()
    for cand in (k, np.minimum(k + 1, len(levels) - 1)):
        near = np.abs(u - levels[cand]) <= PLATEAU_TOL
        out[near] = levels[cand][near]
    return out


def invert(rmap: ReparamMap, u, tie_break=TieBreak.PLATEAU_START):
    """Piecewise-linear inverse of a sampled map.

    Values on a plateau level resolve to the start (default) or the end of
    the plateau.
    """
    tie_break = TieBreak(tie_break)
    scalar = np.ndim(u) == 0
    u = np.atleast_1d(np.asarray(u, dtype=float))
    if np.any((u < -PLATEAU_TOL) | (u > 1 + PLATEAU_TOL)) or np.any(np.isnan(u)):
        raise ParameterOutOfRange(f"map value outside [0, 1]: {u}")
    u = _snap_to_plateaus(rmap, np.clip(u, 0.0, 1.0))
    S, U = rmap.s_grid, rmap.u_values
    m = len(U)
    if tie_break is TieBreak.PLATEAU_START:
        hi = np.clip(np.searchsorted(U, u, side="left"), 1, m - 1)
        lo = hi - 1
        exact = np.where(u == U[lo], S[lo], np.where(u == U[hi], S[hi], np.nan))
    else:
        hi = np.clip(np.searchsorted(U, u, side="right"), 1, m - 1)
        lo = hi - 1
        exact = np.where(u == U[hi], S[hi], np.where(u == U[lo], S[lo], np.nan))
    span = U[hi] - U[lo]
    with np.errstate(invalid="ignore", divide="ignore"):
        t = (u - U[lo]) / span
    s = np.where(np.isnan(exact), S[lo] + t * (S[hi] - S[lo]), exact)
    return float(s[0]) if scalar else s


def resample_parameters(rmap: ReparamMap, n: int, closed: bool, tie_break=TieBreak.PLATEAU_START) -> np.ndarray:
    """Arc-length parameters of ``n`` samples spaced uniformly in ``u``."""
    return invert(rmap, uniform_parameters(n, closed), tie_break)


def resample_by_map(
    contour: PlanarContour, rmap: ReparamMap, n: int, mode=InterpolationMode.POLYLINE
) -> PlanarContour:
    """Resample ``n`` points uniformly in ``u``, hence non-uniformly in arc length."""
    s = resample_parameters(rmap, n, contour.closed)
    return validate_contour(evaluate(contour, s, mode), contour.closed)


def resample_weighted(
    contour: PlanarContour,
    spec: WeightSpec,
    n: int,
    mode=InterpolationMode.POLYLINE,
    normalize_length: bool = False,
) -> PlanarContour:
    """Profile, map and resample in one call."""
    profile = discrete_curvature(contour)
    if normalize_length:
        profile = normalize_profile(profile)
    return resample_by_map(contour, build_map(profile, spec), n, mode)

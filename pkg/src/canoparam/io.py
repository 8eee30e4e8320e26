"""File formats and SVG output.

Contours are stored either as JSON ``{"closed": bool, "points": [[x, y], ...]}``
or as two-column CSV (closedness supplied separately).  Curvature profiles
are CSV with header ``s,kappa``; turning data is CSV with header
``edge_length,turning_angle``; landmark sets are JSON
``{"n": count, "landmarks": [{"index": k, "point": [x, y], "s": s}, ...]}``.

Floats are written with ``repr``, the shortest string that reads back to the
identical double, so every file roundtrips losslessly and byte-identically.
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

import numpy as np

from .contour import PlanarContour, validate_contour
from .correspondence import LandmarkSet
from .errors import CanoparamError, FileFormatError
from .invariants import CurvatureProfile, TurningAngleSequence


def _num(x) -> str:
    return repr(float(x))


def _write_text(path, text: str):
    Path(path).write_text(text, encoding="utf-8", newline="\n")


# -- contours ----------------------------------------------------------------


def parse_contour_json(text: str) -> PlanarContour:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FileFormatError(exc.msg, f"line {exc.lineno}, column {exc.colno}") from None
    if not isinstance(data, dict) or "points" not in data:
        raise FileFormatError('expected an object with a "points" array')
    closed = data.get("closed", False)
    if not isinstance(closed, bool):
        raise FileFormatError('"closed" must be true or false')
    points = data["points"]
    if not isinstance(points, list):
        raise FileFormatError('"points" must be an array')
    for k, p in enumerate(points):
        if not (isinstance(p, list) and len(p) == 2 and all(isinstance(v, (int, float)) for v in p)):
            raise FileFormatError("expected [x, y] with two numbers", f"points[{k}]")
    try:
        return validate_contour(np.array(points, dtype=float).reshape(-1, 2), closed)
    except CanoparamError as exc:
        raise FileFormatError(str(exc)) from None


def _csv_rows(text: str, header: tuple[str, ...], optional_blank: set[int] = frozenset()):
    """Numeric rows of a CSV file with an optional header line."""
    rows = []
    for lineno, row in enumerate(csv.reader(io.StringIO(text)), start=1):
        if not row or all(not cell.strip() for cell in row):
            continue
        cells = [c.strip() for c in row]
        if lineno == 1 and [c.lower() for c in cells] == list(header):
            continue
        if len(cells) != len(header):
            raise FileFormatError(f"expected {len(header)} columns, got {len(cells)}", f"line {lineno}")
        values = []
        for k, cell in enumerate(cells):
            if cell == "" and k in optional_blank:
                values.append(None)
                continue
            try:
                values.append(float(cell))
            except ValueError:
                raise FileFormatError(f"not a number: {cell!r}", f"line {lineno}, column {k + 1}") from None
        rows.append((lineno, values))
    return rows


def parse_contour_csv(text: str, closed: bool = False) -> PlanarContour:
    rows = _csv_rows(text, ("x", "y"))
    pts = np.array([v for _, v in rows], dtype=float).reshape(-1, 2)
    try:
        return validate_contour(pts, closed)
    except CanoparamError as exc:
        raise FileFormatError(str(exc)) from None


def read_contour(path, closed: bool = False) -> PlanarContour:
    """Read a contour file; ``closed`` applies to CSV input only."""
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if path.suffix.lower() == ".csv":
        return parse_contour_csv(text, closed)
    return parse_contour_json(text)


def format_contour_json(contour: PlanarContour) -> str:
    lines = [f"    [{_num(x)}, {_num(y)}]" for x, y in contour.points]
    closed = "true" if contour.closed else "false"
    return '{\n  "closed": ' + closed + ',\n  "points": [\n' + ",\n".join(lines) + "\n  ]\n}\n"


def format_contour_csv(contour: PlanarContour) -> str:
    return "x,y\n" + "".join(f"{_num(x)},{_num(y)}\n" for x, y in contour.points)


def write_contour(path, contour: PlanarContour):
    path = Path(path)
    text = format_contour_csv(contour) if path.suffix.lower() == ".csv" else format_contour_json(contour)
    _write_text(path, text)


# -- curvature profiles and turning data ----------------------------------


def format_profile_csv(s, kappa) -> str:
    return "s,kappa\n" + "".join(f"{_num(a)},{_num(b)}\n" for a, b in zip(s, kappa))


def write_profile(path, s, kappa):
    _write_text(path, format_profile_csv(s, kappa))


def read_profile(path, total_length: float = 1.0, closed: bool = True) -> CurvatureProfile:
    rows = _csv_rows(Path(path).read_text(encoding="utf-8"), ("s", "kappa"))
    data = np.array([v for _, v in rows], dtype=float).reshape(-1, 2)
    return CurvatureProfile(data[:, 0], data[:, 1], total_length, closed)


def format_angles_csv(angles: TurningAngleSequence, closed: bool) -> str:
    """One row per edge: its length and the turn at its start vertex.

    Open polygons have no turn at the first vertex, so that cell is blank.
    """
    turns = list(angles.angles) if closed else [None] + list(angles.angles)
    out = ["edge_length,turning_angle\n"]
    for ell, th in zip(angles.edge_lengths, turns):
        out.append(f"{_num(ell)},{'' if th is None else _num(th)}\n")
    return "".join(out)


def write_angles(path, angles: TurningAngleSequence, closed: bool):
    _write_text(path, format_angles_csv(angles, closed))


def parse_angles_csv(text: str, closed: bool, edge_length: float | None = None) -> TurningAngleSequence:
    """Inverse of :func:`format_angles_csv`.

    A file with the single column ``turning_angle`` is accepted when a
    uniform ``edge_length`` is supplied.
    """
    first = text.lstrip().splitlines()[0].strip().lower() if text.strip() else ""
    if first == "turning_angle" or (edge_length is not None and "," not in first):
        if edge_length is None:
            raise FileFormatError("single-column angle file needs a uniform edge length")
        rows = _csv_rows(text, ("turning_angle",), optional_blank={0})
        lengths = [edge_length] * len(rows)
        turns = [v[0] for _, v in rows]
    else:
        rows = _csv_rows(text, ("edge_length", "turning_angle"), optional_blank={1})
        lengths = [v[0] for _, v in rows]
        turns = [v[1] for _, v in rows]
    if not rows:
        raise FileFormatError("no data rows")
    if not closed:
        if turns[0] is not None and len(rows) > 1:
            raise FileFormatError("open polygon: first row must leave turning_angle blank", f"line {rows[0][0]}")
        turns = turns[1:]
    for (lineno, _), th in zip(rows[0 if closed else 1 :], turns):
        if th is None:
            raise FileFormatError("missing turning angle", f"line {lineno}")
    return TurningAngleSequence(np.array(turns, dtype=float), np.array(lengths, dtype=float))


def read_angles(path, closed: bool, edge_length: float | None = None) -> TurningAngleSequence:
    return parse_angles_csv(Path(path).read_text(encoding="utf-8"), closed, edge_length)


# -- landmarks ---------------------------------------------------------------


def format_landmarks_json(landmarks: LandmarkSet) -> str:
    order = np.argsort(landmarks.indices)
    items = []
    for k in order:
        x, y = landmarks.points[k]
        items.append(
            f'    {{"index": {int(landmarks.indices[k])}, "point": [{_num(x)}, {_num(y)}], '
            f'"s": {_num(landmarks.source_s[k])}}}'
        )
    return '{\n  "n": ' + str(len(landmarks)) + ',\n  "landmarks": [\n' + ",\n".join(items) + "\n  ]\n}\n"


def write_landmarks(path, landmarks: LandmarkSet):
    _write_text(path, format_landmarks_json(landmarks))


def parse_landmarks_json(text: str) -> LandmarkSet:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FileFormatError(exc.msg, f"line {exc.lineno}, column {exc.colno}") from None
    if not isinstance(data, dict) or not isinstance(data.get("landmarks"), list):
        raise FileFormatError('expected an object with a "landmarks" array')
    items = data["landmarks"]
    n = data.get("n", len(items))
    if not isinstance(n, int) or n != len(items):
        raise FileFormatError(f'"n" is {n!r} but {len(items)} landmarks are listed')
    idx, pts, s = [], [], []
    for k, item in enumerate(items):
        try:
            idx.append(int(item["index"]))
            x, y = item["point"]
            pts.append([float(x), float(y)])
            s.append(float(item.get("s", np.nan)))
        except (KeyError, TypeError, ValueError):
            raise FileFormatError("landmark needs an integer index and a two-number point", f"landmarks[{k}]") from None
    if sorted(idx) != list(range(n)):
        raise FileFormatError(f"landmark indices must be 0..{n - 1}, each exactly once")
    order = np.argsort(idx)
    return LandmarkSet(
        np.array(idx)[order], np.array(pts, dtype=float).reshape(-1, 2)[order], np.array(s, dtype=float)[order]
    )


def read_landmarks(path) -> LandmarkSet:
    return parse_landmarks_json(Path(path).read_text(encoding="utf-8"))


# -- SVG ---------------------------------------------------------------------

_SVG_HEAD = '<svg xmlns="http://www.w3.org/2000/svg" viewBox="{:.6g} {:.6g} {:.6g} {:.6g}" width="{}" height="{}">\n'


def _fmt(v) -> str:
    return f"{float(v):.8g}"


def _viewbox(points: np.ndarray, margin: float = 0.05):
    """Bounding box in screen coordinates (y flipped) with a relative margin."""
    lo, hi = points.min(axis=0), points.max(axis=0)
    size = np.maximum(hi - lo, 1e-9)
    pad = margin * size
    x0, y0 = lo[0] - pad[0], -(hi[1] + pad[1])
    return x0, y0, size[0] + 2 * pad[0], size[1] + 2 * pad[1]


def _path_d(points: np.ndarray, closed: bool) -> str:
    parts = [f"{'M' if k == 0 else 'L'}{_fmt(x)} {_fmt(-y)}" for k, (x, y) in enumerate(points)]
    return " ".join(parts) + (" Z" if closed else "")


def contour_svg(curve: np.ndarray, closed: bool, samples=None, overlays=(), width: int = 600) -> str:
    """SVG of a curve drawn as a path, with sample points as circles.

    ``overlays`` is a sequence of ``(points, colour)`` pairs drawn as
    circles on top, used for landmark sets.
    """
    curve = np.asarray(curve, dtype=float)
    everything = [curve] + ([np.asarray(samples)] if samples is not None else []) + [np.asarray(p) for p, _ in overlays]
    x0, y0, w, h = _viewbox(np.concatenate(everything))
    r = 0.006 * max(w, h)
    stroke = 0.002 * max(w, h)
    height = max(1, int(round(width * h / w)))
    out = [_SVG_HEAD.format(x0, y0, w, h, width, height)]
    out.append(f'  <path d="{_path_d(curve, closed)}" fill="none" stroke="black" stroke-width="{_fmt(stroke)}"/>\n')
    layers = ([(samples, "red")] if samples is not None else []) + list(overlays)
    for pts, colour in layers:
        out.append(f'  <g fill="{colour}">\n')
        for x, y in np.asarray(pts):
            out.append(f'    <circle cx="{_fmt(x)}" cy="{_fmt(-y)}" r="{_fmt(r)}"/>\n')
        out.append("  </g>\n")
    out.append("</svg>\n")
    return "".join(out)


def graph_svg(x, y, width: int = 600, height: int = 300, xlabel: str = "", ylabel: str = "") -> str:
    """Line graph of ``y`` against ``x`` in a unit-aspect plotting box."""
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    xmin, xmax = float(np.min(x)), float(np.max(x))
    ymin, ymax = float(np.min(y)), float(np.max(y))
    if ymax - ymin < 1e-12:
        ymin, ymax = ymin - 0.5, ymax + 0.5
    if xmax - xmin < 1e-12:
        xmin, xmax = xmin - 0.5, xmax + 0.5
    # normalized plotting box [0, 1] x [0, 0.5], y flipped
    px = (x - xmin) / (xmax - xmin)
    py = 0.5 * (y - ymin) / (ymax - ymin)
    box = np.array([[0.0, 0.0], [1.0, 0.5]])
    x0, y0, w, h = _viewbox(box, margin=0.08)
    out = [_SVG_HEAD.format(x0, y0, w, h, width, height)]
    out.append('  <rect x="0" y="-0.5" width="1" height="0.5" fill="none" stroke="gray" stroke-width="0.002"/>\n')
    if ymin < 0 < ymax:
        zy = 0.5 * (0 - ymin) / (ymax - ymin)
        out.append(f'  <path d="M0 {_fmt(-zy)} L1 {_fmt(-zy)}" stroke="gray" stroke-width="0.001"/>\n')
    out.append(f'  <path d="{_path_d(np.column_stack([px, py]), False)}" fill="none" stroke="blue" stroke-width="0.003"/>\n')
    font = 'font-size="0.03" font-family="sans-serif"'
    out.append(f'  <text x="0" y="0.04" {font}>{_fmt(xmin)}</text>\n')
    out.append(f'  <text x="1" y="0.04" text-anchor="end" {font}>{_fmt(xmax)}</text>\n')
    out.append(f'  <text x="-0.01" y="0" text-anchor="end" {font}>{_fmt(ymin)}</text>\n')
    out.append(f'  <text x="-0.01" y="-0.48" text-anchor="end" {font}>{_fmt(ymax)}</text>\n')
    if xlabel:
        out.append(f'  <text x="0.5" y="0.05" text-anchor="middle" {font}>{xlabel}</text>\n')
    if ylabel:
        out.append(f'  <text x="0.02" y="-0.46" {font}>{ylabel}</text>\n')
    out.append("</svg>\n")
    return "".join(out)


def write_svg(path, text: str):
    _write_text(path, text)

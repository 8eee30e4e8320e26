"""Command-line interface.

Exit codes: 0 success, 1 input or validation error, 2 vanishing weight
(no map exists), 3 landmark count mismatch against a reference.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import io as cio
from .contour import InterpolationMode, evaluate, interpolant_length, resample_uniform, uniform_parameters
from .correspondence import (
    correspondence_error,
    max_curvature_anchor,
    place_landmarks,
    transfer_landmarks,
)
from .errors import CanoparamError, CountMismatch, ZeroTotalWeight
from .fixtures import FIXTURES
from .invariants import (
    closure_defect,
    curvarc_length,
    discrete_curvature,
    reconstruct_from_curvature,
    total_curvature_length,
    turning_angles,
)
from .reparam import WeightSpec, build_map, normalize_profile, resample_by_map

EXIT_INPUT, EXIT_WEIGHT, EXIT_COUNT = 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _point(text: str):
    try:
        x, y = (float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected X,Y, got {text!r}") from None
    return x, y


def _add_contour_input(p, flag="--input", closed_help=True):
    p.add_argument(flag, required=True, help="contour file (.json, or .csv with two columns x,y)")
    if closed_help:
        p.add_argument("--closed", action="store_true", help="treat CSV input as a closed contour")


def _add_weight(p, c_default=None, lam_default=1.0):
    p.add_argument("--weight-c", type=float, default=c_default, help="arc-length weight coefficient c")
    p.add_argument("--weight-lambda", type=float, default=lam_default, help="curvature exponent lambda")
    p.add_argument(
        "--normalize-length",
        action="store_true",
        help="scale the curvature profile to unit length first, making the map scale invariant",
    )


def _add_mode(p):
    p.add_argument("--mode", choices=[m.value for m in InterpolationMode], default="polyline")


def _dense_curve(contour, mode, samples=2000):
    if InterpolationMode(mode) is InterpolationMode.POLYLINE:
        return contour.points
    return evaluate(contour, uniform_parameters(samples, contour.closed), mode)


def cmd_resample(args):
    contour = cio.read_contour(args.input, args.closed)
    if args.weight_c is None:
        out = resample_uniform(contour, args.n, args.mode)
    else:
        profile = discrete_curvature(contour)
        if args.normalize_length:
            profile = normalize_profile(profile)
        rmap = build_map(profile, WeightSpec(args.weight_c, args.weight_lambda))
        out = resample_by_map(contour, rmap, args.n, args.mode)
    cio.write_contour(args.output, out)
    if args.svg:
        cio.write_svg(args.svg, cio.contour_svg(_dense_curve(contour, args.mode), contour.closed, out.points))
    return 0


_PARAM_SPECS = {"curvature": WeightSpec.curvature_length(), "curvarc": WeightSpec.curvarc_length()}


def cmd_curvature(args):
    contour = cio.read_contour(args.input, args.closed)
    if args.resample:
        contour = resample_uniform(contour, args.resample)
    profile = discrete_curvature(contour)
    if args.param == "arc":
        s = profile.s
    else:
        if args.param == "custom":
            if args.weight_c is None:
                raise CanoparamError("--param custom needs --weight-c")
            spec = WeightSpec(args.weight_c, args.weight_lambda)
        else:
            spec = _PARAM_SPECS[args.param]
        mapped = normalize_profile(profile) if args.normalize_length else profile
        s = build_map(mapped, spec)(profile.s)
    cio.write_profile(args.output, s, profile.kappa)
    if args.angles_output:
        cio.write_angles(args.angles_output, turning_angles(contour), contour.closed)
    if args.svg:
        cio.write_svg(args.svg, cio.graph_svg(s, profile.kappa, xlabel=args.param, ylabel="kappa"))
    return 0


def cmd_reconstruct(args):
    angles = cio.read_angles(args.angles, args.closed, args.edge_length)
    contour = reconstruct_from_curvature(angles, args.start, args.heading, args.closed)
    cio.write_contour(args.output, contour)
    if args.closed:
        print(f"closure_defect={closure_defect(angles, args.start, args.heading)!r}")
    if args.svg:
        cio.write_svg(args.svg, cio.contour_svg(contour.points, contour.closed, contour.points))
    return 0


def _anchor(contour, value, auto):
    return max_curvature_anchor(contour) if auto else value


def cmd_landmarks(args):
    spec = WeightSpec(args.weight_c, args.weight_lambda)
    source = cio.read_contour(args.input, args.closed)
    anchor = _anchor(source, args.anchor_s, args.anchor_auto)
    opts = dict(mode=args.mode, normalize_length=args.normalize_length)
    if args.input2:
        target = cio.read_contour(args.input2, args.closed)
        anchor2 = args.anchor2_s if args.anchor2_s is not None else args.anchor_s
        anchor2 = _anchor(target, anchor2, args.anchor_auto)
        first, second = transfer_landmarks(source, target, spec, args.n, anchor, anchor2, **opts)
    else:
        first, second = place_landmarks(source, spec, args.n, anchor, **opts), None
    cio.write_landmarks(args.output, first)
    if second is not None:
        cio.write_landmarks(args.output2 or _second_name(args.output), second)
    if args.svg:
        overlays = [(first.points, "red")]
        curve = _dense_curve(source.counterclockwise(), args.mode)
        cio.write_svg(args.svg, cio.contour_svg(curve, True, overlays=overlays))
    if args.reference:
        reference = cio.read_landmarks(args.reference)
        report = correspondence_error(first, reference)
        for k, d in enumerate(report.distances):
            print(f"{k},{d!r}")
        print(f"mean={report.mean!r}")
        print(f"max={report.max!r}")
    return 0


def _second_name(path):
    p = Path(path)
    return p.with_name(p.stem + "_2" + p.suffix)


def cmd_fixture(args):
    contour = FIXTURES[args.name]()
    cio.write_contour(args.output, contour)
    return 0


def cmd_info(args):
    contour = cio.read_contour(args.input, args.closed)
    profile = discrete_curvature(contour)
    print(f"points={len(contour)}")
    print(f"closed={str(contour.closed).lower()}")
    print(f"length={profile.total_length!r}")
    print(f"spline_length={interpolant_length(contour, 'spline')!r}")
    print(f"total_curvature_length={total_curvature_length(profile)!r}")
    print(f"curvarc_length={curvarc_length(profile)!r}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="canoparam", description="Canonical parameterizations of planar curves.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("resample", help="resample uniformly in arc length or in a (c, lambda) map")
    _add_contour_input(p)
    p.add_argument("--n", type=int, required=True, help="number of output points")
    _add_mode(p)
    _add_weight(p)
    p.add_argument("--output", required=True)
    p.add_argument("--svg")
    p.set_defaults(func=cmd_resample)

    p = sub.add_parser("curvature", help="export the signed curvature profile")
    _add_contour_input(p)
    p.add_argument("--output", required=True, help="profile CSV (s,kappa)")
    p.add_argument("--param", choices=["arc", "curvature", "curvarc", "custom"], default="arc")
    _add_weight(p)
    p.add_argument("--resample", type=int, metavar="N", help="resample uniformly (polyline) to N points first")
    p.add_argument("--angles-output", help="also write edge lengths and turning angles (CSV)")
    p.add_argument("--svg")
    p.set_defaults(func=cmd_curvature)

    p = sub.add_parser("reconstruct", help="rebuild a polygon from edge lengths and turning angles")
    p.add_argument("--angles", required=True, help="CSV edge_length,turning_angle")
    p.add_argument("--start", type=_point, default=(0.0, 0.0), metavar="X,Y")
    p.add_argument("--heading", type=float, default=0.0, help="direction of the first edge, radians")
    p.add_argument("--closed", action="store_true")
    p.add_argument("--edge-length", type=float, help="uniform edge length for single-column angle files")
    p.add_argument("--output", required=True)
    p.add_argument("--svg")
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("landmarks", help="place canonical landmarks on one or two closed contours")
    _add_contour_input(p)
    p.add_argument("--input2", help="second contour; landmarks are transferred to it")
    p.add_argument("--n", type=int, required=True)
    _add_mode(p)
    _add_weight(p, c_default=1.0, lam_default=7.0)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--anchor-s", type=float, default=0.0, help="parameter of landmark 0")
    group.add_argument(
        "--anchor-auto",
        action="store_true",
        help="anchor at the vertex of largest |kappa| (a convenience heuristic)",
    )
    p.add_argument("--anchor2-s", type=float, help="anchor on the second contour (default: --anchor-s)")
    p.add_argument("--output", required=True, help="landmark JSON for the first contour")
    p.add_argument("--output2", help="landmark JSON for the second contour")
    p.add_argument("--reference", help="reference landmark JSON; prints per-landmark distances")
    p.add_argument("--svg")
    p.set_defaults(func=cmd_landmarks)

    p = sub.add_parser("fixture", help="write one of the built-in synthetic contours")
    p.add_argument("name", choices=sorted(FIXTURES))
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_fixture)

    p = sub.add_parser("info", help="print length and curvature invariants")
    _add_contour_input(p)
    p.set_defaults(func=cmd_info)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ZeroTotalWeight as exc:
        print(f"canoparam: {exc}", file=sys.stderr)
        return EXIT_WEIGHT
    except CountMismatch as exc:
        print(f"canoparam: {exc}", file=sys.stderr)
        return EXIT_COUNT
    except (CanoparamError, OSError, ValueError) as exc:
        print(f"canoparam: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

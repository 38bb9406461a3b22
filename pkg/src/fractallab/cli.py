"""fractalctl: command-line front end.

Every capability is a subcommand; data goes to stdout or to --out files,
diagnostics go to stderr.  Exit codes: 0 success, 1 domain/resource error,
2 usage error.  Output is deterministic given the flags: no timestamps, no
randomness.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__, curves, dragonlab, mandel, meshforge, newtonlab, raster
from .errors import DomainError, NonConvergenceError, ResourceLimitError
from .rationals import (
    as_rat,
    geom_sum_finite,
    geom_sum_infinite,
    rat_str,
)


def _write_out(path: str, data: bytes) -> None:
    if path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        with open(path, "wb") as fh:
            fh.write(data)


def _emit(text: str) -> None:
    sys.stdout.write(text)
    if not text.endswith("\n"):
        sys.stdout.write("\n")


def _cmd_series(args) -> None:
    r = as_rat(args.r)
    x = as_rat(args.x)
    if args.n == "inf":
        total = geom_sum_infinite(r, x)
    else:
        total = geom_sum_finite(r, x, int(args.n))
    if args.json:
        _emit(json.dumps({"r": rat_str(r), "x": rat_str(x), "n": args.n,
                          "sum": rat_str(total)}))
    else:
        _emit(rat_str(total))


def _cmd_measure(args) -> None:
    kind = args.kind
    infinite = args.iter == "inf"
    n = None if infinite else int(args.iter)
    value: Fraction | None
    diverges = False
    if kind == "koch":
        if infinite:
            value, diverges = None, True
        else:
            value = curves.koch_length(n)
    elif kind == "snowflake":
        value = curves.snowflake_area_limit() if infinite else curves.snowflake_area(n)
    elif kind == "carpet":
        value = Fraction(0) if infinite else curves.carpet_area(n)
    else:  # cantor
        value = Fraction(0) if infinite else curves.cantor_measure(n)
    if args.json:
        _emit(json.dumps({
            "kind": kind,
            "iter": args.iter,
            "value": None if value is None else rat_str(value),
            "diverges": diverges,
        }))
    else:
        _emit("diverges" if diverges else rat_str(value))


def _cmd_curve(args) -> None:
    if args.kind == "dragon":
        points = curves.dragon_polyline(args.n)
    elif args.kind == "koch":
        points = curves.koch_polyline(args.n)
    else:
        points = curves.snowflake_polyline(args.n)
    svg = raster.polyline_to_svg(points, stroke_width=args.stroke_width)
    _write_out(args.out, svg.encode())


def _cmd_dragon_verify(args) -> None:
    report = dragonlab.check_non_overlap(args.n)
    union = dragonlab.four_copy_union(args.n)
    union_max = max(union.values())
    square = dragonlab.max_filled_square(union)
    payload = {
        "n": args.n,
        "non_overlap": report.to_dict(),
        "four_copies": {
            "edge_count": sum(union.values()),
            "max_multiplicity": union_max,
            "disjoint": union_max == 1,
            "max_filled_square": square.to_dict(),
        },
    }
    if args.json:
        _emit(json.dumps(payload))
        return
    lines = [
        f"dragon iteration {args.n}",
        f"  edges traversed        {report.edge_count}",
        f"  max edge multiplicity  {report.max_edge_multiplicity}",
        f"  max vertex visits      {report.max_vertex_visits}",
        f"  non-overlapping        {'yes' if report.ok else 'NO'}",
        f"  4-copy union edges     {sum(union.values())}",
        f"  4-copy disjoint        {'yes' if union_max == 1 else 'NO'}",
        f"  filled square side     {square.side}"
        + (f" at corner {square.corner}" if square.corner else ""),
    ]
    _emit("\n".join(lines))


def _render_params(args) -> mandel.RenderParams:
    return mandel.RenderParams(
        center=complex(args.cx, args.cy),
        scale=args.scale,
        width=args.width,
        height=args.height,
        max_iter=args.max_iter,
    )


def _cmd_mandelbrot(args) -> None:
    img = mandel.render_mandel(_render_params(args))
    _write_out(args.out, raster.write_pgm(img))


def _cmd_boundary_polys(args) -> None:
    polys = mandel.boundary_polys(args.m)
    if args.linear_coeffs:
        seq = mandel.linear_coeffs(args.m)
        if args.json:
            _emit(json.dumps({"m": args.m, "linear_coeffs": seq}))
        else:
            _emit(", ".join(str(a) for a in seq))
        return
    if args.json:
        _emit(json.dumps({"m": args.m, "coeffs": [list(p.coeffs) for p in polys]}))
    else:
        _emit("\n".join(f"p{i}: {p}" for i, p in enumerate(polys, start=1)))


def _cmd_newton(args) -> None:
    img = newtonlab.render_newton(_render_params(args), args.k,
                                  complex(args.a_re, args.a_im))
    _write_out(args.out, raster.write_ppm(img))


def _cmd_heron(args) -> None:
    a = complex(args.a_re, args.a_im)
    z0 = complex(args.z0_re, args.z0_im)
    if args.variant == "student":
        xs = [z0]
        for _ in range(args.n - 1):
            xs.append(newtonlab.student_variant_step(xs[-1], a))
    else:
        xs = newtonlab.heron_sequence(newtonlab.HeronParams(args.k, a, z0), args.n)
    if args.json:
        _emit(json.dumps({"sequence": [[x.real, x.imag] for x in xs]}))
        return
    rows = [f"{i:>4}  {x.real:+.15g}{x.imag:+.15g}i" for i, x in enumerate(xs, 1)]
    _emit("\n".join(rows))


def _cmd_knots(args) -> None:
    tree = newtonlab.knot_tree(args.depth, args.k, complex(args.a_re, args.a_im))
    if args.format == "dot":
        payload = raster.knots_to_dot(tree)
    else:
        payload = json.dumps(tree.to_dict())
    if args.out:
        _write_out(args.out, payload.encode())
    else:
        _emit(payload)


def _cmd_stl(args) -> None:
    if args.stack:
        lo, hi = args.stack
        mesh = meshforge.stack_iterations(lo, hi, wall=args.wall,
                                          layer_height=args.layer_height,
                                          unit=args.unit)
    else:
        if args.dragon is None:
            raise DomainError("pass --dragon N or --stack LO HI")
        mesh = meshforge.extrude_dragon(args.dragon, wall=args.wall,
                                        height=args.height, unit=args.unit)
    _write_out(args.out, meshforge.write_stl_binary(mesh))


def _cmd_serve(args) -> None:
    from . import service

    service.serve(host=args.host, port=args.port)


def _cmd_cantor_member(args) -> None:
    member = curves.in_cantor(as_rat(args.q))
    _emit("true" if member else "false")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fractalctl",
        description="Exact fractal measures, renders, lattice verification, "
                    "and printable meshes.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("series", help="finite or infinite geometric sums, exactly")
    p.add_argument("--r", required=True, help="first factor, e.g. 1/2")
    p.add_argument("--x", required=True, help="ratio, e.g. 1/2")
    p.add_argument("--n", required=True, help="term count, or 'inf'")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_series)

    p = sub.add_parser("measure", help="exact lengths/areas/measures per iteration")
    p.add_argument("kind", choices=["koch", "snowflake", "carpet", "cantor"])
    p.add_argument("--iter", required=True, help="iteration count, or 'inf'")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_measure)

    p = sub.add_parser("curve", help="write a curve iteration as SVG")
    p.add_argument("kind", choices=["dragon", "koch", "snowflake"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--stroke-width", type=float, default=0.1)
    p.add_argument("--out", required=True, help="output path, or - for stdout")
    p.set_defaults(func=_cmd_curve)

    p = sub.add_parser("dragon-verify",
                       help="non-overlap and four-copy filling report")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_dragon_verify)

    p = sub.add_parser("mandelbrot", help="grayscale escape-time render (PGM)")
    p.add_argument("--cx", type=float, default=-0.5)
    p.add_argument("--cy", type=float, default=0.0)
    p.add_argument("--scale", type=float, default=3 / 64)
    p.add_argument("--width", type=int, default=64)
    p.add_argument("--height", type=int, default=64)
    p.add_argument("--max-iter", type=int, default=100)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_mandelbrot)

    p = sub.add_parser("boundary-polys",
                       help="exact expressions for the orbit of -2 - r")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--linear-coeffs", action="store_true",
                   help="print only the coefficients of r")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_boundary_polys)

    p = sub.add_parser("newton", help="color basin render (PPM)")
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--a-re", type=float, default=8.0)
    p.add_argument("--a-im", type=float, default=0.0)
    p.add_argument("--cx", type=float, default=0.0)
    p.add_argument("--cy", type=float, default=0.0)
    p.add_argument("--scale", type=float, default=6 / 64)
    p.add_argument("--width", type=int, default=64)
    p.add_argument("--height", type=int, default=64)
    p.add_argument("--max-iter", type=int, default=newtonlab.DEFAULT_BUDGET)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_newton)

    p = sub.add_parser("heron", help="root-iteration sequence table")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--a-re", type=float, required=True)
    p.add_argument("--a-im", type=float, default=0.0)
    p.add_argument("--z0-re", type=float, default=1.0)
    p.add_argument("--z0-im", type=float, default=0.0)
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--variant", choices=["mean", "student"], default="mean")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_heron)

    p = sub.add_parser("knots", help="knot tree as JSON or DOT")
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--a-re", type=float, default=8.0)
    p.add_argument("--a-im", type=float, default=0.0)
    p.add_argument("--format", choices=["json", "dot"], default="json")
    p.add_argument("--out", help="output path; stdout when omitted")
    p.set_defaults(func=_cmd_knots)

    p = sub.add_parser("stl", help="watertight binary STL of dragon iterations")
    p.add_argument("--dragon", type=int, help="single iteration to extrude")
    p.add_argument("--stack", type=int, nargs=2, metavar=("LO", "HI"),
                   help="stack iterations LO..HI, one layer each")
    p.add_argument("--wall", type=int, default=2, choices=[1, 2],
                   help="wall thickness in quarter-units")
    p.add_argument("--height", type=float, default=10.0, help="mm, single extrusion")
    p.add_argument("--layer-height", type=float, default=5.0, help="mm per stacked layer")
    p.add_argument("--unit", type=float, default=10.0, help="curve lattice pitch in mm")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_stl)

    p = sub.add_parser("serve", help="start the HTTP render/orbit/knot service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8642)
    p.set_defaults(func=_cmd_serve)

    p = sub.add_parser("cantor-member",
                       help="exact Cantor-set membership of a rational")
    p.add_argument("q", help="rational in [0,1], e.g. 1/4")
    p.set_defaults(func=_cmd_cantor_member)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 for --help/--version
        return int(exc.code or 0)
    try:
        args.func(args)
    except (DomainError, ResourceLimitError, NonConvergenceError) as exc:
        print(f"fractalctl: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())

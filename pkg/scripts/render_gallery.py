#!/usr/bin/env python3
"""Render a small gallery: escape-time and basin images plus curve SVGs.

Writes into ./gallery (or the directory given as the first argument).
"""

import pathlib
import sys

from fractallab import curves, mandel, newtonlab, raster


def main() -> None:
    out = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else "gallery")
    out.mkdir(parents=True, exist_ok=True)

    views = [
        ("mandel_overview", complex(-0.5, 0), 3 / 256, 100),
        ("mandel_seahorse", complex(-0.75, 0.1), 0.4 / 256, 400),
        ("mandel_tip", complex(-1.78, 0), 0.2 / 256, 400),
    ]
    for name, center, scale, iters in views:
        params = mandel.RenderParams(center, scale, 256, 256, iters)
        path = out / f"{name}.pgm"
        path.write_bytes(raster.write_pgm(mandel.render_mandel(params)))
        print(path)

    params = mandel.RenderParams(0j, 6 / 256, 256, 256, 200)
    for k in (3, 4, 5):
        path = out / f"newton_k{k}.ppm"
        path.write_bytes(raster.write_ppm(newtonlab.render_newton(params, k, 8)))
        print(path)

    for name, pts in [
        ("dragon_10", curves.dragon_polyline(10)),
        ("koch_5", curves.koch_polyline(5)),
        ("snowflake_5", curves.snowflake_polyline(5)),
    ]:
        path = out / f"{name}.svg"
        path.write_text(raster.polyline_to_svg(pts, stroke_width=0.2))
        print(path)

    path = out / "knots_depth3.dot"
    path.write_text(raster.knots_to_dot(newtonlab.knot_tree(3, 3, 8)))
    print(path)


if __name__ == "__main__":
    main()

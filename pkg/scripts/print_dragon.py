#!/usr/bin/env python3
"""Produce printable STL files of dragon-curve iterations.

The single-iteration solid matches the classroom prints (10 mm lattice pitch,
5 mm walls, 10 mm tall); the stacked solid carries iterations 1..4 as four
5 mm layers that share the starting segment, so the whole thing is one part.
"""

import pathlib
import sys

from fractallab import meshforge


def describe(name, mesh):
    report = meshforge.validate_mesh(mesh)
    print(f"{name}: {len(mesh.triangles)} triangles, "
          f"volume {report.volume:.1f} mm^3, "
          f"closed={report.closed}, components={report.components}, "
          f"genus={report.genus_per_component}")


def main() -> None:
    out = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else "prints")
    out.mkdir(parents=True, exist_ok=True)

    dragon7 = meshforge.extrude_dragon(7, wall=2, height=10.0, unit=10.0)
    describe("dragon7", dragon7)
    (out / "dragon7.stl").write_bytes(meshforge.write_stl_binary(dragon7))

    stacked = meshforge.stack_iterations(1, 4, wall=2, layer_height=5.0, unit=10.0)
    describe("stack_1_4", stacked)
    (out / "dragon_stack_1_4.stl").write_bytes(meshforge.write_stl_binary(stacked))

    print(f"wrote {out}/dragon7.stl and {out}/dragon_stack_1_4.stl")


if __name__ == "__main__":
    main()

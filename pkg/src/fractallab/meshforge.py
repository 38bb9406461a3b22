"""Watertight, printable extrusions of dragon-curve iterations.

Thickened curve walls of any centered width overlap wherever the curve
revisits a vertex, which is exactly what breaks naive offset-polygon
construction (zero-width or self-overlapping walls).  Rasterizing the
thickened path onto a quarter-unit occupancy grid and meshing the boundary
of the occupied prism sidesteps all of that: overlapping passes simply merge
into one solid and the boundary of a voxel set is closed by construction.

Geometry facts this module relies on (cell indices are quarter-units, the
curve's lattice pitch is 4 cells):

* wall = 2: each segment thickens to a centered 2-cell band with 1-cell
  square end caps; band rectangles span cells [4a-1, 4b] x [4y-1, 4y].
* wall = 1: a half-cell-offset centered band cannot land on grid lines, so
  the 1-cell band is anchored to the +side: rectangles [4a, 4b] x [4y, 4y].
* Either way rectangle minima are congruent to 3 or 0 (mod 4) and maxima to
  0 (mod 4), which makes corner-only cell contact impossible, so the
  boundary surface is always a closed 2-manifold.
* Iteration n+1's walk begins by retracing iteration n exactly, so stacked
  ascending iterations are plan-view nested and their 3D union stays
  manifold and connected.
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass
from fractions import Fraction

from .curves import dragon_polyline
from .errors import DomainError, ResourceLimitError

EXTRUDE_CAP = 14
STACK_CAP = 12
STL_HEADER = b"fractallab meshforge 0.1.0"

Cell = tuple[int, int]


def dragon_occupancy(n: int, wall: int = 2) -> frozenset[Cell]:
    """Quarter-cell plan occupancy of the thickened iteration-n dragon path."""
    if wall not in (1, 2):
        raise DomainError("wall must be 1 or 2 quarter-units")
    if n > EXTRUDE_CAP:
        raise ResourceLimitError(f"extrusion capped at iteration {EXTRUDE_CAP}")
    points = dragon_polyline(n)
    pad = 1 if wall == 2 else 0
    occ: set[Cell] = set()
    for (ax, ay), (bx, by) in zip(points, points[1:]):
        x0, x1 = sorted((4 * ax, 4 * bx))
        y0, y1 = sorted((4 * ay, 4 * by))
        for cx in range(x0 - pad, x1 + 1):
            for cy in range(y0 - pad, y1 + 1):
                occ.add((cx, cy))
    return frozenset(occ)


@dataclass(frozen=True)
class VoxelSlab:
    """Stacked 2D occupancies: layers[i] fills z in [z_levels[i], z_levels[i+1]].

    ``cell`` is the quarter-unit cell edge in mm.
    """

    layers: tuple[frozenset[Cell], ...]
    z_levels: tuple[float, ...]
    cell: float

    def __post_init__(self):
        if not self.layers or any(not layer for layer in self.layers):
            raise DomainError("every layer must be nonempty")
        if len(self.z_levels) != len(self.layers) + 1:
            raise DomainError("need one more z level than layers")

    def cell_count(self) -> int:
        return sum(len(layer) for layer in self.layers)

    def volume_exact(self) -> Fraction:
        """Exact volume: per-layer cell count * cell^2 * layer thickness."""
        total = Fraction(0)
        cell2 = Fraction(self.cell) ** 2
        for i, layer in enumerate(self.layers):
            thickness = Fraction(self.z_levels[i + 1]) - Fraction(self.z_levels[i])
            total += len(layer) * cell2 * thickness
        return total


def _connected(cells: frozenset[Cell]) -> bool:
    if not cells:
        return False
    seen = set()
    stack = [next(iter(cells))]
    while stack:
        c = stack.pop()
        if c in seen:
            continue
        seen.add(c)
        x, y = c
        for nb in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
            if nb in cells and nb not in seen:
                stack.append(nb)
    return len(seen) == len(cells)


def _slab_connected(slab: VoxelSlab) -> bool:
    cells = {(x, y, z) for z, layer in enumerate(slab.layers) for (x, y) in layer}
    seen: set[tuple[int, int, int]] = set()
    stack = [next(iter(cells))]
    while stack:
        c = stack.pop()
        if c in seen:
            continue
        seen.add(c)
        x, y, z = c
        for nb in (
            (x + 1, y, z), (x - 1, y, z),
            (x, y + 1, z), (x, y - 1, z),
            (x, y, z + 1), (x, y, z - 1),
        ):
            if nb in cells and nb not in seen:
                stack.append(nb)
    return len(seen) == len(cells)


@dataclass(frozen=True)
class TriMesh:
    """Indexed triangle mesh with outward-oriented winding."""

    vertices: tuple[tuple[float, float, float], ...]
    triangles: tuple[tuple[int, int, int], ...]


def slab_mesh(slab: VoxelSlab) -> TriMesh:
    """Boundary surface of the occupied voxel solid as a triangle mesh.

    Emits one quad (two triangles) per boundary cell face, winding chosen so
    triangle normals point out of the solid.  Vertices are shared via their
    integer grid index, so adjacent faces reference identical vertex ids.
    """
    cell = slab.cell
    layers = slab.layers
    nz = len(layers)

    vertex_ids: dict[tuple[int, int, int], int] = {}
    vertices: list[tuple[float, float, float]] = []
    triangles: list[tuple[int, int, int]] = []

    def vid(ix: int, iy: int, iz: int) -> int:
        key = (ix, iy, iz)
        idx = vertex_ids.get(key)
        if idx is None:
            idx = len(vertices)
            vertex_ids[key] = idx
            vertices.append((ix * cell, iy * cell, slab.z_levels[iz]))
        return idx

    def quad(a, b, c, d):
        ia, ib, ic, id_ = vid(*a), vid(*b), vid(*c), vid(*d)
        triangles.append((ia, ib, ic))
        triangles.append((ia, ic, id_))

    for z, layer in enumerate(layers):
        below = layers[z - 1] if z > 0 else frozenset()
        above = layers[z + 1] if z < nz - 1 else frozenset()
        for (x, y) in layer:
            # z faces: bottom normal -z, top normal +z
            if (x, y) not in below:
                quad((x, y, z), (x, y + 1, z), (x + 1, y + 1, z), (x + 1, y, z))
            if (x, y) not in above:
                quad((x, y, z + 1), (x + 1, y, z + 1), (x + 1, y + 1, z + 1), (x, y + 1, z + 1))
            # side faces within this layer's z band
            if (x + 1, y) not in layer:
                quad((x + 1, y, z), (x + 1, y + 1, z), (x + 1, y + 1, z + 1), (x + 1, y, z + 1))
            if (x - 1, y) not in layer:
                quad((x, y, z), (x, y, z + 1), (x, y + 1, z + 1), (x, y + 1, z))
            if (x, y + 1) not in layer:
                quad((x, y + 1, z), (x, y + 1, z + 1), (x + 1, y + 1, z + 1), (x + 1, y + 1, z))
            if (x, y - 1) not in layer:
                quad((x, y, z), (x + 1, y, z), (x + 1, y, z + 1), (x, y, z + 1))

    return TriMesh(tuple(vertices), tuple(triangles))


def extrude_dragon(
    n: int,
    wall: int = 2,
    height: float = 10.0,
    unit: float = 10.0,
) -> TriMesh:
    """Watertight prism of dragon iteration n: plan occupancy swept from z=0
    to z=height.  ``unit`` is the curve's lattice pitch in mm (cells are
    unit/4); passes that touch at a vertex merge into one printable solid."""
    if height <= 0 or unit <= 0:
        raise DomainError("height and unit must be positive")
    slab = VoxelSlab(
        layers=(dragon_occupancy(n, wall),),
        z_levels=(0.0, float(height)),
        cell=unit / 4.0,
    )
    if not _connected(slab.layers[0]):
        raise RuntimeError("single-iteration occupancy must be connected")
    return slab_mesh(slab)


def dragon_slab(
    n_lo: int,
    n_hi: int,
    wall: int = 2,
    layer_height: float = 5.0,
    unit: float = 10.0,
) -> VoxelSlab:
    """Occupancy stack for iterations n_lo..n_hi, one z layer per iteration."""
    if not 0 <= n_lo <= n_hi:
        raise DomainError("need 0 <= n_lo <= n_hi")
    if n_hi > STACK_CAP:
        raise ResourceLimitError(f"stacking capped at iteration {STACK_CAP}")
    if layer_height <= 0 or unit <= 0:
        raise DomainError("layer height and unit must be positive")
    layers = tuple(dragon_occupancy(n, wall) for n in range(n_lo, n_hi + 1))
    z_levels = tuple(float(i * layer_height) for i in range(len(layers) + 1))
    return VoxelSlab(layers=layers, z_levels=z_levels, cell=unit / 4.0)


def stack_iterations(
    n_lo: int,
    n_hi: int,
    wall: int = 2,
    layer_height: float = 5.0,
    unit: float = 10.0,
) -> TriMesh:
    """One solid carrying several iterations: layer i holds iteration n_lo+i.

    Every iteration's walk starts by retracing the previous one, so
    consecutive layers overlap in plan view and the union is connected.
    """
    slab = dragon_slab(n_lo, n_hi, wall, layer_height, unit)
    if not _slab_connected(slab):
        raise RuntimeError("stacked occupancy must be connected")
    return slab_mesh(slab)


# ---------------------------------------------------------------------------
# Validation

@dataclass(frozen=True)
class MeshReport:
    closed: bool
    oriented: bool
    degenerate_triangles: int
    components: int
    euler_characteristic: int
    genus_per_component: tuple[int, ...]
    volume: float

    @property
    def ok(self) -> bool:
        return (
            self.closed
            and self.oriented
            and self.degenerate_triangles == 0
            and self.volume > 0.0
        )


def mesh_volume(mesh: TriMesh) -> float:
    """Signed volume via the divergence theorem (positive for outward winding)."""
    total = 0.0
    vs = mesh.vertices
    for i, j, k in mesh.triangles:
        ax, ay, az = vs[i]
        bx, by, bz = vs[j]
        cx, cy, cz = vs[k]
        total += (
            ax * (by * cz - bz * cy)
            - ay * (bx * cz - bz * cx)
            + az * (bx * cy - by * cx)
        )
    return total / 6.0


def validate_mesh(mesh: TriMesh) -> MeshReport:
    """Closed-manifold / orientation / degeneracy audit.

    Closed and consistently wound means every directed edge appears exactly
    once and every undirected edge exactly twice.  Genus is reported per
    connected component from V - E + F = 2 - 2g; merged curve passes can
    legitimately create handles, so genus is informational.
    """
    directed: dict[tuple[int, int], int] = {}
    undirected: dict[tuple[int, int], int] = {}
    degenerate = 0
    vs = mesh.vertices
    for i, j, k in mesh.triangles:
        if i == j or j == k or i == k:
            degenerate += 1
            continue
        if _tri_area_sq(vs[i], vs[j], vs[k]) == 0.0:
            degenerate += 1
        for a, b in ((i, j), (j, k), (k, i)):
            directed[(a, b)] = directed.get((a, b), 0) + 1
            key = (a, b) if a < b else (b, a)
            undirected[key] = undirected.get(key, 0) + 1

    closed = all(count == 2 for count in undirected.values())
    oriented = all(count == 1 for count in directed.values())

    # Components over the vertex graph induced by triangle edges.
    parent = list(range(len(vs)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i, j):
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj

    used = set()
    for i, j, k in mesh.triangles:
        used.update((i, j, k))
        union(i, j)
        union(j, k)

    comp_faces: dict[int, int] = {}
    comp_verts: dict[int, int] = {}
    comp_edges: dict[int, int] = {}
    for v in used:
        comp_verts[find(v)] = comp_verts.get(find(v), 0) + 1
    for i, j, k in mesh.triangles:
        comp_faces[find(i)] = comp_faces.get(find(i), 0) + 1
    for (a, b) in undirected:
        comp_edges[find(a)] = comp_edges.get(find(a), 0) + 1

    genus = []
    euler_total = 0
    for root in sorted(comp_verts):
        chi = comp_verts[root] - comp_edges.get(root, 0) + comp_faces.get(root, 0)
        euler_total += chi
        genus.append((2 - chi) // 2)

    return MeshReport(
        closed=closed,
        oriented=oriented,
        degenerate_triangles=degenerate,
        components=len(comp_verts),
        euler_characteristic=euler_total,
        genus_per_component=tuple(genus),
        volume=mesh_volume(mesh),
    )


def _tri_area_sq(a, b, c) -> float:
    ux, uy, uz = b[0] - a[0], b[1] - a[1], b[2] - a[2]
    vx, vy, vz = c[0] - a[0], c[1] - a[1], c[2] - a[2]
    nx = uy * vz - uz * vy
    ny = uz * vx - ux * vz
    nz = ux * vy - uy * vx
    return nx * nx + ny * ny + nz * nz


# ---------------------------------------------------------------------------
# Binary STL

def write_stl_binary(mesh: TriMesh) -> bytes:
    """Little-endian binary STL; refuses meshes that fail validation.

    Layout: 80-byte space-padded header, uint32 triangle count, then per
    triangle the unit normal (from winding), three vertices (float32 each),
    and a zero uint16 attribute -- 84 + 50 * triangles bytes total.
    """
    report = validate_mesh(mesh)
    if not report.ok:
        raise DomainError(
            "refusing to write an invalid mesh "
            f"(closed={report.closed}, oriented={report.oriented}, "
            f"degenerate={report.degenerate_triangles}, volume={report.volume:.3g})"
        )
    out = bytearray()
    out += STL_HEADER.ljust(80, b" ")
    out += struct.pack("<I", len(mesh.triangles))
    vs = mesh.vertices
    for i, j, k in mesh.triangles:
        a, b, c = vs[i], vs[j], vs[k]
        ux, uy, uz = b[0] - a[0], b[1] - a[1], b[2] - a[2]
        vx, vy, vz = c[0] - a[0], c[1] - a[1], c[2] - a[2]
        nx = uy * vz - uz * vy
        ny = uz * vx - ux * vz
        nz = ux * vy - uy * vx
        norm = math.sqrt(nx * nx + ny * ny + nz * nz)
        out += struct.pack("<3f", nx / norm, ny / norm, nz / norm)
        out += struct.pack("<9f", *a, *b, *c)
        out += struct.pack("<H", 0)
    return bytes(out)


def read_stl_binary(data: bytes) -> tuple[list[tuple], int]:
    """Parse back an STL written here: (triangle vertex triples, count)."""
    if len(data) < 84:
        raise DomainError("truncated STL")
    (count,) = struct.unpack_from("<I", data, 80)
    if len(data) != 84 + 50 * count:
        raise DomainError("STL length does not match its triangle count")
    triangles = []
    off = 84
    for _ in range(count):
        values = struct.unpack_from("<12f", data, off)
        triangles.append(
            (tuple(values[3:6]), tuple(values[6:9]), tuple(values[9:12]))
        )
        off += 50
    return triangles, count

"""Lattice-level verification of the dragon curve's headline properties.

On the unit lattice every dragon segment is an axis-aligned unit edge, so
"crosses or overlaps itself" is exactly "some edge is traversed twice" --
vertex revisits are allowed (the curve touches at corners).  Plane filling by
four quarter-turned copies is checked as full edge coverage of finite square
windows.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from .curves import dragon_polyline
from .errors import DomainError, ResourceLimitError

LatticePoint = tuple[int, int]
Edge = tuple[LatticePoint, LatticePoint]

NON_OVERLAP_CAP = 22
FOUR_COPY_CAP = 18


def edge_multiset(points: list[LatticePoint]) -> Counter:
    """Count traversed unit edges (as unordered vertex pairs) of a lattice walk."""
    edges: Counter = Counter()
    for a, b in zip(points, points[1:]):
        dx = b[0] - a[0]
        dy = b[1] - a[1]
        if abs(dx) + abs(dy) != 1:
            raise DomainError(f"non-unit step {a} -> {b}")
        edges[(a, b) if a < b else (b, a)] += 1
    return edges


@dataclass(frozen=True)
class OverlapReport:
    n: int
    ok: bool
    edge_count: int
    max_edge_multiplicity: int
    max_vertex_visits: int

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "ok": self.ok,
            "edge_count": self.edge_count,
            "max_edge_multiplicity": self.max_edge_multiplicity,
            "max_vertex_visits": self.max_vertex_visits,
        }


def check_non_overlap(n: int) -> OverlapReport:
    """Verify iteration n never repeats an edge; also report vertex revisits."""
    if n > NON_OVERLAP_CAP:
        raise ResourceLimitError(f"non-overlap check capped at {NON_OVERLAP_CAP}")
    points = dragon_polyline(n)
    edges = edge_multiset(points)
    visits = Counter(points)
    max_mult = max(edges.values()) if edges else 0
    return OverlapReport(
        n=n,
        ok=max_mult <= 1,
        edge_count=sum(edges.values()),
        max_edge_multiplicity=max_mult,
        max_vertex_visits=max(visits.values()),
    )


def _rot90(p: LatticePoint) -> LatticePoint:
    return (-p[1], p[0])


def four_copy_union(n: int) -> Counter:
    """Edge multiset of four copies of iteration n at right angles about (0, 0).

    Disjoint copies show up as every multiplicity being exactly 1.
    """
    if n > FOUR_COPY_CAP:
        raise ResourceLimitError(f"four-copy union capped at {FOUR_COPY_CAP}")
    points = dragon_polyline(n)
    union: Counter = Counter()
    for _ in range(4):
        union.update(edge_multiset(points))
        points = [_rot90(p) for p in points]
    return union


@dataclass(frozen=True)
class FilledSquare:
    side: int
    corner: LatticePoint | None

    def to_dict(self) -> dict:
        return {"side": self.side, "corner": self.corner}


def max_filled_square(edges: Counter) -> FilledSquare:
    """Largest axis-parallel square window whose interior is fully covered.

    A window with corner (x0, y0) and side L counts as filled when every unit
    lattice edge strictly inside the square [x0, x0+L] x [y0, y0+L] -- i.e.
    not lying along the window's own boundary -- is present: L*(L-1)
    horizontal plus L*(L-1) vertical edges.  All integer corner positions are
    searched.  A side-1 window has no interior edges, so any nonempty
    multiset scores at least 1; an empty multiset scores 0.
    """
    if not edges:
        return FilledSquare(0, None)

    pts = [p for e in edges for p in e]
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    x_min, x_max = min(xs), max(xs)
    y_min, y_max = min(ys), max(ys)
    w = x_max - x_min
    h = y_max - y_min

    # Presence grids: hgrid[x, y] is the edge (x,y)-(x+1,y), vgrid the
    # vertical one; indices shifted by (x_min, y_min).
    hgrid = np.zeros((max(w, 1), h + 1), dtype=np.int64)
    vgrid = np.zeros((w + 1, max(h, 1)), dtype=np.int64)
    for (a, b) in edges:
        if a[1] == b[1]:
            hgrid[min(a[0], b[0]) - x_min, a[1] - y_min] = 1
        else:
            vgrid[a[0] - x_min, min(a[1], b[1]) - y_min] = 1

    # Integral images with a leading zero row/column for O(1) window sums.
    hsum = np.zeros((hgrid.shape[0] + 1, hgrid.shape[1] + 1), dtype=np.int64)
    hsum[1:, 1:] = hgrid.cumsum(0).cumsum(1)
    vsum = np.zeros((vgrid.shape[0] + 1, vgrid.shape[1] + 1), dtype=np.int64)
    vsum[1:, 1:] = vgrid.cumsum(0).cumsum(1)

    def find_corner(L: int) -> LatticePoint | None:
        # The interior edges of a filled window touch all four window sides,
        # so for L >= 2 candidate windows lie within the vertex bounding box.
        if L == 1:
            return (x_min, y_min)
        if L > w or L > h:
            return None
        need = L * (L - 1)
        nxc = w - L + 1
        nyc = h - L + 1
        # horizontal interior: x in [x0, x0+L), y in [y0+1, y0+L)
        hc = (
            hsum[L:L + nxc, L:L + nyc]
            - hsum[L:L + nxc, 1:1 + nyc]
            - hsum[0:nxc, L:L + nyc]
            + hsum[0:nxc, 1:1 + nyc]
        )
        # vertical interior: x in [x0+1, x0+L), y in [y0, y0+L)
        vc = (
            vsum[L:L + nxc, L:L + nyc]
            - vsum[L:L + nxc, 0:nyc]
            - vsum[1:1 + nxc, L:L + nyc]
            + vsum[1:1 + nxc, 0:nyc]
        )
        full = (hc == need) & (vc == need)
        hits = np.argwhere(full)
        if hits.size == 0:
            return None
        x0, y0 = hits[0]
        return (int(x0) + x_min, int(y0) + y_min)

    # A filled window of side L contains filled windows of every smaller
    # side, so feasibility is monotone and binary search applies.
    lo, hi = 1, min(w, h)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if find_corner(mid) is not None:
            lo = mid
        else:
            hi = mid - 1
    return FilledSquare(lo, find_corner(lo))

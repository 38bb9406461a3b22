"""Iterated curve generators and their exact measures.

Conventions (fixed so goldens are reproducible):

* Dragon: iteration 0 is one unit segment; each fold doubles the segment
  count.  Turn sequences start with R, and R turns clockwise in a y-up
  frame (+x heading becomes -y).
* Koch / snowflake: iteration 1 is the initial figure (segment / triangle),
  matching "the first iteration has length 1".
* Coordinates are doubles for Koch/snowflake and exact lattice integers for
  the dragon; measures (lengths, areas) are exact Fractions kept separate
  from the float geometry.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, ResourceLimitError
from .rationals import geom_sum_finite, geom_sum_infinite

Point = tuple[float, float]
LatticePoint = tuple[int, int]

DRAGON_CAP = 24
CARPET_CAP = 8
CANTOR_CAP = 20

_SIN60 = math.sqrt(3.0) / 2.0


# ---------------------------------------------------------------------------
# Dragon curve

def _flip(turn: str) -> str:
    return "L" if turn == "R" else "R"


def dragon_turns(n: int) -> list[str]:
    """Turn sequence of dragon iteration n: S(n+1) = S(n) + [R] + rev(flip(S(n))).

    Iteration 0 is empty; |S(n)| = 2**n - 1.
    """
    if n < 0:
        raise DomainError("iteration must be >= 0")
    turns: list[str] = []
    for _ in range(n):
        turns = turns + ["R"] + [_flip(t) for t in reversed(turns)]
    return turns


def dragon_polyline(n: int) -> list[LatticePoint]:
    """Lattice walk of dragon iteration n: 2**n unit steps from (0, 0) heading +x."""
    if n < 0:
        raise DomainError("iteration must be >= 0")
    if n > DRAGON_CAP:
        raise ResourceLimitError(f"dragon iteration capped at {DRAGON_CAP}")
    x, y = 0, 0
    dx, dy = 1, 0
    points = [(x, y)]
    x, y = x + dx, y + dy
    points.append((x, y))
    for turn in dragon_turns(n):
        if turn == "R":
            dx, dy = dy, -dx  # clockwise quarter turn (y up)
        else:
            dx, dy = -dy, dx
        x, y = x + dx, y + dy
        points.append((x, y))
    return points


# ---------------------------------------------------------------------------
# Koch curve and snowflake

def _koch_refine(points: list[Point]) -> list[Point]:
    # Replace each segment by four thirds-length segments; the bump is the
    # middle third rotated 60 degrees counterclockwise (a bump to the left
    # of the direction of travel).
    out = [points[0]]
    for (ax, ay), (bx, by) in zip(points, points[1:]):
        dx = (bx - ax) / 3.0
        dy = (by - ay) / 3.0
        p1 = (ax + dx, ay + dy)
        peak = (p1[0] + 0.5 * dx - _SIN60 * dy, p1[1] + _SIN60 * dx + 0.5 * dy)
        p3 = (ax + 2.0 * dx, ay + 2.0 * dy)
        out.extend((p1, peak, p3, (bx, by)))
    return out


def koch_polyline(n: int) -> list[Point]:
    """Koch curve iteration n >= 1 over the unit base segment; 4**(n-1) segments."""
    if n < 1:
        raise DomainError("Koch iterations are 1-based")
    points: list[Point] = [(0.0, 0.0), (1.0, 0.0)]
    for _ in range(n - 1):
        points = _koch_refine(points)
    return points


def koch_length(n: int) -> Fraction:
    """Exact length (4/3)**(n-1) of Koch iteration n."""
    if n < 1:
        raise DomainError("Koch iterations are 1-based")
    return Fraction(4, 3) ** (n - 1)


def snowflake_polyline(n: int) -> list[Point]:
    """Closed snowflake boundary: three Koch sides around a unit triangle.

    The triangle is traversed clockwise so the left-handed Koch bumps point
    outward.  First point equals last.
    """
    if n < 1:
        raise DomainError("snowflake iterations are 1-based")
    a = (0.0, 0.0)
    b = (1.0, 0.0)
    c = (0.5, _SIN60)
    points: list[Point] = [a, c, b, a]
    for _ in range(n - 1):
        points = _koch_refine(points)
    return points


def snowflake_area(n: int) -> Fraction:
    """Exact area of snowflake iteration n in units of the initial triangle.

    Each refinement adds 3 * 4**(i-1) triangles scaled by (1/9)**i, so
    A(n) = 1 + 3 * sum_{i=0}^{n-2} (1/9) (4/9)**i = 8/5 - (3/5)(4/9)**(n-1).
    """
    if n < 1:
        raise DomainError("snowflake iterations are 1-based")
    return 1 + 3 * geom_sum_finite(Fraction(1, 9), Fraction(4, 9), n - 1)


def snowflake_area_limit() -> Fraction:
    """Limit area 8/5 via the infinite series."""
    return 1 + 3 * geom_sum_infinite(Fraction(1, 9), Fraction(4, 9))


def snowflake_decomposition() -> dict[str, Fraction]:
    """Self-similarity bookkeeping for the snowflake area, with T = 1.

    ``t`` is the area of the triangle erected on one side, fixed by its
    middle ninth (t/3 = T/9); one third of t splits as t = 5u where ``u`` is
    the non-snowflake sliver, ``U = t - 2u`` the snowflake part per side, and
    the total area is A = 1 + 3U.
    """
    T = Fraction(1)
    t = 3 * (T / 9)
    u = t / 5
    U = t - 2 * u
    A = 1 + 3 * U
    return {"T": T, "t": t, "u": u, "U": U, "A": A}


# ---------------------------------------------------------------------------
# Sierpinski carpet

@dataclass(frozen=True)
class CellSet:
    """Occupied ternary addresses of carpet depth d: 8**d cells in [0, 3**d)^2."""

    depth: int
    cells: frozenset[tuple[int, int]]


_CARPET_SUBCELLS = tuple(
    (i, j) for i in range(3) for j in range(3) if (i, j) != (1, 1)
)


def carpet_cells(d: int) -> CellSet:
    """Remaining cells after d middle-ninth removals."""
    if d < 0:
        raise DomainError("depth must be >= 0")
    if d > CARPET_CAP:
        raise ResourceLimitError(f"carpet depth capped at {CARPET_CAP}")
    cells = {(0, 0)}
    for _ in range(d):
        cells = {
            (3 * x + i, 3 * y + j)
            for (x, y) in cells
            for (i, j) in _CARPET_SUBCELLS
        }
    return CellSet(d, frozenset(cells))


def carpet_area(d: int) -> Fraction:
    """Exact remaining area (8/9)**d."""
    if d < 0:
        raise DomainError("depth must be >= 0")
    return Fraction(8, 9) ** d


def carpet_removed_area(d: int) -> Fraction:
    """Exact removed area after d steps: sum 8**i * (1/3**(i+1))**2, as a series."""
    if d < 0:
        raise DomainError("depth must be >= 0")
    return geom_sum_finite(Fraction(1, 9), Fraction(8, 9), d)


# ---------------------------------------------------------------------------
# Cantor set

@dataclass(frozen=True)
class IntervalSet:
    """The 2**d closed intervals of Cantor depth d, each of length 3**-d."""

    depth: int
    intervals: tuple[tuple[Fraction, Fraction], ...]


def cantor_intervals(d: int) -> IntervalSet:
    if d < 0:
        raise DomainError("depth must be >= 0")
    if d > CANTOR_CAP:
        raise ResourceLimitError(f"cantor depth capped at {CANTOR_CAP}")
    intervals = [(Fraction(0), Fraction(1))]
    for _ in range(d):
        nxt = []
        for lo, hi in intervals:
            third = (hi - lo) / 3
            nxt.append((lo, lo + third))
            nxt.append((hi - third, hi))
        intervals = nxt
    return IntervalSet(d, tuple(intervals))


def cantor_measure(d: int) -> Fraction:
    """Exact remaining measure (2/3)**d."""
    if d < 0:
        raise DomainError("depth must be >= 0")
    return Fraction(2, 3) ** d


def cantor_removed_length(d: int) -> Fraction:
    """Total removed length after d steps, summed as a geometric series."""
    if d < 0:
        raise DomainError("depth must be >= 0")
    return geom_sum_finite(Fraction(1, 3), Fraction(2, 3), d)


def in_cantor(q) -> bool:
    """Exact membership of a rational in the Cantor ternary set.

    Walk x -> 3x choosing digit 0 when x <= 1/3 and digit 2 when x >= 2/3;
    landing strictly inside (1/3, 2/3) means a ternary digit 1 is forced, so
    the point was removed.  Rational states repeat, so a revisit proves the
    whole digit stream avoids 1.  The digit choice at x = 1/3 picks the
    0222... representation, which is why endpoints stay members.
    """
    x = Fraction(q)
    if not 0 <= x <= 1:
        raise DomainError("membership defined on [0, 1]")
    seen = set()
    while x not in seen:
        seen.add(x)
        if 3 * x <= 1:
            x = 3 * x
        elif 3 * x >= 2:
            x = 3 * x - 2
        else:
            return False
    return True

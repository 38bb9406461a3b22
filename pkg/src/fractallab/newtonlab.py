"""Generalized Heron (Babylonian) root iteration, Newton basin classification,
knot preimage trees, and the color basin renderer.

One Heron step toward the k-th root of a is the arithmetic mean of k numbers,
k-1 copies of x and one copy of a / x**(k-1):

    step(x) = ((k - 1) * x + a / x**(k - 1)) / k

The step is undefined at x = 0, and the points whose iteration eventually
lands on 0 ("knots") form a k-ary tree: the preimages of a value c solve
(k-1) x**k - k c x**(k-1) + a = 0, a degree-k polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .complexes import nth_roots, poly_roots
from .errors import DomainError, ResourceLimitError
from .raster import Image

ZERO_RADIUS = 1e-14   # modulus below which an iterate counts as a knot hit
ROOT_SNAP = 1e-6      # how close a settled iterate must be to a true root
DEFAULT_TOL = 1e-9    # step-size convergence tolerance
DEFAULT_BUDGET = 200  # iteration budget; convergence speed is not analyzed

KNOT_BUDGET = 3**7  # total leaves allowed in a knot tree

PALETTE = (
    (255, 0, 0),
    (0, 255, 0),
    (0, 0, 255),
    (255, 255, 0),
    (255, 0, 255),
    (0, 255, 255),
)


def heron_step(x: complex, k: int, a: complex) -> complex:
    """One mean-of-k-numbers step toward the k-th root of a."""
    if k < 2:
        raise DomainError("root degree must be >= 2")
    x = complex(x)
    if x == 0:
        raise DomainError("Heron step undefined at x = 0")
    return ((k - 1) * x + complex(a) / x ** (k - 1)) / k


@dataclass(frozen=True)
class HeronParams:
    k: int
    a: complex
    z0: complex

    def __post_init__(self):
        if self.k < 2:
            raise DomainError("root degree must be >= 2")


def heron_sequence(params: HeronParams, n: int) -> list[complex]:
    """First n iterates, starting with x1 = z0.

    For positive real a and z0 the sequence is nonincreasing from the second
    element and bounded below by a**(1/k).
    """
    if n < 1:
        raise DomainError("need at least one element")
    xs = [complex(params.z0)]
    for i in range(1, n):
        if xs[-1] == 0:
            raise DomainError(f"iterate {i} is zero; Heron step undefined")
        xs.append(heron_step(xs[-1], params.k, params.a))
    return xs


def student_variant_step(x: complex, a: complex) -> complex:
    """Two-term mean x -> (x + a/x**2) / 2, an experimental cube-root iteration.

    Converges in practice (its fixed points are the cube roots of a) but ships
    with empirical tests only.
    """
    x = complex(x)
    if x == 0:
        raise DomainError("step undefined at x = 0")
    return (x + complex(a) / (x * x)) / 2


@dataclass(frozen=True)
class NewtonResult:
    """Outcome of iterating from one start point.

    kind is "converged" (with root_index into the canonical root list and the
    number of steps taken), "hit_zero" (with the 1-based index of the zero
    iterate), or "unresolved".
    """

    kind: str
    root_index: int | None = None
    iters: int | None = None
    step: int | None = None


def _iterate(z0, k, a, roots, max_iter, tol, collect):
    points = [complex(z0)] if collect else None
    x = complex(z0)
    for i in range(max_iter):
        if abs(x) < ZERO_RADIUS:
            return NewtonResult("hit_zero", step=i + 1), points
        nxt = ((k - 1) * x + a / x ** (k - 1)) / k
        if collect:
            points.append(nxt)
        if abs(nxt - x) < tol:
            # Settled; accept only if it settled onto an actual root, since
            # step size alone can stall near basin boundaries.
            best = min(range(len(roots)), key=lambda j: abs(nxt - roots[j]))
            if abs(nxt - roots[best]) < ROOT_SNAP:
                return NewtonResult("converged", root_index=best, iters=i), points
        x = nxt
    return NewtonResult("unresolved"), points


def newton_classify(
    z0: complex,
    k: int,
    a: complex,
    max_iter: int = DEFAULT_BUDGET,
    tol: float = DEFAULT_TOL,
) -> NewtonResult:
    """Classify a start point against the k-th roots of a (canonical order)."""
    if k < 2:
        raise DomainError("root degree must be >= 2")
    if tol <= 0:
        raise DomainError("tolerance must be positive")
    a = complex(a)
    roots = nth_roots(a, k)
    result, _ = _iterate(z0, k, a, roots, max_iter, tol, collect=False)
    return result


def newton_orbit(
    z0: complex,
    k: int,
    a: complex,
    max_iter: int = DEFAULT_BUDGET,
    tol: float = DEFAULT_TOL,
) -> tuple[list[complex], NewtonResult]:
    """Iterates visited plus the classification (for orbit inspection UIs)."""
    if k < 2:
        raise DomainError("root degree must be >= 2")
    a = complex(a)
    roots = nth_roots(a, k)
    result, points = _iterate(z0, k, a, roots, max_iter, tol, collect=True)
    return points, result


def knot_children(c: complex, k: int, a: complex) -> list[complex]:
    """The k preimages (with multiplicity) of c under the Heron step.

    step(x) = c  clears denominators to  (k-1) x**k - k c x**(k-1) + a = 0.
    Children come back in canonical root order, multiplicity expanded, and
    each satisfies step(child) = c up to root-finder accuracy.
    """
    if k < 2:
        raise DomainError("root degree must be >= 2")
    a = complex(a)
    if a == 0:
        raise DomainError("knot structure needs a != 0")
    coeffs = [0j] * (k + 1)
    coeffs[0] = a
    coeffs[k - 1] = -k * complex(c)
    coeffs[k] = complex(k - 1)
    children = []
    for root, mult in poly_roots(coeffs):
        children.extend([root] * mult)
    return children


@dataclass(frozen=True)
class KnotTree:
    """k-ary tree of knots: the root is 0 and every child steps onto its parent."""

    value: complex
    depth: int
    children: tuple["KnotTree", ...] = field(default_factory=tuple)

    def level_sizes(self) -> list[int]:
        sizes: list[int] = []
        frontier = [self]
        while frontier:
            sizes.append(len(frontier))
            frontier = [c for node in frontier for c in node.children]
        return sizes

    def to_dict(self) -> dict:
        return {
            "value": [self.value.real, self.value.imag],
            "depth": self.depth,
            "children": [c.to_dict() for c in self.children],
        }


def knot_tree(depth: int, k: int, a: complex) -> KnotTree:
    """Knot tree to the given depth; level d holds k**d values (with multiplicity)."""
    if depth < 0:
        raise DomainError("depth must be >= 0")
    if k < 2:
        raise DomainError("root degree must be >= 2")
    if k**depth > KNOT_BUDGET:
        raise ResourceLimitError(
            f"knot tree needs k**depth <= {KNOT_BUDGET} (got {k}**{depth})"
        )

    def build(value: complex, level: int) -> KnotTree:
        if level == depth:
            return KnotTree(value, level)
        kids = tuple(
            build(child, level + 1) for child in knot_children(value, k, a)
        )
        return KnotTree(value, level, kids)

    return build(0j, 0)


def render_newton(
    params,
    k: int,
    a: complex,
    tol: float = DEFAULT_TOL,
) -> Image:
    """Color basin render: base color by root index, dimmed by iteration count.

    Channel value is round(base * max(0.25, 1 - iters/64)); start points that
    hit a knot or never settle render black.  Deterministic bit for bit.
    """
    if not 2 <= k <= 6:
        raise DomainError("render supports root degrees 2..6")
    a = complex(a)
    roots = nth_roots(a, k)
    w, h = params.width, params.height
    buf = bytearray(w * h * 3)
    for j in range(h):
        cy = (h / 2 - j) * params.scale + params.center.imag
        row = j * w * 3
        for i in range(w):
            z0 = complex(params.center.real + (i - w / 2) * params.scale, cy)
            result, _ = _iterate(z0, k, a, roots, params.max_iter, tol, collect=False)
            if result.kind == "converged":
                base = PALETTE[result.root_index]
                fade = max(0.25, 1.0 - result.iters / 64.0)
                off = row + i * 3
                buf[off] = round(base[0] * fade)
                buf[off + 1] = round(base[1] * fade)
                buf[off + 2] = round(base[2] * fade)
    return Image(w, h, 3, bytes(buf))

"""Complex arithmetic, k-th roots, and a simultaneous polynomial root finder.

Complex values are plain Python ``complex`` (IEEE doubles).  Roots come back
in a canonical order -- ascending argument in [0, 2*pi), then modulus -- so
downstream structures (knot trees, JSON output) are reproducible bit for bit.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import DomainError, NonConvergenceError

TAU = 2.0 * math.pi

# Solver constants.  The residual and merge thresholds are sized so cubics
# with coefficients up to a few hundred resolve cleanly; both are keyword
# arguments on poly_roots for callers that need something else.
RESIDUAL_TOL = 1e-9
MERGE_TOL = 1e-6
MAX_SWEEPS = 500
_STEP_STALL = 1e-13
_AXIS_SNAP = 1e-12


def cpx_mul(u: complex, v: complex) -> complex:
    """Complex product.  Components overflow to inf rather than raising;
    test with :func:`is_overflowed` when magnitudes may be extreme."""
    return complex(u) * complex(v)


def is_overflowed(z: complex) -> bool:
    return not (math.isfinite(z.real) and math.isfinite(z.imag))


def arg_mod_tau(z: complex) -> float:
    """Argument of z normalized to [0, 2*pi)."""
    a = cmath.phase(z)
    if a < 0.0:
        a += TAU
    if a >= TAU:  # phase(-0.0-ish) can land exactly on 2*pi after the add
        a -= TAU
    return a


def nth_roots(a: complex, k: int) -> list[complex]:
    """All k-th roots of a, ordered by ascending argument in [0, 2*pi).

    a = 0 collapses to the single root 0 (multiplicity k).
    """
    if k < 1:
        raise DomainError("root degree must be >= 1")
    a = complex(a)
    if a == 0:
        return [0j]
    radius = abs(a) ** (1.0 / k)
    base = arg_mod_tau(a)
    return [cmath.rect(radius, (base + TAU * j) / k) for j in range(k)]


@dataclass(frozen=True)
class CPoly:
    """Polynomial with complex coefficients, constant term first."""

    coeffs: tuple[complex, ...]

    def __post_init__(self):
        cs = tuple(complex(c) for c in self.coeffs)
        while len(cs) > 1 and cs[-1] == 0:
            cs = cs[:-1]
        if not cs:
            cs = (0j,)
        object.__setattr__(self, "coeffs", cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, z: complex) -> complex:
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc


def _derivative(coeffs: tuple[complex, ...]) -> tuple[complex, ...]:
    return tuple(i * c for i, c in enumerate(coeffs))[1:] or (0j,)


def _horner(coeffs, z: complex) -> complex:
    acc = 0j
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def _polish_cluster(coeffs, center: complex, size: int) -> complex:
    """Refine a multiplicity-``size`` cluster center.

    A multiplicity-m root is a simple root of the (m-1)-th derivative, where
    plain Newton converges quadratically; the cluster centroid alone stalls
    at the residual noise floor (~1e-7 for doubles).
    """
    d = coeffs
    for _ in range(size - 1):
        d = _derivative(d)
    dd = _derivative(d)
    z = center
    for _ in range(30):
        g = _horner(dd, z)
        if g == 0:
            break
        step = _horner(d, z) / g
        z -= step
        if abs(step) <= 1e-15 * (1.0 + abs(z)):
            break
    # never wander outside the cluster's own neighborhood
    if abs(z - center) > MERGE_TOL:
        return center
    return z


def _snap_to_axes(z: complex) -> complex:
    """Zero out a component that is pure rounding noise.

    Keeps the canonical (argument, modulus) sort stable: a real root computed
    as x + 1e-17j would otherwise sort at argument ~2*pi instead of 0.
    """
    mag = abs(z) + 1.0
    re, im = z.real, z.imag
    if abs(im) <= _AXIS_SNAP * mag:
        im = 0.0
    if abs(re) <= _AXIS_SNAP * mag:
        re = 0.0
    return complex(re, im)


def poly_roots(
    p,
    *,
    residual_tol: float = RESIDUAL_TOL,
    merge_tol: float = MERGE_TOL,
    max_sweeps: int = MAX_SWEEPS,
) -> list[tuple[complex, int]]:
    """All roots of p with multiplicities, via simultaneous iteration.

    Accepts a :class:`CPoly` or a coefficient sequence (constant term first).
    Every approximant is refined against all the others (Weierstrass /
    Durand-Kerner updates, Gauss-Seidel style), starting from deterministic
    guesses on a circle, so repeated runs give identical output.  Approximants
    closer than ``merge_tol`` merge into one root with summed multiplicity.

    Multiplicity-2 clusters settle well inside the merge radius; clusters of
    multiplicity >= 3 stall near the cube root of machine epsilon and may
    come back as distinct nearby roots.

    Raises :class:`NonConvergenceError` (with the best iterates attached) if
    residuals still exceed ``residual_tol * max|coeff|`` after ``max_sweeps``.
    """
    poly = p if isinstance(p, CPoly) else CPoly(tuple(p))
    deg = poly.degree
    if deg < 1:
        raise DomainError("root finding requires degree >= 1")
    coeffs = poly.coeffs
    lead = coeffs[-1]
    scale = max(abs(c) for c in coeffs)

    # Deterministic start: circle of radius 1 + max|coeff|/|lead|, angles
    # offset by 0.4 rad so symmetric polynomials do not start on their own
    # root rays.
    radius = 1.0 + scale / abs(lead)
    zs = [cmath.rect(radius, TAU * j / deg + 0.4) for j in range(deg)]

    for _ in range(max_sweeps):
        max_step = 0.0
        max_abs = 0.0
        for i in range(deg):
            zi = zs[i]
            den = lead
            for j in range(deg):
                if j != i:
                    den *= zi - zs[j]
            if den == 0:
                # Collided approximants: nudge deterministically and retry
                # on the next sweep.
                zs[i] = zi + 1e-8 * (1.0 + abs(zi))
                max_step = math.inf
                continue
            w = poly(zi) / den
            zs[i] = zi - w
            max_step = max(max_step, abs(w))
            max_abs = max(max_abs, abs(zs[i]))
        if max_step <= _STEP_STALL * (1.0 + max_abs):
            break

    worst = max(abs(poly(z)) for z in zs)
    if worst > residual_tol * scale:
        raise NonConvergenceError(
            f"root refinement stalled after {max_sweeps} sweeps "
            f"(worst residual {worst:.3e}, budget {residual_tol * scale:.3e})",
            best=list(zs),
        )

    # Single-link clustering at merge_tol, then centroid per cluster.  The
    # centroid of a symmetric multiple-root cluster cancels most of the splay.
    parent = list(range(deg))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(deg):
        for j in range(i + 1, deg):
            if abs(zs[i] - zs[j]) <= merge_tol:
                parent[find(i)] = find(j)

    clusters: dict[int, list[complex]] = {}
    for i in range(deg):
        clusters.setdefault(find(i), []).append(zs[i])

    roots = []
    for members in clusters.values():
        centroid = sum(members) / len(members)
        if len(members) > 1:
            centroid = _polish_cluster(coeffs, centroid, len(members))
        roots.append((_snap_to_axes(centroid), len(members)))
    roots.sort(key=lambda rm: (arg_mod_tau(rm[0]), abs(rm[0])))
    return roots

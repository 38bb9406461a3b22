"""Mandelbrot orbit engine, real-axis tools, and exact boundary polynomials.

The orbit starts at the parameter itself (x1 = c, x_{n+1} = x_n**2 + c),
which defines the same membership set as the usual 0-start orbit shifted by
one step.  Once an orbit's modulus exceeds 2 it provably never returns and
grows without bound, so 2 is an exact bailout radius.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ResourceLimitError
from .raster import Image

OVERFLOW_CAP = 1e100
BOUNDARY_POLY_CAP = 12


@dataclass(frozen=True)
class Orbit:
    """Orbit truncated at escape or at max_iter.

    ``points[0]`` is the start; ``escaped_at`` is the 1-based index n of the
    first element with |x_n| > 2, or None while the orbit looks bounded.
    """

    start: complex
    points: tuple[complex, ...]
    escaped_at: int | None

    @property
    def escaped(self) -> bool:
        return self.escaped_at is not None


def mandel_orbit(c: complex, max_iter: int) -> Orbit:
    """Iterate x1 = c, x_{n+1} = x_n**2 + c until |x| > 2 or max_iter points."""
    if max_iter < 1:
        raise DomainError("max_iter must be >= 1")
    c = complex(c)
    points = []
    x = c
    for n in range(1, max_iter + 1):
        points.append(x)
        if abs(x) > 2.0:
            return Orbit(c, tuple(points), n)
        if n < max_iter:
            x = x * x + c
    return Orbit(c, tuple(points), None)


def orbit_magnitudes(c: complex, max_iter: int, cap: float = OVERFLOW_CAP) -> list[float]:
    """|x_1|, |x_2|, ... continuing past escape, stopping once a magnitude
    exceeds ``cap`` (doubles would overflow a couple of squarings later)."""
    c = complex(c)
    mags = []
    x = c
    for _ in range(max_iter):
        m = abs(x)
        mags.append(m)
        if m > cap:
            break
        x = x * x + c
    return mags


def real_fixed_points(x: float) -> tuple[float, ...]:
    """Real solutions c of c**2 + x = c (none when 1 - 4x < 0)."""
    disc = 1.0 - 4.0 * x
    if disc < 0.0:
        return ()
    if disc == 0.0:
        return (0.5,)
    s = disc**0.5
    return ((1.0 - s) / 2.0, (1.0 + s) / 2.0)


@dataclass(frozen=True)
class IntPoly:
    """Integer-coefficient polynomial in r, constant term first, exact."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        cs = tuple(int(c) for c in self.coeffs)
        while len(cs) > 1 and cs[-1] == 0:
            cs = cs[:-1]
        if not cs:
            cs = (0,)
        object.__setattr__(self, "coeffs", cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def linear(self) -> int:
        return self.coeffs[1] if len(self.coeffs) > 1 else 0

    def square(self) -> "IntPoly":
        a = self.coeffs
        out = [0] * (2 * len(a) - 1)
        for i, ai in enumerate(a):
            for j, aj in enumerate(a):
                out[i + j] += ai * aj
        return IntPoly(tuple(out))

    def __str__(self) -> str:
        terms = []
        for p in range(self.degree, -1, -1):
            c = self.coeffs[p]
            if c == 0 and self.degree > 0:
                continue
            if p == 0:
                t = str(abs(c))
            elif p == 1:
                t = f"{abs(c)}r" if abs(c) != 1 else "r"
            else:
                t = f"{abs(c)}r^{p}" if abs(c) != 1 else f"r^{p}"
            if not terms:
                terms.append(t if c >= 0 else f"-{t}")
            else:
                terms.append(f"+ {t}" if c >= 0 else f"- {t}")
        return " ".join(terms)


def boundary_polys(m: int) -> list[IntPoly]:
    """Exact expressions p_1..p_m for the orbit of -2 - r:  p_1 = -2 - r,
    p_{k+1} = p_k**2 - 2 - r.  Degrees double: deg p_k = 2**(k-1)."""
    if m < 1:
        raise DomainError("need at least one polynomial")
    if m > BOUNDARY_POLY_CAP:
        raise ResourceLimitError(f"boundary polynomials capped at m <= {BOUNDARY_POLY_CAP}")
    polys = [IntPoly((-2, -1))]
    for _ in range(m - 1):
        sq = list(polys[-1].square().coeffs)
        sq[0] -= 2
        sq[1] -= 1
        polys.append(IntPoly(tuple(sq)))
    return polys


def linear_coeffs(m: int) -> list[int]:
    """The sequence a_1, a_2, ... of coefficients of r read from p_2, p_3, ...

    (p_1 is the seed -2 - r and is skipped; a_1 = 3 comes from r^2 + 3r + 2.)
    """
    return [p.linear for p in boundary_polys(m)[1:]]


def linear_coeff_recurrence_check(m: int) -> bool:
    """True iff a_{n+1} = 4*a_n - 1 and a_n >= 3**n hold through p_m."""
    if m < 2:
        raise DomainError("need m >= 2 for at least one coefficient")
    seq = linear_coeffs(m)
    recurrence = all(b == 4 * a - 1 for a, b in zip(seq, seq[1:]))
    bound = all(a >= 3 ** (n + 1) for n, a in enumerate(seq))
    return recurrence and bound


@dataclass(frozen=True)
class RenderParams:
    """Window of the complex plane mapped onto a pixel grid.

    ``scale`` is complex-plane width per pixel; pixel (i, j) with j counted
    from the top row maps to  center + ((i - w/2) + (h/2 - j) * 1j) * scale.
    """

    center: complex
    scale: float
    width: int
    height: int
    max_iter: int

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise DomainError("image must be at least 1x1")
        if not self.scale > 0:
            raise DomainError("scale must be positive")
        if self.max_iter < 1:
            raise DomainError("max_iter must be >= 1")

    def pixel_to_c(self, i: int, j: int) -> complex:
        return self.center + complex(i - self.width / 2, self.height / 2 - j) * self.scale


def render_mandel(params: RenderParams) -> Image:
    """Grayscale escape-time render; deterministic bit for bit.

    Pixels that never escape are 0 (black); an escape at iteration n maps to
    255 - min(254, 254 * n // max_iter), so earlier escapes render brighter.
    """
    w, h = params.width, params.height
    xs = (np.arange(w) - w / 2) * params.scale + params.center.real
    ys = (h / 2 - np.arange(h)) * params.scale + params.center.imag
    c = xs[np.newaxis, :] + 1j * ys[:, np.newaxis]

    z = c.copy()
    escape = np.zeros((h, w), dtype=np.int64)
    active = np.ones((h, w), dtype=bool)
    for n in range(1, params.max_iter + 1):
        re = z.real
        im = z.imag
        esc = active & (re * re + im * im > 4.0)
        escape[esc] = n
        active &= ~esc
        if not active.any():
            break
        if n < params.max_iter:
            za = z[active]
            z[active] = za * za + c[active]

    shade = 255 - np.minimum(254, 254 * escape // params.max_iter)
    shade[escape == 0] = 0
    return Image(w, h, 1, shade.astype(np.uint8).tobytes())

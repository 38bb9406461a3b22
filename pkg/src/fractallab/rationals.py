"""Exact rational arithmetic for series and measure identities.

Values are :class:`fractions.Fraction` throughout (arbitrary-precision, always
reduced, positive denominator), so every identity here is exact, never a
floating-point approximation.  ``Rat`` is an alias kept for signatures.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError

Rat = Fraction


def as_rat(value) -> Fraction:
    """Coerce an int, Fraction, or a string like ``"3"`` / ``"-7/12"``."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"not a rational: {value!r}") from exc
    raise DomainError(f"cannot interpret {type(value).__name__} as a rational")


def rat_str(q) -> str:
    """Canonical ``num/den`` form, e.g. ``8/5``, ``0/1``."""
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def geom_sum_finite(r, x, n: int) -> Fraction:
    """Exact partial sum  sum_{i=0}^{n-1} r * x**i  (empty sum is 0)."""
    if n < 0:
        raise DomainError("term count must be >= 0")
    r = Fraction(r)
    x = Fraction(x)
    if x == 1:
        return r * n
    return r * (1 - x**n) / (1 - x)


def geom_sum_infinite(r, x) -> Fraction:
    """Exact infinite sum  sum_{n=0}^inf r * x**n = r / (1 - x),  |x| < 1.

    For the family sum_{n=1}^inf (1/a)**n pass r = x = 1/a and the result
    is 1/(a-1).
    """
    r = Fraction(r)
    x = Fraction(x)
    if abs(x) >= 1:
        raise DomainError("series diverges")
    return r / (1 - x)


@dataclass(frozen=True)
class BernoulliCheck:
    """Both sides of (1+h)**n >= 1 + h*n, evaluated exactly."""

    lhs: Fraction
    rhs: Fraction
    holds: bool


def bernoulli_holds(h, n: int) -> BernoulliCheck:
    """Evaluate Bernoulli's inequality (1+h)**n >= 1+h*n exactly; h >= -1."""
    h = Fraction(h)
    if h < -1:
        raise DomainError("Bernoulli's inequality requires h >= -1")
    if n < 0:
        raise DomainError("exponent must be >= 0")
    lhs = (1 + h) ** n
    rhs = 1 + h * n
    return BernoulliCheck(lhs, rhs, lhs >= rhs)


def ternary_expand(q) -> tuple[list[int], list[int]]:
    """Base-3 digits of q in [0, 1] as (preperiod, minimal period).

    Terminating expansions return an empty period; the terminating form is
    preferred over the equivalent trailing-2 repetend (so 1/3 -> ([1], []),
    not ([0], [2])).  The only value with no terminating form is 1 itself,
    which returns ([], [2]).
    """
    q = Fraction(q)
    if not 0 <= q <= 1:
        raise DomainError("ternary expansion defined on [0, 1]")
    if q == 0:
        return [0], []
    if q == 1:
        return [], [2]

    digits: list[int] = []
    seen: dict[Fraction, int] = {}
    x = q
    while True:
        if x == 0:
            return digits, []
        if x in seen:
            start = seen[x]
            return digits[:start], digits[start:]
        seen[x] = len(digits)
        x *= 3
        d = int(x)  # floor; x was in [0, 1) so d is 0, 1, or 2
        digits.append(d)
        x -= d


def ternary_value(preperiod: list[int], period: list[int]) -> Fraction:
    """Exact value of 0.(preperiod)(period repeating) in base 3.

    The repeating block is summed as a geometric series, which makes this a
    reconstruction route independent of the long division in
    :func:`ternary_expand`.
    """
    pre_num = 0
    for d in preperiod:
        pre_num = pre_num * 3 + d
    value = Fraction(pre_num, 3 ** len(preperiod))
    if period:
        per_num = 0
        for d in period:
            per_num = per_num * 3 + d
        block = Fraction(per_num, 3 ** len(period))
        shift = Fraction(1, 3 ** len(preperiod))
        value += shift * geom_sum_infinite(block, Fraction(1, 3 ** len(period)))
    return value

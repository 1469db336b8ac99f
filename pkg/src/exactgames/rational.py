"""Exact rational arithmetic on [0,1] and base-3 expansion utilities.

Every number in the core is a ``fractions.Fraction``: arbitrary precision,
stored in lowest terms with a positive denominator. Floating point is never
used; decimal rendering, where wanted at all, belongs to interface code.

Wire format for a rational is ``"p/q"`` in lowest terms, or a bare integer
string such as ``"0"`` / ``"1"``. Parsing accepts non-reduced input and
normalizes.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)

LESS = -1
EQUAL = 0
GREATER = 1

_RATIONAL_RE = re.compile(r"^[+-]?\d+(?:/\d+)?$")
_DECIMAL_RE = re.compile(r"^[+-]?(?:\d+\.\d*|\.\d+)$")


class RationalParseError(ValueError):
    """Input text is not an acceptable exact rational."""


def parse_rational(text: str, *, allow_decimal: bool = False) -> Fraction:
    """Parse ``"p/q"`` or integer text into a normalized Fraction.

    With ``allow_decimal`` a terminating decimal such as ``"0.375"`` is
    converted exactly; anything else (including ellipses meant to suggest a
    non-terminating expansion) is rejected.
    """
    if not isinstance(text, str):
        raise RationalParseError(f"expected a string, got {type(text).__name__}")
    text = text.strip()
    if _RATIONAL_RE.match(text):
        try:
            return Fraction(text)
        except ZeroDivisionError:
            raise RationalParseError(f"zero denominator in {text!r}") from None
    if allow_decimal and _DECIMAL_RE.match(text):
        return Fraction(text)
    raise RationalParseError(f"not an exact rational: {text!r}")


def format_rational(q: Fraction) -> str:
    """Render in the wire format: lowest terms "p/q", or "0"/"1" style integers."""
    return str(q)


def compare(a: Fraction, b: Fraction) -> int:
    """Exact three-way comparison: LESS, EQUAL or GREATER."""
    if a < b:
        return LESS
    if a == b:
        return EQUAL
    return GREATER


def midpoint(a: Fraction, b: Fraction) -> Fraction:
    """The point (a+b)/2, strictly between its arguments. Requires a < b."""
    if a >= b:
        raise ValueError(f"midpoint needs a < b, got {a} >= {b}")
    return (a + b) / 2


@dataclass(frozen=True)
class TernaryExpansion:
    """Eventually periodic base-3 expansion of a rational in [0,1].

    ``preperiod`` holds the non-repeating fractional digits, ``period`` the
    minimal repeating block (empty for terminating expansions). A terminating
    non-zero expansion also has the trailing-2s rewrite, flagged by
    ``has_alternate_form``; ``alternate()`` materializes it.
    """

    preperiod: tuple[int, ...]
    period: tuple[int, ...]
    has_alternate_form: bool

    @property
    def is_terminating(self) -> bool:
        return not self.period

    def digits(self) -> tuple[int, ...]:
        """Preperiod followed by one period block."""
        return self.preperiod + self.period

    def value(self) -> Fraction:
        """Reconstruct the rational this expansion denotes."""
        total = Fraction(0)
        scale = Fraction(1, 3)
        for d in self.preperiod:
            total += d * scale
            scale /= 3
        if self.period:
            block = 0
            for d in self.period:
                block = block * 3 + d
            p = len(self.period)
            total += scale * 3 * Fraction(block, 3**p - 1)
        return total

    def alternate(self) -> "TernaryExpansion | None":
        """The trailing-2s form of a terminating expansion, if one exists.

        0.d1..dk (dk > 0) rewrites as 0.d1..(dk-1)(2). Zero and non-terminating
        expansions have no second form.
        """
        if not self.has_alternate_form or not self.is_terminating:
            return None
        head = self.preperiod[:-1] + (self.preperiod[-1] - 1,)
        return TernaryExpansion(head, (2,), True)


def ternary_digits(q: Fraction) -> TernaryExpansion:
    """Exact base-3 expansion by long division, canonical form.

    The terminating form is preferred when one exists (the trailing-2s
    rewrite is flagged, not returned). 1 has no terminating fractional form
    and comes back as 0.(2).
    """
    if not ZERO <= q <= ONE:
        raise ValueError(f"ternary_digits needs 0 <= q <= 1, got {q}")
    if q == ONE:
        return TernaryExpansion((), (2,), False)
    num, den = q.numerator, q.denominator
    digits: list[int] = []
    seen: dict[int, int] = {}
    r = num
    while r:
        if r in seen:
            cut = seen[r]
            return TernaryExpansion(tuple(digits[:cut]), tuple(digits[cut:]), False)
        seen[r] = len(digits)
        d, r = divmod(3 * r, den)
        digits.append(d)
    # remainder hit zero: terminating expansion; a non-zero value also has
    # the trailing-2s alternate
    return TernaryExpansion(tuple(digits), (), num != 0)

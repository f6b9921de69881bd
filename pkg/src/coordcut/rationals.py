"""Exact rational helpers: parsing, formatting and integer scaling.

All quantities in this package are ``fractions.Fraction`` values.  Floats are
rejected everywhere: the solver contracts are exact identities that float
rounding would silently break.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Sequence

_RATIONAL_RE = re.compile(r"^\s*(-?\d+)\s*(?:/\s*(-?\d+)\s*)?$")


def to_fraction(value: object) -> Fraction:
    """Coerce an int, Fraction, or ``"p/q"`` / ``"p"`` string to a Fraction.

    Raises ValueError for floats, malformed strings, or zero denominators.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValueError(f"not a rational number: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        m = _RATIONAL_RE.match(value)
        if not m:
            raise ValueError(f"malformed rational literal: {value!r}")
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) is not None else 1
        if den == 0:
            raise ValueError(f"zero denominator: {value!r}")
        return Fraction(num, den)
    raise ValueError(f"not a rational number: {value!r}")


def format_rational(value: Fraction) -> int | str:
    """Render a Fraction for JSON output: ints stay ints, else ``"p/q"``."""
    if value.denominator == 1:
        return int(value)
    return f"{value.numerator}/{value.denominator}"


def common_denominator(values: Iterable[Fraction]) -> int:
    """Least common multiple of the denominators (1 for an empty input)."""
    return math.lcm(1, *(v.denominator for v in values))


def scale_to_ints(values: Sequence[Fraction]) -> tuple[list[int], int]:
    """Return ``(scaled, L)`` with ``scaled[i] == values[i] * L`` exactly."""
    lcm = common_denominator(values)
    return [int(v * lcm) for v in values], lcm

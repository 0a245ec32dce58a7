"""Exact rational thresholds used to pad gadget encodings.

Three integer quantities steer the padding arithmetic:

* ``threshold_h_star(k, q)`` -- how many red/blue pairs can be appended to a
  fully illuded network of ``k`` nodes while it stays a ``q``-majority illusion.
* ``threshold_h_sharp(m, k, q)`` -- how many extra illuded nodes push a
  fraction ``m/k`` (with four additional non-illuded nodes) up to ``q``.
* ``threshold_h_plus(m, k, q)`` -- how many non-illuded nodes drag ``m/k``
  below ``q``.

Every function has a closed form and a linear-scan twin (``*_scan``); the scans
are the reference and the test-suite checks that both agree.  All comparisons
are done on integers by cross-multiplication.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import DomainError, FractionError, PreconditionError

__all__ = [
    "Fraction",
    "as_fraction",
    "format_fraction",
    "at_least_fraction",
    "min_count_for",
    "threshold_h_star",
    "threshold_h_star_scan",
    "threshold_h_sharp",
    "threshold_h_sharp_scan",
    "threshold_h_plus",
    "threshold_h_plus_scan",
]

_FRACTION_RE = re.compile(r"^\s*(-?\d+)\s*(?:/\s*(-?\d+)\s*)?$")


def as_fraction(q) -> Fraction:
    """Coerce ``q`` to an exact :class:`Fraction`.

    Accepts a Fraction, an int, an ``(a, b)`` pair or the strings ``"a/b"`` and
    ``"a"``.  Floats are refused on purpose: thresholds must be exact.
    """
    if isinstance(q, Fraction):
        return q
    if isinstance(q, bool):
        raise FractionError(f"not a fraction: {q!r}")
    if isinstance(q, int):
        return Fraction(q)
    if isinstance(q, tuple) and len(q) == 2:
        a, b = q
        if b == 0:
            raise FractionError("denominator is zero")
        return Fraction(int(a), int(b))
    if isinstance(q, str):
        match = _FRACTION_RE.match(q)
        if not match:
            raise FractionError(f"cannot parse fraction {q!r}; expected 'a/b' or 'a'")
        a = int(match.group(1))
        b = int(match.group(2)) if match.group(2) is not None else 1
        if b == 0:
            raise FractionError(f"denominator is zero in {q!r}")
        return Fraction(a, b)
    raise FractionError(f"not a fraction: {q!r}")


def format_fraction(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def at_least_fraction(count: int, total: int, q) -> bool:
    """``count >= q * total`` evaluated exactly."""
    q = as_fraction(q)
    return count * q.denominator >= q.numerator * total


def min_count_for(total: int, q) -> int:
    """Smallest integer ``t`` with ``t >= q * total``."""
    q = as_fraction(q)
    return -((-q.numerator * total) // q.denominator)


def _check_positive(name, value):
    if not isinstance(value, int) or value < 1:
        raise DomainError(f"{name} must be a positive integer, got {value!r}")


# h* : largest h with (k + h) / (k + 2h) >= q, for q in (1/2, 1]


def _h_star_args(k, q):
    _check_positive("k", k)
    q = as_fraction(q)
    if not (Fraction(1, 2) < q <= 1):
        raise DomainError(f"q must lie in (1/2, 1], got {format_fraction(q)}")
    return q.numerator, q.denominator


def threshold_h_star(k: int, q) -> int:
    a, b = _h_star_args(k, q)
    # b(k+h) >= a(k+2h)  <=>  h(2a-b) <= k(b-a)
    return (k * (b - a)) // (2 * a - b)


def threshold_h_star_scan(k: int, q) -> int:
    a, b = _h_star_args(k, q)
    h = 0
    while b * (k + h + 1) >= a * (k + 2 * (h + 1)):
        h += 1
    return h


# h# : largest h with (m + h) / (k + h + 4) < q, for m/k < q < 1


def _h_sharp_args(m, k, q):
    _check_positive("m", m)
    _check_positive("k", k)
    q = as_fraction(q)
    if not (0 < q < 1):
        raise DomainError(f"q must lie in (0, 1), got {format_fraction(q)}")
    a, b = q.numerator, q.denominator
    if b * m >= a * k:
        raise PreconditionError(f"requires m/k < q, got {m}/{k} >= {format_fraction(q)}")
    return a, b


def threshold_h_sharp(m: int, k: int, q) -> int:
    a, b = _h_sharp_args(m, k, q)
    # b(m+h) < a(k+h+4)  <=>  h < (a(k+4) - bm) / (b-a); take the largest such h
    num = a * (k + 4) - b * m
    den = b - a
    return -((-num) // den) - 1


def threshold_h_sharp_scan(m: int, k: int, q) -> int:
    a, b = _h_sharp_args(m, k, q)
    h = 0
    while b * (m + h + 1) < a * (k + h + 5):
        h += 1
    return h


# h+ : least h with m / (k + h) < q, for m/k >= q


def _h_plus_args(m, k, q):
    _check_positive("m", m)
    _check_positive("k", k)
    q = as_fraction(q)
    if not (0 < q < 1):
        raise DomainError(f"q must lie in (0, 1), got {format_fraction(q)}")
    a, b = q.numerator, q.denominator
    if b * m < a * k:
        raise PreconditionError(f"requires m/k >= q, got {m}/{k} < {format_fraction(q)}")
    return a, b


def threshold_h_plus(m: int, k: int, q) -> int:
    a, b = _h_plus_args(m, k, q)
    # bm < a(k+h)  <=>  h > (bm - ak) / a
    return (b * m - a * k) // a + 1


def threshold_h_plus_scan(m: int, k: int, q) -> int:
    a, b = _h_plus_args(m, k, q)
    h = 0
    while b * m >= a * (k + h):
        h += 1
    return h

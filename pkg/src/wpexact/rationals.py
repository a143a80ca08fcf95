"""Exact rational scalars and the combinatorial integer primitives.

All exact computation in this package runs on a single arbitrary-precision
rational type.  We use ``gmpy2.mpq`` when available (it is an order of
magnitude faster on the deep product chains produced by the intersection
recursion) and fall back to ``fractions.Fraction``.  Both keep values in
canonical form after every operation: positive denominator, gcd 1.
"""

from __future__ import annotations

import math

try:
    from gmpy2 import mpq as Rat
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    from fractions import Fraction as Rat

__all__ = [
    "Rat",
    "rat",
    "format_rat",
    "parse_rat",
    "binomial",
    "multinomial",
]

ZERO = Rat(0)
ONE = Rat(1)


def rat(numerator, denominator=1):
    """Build an exact rational; raises ZeroDivisionError for denominator 0."""
    return Rat(numerator, denominator)


def format_rat(value) -> str:
    """Serialize a rational as ASCII ``num/den`` (plain integer if den=1)."""
    num = value.numerator
    den = value.denominator
    if den == 1:
        return str(num)
    return f"{num}/{den}"


def parse_rat(text: str):
    """Parse the ``num/den`` wire format back into an exact rational.

    Rejects empty fields, non-integer parts and zero denominators.
    """
    text = text.strip()
    if "/" in text:
        num_s, _, den_s = text.partition("/")
        num = int(num_s)
        den = int(den_s)
        if den == 0:
            raise ValueError(f"zero denominator in rational {text!r}")
        return Rat(num, den)
    return Rat(int(text))


def binomial(n: int, k: int) -> int:
    """Exact binomial coefficient; k > n yields 0 (boundary-sum convention)."""
    if n < 0 or k < 0:
        raise ValueError(f"binomial requires non-negative arguments, got ({n}, {k})")
    if k > n:
        return 0
    return math.comb(n, k)


def multinomial(n: int, parts) -> int:
    """Exact multinomial coefficient n! / (parts_1! ... parts_k!).

    The parts must be non-negative and sum to n.
    """
    parts = list(parts)
    if any(p < 0 for p in parts):
        raise ValueError(f"multinomial parts must be non-negative, got {parts}")
    if sum(parts) != n:
        raise ValueError(f"multinomial parts {parts} do not sum to {n}")
    out = 1
    remaining = n
    for p in parts:
        out *= math.comb(remaining, p)
        remaining -= p
    return out

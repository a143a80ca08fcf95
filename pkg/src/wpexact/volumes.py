"""Normalized Weil-Petersson volumes as exact top self-intersections.

V_{g,n} is the top power of the first Mumford class integrated over the
compactified moduli space, reduced to psi-class intersection numbers.  Two
independent reductions are implemented: the closed-form set-partition
expansion over added marked points (the production route) and the recursive
one-point pullback relation (the audit oracle).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .intersect import MemoTable, TauSpec, tau
from .rationals import Rat, binomial, format_rat

__all__ = [
    "VolumeRecord",
    "volume",
    "volume_one_point_route",
    "kappa_psi_integral",
    "volume_table",
    "table_to_csv",
]


@dataclass(frozen=True)
class VolumeRecord:
    genus: int
    punctures: int
    value: object  # exact rational


def _check_stable(g: int, n: int) -> None:
    if g < 0 or n < 0 or 2 * g - 2 + n <= 0:
        raise ValueError(f"unstable moduli space (g={g}, n={n})")


def _positive_partitions(total: int, max_part=None):
    """Partitions of ``total`` into positive parts, descending tuples."""
    if max_part is None:
        max_part = total
    if total == 0:
        yield ()
        return
    for first in range(min(total, max_part), 0, -1):
        for tail in _positive_partitions(total - first, first):
            yield (first,) + tail


def kappa_psi_integral(g: int, power: int, psi_exponents, memo: MemoTable):
    """Closed-form expansion of a kappa_1 power against psi insertions.

    Each partition lambda of ``power`` contributes one correlator with an
    added point of exponent part+1 per part, weighted by the signed count
    of set partitions with that block profile.
    """
    base = tuple(psi_exponents)
    total = Rat(0)
    for lam in _positive_partitions(power):
        ell = len(lam)
        count = math.factorial(power)
        mult = {}
        for part in lam:
            count //= math.factorial(part)
            mult[part] = mult.get(part, 0) + 1
        for m in mult.values():
            count //= math.factorial(m)
        sign = -1 if (power - ell) % 2 else 1
        spec = TauSpec.of(g, base + tuple(part + 1 for part in lam))
        total += sign * count * tau(spec, memo)
    return total


def _one_point_route(g: int, power: int, psi_exponents: tuple, memo: MemoTable):
    """Recursive reduction: trade one kappa_1 power for a new marked point
    carrying psi powers, via the pullback relation on the forgetful map."""
    if power == 0:
        return tau(TauSpec.of(g, psi_exponents), memo)
    total = Rat(0)
    for t in range(power):
        sign = -1 if t % 2 else 1
        total += sign * binomial(power - 1, t) * _one_point_route(
            g, power - 1 - t, psi_exponents + (t + 2,), memo
        )
    return total


def volume(g: int, n: int, memo: MemoTable):
    """Exact V_{g,n}: the dimension-th power of kappa_1 over moduli space."""
    _check_stable(g, n)
    dim = 3 * g - 3 + n
    return kappa_psi_integral(g, dim, (0,) * n, memo)


def volume_one_point_route(g: int, n: int, memo: MemoTable):
    """Independently coded V_{g,n}; small-dimension audit oracle only."""
    _check_stable(g, n)
    dim = 3 * g - 3 + n
    return _one_point_route(g, dim, (0,) * n, memo)


def volume_table(g_max: int, n_set, memo: MemoTable):
    """Volume records for 1 <= g <= g_max plus the stable genus-0 entries."""
    records = []
    for g in range(g_max + 1):
        for n in sorted(n_set):
            if 2 * g - 2 + n <= 0:
                continue
            records.append(VolumeRecord(g, n, volume(g, n, memo)))
    return records


def table_to_csv(records) -> str:
    lines = ["g,n,value"]
    for rec in records:
        lines.append(f"{rec.genus},{rec.punctures},{format_rat(rec.value)}")
    return "\n".join(lines) + "\n"

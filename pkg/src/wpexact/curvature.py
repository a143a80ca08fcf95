"""Boundary ratio E_g and the average scalar-curvature identity.

E_g is the pairing of the boundary divisor against the top-minus-one power
of kappa_1, normalized by the volume; each boundary component contributes
one volume ratio.  The average of the negative scalar curvature per (g-1)
is then 13/(4 pi) + E_g/(4 pi), exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .intersect import MemoTable
from .rationals import Rat, format_rat
from .volumes import volume

__all__ = [
    "EgBreakdown",
    "delta_term",
    "e_g",
    "eta_ratio",
    "avg_neg_scalar",
    "eg_csv",
]


@dataclass(frozen=True)
class EgBreakdown:
    """Per-boundary-component contributions to E_g, all exact and positive."""

    genus: int
    term_delta0: object
    term_delta1: object
    middle_terms: dict = field(default_factory=dict)  # j -> value, 2 <= j <= (g-1)//2
    term_half: object = None  # present iff g even and g >= 4
    total: object = None

    def terms(self):
        """All (label, value) pairs in index order."""
        out = [(0, self.term_delta0), (1, self.term_delta1)]
        out.extend(sorted(self.middle_terms.items()))
        if self.term_half is not None:
            out.append((self.genus // 2, self.term_half))
        return out


def delta_term(g: int, j: int, memo: MemoTable):
    """Contribution of the j-th boundary component to E_g.

    The index j=1 always carries the 1/48 coefficient; the halved
    square term fires only for even g >= 4 (at g=2 the two coincide).
    """
    if g < 2:
        raise ValueError(f"boundary terms need g >= 2, got g={g}")
    if j < 0 or j > g // 2:
        raise ValueError(f"boundary index {j} out of range for g={g}")
    vg = volume(g, 0, memo)
    if j == 0:
        return Rat(1, 2) * volume(g - 1, 2, memo) / vg
    if j == 1:
        return Rat(1, 48) * volume(g - 1, 1, memo) / vg
    if g % 2 == 0 and j == g // 2:
        half_vol = volume(g // 2, 1, memo)
        return Rat(1, 2) * half_vol * half_vol / vg
    return volume(j, 1, memo) * volume(g - j, 1, memo) / vg


def e_g(g: int, memo: MemoTable) -> EgBreakdown:
    """Full breakdown of E_g with every boundary index counted once."""
    if g < 2:
        raise ValueError(f"E_g needs g >= 2, got g={g}")
    term0 = delta_term(g, 0, memo)
    term1 = delta_term(g, 1, memo)
    middle = {j: delta_term(g, j, memo) for j in range(2, (g - 1) // 2 + 1)}
    half = None
    if g % 2 == 0 and g >= 4:
        half = delta_term(g, g // 2, memo)
    total = term0 + term1 + sum(middle.values(), Rat(0))
    if half is not None:
        total += half
    return EgBreakdown(
        genus=g,
        term_delta0=term0,
        term_delta1=term1,
        middle_terms=middle,
        term_half=half,
        total=total,
    )


def eta_ratio(g: int, memo: MemoTable):
    """The exact ratio 13/12 + E_g/12 coming from the canonical-class
    identity for the dual log tangent bundle."""
    return Rat(13, 12) + e_g(g, memo).total / 12


def avg_neg_scalar(g: int, memo: MemoTable):
    """Average total negative scalar curvature over moduli space.

    Returns (coefficient, float): the exact rational (13 + E_g)/4 as the
    coefficient of 1/pi in the per-(g-1) average, and the floated full
    average (g-1) * (13 + E_g) / (4 pi).
    """
    total = e_g(g, memo).total
    coefficient = (13 + total) / 4
    value = (g - 1) * float(coefficient) / math.pi
    return coefficient, value


def eg_csv(g_max: int, memo: MemoTable, float_digits: int = 12) -> str:
    """CSV export: one row per genus, one column per boundary index."""
    j_max = g_max // 2
    header = ["g"] + [f"term_{j}" for j in range(j_max + 1)]
    header += ["E_g", "avg_per_g_minus_1_float"]
    lines = [",".join(header)]
    for g in range(2, g_max + 1):
        breakdown = e_g(g, memo)
        terms = dict(breakdown.terms())
        row = [str(g)]
        for j in range(j_max + 1):
            row.append(format_rat(terms[j]) if j in terms else "")
        row.append(format_rat(breakdown.total))
        per_g = float(13 + breakdown.total) / (4 * math.pi)
        row.append(format(per_g, f".{float_digits}g"))
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"

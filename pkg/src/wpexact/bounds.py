"""Exact verification of the volume inequalities and boundary-term decay.

Every verdict is a single exact rational comparison whose two sides are
stored as witnesses, so a report can be re-checked without recomputation.
Empirical constants for the sandwich-type statements are reported, never
asserted against any particular value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .curvature import delta_term, e_g
from .intersect import MemoTable
from .rationals import Rat, format_rat
from .volumes import volume

__all__ = [
    "BoundEntry",
    "BoundReport",
    "check_st_inequality",
    "st_report",
    "briwu_scan",
    "asymp1_ratios",
    "middle_term_bound",
    "max_x_log_ratio",
]


@dataclass(frozen=True)
class BoundEntry:
    g: int
    lhs: object
    rhs: object

    @property
    def passed(self) -> bool:
        return self.lhs >= self.rhs


@dataclass
class BoundReport:
    name: str
    entries: list = field(default_factory=list)

    @property
    def all_passed(self) -> bool:
        return all(entry.passed for entry in self.entries)

    def to_csv(self) -> str:
        lines = ["g,lhs,rhs,pass"]
        for entry in self.entries:
            lines.append(
                f"{entry.g},{format_rat(entry.lhs)},{format_rat(entry.rhs)},"
                f"{'1' if entry.passed else '0'}"
            )
        return "\n".join(lines) + "\n"


def check_st_inequality(g: int, memo: MemoTable) -> BoundEntry:
    """Exact check of the lower bound on V_{g,0} by boundary volumes:
    V_{g,0} >= V_{g-1,2}/28 + V_{g-1,1}/672
              + (1/14) sum_{j=2}^{[g/2]} V_{j,1} V_{g-j,1} - (V_{g/2,1})^2/28.
    The halved-genus volume counts as 0 for odd g."""
    if g < 2:
        raise ValueError(f"inequality needs g >= 2, got g={g}")
    lhs = volume(g, 0, memo)
    rhs = Rat(1, 28) * volume(g - 1, 2, memo)
    rhs += Rat(1, 672) * volume(g - 1, 1, memo)
    mid = Rat(0)
    for j in range(2, g // 2 + 1):
        mid += volume(j, 1, memo) * volume(g - j, 1, memo)
    rhs += Rat(1, 14) * mid
    if g % 2 == 0 and g >= 4:
        half_vol = volume(g // 2, 1, memo)
        rhs -= Rat(1, 28) * half_vol * half_vol
    return BoundEntry(g, lhs, rhs)


def st_report(g_max: int, memo: MemoTable) -> BoundReport:
    report = BoundReport("volume-lower-bound")
    for g in range(2, g_max + 1):
        report.entries.append(check_st_inequality(g, memo))
    return report


def briwu_scan(g_max: int, memo: MemoTable):
    """Average-curvature-to-genus ratios r_g = (g-1)(13+E_g)/(4 pi g).

    Returns (c_emp, C_emp, rows) with rows of (g, r_g); the linear sandwich
    holds with any constants between the empirical extremes.
    """
    if g_max < 2:
        raise ValueError("briwu scan needs g_max >= 2")
    rows = []
    for g in range(2, g_max + 1):
        total = e_g(g, memo).total
        r = (g - 1) * float(13 + total) / (4 * math.pi * g)
        rows.append((g, r))
    ratios = [r for _, r in rows]
    return min(ratios), max(ratios), rows


def asymp1_ratios(g_max: int, n: int, memo: MemoTable):
    """Normalized volumes q_g = V_{g,n} / ((3g-3+n)! (2g)!) and their
    successive ratios; the factorial sandwich says the ratios stay inside
    one fixed positive interval."""
    rows = []
    q_prev = None
    for g in range(2, g_max + 1):
        if 2 * g - 2 + n <= 0:
            continue
        q = volume(g, n, memo) / (
            math.factorial(3 * g - 3 + n) * math.factorial(2 * g)
        )
        ratio = float(q / q_prev) if q_prev is not None else None
        rows.append((g, q, ratio))
        q_prev = q
    ratios = [r for _, _, r in rows if r is not None]
    return min(ratios), max(ratios), rows


def middle_term_bound(g: int, memo: MemoTable):
    """Sum of all boundary terms with index >= 2, compared to the dominant
    index-0 term.  The sum decays rapidly in g (the proof gives a seventh
    power; at desk scale only the monotone decay is checked)."""
    if g < 4:
        raise ValueError(f"middle terms need g >= 4, got g={g}")
    total = Rat(0)
    for j in range(2, g // 2 + 1):
        total += delta_term(g, j, memo)
    lead = delta_term(g, 0, memo)
    return total, total / lead


def max_x_log_ratio(h: float, lo: float, hi: float) -> float:
    """Maximum of f(x) = x (log h - log x) on [lo, hi] (0 < lo <= hi).

    f is concave with its global maximum at x = h/e, so the maximum over
    the interval is at h/e when interior, else at the nearer endpoint.
    """
    if not (0 < lo <= hi):
        raise ValueError("need 0 < lo <= hi")

    def f(x):
        return x * (math.log(h) - math.log(x))

    candidates = [lo, hi]
    peak = h / math.e
    if lo < peak < hi:
        candidates.append(peak)
    return max(f(x) for x in candidates)

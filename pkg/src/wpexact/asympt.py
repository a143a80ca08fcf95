"""Large-genus asymptotics: predictions, residuals and extrapolation.

This is the only module where pi enters, as a double-precision constant at
the reporting boundary; everything upstream stays exact.  Predicted
expansions are power series in 1/g, so limits are extrapolated by
polynomial (Richardson) elimination of successive 1/g terms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .curvature import e_g
from .intersect import MemoTable
from .rationals import Rat
from .volumes import volume

__all__ = [
    "MZ_FIRST_ORDER",
    "mz_estimate",
    "eg_prediction",
    "ratio_g12",
    "richardson",
    "fit_cmz",
    "AsymptoticRow",
    "AsymptoticReport",
    "eg_report",
    "g12_report",
]

#: First-order 1/g correction coefficients of the large-genus volume
#: formula, known for n = 0, 1, 2.
MZ_FIRST_ORDER = {
    0: 7 / 12 - 17 / (6 * math.pi**2),
    1: 1 / 3 - 5 / (6 * math.pi**2),
    2: 1 / 12 + 1 / (6 * math.pi**2),
}


def _mz_prefactor(g: int, n: int) -> float:
    return (
        math.factorial(3 * g - 3 + n)
        * math.factorial(2 * g - 3 + n)
        * 2.0 ** (g - 3 + n)
        / (math.pi ** (2 * g) * math.sqrt(g))
    )


def mz_estimate(g: int, n: int, k: int, c_mz: float) -> float:
    """Large-genus volume estimate with the k-term 1/g correction.

    k=0 is the bare formula; k=1 multiplies in (1 + c_n/g), available only
    for n in {0, 1, 2}.
    """
    if g < 2:
        raise ValueError(f"estimate needs g >= 2, got g={g}")
    if k not in (0, 1):
        raise ValueError(f"correction order must be 0 or 1, got {k}")
    correction = 1.0
    if k == 1:
        if n not in MZ_FIRST_ORDER:
            raise ValueError(f"first-order coefficient unknown for n={n}")
        correction = 1.0 + MZ_FIRST_ORDER[n] / g
    return c_mz * _mz_prefactor(g, n) * correction


def eg_prediction(g: int, order: int) -> float:
    """Predicted E_g through the requested order in 1/g.

    order 0 -> 0; order 1 -> (pi^2/3)/g; order 2 adds (1 + pi^2/3)/g^2.
    """
    if order not in (0, 1, 2):
        raise ValueError(f"order must be 0..2, got {order}")
    value = 0.0
    if order >= 1:
        value += (math.pi**2 / 3) / g
    if order >= 2:
        value += (1 + math.pi**2 / 3) / g**2
    return value


def richardson(values, order: int) -> float:
    """Limit estimate eliminating 1/g terms up to the given order.

    ``values`` is a sequence of (g, value) pairs; the last order+1 points
    feed a polynomial extrapolation in x = 1/g to x = 0 (Neville scheme),
    which removes x, ..., x^order exactly.
    """
    if order < 1:
        raise ValueError(f"order must be positive, got {order}")
    points = list(values)[-(order + 1):]
    if len(points) < order + 1:
        raise ValueError(
            f"richardson order {order} needs {order + 1} points, "
            f"got {len(points)}"
        )
    xs = [1.0 / g for g, _ in points]
    table = [float(v) for _, v in points]
    k = len(table)
    for level in range(1, k):
        for i in range(k - level):
            table[i] = (
                xs[i + level] * table[i] - xs[i] * table[i + 1]
            ) / (xs[i + level] - xs[i])
    return table[0]


@dataclass(frozen=True)
class AsymptoticRow:
    g: int
    computed: float
    pred_order1: float
    pred_order2: float
    exact: object = None  # exact rational when the sequence has one

    @property
    def residual1(self) -> float:
        return self.computed - self.pred_order1

    @property
    def residual2(self) -> float:
        return self.computed - self.pred_order2


@dataclass
class AsymptoticReport:
    name: str
    rows: list = field(default_factory=list)
    limit: float = math.nan

    def to_csv(self, float_digits: int = 12) -> str:
        fmt = f".{float_digits}g"
        lines = ["g,computed,pred_order1,pred_order2,residual1,residual2"]
        for row in self.rows:
            lines.append(
                ",".join(
                    [str(row.g)]
                    + [
                        format(x, fmt)
                        for x in (
                            row.computed,
                            row.pred_order1,
                            row.pred_order2,
                            row.residual1,
                            row.residual2,
                        )
                    ]
                )
            )
        return "\n".join(lines) + "\n"


def eg_report(g_max: int, memo: MemoTable) -> AsymptoticReport:
    """E_g against its 1/g expansion; the limit is extrapolated from g*E_g."""
    report = AsymptoticReport("eg")
    scaled = []
    for g in range(2, g_max + 1):
        total = e_g(g, memo).total
        computed = float(total)
        report.rows.append(
            AsymptoticRow(
                g,
                computed,
                eg_prediction(g, 1),
                eg_prediction(g, 2),
                exact=total,
            )
        )
        scaled.append((g, g * computed))
    order = min(2, len(scaled) - 1)
    if order >= 1:
        report.limit = richardson(scaled, order)
    return report


def ratio_g12(g: int, memo: MemoTable) -> AsymptoticRow:
    """The dominant boundary ratio (1/2) V_{g-1,2} / V_{g,0} against its
    expansion (pi^2/3g)(1 + (3/pi^2 + 1)/g)."""
    if g < 3:
        raise ValueError(f"ratio needs g >= 3, got g={g}")
    exact = Rat(1, 2) * volume(g - 1, 2, memo) / volume(g, 0, memo)
    lead = math.pi**2 / (3 * g)
    return AsymptoticRow(
        g,
        float(exact),
        lead,
        lead * (1 + (3 / math.pi**2 + 1) / g),
        exact=exact,
    )


def g12_report(g_max: int, memo: MemoTable) -> AsymptoticReport:
    report = AsymptoticReport("g12")
    scaled = []
    for g in range(3, g_max + 1):
        row = ratio_g12(g, memo)
        report.rows.append(row)
        scaled.append((g, g * row.computed))
    order = min(2, len(scaled) - 1)
    if order >= 1:
        report.limit = richardson(scaled, order)
    return report


def fit_cmz(records, g_min: int):
    """Estimate the large-genus volume constant from exact data.

    ``records`` are VolumeRecord entries with one fixed n in {0, 1, 2} and
    consecutive genera from g_min.  Each genus gives the ratio of the exact
    volume to the first-order-corrected formula with constant 1; the
    extrapolated limit of that sequence estimates the constant.
    """
    usable = sorted(
        (r for r in records if r.genus >= g_min), key=lambda r: r.genus
    )
    if len(usable) < 3:
        raise ValueError("constant fit needs at least 3 consecutive genera")
    n_values = {r.punctures for r in usable}
    if len(n_values) != 1:
        raise ValueError(f"records mix puncture counts {sorted(n_values)}")
    n = n_values.pop()
    if n not in MZ_FIRST_ORDER:
        raise ValueError(f"first-order coefficient unknown for n={n}")
    genera = [r.genus for r in usable]
    if genera != list(range(genera[0], genera[0] + len(genera))):
        raise ValueError(f"genera must be consecutive, got {genera}")
    per_g = []
    for rec in usable:
        g = rec.genus
        denom = _mz_prefactor(g, n) * (1.0 + MZ_FIRST_ORDER[n] / g)
        per_g.append((g, float(rec.value) / denom))
    order = min(2, len(per_g) - 1)
    return richardson(per_g, order), per_g

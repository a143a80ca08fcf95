"""Memoized evaluation of psi-class intersection numbers.

The engine evaluates correlators <tau_{d_1} ... tau_{d_n}>_g by the
Dijkgraaf-Verlinde-Verlinde / Virasoro recursion, always removing the
largest exponent.  The only normalization is <tau_0^3>_0 = 1; the genus-one
one-point value falls out of the Virasoro L_0 constant term.  Every value
is an exact rational and the recursion is pure, so memoized results are
independent of evaluation order and worker count.
"""

from __future__ import annotations

import itertools
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

from .rationals import Rat, binomial

__all__ = [
    "TauSpec",
    "TauSpecError",
    "MemoTable",
    "tau",
    "tau_or_zero",
    "string_check",
    "dilaton_check",
    "fill_layer",
    "stable_specs",
]


class TauSpecError(ValueError):
    """Raised for unstable or dimension-violating correlator requests."""


@dataclass(frozen=True)
class TauSpec:
    """A correlator key: genus plus the exponent multiset, sorted descending."""

    genus: int
    exponents: tuple

    @classmethod
    def of(cls, genus: int, exponents) -> "TauSpec":
        return cls(genus, tuple(sorted(exponents, reverse=True)))

    @property
    def n(self) -> int:
        return len(self.exponents)

    @property
    def weight(self) -> int:
        return sum(self.exponents)

    @property
    def stable(self) -> bool:
        return (
            self.genus >= 0
            and all(d >= 0 for d in self.exponents)
            and 2 * self.genus - 2 + self.n > 0
        )

    @property
    def dimension_ok(self) -> bool:
        return self.weight == 3 * self.genus - 3 + self.n

    @property
    def constructible(self) -> bool:
        return self.stable and self.dimension_ok


class MemoTable:
    """Shared value store keyed by (genus, exponents); values are pure.

    Concurrent readers are safe; writers insert idempotently (re-deriving a
    key always reproduces the stored rational bit-exactly).
    """

    def __init__(self):
        self._data = {}
        self.hits = 0
        self.misses = 0

    def __len__(self) -> int:
        return len(self._data)

    def __contains__(self, key) -> bool:
        return key in self._data

    def get(self, key):
        value = self._data.get(key)
        if value is None:
            self.misses += 1
        else:
            self.hits += 1
        return value

    def put(self, key, value) -> None:
        self._data[key] = value

    def items(self):
        return self._data.items()

    def keys(self):
        return self._data.keys()

    @property
    def entry_count(self) -> int:
        return len(self._data)

    @property
    def max_genus(self) -> int:
        return max((g for g, _ in self._data), default=-1)


@lru_cache(maxsize=None)
def _dfact(k: int) -> int:
    """(2k+1)!! for k >= -1; _dfact(-1) = 1 by the empty-product convention."""
    out = 1
    for i in range(k + 1):
        out *= 2 * i + 1
    return out


@lru_cache(maxsize=None)
def _odd_run(lo: int, hi: int) -> int:
    """Product of 2i+1 for lo <= i < hi (the contact-term coefficient)."""
    out = 1
    for i in range(lo, hi):
        out *= 2 * i + 1
    return out


def _sorted_desc(values) -> tuple:
    return tuple(sorted(values, reverse=True))


def _is_constructible(g: int, d: tuple) -> bool:
    n = len(d)
    return (
        g >= 0
        and 2 * g - 2 + n > 0
        and sum(d) == 3 * g - 3 + n
    )


def _submultiset_splits(counts):
    """Enumerate sub-multisets of a multiset given as {value: multiplicity}.

    Yields (sub, complement, weight) where weight counts the underlying
    labelled-subset choices, prod binomial(m_v, k_v).  The enumeration walks
    multiplicity vectors, prod (m_v + 1) cases in total, never raw subsets.
    """
    values = sorted(counts)
    mults = [counts[v] for v in values]
    for ks in itertools.product(*(range(m + 1) for m in mults)):
        weight = 1
        sub = []
        comp = []
        for v, m, k in zip(values, mults, ks):
            weight *= binomial(m, k)
            sub.extend([v] * k)
            comp.extend([v] * (m - k))
        yield tuple(sub), tuple(comp), weight


def _tau(g: int, d: tuple, memo: MemoTable):
    """Value of a constructible spec (exponents sorted descending)."""
    key = (g, d)
    cached = memo.get(key)
    if cached is not None:
        return cached
    if g == 0 and d == (0, 0, 0):
        value = Rat(1)
        memo.put(key, value)
        return value
    value = _dvv(g, d, memo)
    memo.put(key, value)
    return value


def _dvv(g: int, d: tuple, memo: MemoTable):
    d1 = d[0]
    rest = d[1:]
    n = len(d)
    total = Rat(0)

    # Contact terms: merge the removed insertion with each remaining one.
    rest_counts = Counter(rest)
    for v, mult in rest_counts.items():
        merged = list(rest)
        merged.remove(v)
        merged.append(d1 + v - 1)
        coeff = mult * _odd_run(v, d1 + v)
        total += coeff * _tau(g, _sorted_desc(merged), memo)

    # Virasoro L_0 constant term (the dilaton anomaly); this is what pins
    # the genus-one one-point value without an extra seed.
    if d1 == 1 and g == 1 and n == 1:
        total += Rat(1, 8)

    if d1 >= 2:
        splits = None
        half = Rat(0)
        for a in range(d1 - 1):
            b = d1 - 2 - a
            coeff = _dfact(a) * _dfact(b)

            # Non-separating: genus drops by one, two new insertions.
            nd = _sorted_desc(rest + (a, b))
            if _is_constructible(g - 1, nd):
                half += coeff * _tau(g - 1, nd, memo)

            # Separating: split the remaining insertions as a multiset and
            # the genus accordingly; the factor genus is forced by the
            # dimension constraint, so no scan over genus splits is needed.
            if splits is None:
                splits = [
                    (sub, comp, weight, sum(sub) - len(sub))
                    for sub, comp, weight in _submultiset_splits(rest_counts)
                ]
            for sub, comp, weight, excess in splits:
                t = excess + a + 2
                if t % 3:
                    continue
                g1 = t // 3
                if g1 < 0 or g1 > g:
                    continue
                da = _sorted_desc(sub + (a,))
                db = _sorted_desc(comp + (b,))
                if not _is_constructible(g1, da):
                    continue
                if not _is_constructible(g - g1, db):
                    continue
                half += (
                    coeff
                    * weight
                    * _tau(g1, da, memo)
                    * _tau(g - g1, db, memo)
                )
        total += half / 2

    return total / _dfact(d1)


def tau(spec: TauSpec, memo: MemoTable):
    """Exact value of <tau_{d_1} ... tau_{d_n}>_g.

    Raises TauSpecError for unstable or dimension-violating specs; those are
    distinct from legitimate zeros and never enter the memo table.
    """
    if not spec.stable:
        raise TauSpecError(f"unstable spec {spec}")
    if not spec.dimension_ok:
        raise TauSpecError(
            f"dimension violation in {spec}: weight {spec.weight} != "
            f"{3 * spec.genus - 3 + spec.n}"
        )
    return _tau(spec.genus, spec.exponents, memo)


def tau_or_zero(genus: int, exponents, memo: MemoTable):
    """Correlator value with non-constructible specs evaluating to zero."""
    d = _sorted_desc(exponents)
    if not _is_constructible(genus, d):
        return Rat(0)
    return _tau(genus, d, memo)


def string_check(spec: TauSpec, memo: MemoTable) -> bool:
    """Exact string-equation check for spec with an appended tau_0."""
    g, d = spec.genus, spec.exponents
    lhs = tau_or_zero(g, d + (0,), memo)
    rhs = Rat(0)
    for j, dj in enumerate(d):
        if dj >= 1:
            rhs += tau_or_zero(g, d[:j] + (dj - 1,) + d[j + 1:], memo)
    return lhs == rhs


def dilaton_check(spec: TauSpec, memo: MemoTable) -> bool:
    """Exact dilaton-equation check for spec with an appended tau_1."""
    g, d = spec.genus, spec.exponents
    lhs = tau_or_zero(g, d + (1,), memo)
    rhs = (2 * g - 2 + len(d)) * tau_or_zero(g, d, memo)
    return lhs == rhs


def _partitions_into(total: int, parts: int, max_part=None):
    """Partitions of ``total`` into exactly ``parts`` non-negative parts,
    emitted as descending tuples."""
    if max_part is None:
        max_part = total
    if parts == 0:
        if total == 0:
            yield ()
        return
    if total == 0:
        yield (0,) * parts
        return
    for first in range(min(total, max_part), 0, -1):
        for tail in _partitions_into(total - first, parts - 1, first):
            yield (first,) + tail


def stable_specs(g_max: int, weight_max: int):
    """All constructible specs with genus <= g_max and weight <= weight_max,
    in (genus, weight) layer order."""
    for g in range(g_max + 1):
        for w in range(weight_max + 1):
            n = w - 3 * g + 3
            if n < (3 if g == 0 else 1):
                continue
            for d in _partitions_into(w, n):
                yield TauSpec(g, d)


def fill_layer(
    g_max: int, weight_max: int, memo: MemoTable, workers: int = 1
) -> MemoTable:
    """Populate memo with every constructible spec in the requested range.

    Layers are processed in (genus, weight) order; within a layer all keys
    depend only on lower layers, so they may be computed concurrently.
    Insertion is idempotent, hence the table is bit-identical for any
    worker count.
    """
    if workers < 1:
        raise ValueError("workers must be >= 1")
    layers = {}
    for spec in stable_specs(g_max, weight_max):
        layers.setdefault((spec.genus, spec.weight), []).append(spec)
    if workers == 1:
        for layer_key in sorted(layers):
            for spec in layers[layer_key]:
                tau(spec, memo)
        return memo
    with ThreadPoolExecutor(max_workers=workers) as pool:
        for layer_key in sorted(layers):
            # list() acts as the barrier between layers
            list(pool.map(lambda s: tau(s, memo), layers[layer_key]))
    return memo

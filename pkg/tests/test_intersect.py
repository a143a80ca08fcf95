import math

import pytest

from wpexact.intersect import (
    MemoTable,
    TauSpec,
    TauSpecError,
    dilaton_check,
    fill_layer,
    stable_specs,
    string_check,
    tau,
    tau_or_zero,
)
from wpexact.rationals import Rat


def T(memo, g, *d):
    return tau(TauSpec.of(g, d), memo)


def test_normalization(memo):
    assert T(memo, 0, 0, 0, 0) == Rat(1)


def test_genus_one_point(memo):
    assert T(memo, 1, 1) == Rat(1, 24)


def test_genus_zero_closed_form(memo):
    # (n-3)!/prod(d_i!) for every stable genus-0 spec of weight <= 12
    for spec in stable_specs(0, 12):
        expected = Rat(
            math.factorial(spec.n - 3),
            math.prod(math.factorial(d) for d in spec.exponents),
        )
        assert tau(spec, memo) == expected, spec


def test_permutation_symmetry(memo):
    assert TauSpec.of(1, (0, 2, 1)) == TauSpec.of(1, (2, 1, 0))
    assert T(memo, 1, 0, 2, 1) == T(memo, 1, 2, 1, 0)


def test_invalid_specs_error(memo):
    with pytest.raises(TauSpecError):
        tau(TauSpec.of(0, (0, 0)), memo)  # unstable
    with pytest.raises(TauSpecError):
        tau(TauSpec.of(1, (2,)), memo)  # dimension violation
    with pytest.raises(TauSpecError):
        tau(TauSpec.of(0, (5, 0, 0)), memo)


def test_tau_or_zero(memo):
    assert tau_or_zero(1, (2,), memo) == Rat(0)
    assert tau_or_zero(1, (1,), memo) == Rat(1, 24)


def test_string_examples(memo):
    assert string_check(TauSpec.of(0, (1, 0, 0)), memo)
    assert string_check(TauSpec.of(1, (1,)), memo)
    assert string_check(TauSpec.of(1, (2, 0)), memo)
    assert string_check(TauSpec.of(2, (4, 0)), memo)


def test_dilaton_examples(memo):
    assert dilaton_check(TauSpec.of(0, (0, 0, 0)), memo)
    assert dilaton_check(TauSpec.of(1, (1,)), memo)
    assert dilaton_check(TauSpec.of(2, (4,)), memo)


def test_fill_layer_genus_zero_weight_two():
    table = fill_layer(0, 2, MemoTable())
    expected = {
        (0, (0, 0, 0)),
        (0, (1, 0, 0, 0)),
        (0, (2, 0, 0, 0, 0)),
        (0, (1, 1, 0, 0, 0)),
    }
    assert set(table.keys()) == expected


def test_fill_layer_worker_determinism():
    serial = fill_layer(2, 6, MemoTable(), workers=1)
    parallel = fill_layer(2, 6, MemoTable(), workers=8)
    assert dict(serial.items()) == dict(parallel.items())


def test_fill_layer_rejects_bad_worker_count():
    with pytest.raises(ValueError):
        fill_layer(1, 3, MemoTable(), workers=0)


def test_sweep_identities():
    table = fill_layer(3, 9, MemoTable())
    for g, d in sorted(table.keys()):
        assert dilaton_check(TauSpec(g, d), table), (g, d)
        if 0 in d and 2 * g - 2 + len(d) - 1 > 0:
            base = list(d)
            base.remove(0)
            assert string_check(TauSpec.of(g, base), table), (g, d)


def test_memo_statistics():
    table = MemoTable()
    T(table, 1, 1)
    misses = table.misses
    assert misses >= 1
    T(table, 1, 1)
    assert table.hits >= 1
    assert table.entry_count == len(table)
    assert table.max_genus == 1

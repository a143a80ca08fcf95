import math

import pytest

from wpexact.curvature import avg_neg_scalar, delta_term, e_g, eg_csv, eta_ratio
from wpexact.rationals import Rat
from wpexact.volumes import volume


def test_delta_term_cases(memo):
    v20 = volume(2, 0, memo)
    assert delta_term(2, 0, memo) == Rat(1, 2) * volume(1, 2, memo) / v20
    assert delta_term(2, 1, memo) == Rat(1, 48) * volume(1, 1, memo) / v20


def test_delta_term_range_errors(memo):
    with pytest.raises(ValueError):
        delta_term(1, 0, memo)
    with pytest.raises(ValueError):
        delta_term(4, 3, memo)
    with pytest.raises(ValueError):
        delta_term(4, -1, memo)


def test_g2_degenerate_consistency(memo):
    # at g=2 the 1/48 coefficient and the halved-square formula coincide
    v11 = volume(1, 1, memo)
    v20 = volume(2, 0, memo)
    assert delta_term(2, 1, memo) == Rat(1, 2) * v11 * v11 / v20
    assert Rat(1, 48) * v11 == Rat(1, 2) * v11 * v11


def test_g4_top_index_is_halved_square(memo):
    # floor((4-1)/2) = 1, so j=2 must take the halved-square branch
    v21 = volume(2, 1, memo)
    assert delta_term(4, 2, memo) == Rat(1, 2) * v21 * v21 / volume(4, 0, memo)
    breakdown = e_g(4, memo)
    assert breakdown.middle_terms == {}
    assert breakdown.term_half is not None


def test_breakdown_structure(memo):
    assert len(e_g(2, memo).terms()) == 2
    assert len(e_g(3, memo).terms()) == 2
    assert len(e_g(5, memo).terms()) == 3
    six = e_g(6, memo)
    assert [j for j, _ in six.terms()] == [0, 1, 2, 3]


def test_each_index_counted_once(memo):
    for g in range(2, 7):
        breakdown = e_g(g, memo)
        labels = [j for j, _ in breakdown.terms()]
        assert labels == list(range(g // 2 + 1))
        total = sum((v for _, v in breakdown.terms()), Rat(0))
        assert total == breakdown.total


def test_positivity(memo):
    for g in range(2, 7):
        breakdown = e_g(g, memo)
        assert breakdown.total > 0
        assert all(v > 0 for _, v in breakdown.terms())


def test_eta_ratio_identity(memo):
    for g in (2, 3, 4):
        assert eta_ratio(g, memo) == Rat(13, 12) + e_g(g, memo).total / 12
        assert eta_ratio(g, memo) > Rat(13, 12)


def test_avg_neg_scalar(memo):
    for g in (2, 3):
        coeff, value = avg_neg_scalar(g, memo)
        total = e_g(g, memo).total
        assert coeff == (13 + total) / 4
        assert value == pytest.approx((g - 1) * float(coeff) / math.pi)
        # per-(g-1) average strictly above 13/(4 pi)
        assert value / (g - 1) > 13 / (4 * math.pi)


def test_eg_csv(memo):
    text = eg_csv(4, memo)
    lines = text.strip().split("\n")
    assert lines[0] == "g,term_0,term_1,term_2,E_g,avg_per_g_minus_1_float"
    # g=2 row: two populated terms, empty j=2 column
    row2 = lines[1].split(",")
    assert row2[0] == "2"
    assert row2[1] and row2[2] and row2[3] == ""

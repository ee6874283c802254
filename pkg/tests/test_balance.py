import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from indist_eval.balance import b_exact, b_limit_neg_inf, balance_curve, balance_grid
from indist_eval.errors import EmptyLabelSet
from indist_eval.metrics import auc_rank, precision_at, rates_at
from indist_eval.scores import ScoredDataset
from support import brute_balance, random_scored, render_table

score_lists = st.lists(st.integers(-5, 5), min_size=1, max_size=20)


def test_balance_on_toy_set(t1):
    assert b_exact(t1, 0.0).b == 0.625
    assert b_exact(t1, 1.5).b == 0.5
    assert b_exact(t1, 2.5).b == 0.375
    assert b_exact(t1, 3.5).b == 0.25


def test_balance_on_separated_set(t2):
    value = b_exact(t2, 2.5)
    assert value.b == 0.5
    assert value.b_minus == 0.0
    assert b_limit_neg_inf(t2) == 0.75


def test_balance_undefined_above_every_score(t1):
    with pytest.raises(EmptyLabelSet):
        b_exact(t1, 4.0)


def test_limit_below_every_score(t1):
    assert b_limit_neg_inf(t1) == 0.625
    data = ScoredDataset(pos_scores=np.array([1.0, 3.0]), neg_scores=np.array([2.0, 2.0]))
    assert auc_rank(data).value == 0.5
    assert b_limit_neg_inf(data) == 0.5


def test_grid_sentinels_and_midpoints(t1):
    assert balance_grid(t1).tolist() == [0.0, 1.5, 2.5, 3.5, 8.0]


def test_curve_on_toy_set(t1):
    curve = balance_curve(t1)

    assert curve.b.tolist() == [0.625, 0.5, 0.375, 0.25, 0.0]
    assert curve.precision[:4].tolist() == [0.5, 2.0 / 3.0, 0.5, 1.0]
    assert math.isnan(curve.precision[-1])
    assert curve.is_non_increasing()
    print(render_table(curve.tradeoff_frame(), "Balance trade-off on the four-point set"))


def test_f1_along_balance_curve(t1):
    curve = balance_curve(t1)

    assert np.allclose(curve.f1[:4], [2.0 / 3.0, 0.8, 0.5, 2.0 / 3.0])
    assert math.isnan(curve.f1[-1])
    assert curve.f1_peak() == 1
    assert list(curve.tradeoff_frame().columns) == ["r", "B", "B_plus", "precision", "v", "u", "f1"]


def test_grid_sentinels_scale_with_scores():
    data = ScoredDataset(pos_scores=np.array([1e20, 4e20]), neg_scores=np.array([2e20, 3e20]))
    grid = balance_grid(data)

    assert grid[0] < 1e20
    assert grid[-1] > 4e20
    assert balance_curve(data).b[0] == b_limit_neg_inf(data) == 0.5


def test_curve_is_scale_invariant(t1):
    scaled = t1.map_scores(lambda s: s * 1e20)

    assert balance_curve(scaled).b.tolist() == balance_curve(t1).b.tolist()


def test_grid_on_adjacent_doubles():
    data = ScoredDataset(pos_scores=np.array([np.nextafter(1.0, 2.0)]), neg_scores=np.array([1.0]))
    grid = balance_grid(data)
    curve = balance_curve(data)

    assert np.all(np.diff(grid) > 0)
    for r, b in zip(grid[:-1], curve.b[:-1]):
        assert b == brute_balance(data, r)
    assert curve.b.tolist() == [0.75, 0.5, 0.0]


def test_balance_matches_pair_enumeration():
    rng = np.random.default_rng(1234)
    for _ in range(500):
        data = random_scored(rng)
        curve = balance_curve(data)
        for r, b in zip(curve.thresholds[:-1], curve.b[:-1]):
            expected = brute_balance(data, r)
            assert b == expected
            assert b_exact(data, r).b == expected


def test_decomposition_identities(grid_runs):
    for letter, run in grid_runs.items():
        data = run.scored
        thresholds = np.quantile(data.distinct_scores, [0.0, 0.1, 0.3, 0.5, 0.7, 0.9])
        for r in thresholds:
            value = b_exact(data, r)
            rates = rates_at(data, r)
            precision = precision_at(data, r)
            assert abs(value.b - (value.b_plus + value.b_minus)) < 1e-12, letter
            assert abs(value.b_plus - rates.v * precision / 2.0) < 1e-12, letter


def test_limit_identity(grid_runs):
    for letter, run in grid_runs.items():
        data = run.scored
        below = float(data.distinct_scores[0]) - 1.0
        assert abs(b_exact(data, below).b - b_limit_neg_inf(data)) < 1e-12, letter


@settings(max_examples=200, deadline=None)
@given(pos=score_lists, neg=score_lists, gap=st.integers(1, 4))
def test_self_comparison_is_one_half(pos, neg, gap):
    """A labelled set equal to the positive class gives B = 1/2 with ties counted half."""

    positives = np.array(pos, dtype=float) + 20.0
    negatives = np.array(neg, dtype=float)
    data = ScoredDataset(pos_scores=positives, neg_scores=negatives)
    r = float(negatives.max()) + gap / 10.0
    assert b_exact(data, r).b == 0.5


def test_balance_is_non_increasing_on_grid_datasets(grid_runs):
    for letter, run in grid_runs.items():
        assert run.curve.is_non_increasing(), letter

"""Brute-force pair enumerations and small helpers shared by the tests."""

from fractions import Fraction

import numpy as np
import pandas as pd

from indist_eval.scores import ScoredDataset

GRID_SEED = 20240601


def _pair_value(left: float, right: float) -> Fraction:
    if left > right:
        return Fraction(1)
    if left == right:
        return Fraction(1, 2)
    return Fraction(0)


def brute_auc(data: ScoredDataset) -> float:
    total = sum(_pair_value(p, n) for p in data.pos_scores for n in data.neg_scores)
    return float(total / (data.n_pos * data.n_neg))


def brute_balance(data: ScoredDataset, r: float) -> float:
    """Mean outcome of every (positive, labelled item) pair, same item included."""

    labelled = [s for s in data.pos_scores if s > r] + [s for s in data.neg_scores if s > r]
    total = sum(_pair_value(p, item) for p in data.pos_scores for item in labelled)
    return float(total / (data.n_pos * len(labelled)))


def random_scored(rng: np.random.Generator, max_size: int = 20, levels: int = 8) -> ScoredDataset:
    """Small integer-valued dataset so that ties are frequent."""

    n_pos = int(rng.integers(1, max_size + 1))
    n_neg = int(rng.integers(1, max_size + 1))
    return ScoredDataset(
        pos_scores=rng.integers(0, levels, n_pos).astype(float),
        neg_scores=rng.integers(0, levels, n_neg).astype(float),
    )


def render_table(df: pd.DataFrame, title: str) -> str:
    """Console-friendly table with a title banner, shown under ``pytest -s``."""

    content = df.to_string(index=False, float_format=lambda x: f"{x:,.4f}")
    border = "=" * len(title)
    return f"{title}\n{border}\n{content}\n"

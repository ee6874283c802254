import numpy as np
import pytest

from indist_eval.datasets import RawDataset
from indist_eval.reporting import replicate_grid
from indist_eval.scores import ScoredDataset
from support import GRID_SEED


@pytest.fixture
def t1() -> ScoredDataset:
    return ScoredDataset(pos_scores=np.array([2.0, 4.0]), neg_scores=np.array([1.0, 3.0]))


@pytest.fixture
def t2() -> ScoredDataset:
    return ScoredDataset(pos_scores=np.array([3.0, 4.0]), neg_scores=np.array([1.0, 2.0]))


@pytest.fixture
def reversed_scores() -> ScoredDataset:
    return ScoredDataset(pos_scores=np.array([1.0, 2.0]), neg_scores=np.array([3.0, 4.0]))


@pytest.fixture
def symmetric_raw() -> RawDataset:
    return RawDataset.from_records([(-2.0, -1), (-1.0, 1), (1.0, 1), (2.0, -1)])


@pytest.fixture
def separable_raw() -> RawDataset:
    return RawDataset.from_records([(1.0, -1), (2.0, -1), (3.0, 1), (4.0, 1)])


@pytest.fixture(scope="session")
def grid_runs():
    """Every dataset a..i run through generate -> score -> eval once per session."""

    return {run.letter: run for run in replicate_grid(GRID_SEED)}

import numpy as np
import pytest

from indist_eval.errors import DataValidationError
from indist_eval.scores import ScoredDataset, load_scored_csv, save_scored_csv


def test_from_labelled_splits_and_sorts():
    data = ScoredDataset.from_labelled(np.array([4.0, 1.0, 2.0, 3.0]), np.array([1, -1, 1, -1]))

    assert data.pos_scores.tolist() == [2.0, 4.0]
    assert data.neg_scores.tolist() == [1.0, 3.0]
    assert data.distinct_scores.tolist() == [1.0, 2.0, 3.0, 4.0]


def test_empty_class_rejected():
    with pytest.raises(DataValidationError):
        ScoredDataset(pos_scores=np.array([]), neg_scores=np.array([1.0]))
    with pytest.raises(DataValidationError):
        ScoredDataset(pos_scores=np.array([1.0, np.inf]), neg_scores=np.array([1.0]))


def test_map_scores_keeps_labels(t1):
    shifted = t1.map_scores(lambda s: 3.0 * s + 7.0)
    assert shifted.pos_scores.tolist() == [13.0, 19.0]
    assert shifted.neg_scores.tolist() == [10.0, 16.0]


def test_frame_is_sorted_by_score(t1):
    frame = t1.as_frame()
    assert frame["score"].tolist() == [1.0, 2.0, 3.0, 4.0]
    assert frame["label"].tolist() == [-1, 1, -1, 1]


def test_scored_csv_round_trip(tmp_path):
    rng = np.random.default_rng(4)
    data = ScoredDataset(pos_scores=rng.normal(0.3, 1.0, 50), neg_scores=rng.normal(size=70) / 3.0)
    path = tmp_path / "scored.csv"
    save_scored_csv(data, path)
    loaded = load_scored_csv(path)

    assert np.array_equal(loaded.pos_scores, data.pos_scores)
    assert np.array_equal(loaded.neg_scores, data.neg_scores)


def test_scored_csv_accepts_column_order_and_extra_columns(tmp_path):
    path = tmp_path / "scored.csv"
    path.write_text("label,id,score\n1,a,2\n-1,b,1\n1,c,4\n-1,d,3\n", encoding="utf-8")
    data = load_scored_csv(path)
    assert data.pos_scores.tolist() == [2.0, 4.0]


@pytest.mark.parametrize(
    "body, message",
    [
        ("score,label\n2,1\n4,0\n", "line 3"),
        ("score,label\n2,1\nabc,-1\n", "line 3"),
        ("score,label\n2,1\ninf,-1\n", "line 3"),
        ("score\n2\n", "missing columns label"),
        ("score,label\n2,1\n4,1\n", "no negative"),
        ("score,label\n2,-1\n", "no positive"),
    ],
)
def test_scored_csv_validation(tmp_path, body, message):
    path = tmp_path / "scored.csv"
    path.write_text(body, encoding="utf-8")
    with pytest.raises(DataValidationError, match=message):
        load_scored_csv(path)

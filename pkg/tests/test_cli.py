import json
import math

import pandas as pd
from typer.testing import CliRunner

from indist_eval.cli import app
from indist_eval.datasets import benchmark_grid
from indist_eval.reporting import run_dataset
from indist_eval.scores import save_scored_csv

runner = CliRunner()


def _write(path, text):
    path.write_text(text, encoding="utf-8")
    return path


def test_generate_writes_reproducible_files(tmp_path):
    first = runner.invoke(app, ["generate", "--dataset", "g", "--seed", "7", "--out", str(tmp_path / "one")])
    second = runner.invoke(app, ["generate", "--dataset", "g", "--seed", "7", "--out", str(tmp_path / "two")])

    assert first.exit_code == 0, first.output
    assert second.exit_code == 0, second.output
    one = (tmp_path / "one" / "g.csv").read_bytes()
    assert one == (tmp_path / "two" / "g.csv").read_bytes()
    lines = one.decode("utf-8").splitlines()
    assert lines[0] == "x,y"
    assert len(lines) == 1 + 2100


def test_generate_rejects_unknown_dataset(tmp_path):
    result = runner.invoke(app, ["generate", "--dataset", "z", "--seed", "1", "--out", str(tmp_path)])
    assert result.exit_code == 2


def test_score_symmetric_data(tmp_path):
    raw = _write(tmp_path / "raw.csv", "x,y\n-2,-1\n-1,1\n1,1\n2,-1\n")
    out = tmp_path / "scored.csv"
    result = runner.invoke(app, ["score", "--in", str(raw), "--out", str(out)])

    assert result.exit_code == 0, result.output
    payload = json.loads(result.stdout)
    assert math.isclose(payload["beta0"], 0.0, abs_tol=1e-12)
    assert math.isclose(payload["beta1"], 0.0, abs_tol=1e-12)
    scores = pd.read_csv(out)["score"]
    assert all(math.isclose(value, math.log(0.5)) for value in scores)


def test_score_separable_data_exits_with_model_failure(tmp_path):
    raw = _write(tmp_path / "raw.csv", "x,y\n1,-1\n2,-1\n3,1\n4,1\n")
    result = runner.invoke(app, ["score", "--in", str(raw), "--out", str(tmp_path / "scored.csv")])

    assert result.exit_code == 3
    assert "separation" in result.output
    assert not (tmp_path / "scored.csv").exists()


def test_score_rejects_bad_labels(tmp_path):
    raw = _write(tmp_path / "raw.csv", "x,y\n1,1\n2,0\n")
    result = runner.invoke(app, ["score", "--in", str(raw), "--out", str(tmp_path / "scored.csv")])
    assert result.exit_code == 2
    assert "line 3" in result.output


def test_eval_toy_set(tmp_path):
    scored = _write(tmp_path / "scored.csv", "score,label\n1,-1\n2,1\n3,-1\n4,1\n")
    result = runner.invoke(app, ["eval", "--in", str(scored), "--threshold", "2.5"])

    assert result.exit_code == 0, result.output
    report = json.loads(result.stdout)
    assert report["auc"] == 0.75
    assert report["r_b"] == 1.5
    assert math.isclose(report["c_at_rb"], 2.0 / 3.0)
    assert report["b_at_user"] == 0.375


def test_eval_absent_threshold_is_not_an_error(tmp_path):
    scored = _write(tmp_path / "scored.csv", "score,label\n1,1\n2,1\n3,-1\n4,-1\n")
    result = runner.invoke(app, ["eval", "--in", str(scored)])

    assert result.exit_code == 0, result.output
    report = json.loads(result.stdout)
    assert report["r_b"] is None
    assert report["r_b_reason"] == "A ≤ 1/2"


def test_eval_validation_failures(tmp_path):
    bad = _write(tmp_path / "bad.csv", "score,label\n1,1\n2,0\n")
    assert runner.invoke(app, ["eval", "--in", str(bad)]).exit_code == 2
    assert runner.invoke(app, ["eval", "--in", str(tmp_path / "absent.csv")]).exit_code == 2

    good = _write(tmp_path / "good.csv", "score,label\n1,-1\n2,1\n")
    assert runner.invoke(app, ["eval", "--in", str(good), "--targets", "0.5,1.5"]).exit_code == 2
    assert runner.invoke(app, ["eval", "--in", str(good), "--mc-samples", "10"]).exit_code == 2


def test_eval_monte_carlo_fields(tmp_path):
    scored = _write(tmp_path / "scored.csv", "score,label\n1,-1\n2,1\n3,-1\n4,1\n")
    args = ["eval", "--in", str(scored), "--mc-samples", "20000", "--seed", "5"]
    first = runner.invoke(app, args)
    second = runner.invoke(app, args)

    assert first.exit_code == 0, first.output
    assert first.stdout == second.stdout
    report = json.loads(first.stdout)
    assert abs(report["auc_mc"] - 0.75) <= 4 * report["auc_mc_std_error"]


def test_curves_writes_all_files(tmp_path):
    scored = _write(tmp_path / "scored.csv", "score,label\n1,-1\n2,1\n3,-1\n4,1\n")
    out = tmp_path / "curves"
    result = runner.invoke(app, ["curves", "--in", str(scored), "--out", str(out)])

    assert result.exit_code == 0, result.output
    roc = pd.read_csv(out / "roc.csv")
    assert len(roc) == 6
    assert list(roc.columns) == ["r", "u", "v", "precision", "f1"]
    balance = pd.read_csv(out / "balance.csv")
    assert balance["B"].tolist() == [0.625, 0.5, 0.375, 0.25, 0.0]
    tradeoff = pd.read_csv(out / "tradeoff.csv")
    assert list(tradeoff.columns) == ["r", "B", "B_plus", "precision", "v", "u", "f1"]
    assert (out / "pr.csv").exists()


def test_cli_pipeline_matches_in_process_run(tmp_path):
    seed = 31
    gen = runner.invoke(app, ["generate", "--dataset", "e", "--seed", str(seed), "--out", str(tmp_path)])
    assert gen.exit_code == 0, gen.output
    scored_path = tmp_path / "e_scored.csv"
    model_path = tmp_path / "model.json"
    score = runner.invoke(
        app,
        ["score", "--in", str(tmp_path / "e.csv"), "--out", str(scored_path), "--model-out", str(model_path)],
    )
    assert score.exit_code == 0, score.output
    evaluated = runner.invoke(app, ["eval", "--in", str(scored_path), "--model", str(model_path)])
    assert evaluated.exit_code == 0, evaluated.output

    run = run_dataset("e", benchmark_grid(seed)["e"])
    assert json.loads(evaluated.stdout) == json.loads(json.dumps(run.report.as_flat_dict()))

    save_scored_csv(run.scored, tmp_path / "direct.csv")
    assert (tmp_path / "direct.csv").read_bytes() == scored_path.read_bytes()


def test_replicate_is_byte_reproducible(tmp_path):
    args = ["replicate", "--seed", "3", "--dataset", "all", "--json"]
    first = runner.invoke(app, [*args, "--out", str(tmp_path / "one")])
    second = runner.invoke(app, [*args, "--out", str(tmp_path / "two"), "--jobs", "3"])

    assert first.exit_code == 0, first.output
    assert second.exit_code == 0, second.output
    table = json.loads(first.stdout)
    assert [row["dataset"] for row in table["rows"]] == list("abcdefghi")
    for row in table["rows"]:
        assert 0.0 <= row["c_at_rb"] <= 1.0

    one_files = sorted(p.relative_to(tmp_path / "one") for p in (tmp_path / "one").rglob("*") if p.is_file())
    two_files = sorted(p.relative_to(tmp_path / "two") for p in (tmp_path / "two").rglob("*") if p.is_file())
    assert one_files == two_files
    assert len(one_files) == 9 * 8 + 2
    for relative in one_files:
        assert (tmp_path / "one" / relative).read_bytes() == (tmp_path / "two" / relative).read_bytes()


def test_score_generated_dataset_has_positive_slope(tmp_path):
    runner.invoke(app, ["generate", "--dataset", "e", "--seed", "2", "--out", str(tmp_path)])
    result = runner.invoke(app, ["score", "--in", str(tmp_path / "e.csv"), "--out", str(tmp_path / "s.csv")])
    assert result.exit_code == 0, result.output
    payload = json.loads(result.stdout)
    assert payload["beta1"] > 0.0
    assert (payload["n_pos"], payload["n_neg"]) == (1000, 2000)


def test_eval_separated_file(tmp_path):
    scored = _write(tmp_path / "scored.csv", "score,label\n3,1\n4,1\n1,-1\n2,-1\n")
    result = runner.invoke(app, ["eval", "--in", str(scored)])
    assert result.exit_code == 0, result.output
    assert json.loads(result.stdout)["c_at_rb"] == 1.0


def test_eval_unconverged_model_exits_with_model_failure(tmp_path):
    scored = _write(tmp_path / "scored.csv", "score,label\n1,-1\n2,1\n3,-1\n4,1\n")
    model = _write(
        tmp_path / "model.json", '{"beta0": 0.0, "beta1": 1.0, "converged": false, "iterations": 3}'
    )
    result = runner.invoke(app, ["eval", "--in", str(scored), "--model", str(model)])

    assert result.exit_code == 3
    assert "not_converged" in result.output

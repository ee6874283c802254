"""Command line entrypoints."""

from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import typer

from .balance import BalanceCurve, balance_curve
from .calibration import DEFAULT_TARGETS, BalanceTarget
from .curves import pr_curve, roc_curve
from .csvio import write_frame
from .datasets import DATASET_LETTERS, MAX_SEED, benchmark_grid, generate_synthetic, load_raw_csv, save_raw_csv
from .errors import DataValidationError, FitError, IndistError, PipelineError
from .logistic import LogisticModel, fit_logistic_1d, score_dataset
from .reporting import DatasetRun, indist_report, replicate_grid, replication_table
from .scores import ScoredDataset, load_scored_csv, save_scored_csv

logger = logging.getLogger(__name__)

app = typer.Typer(help="Precision at the indistinguishability threshold: evaluation toolkit")

EXIT_INTERNAL = 1
EXIT_VALIDATION = 2
EXIT_MODEL = 3


class DatasetChoice(str, Enum):
    a = "a"
    b = "b"
    c = "c"
    d = "d"
    e = "e"
    f = "f"
    g = "g"
    h = "h"
    i = "i"
    all = "all"


@dataclass(slots=True, frozen=True)
class RunConfig:
    subcommand: str
    input_path: Optional[Path] = None
    output_path: Optional[Path] = None
    seed: Optional[int] = None
    targets: Tuple[float, ...] = DEFAULT_TARGETS
    mc_samples: int = 0
    as_json: bool = False

    def __post_init__(self) -> None:
        for target in self.targets:
            BalanceTarget(target)
        if self.mc_samples < 0:
            raise DataValidationError("--mc-samples must be non-negative")
        if self.mc_samples > 0 and self.seed is None:
            raise DataValidationError("--seed is required when --mc-samples > 0")


def _parse_targets(text: str) -> Tuple[float, ...]:
    try:
        targets = tuple(float(item) for item in text.split(",") if item.strip())
    except ValueError as exc:
        raise typer.BadParameter(f"targets must be comma-separated floats: {text!r}") from exc
    if not targets:
        raise typer.BadParameter("at least one target is required")
    for target in targets:
        if not 0.0 < target < 1.0:
            raise typer.BadParameter(f"target {target} is outside (0, 1)")
    return targets


def _letters(choice: DatasetChoice) -> List[str]:
    return list(DATASET_LETTERS) if choice is DatasetChoice.all else [choice.value]


def _dump_json(payload: Dict[str, Any]) -> str:
    return json.dumps(payload, indent=2, ensure_ascii=False, allow_nan=False)


def _write_json(payload: Dict[str, Any], path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(_dump_json(payload) + "\n", encoding="utf-8")


def _fail(code: int, message: str) -> typer.Exit:
    typer.echo(message, err=True)
    return typer.Exit(code=code)


def _fit_failure(exc: FitError) -> typer.Exit:
    return _fail(EXIT_MODEL, _dump_json({"error": exc.reason, "detail": str(exc)}))


def _write_curves(scored: ScoredDataset, curve: BalanceCurve, directory: Path) -> None:
    directory.mkdir(parents=True, exist_ok=True)
    write_frame(roc_curve(scored).as_frame(), directory / "roc.csv")
    write_frame(pr_curve(scored).as_frame(), directory / "pr.csv")
    write_frame(curve.as_frame(), directory / "balance.csv")
    write_frame(curve.tradeoff_frame(), directory / "tradeoff.csv")
    if not curve.is_non_increasing():
        logger.warning("B(r) is not non-increasing on the grid written to %s", directory)


def _write_run(run: DatasetRun, directory: Path) -> None:
    save_raw_csv(run.raw, directory / "raw.csv")
    save_scored_csv(run.scored, directory / "scored.csv")
    _write_json(run.model.as_dict(), directory / "model.json")
    _write_json(run.report.as_flat_dict(), directory / "report.json")
    _write_curves(run.scored, run.curve, directory)


@app.callback()
def main(
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Log debug output on stderr"),
) -> None:
    """Generate, score and evaluate binary classifier scores."""

    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        force=True,
    )


@app.command()
def generate(
    dataset: DatasetChoice = typer.Option(..., "--dataset", help="Dataset letter a..i or 'all'"),
    seed: int = typer.Option(..., "--seed", min=0, max=MAX_SEED, help="Master seed"),
    out: Path = typer.Option(..., "--out", help="Output directory"),
    as_json: bool = typer.Option(False, "--json", help="Print written files as JSON"),
) -> None:
    """Write one raw CSV (x,y) per requested dataset."""

    config = RunConfig(subcommand="generate", output_path=out, seed=seed, as_json=as_json)
    specs = benchmark_grid(seed)
    written: Dict[str, str] = {}
    try:
        for letter in _letters(dataset):
            path = out / f"{letter}.csv"
            save_raw_csv(generate_synthetic(specs[letter]), path)
            written[letter] = str(path)
    except OSError as exc:
        raise _fail(EXIT_INTERNAL, f"cannot write datasets: {exc}")
    if config.as_json:
        typer.echo(_dump_json({"seed": seed, "files": written}))
    else:
        for letter, path in written.items():
            typer.echo(f"{letter}: {path}")


@app.command()
def score(
    input_path: Path = typer.Option(..., "--in", help="Raw CSV with columns x,y"),
    out: Path = typer.Option(..., "--out", help="Scored CSV destination"),
    model_out: Optional[Path] = typer.Option(None, "--model-out", help="Also write the model JSON"),
) -> None:
    """Fit the one-feature logistic model and write log p scores."""

    config = RunConfig(subcommand="score", input_path=input_path, output_path=out)
    try:
        raw = load_raw_csv(config.input_path)
        model = fit_logistic_1d(raw)
        scored = score_dataset(model, raw)
    except DataValidationError as exc:
        raise _fail(EXIT_VALIDATION, str(exc))
    except FitError as exc:
        raise _fit_failure(exc)
    save_scored_csv(scored, out)
    if model_out is not None:
        _write_json(model.as_dict(), model_out)
    typer.echo(_dump_json({**model.as_dict(), "n_pos": scored.n_pos, "n_neg": scored.n_neg}))


@app.command("eval")
def evaluate(
    input_path: Path = typer.Option(..., "--in", help="Scored CSV with columns score,label"),
    targets: str = typer.Option("0.4,0.5,0.6", "--targets", help="Comma-separated balance targets"),
    threshold: Optional[float] = typer.Option(None, "--threshold", help="Extra user threshold"),
    model_path: Optional[Path] = typer.Option(None, "--model", help="Model JSON for naive-threshold fields"),
    mc_samples: int = typer.Option(0, "--mc-samples", min=0, help="Monte Carlo pair samples"),
    seed: Optional[int] = typer.Option(None, "--seed", min=0, max=MAX_SEED, help="Seed for Monte Carlo"),
) -> None:
    """Print the full report as flat JSON; absent thresholds are data, not failures."""

    if threshold is not None and not math.isfinite(threshold):
        raise typer.BadParameter("--threshold must be finite")
    try:
        config = RunConfig(
            subcommand="eval",
            input_path=input_path,
            seed=seed,
            targets=_parse_targets(targets),
            mc_samples=mc_samples,
        )
        scored = load_scored_csv(input_path)
        model = None
        if model_path is not None:
            model = LogisticModel.from_dict(json.loads(model_path.read_text(encoding="utf-8")))
    except (DataValidationError, OSError, KeyError, ValueError) as exc:
        raise _fail(EXIT_VALIDATION, str(exc))
    try:
        report = indist_report(
            scored,
            model=model,
            targets=config.targets,
            user_threshold=threshold,
            mc_samples=config.mc_samples,
            mc_seed=config.seed,
        )
    except FitError as exc:
        raise _fit_failure(exc)
    typer.echo(_dump_json(report.as_flat_dict()))


@app.command()
def curves(
    input_path: Path = typer.Option(..., "--in", help="Scored CSV with columns score,label"),
    out: Path = typer.Option(..., "--out", help="Output directory"),
) -> None:
    """Write roc.csv, pr.csv, balance.csv and tradeoff.csv."""

    config = RunConfig(subcommand="curves", input_path=input_path, output_path=out)
    try:
        scored = load_scored_csv(input_path)
    except DataValidationError as exc:
        raise _fail(EXIT_VALIDATION, str(exc))
    try:
        _write_curves(scored, balance_curve(scored), out)
    except OSError as exc:
        raise _fail(EXIT_INTERNAL, f"cannot write curves: {exc}")
    typer.echo(f"Saved curve data under {out.resolve()}")


@app.command()
def replicate(
    seed: int = typer.Option(..., "--seed", min=0, max=MAX_SEED, help="Master seed"),
    out: Path = typer.Option(..., "--out", help="Output directory"),
    dataset: DatasetChoice = typer.Option(DatasetChoice.all, "--dataset", help="Dataset letter or 'all'"),
    targets: str = typer.Option("0.4,0.5,0.6", "--targets", help="Comma-separated balance targets"),
    mc_samples: int = typer.Option(0, "--mc-samples", min=0, help="Monte Carlo pair samples per dataset"),
    jobs: int = typer.Option(1, "--jobs", min=1, help="Datasets processed in parallel"),
    as_json: bool = typer.Option(False, "--json", help="Print the table as JSON"),
) -> None:
    """Run generate -> score -> eval -> curves on the nine-dataset grid."""

    config = RunConfig(
        subcommand="replicate",
        output_path=out,
        seed=seed,
        targets=_parse_targets(targets),
        mc_samples=mc_samples,
        as_json=as_json,
    )
    try:
        runs = replicate_grid(
            seed, _letters(dataset), targets=config.targets, mc_samples=config.mc_samples, jobs=jobs
        )
    except PipelineError as exc:
        code = EXIT_MODEL if isinstance(exc.cause, FitError) else EXIT_INTERNAL
        raise _fail(code, str(exc))

    for run in runs:
        try:
            _write_run(run, out / run.letter)
        except (OSError, IndistError) as exc:
            raise _fail(EXIT_INTERNAL, f"dataset {run.letter}: stage curves failed: {exc}")

    table = replication_table(seed, runs)
    write_frame(table.as_frame(), out / "replication.csv")
    _write_json(table.as_dict(), out / "replication.json")
    if config.as_json:
        typer.echo(_dump_json(table.as_dict()))
    else:
        frame = table.as_frame()[
            ["dataset", "auc", "r_b", "c_at_rb", "c_at_r40", "c_at_r60", "f1_at_rb", "max_f1", "b_at_r_max_f1"]
        ]
        typer.echo(frame.to_string(index=False, float_format=lambda x: f"{x:,.4f}"))


if __name__ == "__main__":
    app()

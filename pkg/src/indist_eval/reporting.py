"""Reports, replication rows and the in-process generate/score/eval pipeline."""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional, Sequence

import pandas as pd

from .balance import BalanceCurve, b_exact, b_limit_neg_inf, balance_curve
from .calibration import (
    DEFAULT_TARGETS,
    BalanceTarget,
    BalanceThreshold,
    naive_threshold,
    solve_balance_threshold,
)
from .curves import auprc, pr_curve
from .datasets import DATASET_LETTERS, DatasetSpec, RawDataset, benchmark_grid, derive_seed, generate_synthetic
from .errors import EmptyLabelSet, MetricError, NoBalancedThreshold, PipelineError, UndefinedMetric
from .logistic import LogisticModel, fit_logistic_1d, score_dataset
from .metrics import auc_rank, f1_at, precision_at, rates_at
from .sampling import auc_pairwise_mc, b_mc
from .scores import ScoredDataset

logger = logging.getLogger(__name__)

EMPTY_LABEL_SET = "empty labelled set"
NOT_REQUESTED = "not requested"


def target_key(target: float) -> str:
    """Key used in report fields: 0.5 -> "b", 0.4 -> "40", 0.575 -> "57_5"."""

    if target == 0.5:
        return "b"
    return f"{target * 100:g}".replace(".", "_")


def _unsolvable_reason(error: NoBalancedThreshold) -> str:
    if error.target == 0.5:
        return "A ≤ 1/2"
    return f"B(-inf) = {error.limit:.6f} ≤ {error.target:g}"


@dataclass(slots=True)
class PointMetrics:
    """Precision, rates, F1 and B for the labelled set above ``r``."""

    r: float
    v: float
    u: float
    precision: Optional[float] = None
    f1: Optional[float] = None
    b: Optional[float] = None
    reasons: Dict[str, str] = field(default_factory=dict)


def metrics_at(data: ScoredDataset, r: float) -> PointMetrics:
    rates = rates_at(data, r)
    point = PointMetrics(r=float(r), v=rates.v, u=rates.u)
    try:
        point.precision = precision_at(data, r)
        point.b = b_exact(data, r).b
    except EmptyLabelSet:
        point.reasons.update(precision=EMPTY_LABEL_SET, b=EMPTY_LABEL_SET, f1=EMPTY_LABEL_SET)
        return point
    try:
        point.f1 = f1_at(data, r)
    except UndefinedMetric:
        point.reasons["f1"] = "precision and recall are both zero"
    return point


@dataclass(slots=True)
class ThresholdSummary:
    target: float
    solution: Optional[BalanceThreshold] = None
    metrics: Optional[PointMetrics] = None
    reason: Optional[str] = None

    @property
    def key(self) -> str:
        return target_key(self.target)


@dataclass(slots=True)
class MonteCarloSummary:
    n_samples: int
    seed: int
    auc: Optional[float] = None
    auc_std_error: Optional[float] = None
    b_at_rb: Optional[float] = None
    b_at_rb_std_error: Optional[float] = None
    reasons: Dict[str, str] = field(default_factory=dict)


@dataclass(slots=True)
class IndistReport:
    """Headline metrics: A, B(-inf), balance thresholds and precision at them."""

    n_pos: int
    n_neg: int
    auc: float
    auprc: float
    max_f1: Optional[float]
    b_neg_inf: float
    thresholds: Dict[str, ThresholdSummary]
    r_max_f1: Optional[float] = None
    b_at_r_max_f1: Optional[float] = None
    b_plus_at_r_max_f1: Optional[float] = None
    model: Optional[LogisticModel] = None
    naive: Optional[PointMetrics] = None
    user: Optional[PointMetrics] = None
    monte_carlo: Optional[MonteCarloSummary] = None

    def _solution(self, key: str) -> Optional[BalanceThreshold]:
        summary = self.thresholds.get(key)
        return summary.solution if summary is not None else None

    def _metric(self, key: str, name: str) -> Optional[float]:
        summary = self.thresholds.get(key)
        if summary is None or summary.metrics is None:
            return None
        return getattr(summary.metrics, name)

    @property
    def r_b(self) -> Optional[float]:
        solution = self._solution("b")
        return solution.r if solution else None

    @property
    def r_40(self) -> Optional[float]:
        solution = self._solution("40")
        return solution.r if solution else None

    @property
    def r_60(self) -> Optional[float]:
        solution = self._solution("60")
        return solution.r if solution else None

    @property
    def c_at_rb(self) -> Optional[float]:
        return self._metric("b", "precision")

    @property
    def c_at_r40(self) -> Optional[float]:
        return self._metric("40", "precision")

    @property
    def c_at_r60(self) -> Optional[float]:
        return self._metric("60", "precision")

    @property
    def f1_at_rb(self) -> Optional[float]:
        return self._metric("b", "f1")

    @property
    def v_at_rb(self) -> Optional[float]:
        return self._metric("b", "v")

    @property
    def u_at_rb(self) -> Optional[float]:
        return self._metric("b", "u")

    @property
    def naive_r(self) -> Optional[float]:
        return self.naive.r if self.naive else None

    @property
    def c_at_naive(self) -> Optional[float]:
        return self.naive.precision if self.naive else None

    def as_flat_dict(self) -> Dict[str, Any]:
        """Flat snake_case mapping; every nullable field has a ``*_reason`` companion."""

        out: Dict[str, Any] = {
            "n_pos": self.n_pos,
            "n_neg": self.n_neg,
            "auc": self.auc,
            "auprc": self.auprc,
            "max_f1": self.max_f1,
            "b_neg_inf": self.b_neg_inf,
        }
        no_f1 = None if self.max_f1 is not None else "F1 undefined at every threshold"
        out["max_f1_reason"] = no_f1
        out["r_max_f1"] = self.r_max_f1
        out["r_max_f1_reason"] = no_f1
        out["b_at_r_max_f1"] = self.b_at_r_max_f1
        out["b_at_r_max_f1_reason"] = no_f1
        out["b_plus_at_r_max_f1"] = self.b_plus_at_r_max_f1
        out["b_plus_at_r_max_f1_reason"] = no_f1
        if "b" not in self.thresholds:
            _flatten_threshold(out, "b", ThresholdSummary(target=0.5, reason=NOT_REQUESTED))
        for key, summary in self.thresholds.items():
            _flatten_threshold(out, key, summary)

        no_model = "no model supplied"
        out["beta0"] = self.model.beta0 if self.model else None
        out["beta1"] = self.model.beta1 if self.model else None
        out["model_reason"] = None if self.model else no_model
        _flatten_point(out, "naive", "naive_r", self.naive, no_model)
        if self.user is not None:
            _flatten_point(out, "user", "user_r", self.user, None)
        if self.monte_carlo is not None:
            mc = self.monte_carlo
            out["mc_samples"] = mc.n_samples
            out["mc_seed"] = mc.seed
            for name in ("auc", "b_at_rb"):
                out[f"{name}_mc"] = getattr(mc, name)
                out[f"{name}_mc_std_error"] = getattr(mc, f"{name}_std_error")
                out[f"{name}_mc_reason"] = mc.reasons.get(name)
        return out


def _flatten_threshold(out: Dict[str, Any], key: str, summary: ThresholdSummary) -> None:
    at = f"r{key}"
    solution = summary.solution
    out[f"r_{key}"] = solution.r if solution else None
    out[f"r_{key}_reason"] = summary.reason
    out[f"r_{key}_bracket_lo"] = solution.r_lo if solution else None
    out[f"r_{key}_bracket_hi"] = solution.r_hi if solution else None
    out[f"b_at_{at}_bracket_lo"] = solution.b_lo if solution else None
    out[f"b_at_{at}_bracket_hi"] = solution.b_hi if solution else None
    out[f"r_{key}_multi_crossing"] = solution.multi_crossing if solution else None
    point = summary.metrics
    for name, attr in (("c", "precision"), ("f1", "f1"), ("v", "v"), ("u", "u"), ("b", "b")):
        value = getattr(point, attr) if point else None
        out[f"{name}_at_{at}"] = value
        if point is None:
            reason = summary.reason
        else:
            reason = point.reasons.get(attr)
        out[f"{name}_at_{at}_reason"] = reason if value is None else None


def _flatten_point(
    out: Dict[str, Any], suffix: str, r_name: str, point: Optional[PointMetrics], absent: Optional[str]
) -> None:
    out[r_name] = point.r if point else None
    out[f"{r_name}_reason"] = None if point else absent
    for name, attr in (("c", "precision"), ("f1", "f1"), ("v", "v"), ("u", "u"), ("b", "b")):
        value = getattr(point, attr) if point else None
        out[f"{name}_at_{suffix}"] = value
        reason = point.reasons.get(attr) if point else absent
        out[f"{name}_at_{suffix}_reason"] = reason if value is None else None


def _summarise_target(
    data: ScoredDataset, target: float, curve: BalanceCurve
) -> ThresholdSummary:
    summary = ThresholdSummary(target=target)
    try:
        solution = solve_balance_threshold(data, BalanceTarget(target), curve=curve)
    except NoBalancedThreshold as exc:
        summary.reason = _unsolvable_reason(exc)
        logger.info("threshold for B=%g absent: %s", target, summary.reason)
        return summary
    summary.solution = solution
    summary.metrics = metrics_at(data, solution.labelled_threshold)
    return summary


def _monte_carlo(
    data: ScoredDataset, n_samples: int, seed: int, rb: Optional[BalanceThreshold]
) -> MonteCarloSummary:
    summary = MonteCarloSummary(n_samples=n_samples, seed=seed)
    area = auc_pairwise_mc(data, n_samples, derive_seed(seed, 0))
    summary.auc, summary.auc_std_error = area.value, area.std_error
    if rb is None:
        summary.reasons["b_at_rb"] = "r_b absent"
        return summary
    try:
        estimate = b_mc(data, rb.labelled_threshold, n_samples, derive_seed(seed, 1))
    except MetricError as exc:
        summary.reasons["b_at_rb"] = str(exc)
        return summary
    summary.b_at_rb, summary.b_at_rb_std_error = estimate.value, estimate.std_error
    return summary


def indist_report(
    data: ScoredDataset,
    model: Optional[LogisticModel] = None,
    targets: Sequence[float] = DEFAULT_TARGETS,
    user_threshold: Optional[float] = None,
    mc_samples: int = 0,
    mc_seed: Optional[int] = None,
    curve: Optional[BalanceCurve] = None,
) -> IndistReport:
    """Assemble the report; unsolvable thresholds become absent fields, never guesses."""

    curve = curve if curve is not None else balance_curve(data)
    precision_recall = pr_curve(data)
    peak = curve.f1_peak()
    thresholds: Dict[str, ThresholdSummary] = {}
    for target in targets:
        summary = _summarise_target(data, float(target), curve)
        thresholds[summary.key] = summary

    report = IndistReport(
        n_pos=data.n_pos,
        n_neg=data.n_neg,
        auc=auc_rank(data).value,
        auprc=auprc(precision_recall),
        max_f1=float(curve.f1[peak]) if peak is not None else None,
        b_neg_inf=b_limit_neg_inf(data),
        thresholds=thresholds,
        r_max_f1=float(curve.thresholds[peak]) if peak is not None else None,
        b_at_r_max_f1=float(curve.b[peak]) if peak is not None else None,
        b_plus_at_r_max_f1=float(curve.b_plus[peak]) if peak is not None else None,
        model=model,
    )
    if model is not None:
        report.naive = metrics_at(data, naive_threshold(model))
    if user_threshold is not None:
        report.user = metrics_at(data, user_threshold)
    if mc_samples > 0:
        if mc_seed is None:
            raise ValueError("mc_seed is required when mc_samples > 0")
        rb = thresholds["b"].solution if "b" in thresholds else None
        report.monte_carlo = _monte_carlo(data, mc_samples, mc_seed, rb)
    return report


@dataclass(slots=True)
class DatasetRun:
    """Every artifact of one generate -> score -> eval run."""

    letter: str
    spec: DatasetSpec
    raw: RawDataset
    model: LogisticModel
    scored: ScoredDataset
    curve: BalanceCurve
    report: IndistReport


def run_dataset(
    letter: str,
    spec: DatasetSpec,
    targets: Sequence[float] = DEFAULT_TARGETS,
    mc_samples: int = 0,
) -> DatasetRun:
    stage = "generate"
    try:
        raw = generate_synthetic(spec)
        stage = "score"
        model = fit_logistic_1d(raw)
        scored = score_dataset(model, raw)
        stage = "eval"
        curve = balance_curve(scored)
        report = indist_report(
            scored,
            model=model,
            targets=targets,
            mc_samples=mc_samples,
            mc_seed=derive_seed(spec.seed, 1),
            curve=curve,
        )
    except Exception as exc:
        raise PipelineError(letter, stage, exc) from exc
    logger.info("dataset %s: A=%.4f C(r_b)=%s", letter, report.auc, report.c_at_rb)
    return DatasetRun(
        letter=letter, spec=spec, raw=raw, model=model, scored=scored, curve=curve, report=report
    )


def replicate_grid(
    seed: int,
    letters: Sequence[str] = DATASET_LETTERS,
    targets: Sequence[float] = DEFAULT_TARGETS,
    mc_samples: int = 0,
    jobs: int = 1,
) -> List[DatasetRun]:
    """Run the nine-dataset grid; results come back in ``letters`` order."""

    specs = benchmark_grid(seed)
    if jobs <= 1:
        return [run_dataset(letter, specs[letter], targets, mc_samples) for letter in letters]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        futures = [
            pool.submit(run_dataset, letter, specs[letter], targets, mc_samples) for letter in letters
        ]
        return [future.result() for future in futures]


@dataclass(slots=True)
class ReplicationRow:
    dataset: str
    m_n: float
    n_easy: int
    auc: float
    r_b: Optional[float]
    c_at_rb: Optional[float]
    c_at_r40: Optional[float]
    c_at_r60: Optional[float]
    f1_at_rb: Optional[float]
    b_neg_inf: float
    auprc: float
    max_f1: Optional[float]
    r_max_f1: Optional[float]
    b_at_r_max_f1: Optional[float]
    auc_mc: Optional[float] = None
    b_mc_at_rb: Optional[float] = None

    @classmethod
    def from_run(cls, run: DatasetRun) -> "ReplicationRow":
        report = run.report
        mc = report.monte_carlo
        return cls(
            dataset=run.letter,
            m_n=run.spec.m_n,
            n_easy=run.spec.n_easy,
            auc=report.auc,
            r_b=report.r_b,
            c_at_rb=report.c_at_rb,
            c_at_r40=report.c_at_r40,
            c_at_r60=report.c_at_r60,
            f1_at_rb=report.f1_at_rb,
            b_neg_inf=report.b_neg_inf,
            auprc=report.auprc,
            max_f1=report.max_f1,
            r_max_f1=report.r_max_f1,
            b_at_r_max_f1=report.b_at_r_max_f1,
            auc_mc=mc.auc if mc else None,
            b_mc_at_rb=mc.b_at_rb if mc else None,
        )

    def as_dict(self) -> Dict[str, Any]:
        return asdict(self)


UNIT_INTERVAL_COLUMNS = (
    "auc",
    "c_at_rb",
    "c_at_r40",
    "c_at_r60",
    "f1_at_rb",
    "b_neg_inf",
    "auprc",
    "max_f1",
    "b_at_r_max_f1",
)


@dataclass(slots=True)
class ReplicationTable:
    seed: int
    rows: List[ReplicationRow]

    def __post_init__(self) -> None:
        for row in self.rows:
            for name in UNIT_INTERVAL_COLUMNS:
                value = getattr(row, name)
                if value is not None and not (math.isfinite(value) and 0.0 <= value <= 1.0):
                    raise ValueError(f"row {row.dataset}: {name}={value} outside [0, 1]")

    def row(self, dataset: str) -> ReplicationRow:
        for row in self.rows:
            if row.dataset == dataset:
                return row
        raise KeyError(dataset)

    def as_frame(self) -> pd.DataFrame:
        return pd.DataFrame([row.as_dict() for row in self.rows])

    def as_dict(self) -> Dict[str, Any]:
        return {"seed": self.seed, "rows": [row.as_dict() for row in self.rows]}


def replication_table(seed: int, runs: Sequence[DatasetRun]) -> ReplicationTable:
    return ReplicationTable(seed=seed, rows=[ReplicationRow.from_run(run) for run in runs])

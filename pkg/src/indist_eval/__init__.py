"""Precision at the indistinguishability threshold and companion classifier metrics."""

from .balance import BalanceCurve, BalanceValue, b_exact, b_limit_neg_inf, balance_curve
from .calibration import BalanceTarget, BalanceThreshold, naive_threshold, solve_balance_threshold
from .curves import Curve, auc_trapezoid, auprc, pr_curve, roc_curve
from .datasets import DatasetSpec, RawDataset, benchmark_grid, generate_synthetic
from .logistic import LogisticModel, fit_logistic_1d, score_dataset
from .metrics import AucEstimate, Rates, auc_integral, auc_rank, empirical_cdf, f1_at, precision_at, rates_at
from .reporting import IndistReport, indist_report
from .sampling import auc_pairwise_mc, b_mc
from .scores import ScoredDataset, load_scored_csv, save_scored_csv

__all__ = [
    "AucEstimate",
    "BalanceCurve",
    "BalanceTarget",
    "BalanceThreshold",
    "BalanceValue",
    "Curve",
    "DatasetSpec",
    "IndistReport",
    "LogisticModel",
    "RawDataset",
    "Rates",
    "ScoredDataset",
    "auc_integral",
    "auc_pairwise_mc",
    "auc_rank",
    "auc_trapezoid",
    "auprc",
    "b_exact",
    "b_limit_neg_inf",
    "b_mc",
    "balance_curve",
    "benchmark_grid",
    "empirical_cdf",
    "f1_at",
    "fit_logistic_1d",
    "generate_synthetic",
    "indist_report",
    "load_scored_csv",
    "naive_threshold",
    "pr_curve",
    "precision_at",
    "rates_at",
    "roc_curve",
    "save_scored_csv",
    "score_dataset",
    "solve_balance_threshold",
]

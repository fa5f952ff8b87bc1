"""SEO metric analysis and Webometric-rank rule mining."""

from ._core import (
    AnalysisError,
    ArgumentError,
    Error,
    IoError,
    ParseError,
    impact_score,
    impact_table,
    metric_names,
    mine,
    onpage_metrics,
    reconstruct_counts,
    run_cli,
    shift_log,
)

__all__ = [
    "AnalysisError",
    "ArgumentError",
    "Error",
    "IoError",
    "ParseError",
    "impact_score",
    "impact_table",
    "metric_names",
    "mine",
    "onpage_metrics",
    "reconstruct_counts",
    "run_cli",
    "shift_log",
]

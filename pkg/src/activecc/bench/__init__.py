"""
activecc Bench Module
Datasets, seeded sweeps, one-shot runs and CSV output.
"""

from .datasets import GENERATORS, Dataset, load_dataset
from .harness import (
    ALGORITHMS,
    CSV_COLUMNS,
    DEFAULT_ALPHAS,
    DEFAULT_ETAS,
    ExperimentConfig,
    TradeoffRecord,
    emit_csv,
    execute,
    format_report,
    read_csv,
    run_once,
    run_sweep,
    sweep_instances,
)

__all__ = [
    "ALGORITHMS",
    "CSV_COLUMNS",
    "DEFAULT_ALPHAS",
    "DEFAULT_ETAS",
    "Dataset",
    "ExperimentConfig",
    "GENERATORS",
    "TradeoffRecord",
    "emit_csv",
    "execute",
    "format_report",
    "load_dataset",
    "read_csv",
    "run_once",
    "run_sweep",
    "sweep_instances",
]

"""
Experiment harness: one-shot runs, (eta x alpha) sweeps and the CSV contract.
"""

import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Tuple, Union

import numpy as np
import pandas as pd
from pydantic import BaseModel, Field, field_validator

from ..algorithms.pivot import RunTrace, access, acc, kwikcluster
from ..algorithms.rates import PowerRate, QueryRateFunction
from ..algorithms.recovery import acr_runs
from ..config.settings import Settings, get_settings
from ..core.clustering import Clustering
from ..core.instance import LabeledInstance, perturb
from ..core.oracle import QueryOracle
from ..core.parallel import ordered_map
from ..errors import BudgetExhaustedError, ParameterError
from ..exact.solver import erm_cc
from ..metrics.bounds import acc_query_bound, access_query_bound
from ..metrics.cost import cost
from ..metrics.structure import recovery_distance
from .datasets import Dataset, load_dataset

logger = logging.getLogger(__name__)

Algorithm = Literal["acc", "access", "kwik", "acr", "erm"]
ALGORITHMS: Tuple[str, ...] = ("acc", "access", "kwik", "acr", "erm")

CSV_COLUMNS = [
    "dataset",
    "eta",
    "alpha",
    "reps",
    "mu_q",
    "var_q",
    "mu_delta",
    "var_delta",
    "seed",
]

DEFAULT_ETAS = [0.0, 0.1, 0.5, 1.0]
DEFAULT_ALPHAS = [round(0.05 * i, 2) for i in range(21)]


class ExperimentConfig(BaseModel):
    """One sweep over a dataset: every (eta, alpha) pair, `repetitions` runs each."""

    dataset: str = "skew"
    etas: List[float] = Field(default_factory=lambda: list(DEFAULT_ETAS))
    alphas: List[float] = Field(default_factory=lambda: list(DEFAULT_ALPHAS))
    repetitions: int = Field(default=20, ge=1)
    seed: int = 0
    algorithm: Algorithm = "acc"
    output: Optional[str] = None
    format: Literal["edges", "dimacs"] = "edges"
    truth: Optional[str] = None
    acr_runs: Optional[int] = Field(default=None, ge=1)
    max_workers: int = Field(default=1, ge=1)

    @field_validator("etas")
    @classmethod
    def _check_etas(cls, values: List[float]) -> List[float]:
        if not values:
            raise ValueError("eta grid is empty")
        if any(not math.isfinite(v) or v < 0 for v in values):
            raise ValueError("etas must be finite and >= 0")
        return sorted(set(values))

    @field_validator("alphas")
    @classmethod
    def _check_alphas(cls, values: List[float]) -> List[float]:
        if not values:
            raise ValueError("alpha grid is empty")
        if any(not 0 <= v <= 1 for v in values):
            raise ValueError("alphas must lie in [0, 1]")
        return sorted(set(values))


class TradeoffRecord(BaseModel):
    """Aggregate of one grid point; field order is the CSV column order."""

    dataset: str
    eta: float
    alpha: float
    reps: int
    mu_q: float
    var_q: float
    mu_delta: float
    var_delta: float
    seed: int


@dataclass(frozen=True)
class _Job:
    instance: LabeledInstance
    algorithm: str
    alpha: float
    seed: np.random.SeedSequence
    acr_runs: Optional[int]


def execute(
    instance: LabeledInstance,
    algorithm: str,
    f: QueryRateFunction,
    seed: Any,
    *,
    budget: Optional[int] = None,
    acr_k: Optional[int] = None,
    erm_queries: Optional[int] = None,
) -> Tuple[Clustering, int, Optional[RunTrace]]:
    """Run one algorithm once; returns (clustering, queries issued, trace)."""
    if algorithm == "acr":
        if budget is not None:
            raise ParameterError("a query budget is not supported for acr")
        outcome = acr_runs(instance, f, acr_k, seed)
        return outcome.clustering, outcome.queries, None

    oracle = QueryOracle(instance, budget)
    if algorithm == "kwik":
        clustering, trace = kwikcluster(oracle, seed)
    elif algorithm == "acc":
        clustering, trace = acc(oracle, f, seed)
    elif algorithm == "access":
        clustering, trace = access(oracle, f, seed)
    elif algorithm == "erm":
        n = instance.n
        Q = erm_queries if erm_queries is not None else max(1, math.ceil(n * f(max(n, 1)) - 1e-9))
        return erm_cc(oracle, Q, seed), oracle.queries_issued, None
    else:
        raise ParameterError(f"unknown algorithm '{algorithm}', expected one of {ALGORITHMS}")
    return clustering, oracle.queries_issued, trace


def _run_job(job: _Job) -> Tuple[int, int]:
    clustering, queries, _ = execute(
        job.instance, job.algorithm, PowerRate(job.alpha), job.seed, acr_k=job.acr_runs
    )
    return queries, cost(job.instance, clustering)


def _sample_variance(values: np.ndarray) -> float:
    return float(np.var(values, ddof=1)) if values.size > 1 else 0.0


def sweep_instances(
    config: ExperimentConfig,
) -> Tuple[Dataset, List[Tuple[float, LabeledInstance]]]:
    """The dataset and its perturbed instance for every eta of the grid."""
    dataset_seed, perturb_seed, _ = np.random.SeedSequence(config.seed).spawn(3)
    dataset = load_dataset(config.dataset, dataset_seed, config.format, config.truth)
    instances = []
    for eta, seed in zip(config.etas, perturb_seed.spawn(len(config.etas))):
        instance = perturb(dataset.instance, eta, seed)
        logger.info(f"eta={eta}: n={instance.n}, |E|={instance.num_edges}")
        instances.append((eta, instance))
    return dataset, instances


def run_sweep(
    config: ExperimentConfig, settings: Optional[Settings] = None
) -> List[TradeoffRecord]:
    """
    Run the full (eta, alpha) grid and aggregate queries and cost.

    The master seed is split into a dataset seed, one perturbation seed per
    eta and one repetition stream per grid point, so every run is independent
    of worker count and scheduling. Records come out sorted by (eta, alpha);
    when config.output is set they are also written as CSV.
    """
    settings = settings or get_settings()
    dataset, instances = sweep_instances(config)
    if config.algorithm == "erm":
        settings.check_capacity("erm_cc", dataset.n, "exact_max_nodes")

    runs_seed = np.random.SeedSequence(config.seed).spawn(3)[2]
    grid_seeds = runs_seed.spawn(len(config.etas) * len(config.alphas))

    grid: List[Tuple[float, float]] = []
    jobs: List[_Job] = []
    for i, (eta, instance) in enumerate(instances):
        for j, alpha in enumerate(config.alphas):
            grid.append((eta, alpha))
            for rep_seed in grid_seeds[i * len(config.alphas) + j].spawn(config.repetitions):
                jobs.append(_Job(instance, config.algorithm, alpha, rep_seed, config.acr_runs))

    logger.info(
        f"Sweep {config.algorithm} on '{dataset.name}': {len(grid)} grid points x "
        f"{config.repetitions} repetitions"
    )
    results = np.array(ordered_map(_run_job, jobs, config.max_workers), dtype=np.int64)
    results = results.reshape(len(grid), config.repetitions, 2)

    records = []
    for (eta, alpha), block in zip(grid, results):
        queries, costs = block[:, 0].astype(float), block[:, 1].astype(float)
        record = TradeoffRecord(
            dataset=dataset.name,
            eta=eta,
            alpha=alpha,
            reps=config.repetitions,
            mu_q=float(queries.mean()),
            var_q=_sample_variance(queries),
            mu_delta=float(costs.mean()),
            var_delta=_sample_variance(costs),
            seed=config.seed,
        )
        logger.debug(f"eta={eta} alpha={alpha}: mu_q={record.mu_q:.1f} mu_delta={record.mu_delta:.1f}")
        records.append(record)

    if config.output:
        emit_csv(records, config.output, settings.csv_float_digits)
    return records


def _trace_fields(trace: RunTrace) -> Dict[str, Any]:
    summary = trace.summary()
    summary.pop("algorithm")
    summary.pop("queries")
    return summary


def run_once(
    dataset: Dataset,
    algorithm: str,
    alpha: float = 1.0,
    seed: Any = None,
    *,
    budget: Optional[int] = None,
    acr_k: Optional[int] = None,
    erm_queries: Optional[int] = None,
) -> Dict[str, Any]:
    """
    Single seeded run. The report holds cost, queries and the run trace, plus
    the recovery distance of every latent cluster when the dataset carries a
    ground truth. A spent budget is reported, not raised.
    """
    report: Dict[str, Any] = {
        "dataset": dataset.name,
        "n": dataset.n,
        "edges": dataset.instance.num_edges,
        "algorithm": algorithm,
        "alpha": alpha,
        "seed": seed,
    }
    f = PowerRate(alpha)
    try:
        clustering, queries, trace = execute(
            dataset.instance, algorithm, f, seed,
            budget=budget, acr_k=acr_k, erm_queries=erm_queries,
        )
    except BudgetExhaustedError as e:
        logger.warning(f"{algorithm} stopped by the query budget: {e}")
        report.update(budget_exhausted=True, queries=e.issued)
        if e.trace is not None:
            report.update(_trace_fields(e.trace))
        report["stop_reason"] = "budget"
        return report

    report.update(
        budget_exhausted=False,
        queries=queries,
        cost=cost(dataset.instance, clustering),
        clusters=clustering.num_clusters,
    )
    if trace is not None:
        report.update(_trace_fields(trace))
    if algorithm == "acc":
        report["query_bound"] = acc_query_bound(dataset.n, f)
    elif algorithm == "access":
        report["expected_query_bound"] = access_query_bound(dataset.n, f)

    if dataset.ground_truth is not None:
        distances = [
            recovery_distance(members, clustering)[1]
            for members in dataset.ground_truth.clusters()
        ]
        report["recovered_clusters"] = sum(1 for d in distances if d == 0)
        for i, d in enumerate(distances):
            report[f"recovery_distance_{i}"] = d
    return report


def format_report(report: Dict[str, Any]) -> str:
    """Flat key=value block, one pair per line, in insertion order."""
    lines = []
    for key, value in report.items():
        if isinstance(value, bool):
            value = "true" if value else "false"
        lines.append(f"{key}={value}")
    return "\n".join(lines) + "\n"


def _exact_float(value: float) -> str:
    return repr(float(value))


def emit_csv(
    records: List[TradeoffRecord],
    path: Union[str, Path],
    float_digits: Optional[int] = None,
) -> Path:
    """
    Write records with fixed columns and row order.

    Floats are written in shortest round-trip form unless float_digits asks
    for fixed decimals (display only; read_csv then returns rounded values).
    """
    path = Path(path)
    if path.parent and not path.parent.exists():
        path.parent.mkdir(parents=True, exist_ok=True)
    frame = pd.DataFrame([r.model_dump() for r in records], columns=CSV_COLUMNS)
    float_format = _exact_float if float_digits is None else f"%.{float_digits}f"
    frame.to_csv(path, index=False, float_format=float_format, lineterminator="\n")
    logger.info(f"Wrote {len(records)} records to {path}")
    return path


def read_csv(path: Union[str, Path]) -> List[TradeoffRecord]:
    """Parse a file written by emit_csv."""
    frame = pd.read_csv(path, dtype={"dataset": str}, float_precision="round_trip")
    missing = [c for c in CSV_COLUMNS if c not in frame.columns]
    if missing:
        raise ParameterError(f"{path}: missing CSV columns {missing}")
    records = []
    for row in frame[CSV_COLUMNS].to_dict("records"):
        records.append(
            TradeoffRecord(**{k: v.item() if hasattr(v, "item") else v for k, v in row.items()})
        )
    return records

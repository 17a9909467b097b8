"""
Dataset resolution for the experiment harness.

A dataset spec is either a generator name with parameters or a path to an
instance file:

    skew                        900 nodes, 30 geometrically decaying cliques
    sqrt                        900 nodes, 30 cliques with sizes ~ sqrt(i)
    cliques:<s1>,<s2>,...       clique union with the given sizes
    lb-cliques:<n>,<d>          n nodes each joining one of d cliques
    planted:<n>,<eps>[,<alpha>] planted lower-bound construction
    <path>                      edge list (format given separately)

A file dataset picks up its ground truth from an explicit truth file, or
else from a `<path>.truth` sidecar next to it when one exists.
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple, Union

from ..core.instance import (
    INSTANCE_FORMATS,
    GroundTruthPartition,
    LabeledInstance,
    SeedLike,
    generate_clique_union,
    generate_lb_cliques,
    generate_lb_planted,
    load_ground_truth,
    load_instance,
    skew_sizes,
    sqrt_sizes,
)
from ..errors import ParameterError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Dataset:
    name: str
    instance: LabeledInstance
    ground_truth: Optional[GroundTruthPartition] = None

    @property
    def n(self) -> int:
        return self.instance.n


def _numbers(spec: str, args: str, count: Tuple[int, int], cast: Callable = int) -> List:
    tokens = [t for t in args.split(",") if t.strip()]
    low, high = count
    if not low <= len(tokens) <= high:
        raise ParameterError(f"dataset '{spec}' expects {low}..{high} parameters, got {len(tokens)}")
    try:
        return [cast(t) for t in tokens]
    except ValueError:
        raise ParameterError(f"dataset '{spec}' has a non-numeric parameter") from None


def _skew(spec: str, args: str, seed: SeedLike) -> Dataset:
    params = _numbers(spec, args, (0, 2)) if args else []
    instance, truth = generate_clique_union(skew_sizes(*params), seed)
    return Dataset(spec, instance, truth)


def _sqrt(spec: str, args: str, seed: SeedLike) -> Dataset:
    params = _numbers(spec, args, (0, 2)) if args else []
    instance, truth = generate_clique_union(sqrt_sizes(*params), seed)
    return Dataset(spec, instance, truth)


def _cliques(spec: str, args: str, seed: SeedLike) -> Dataset:
    sizes = _numbers(spec, args, (1, 1 << 20))
    instance, truth = generate_clique_union(sizes, seed)
    return Dataset(spec, instance, truth)


def _lb_cliques(spec: str, args: str, seed: SeedLike) -> Dataset:
    n, d = _numbers(spec, args, (2, 2))
    instance, truth = generate_lb_cliques(n, d, seed)
    return Dataset(spec, instance, truth)


def _planted(spec: str, args: str, seed: SeedLike) -> Dataset:
    values = _numbers(spec, args, (2, 3), float)
    n = int(values[0])
    if n != values[0]:
        raise ParameterError(f"dataset '{spec}': n must be an integer")
    instance = generate_lb_planted(n, *values[1:], seed=seed)
    return Dataset(spec, instance)


GENERATORS: Dict[str, Callable[[str, str, SeedLike], Dataset]] = {
    "skew": _skew,
    "sqrt": _sqrt,
    "cliques": _cliques,
    "lb-cliques": _lb_cliques,
    "planted": _planted,
}


def load_dataset(
    spec: str,
    seed: SeedLike = None,
    format: str = "edges",
    truth: Optional[Union[str, Path]] = None,
) -> Dataset:
    """
    Build or load the dataset named by spec.

    Generated datasets are deterministic in seed. Anything that is not a
    generator name is read as an instance file; a missing file raises OSError.
    `truth` replaces the ground truth of either kind; its nodes must match n.
    """
    name, _, args = spec.partition(":")
    generator = GENERATORS.get(name.strip().lower())
    if generator is not None:
        dataset = generator(spec, args, seed)
        logger.info(f"Dataset '{spec}': n={dataset.n}, |E|={dataset.instance.num_edges}")
        if truth is not None:
            dataset = Dataset(dataset.name, dataset.instance, load_ground_truth(truth, dataset.n))
        return dataset

    if format not in INSTANCE_FORMATS:
        raise ParameterError(f"unknown instance format '{format}', expected one of {INSTANCE_FORMATS}")
    path = Path(spec)
    instance = load_instance(path, format)
    logger.info(f"Loaded dataset {path}: n={instance.n}, |E|={instance.num_edges}")

    if truth is None:
        sidecar = Path(f"{path}.truth")
        truth = sidecar if sidecar.is_file() else None
    ground_truth = load_ground_truth(truth, instance.n) if truth is not None else None
    if ground_truth is not None:
        logger.info(f"Ground truth from {truth}: {ground_truth.num_clusters} clusters")
    return Dataset(path.stem, instance, ground_truth)

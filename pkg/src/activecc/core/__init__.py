"""
activecc Core Module
Labeled instances, the query oracle, and clustering types.
"""

from .clustering import Clustering
from .instance import (
    INSTANCE_FORMATS,
    GroundTruthPartition,
    LabeledInstance,
    flip_probability,
    generate_clique_union,
    generate_lb_cliques,
    generate_lb_planted,
    generate_planted_partition,
    load_ground_truth,
    load_instance,
    make_rng,
    perturb,
    save_ground_truth,
    save_instance,
    skew_sizes,
    sqrt_sizes,
)
from .oracle import MemoizingOracle, OracleSnapshot, QueryOracle
from .parallel import ordered_map, seed_sequence, spawn_seeds

__all__ = [
    "INSTANCE_FORMATS",
    "Clustering",
    "GroundTruthPartition",
    "LabeledInstance",
    "MemoizingOracle",
    "OracleSnapshot",
    "QueryOracle",
    "flip_probability",
    "generate_clique_union",
    "generate_lb_cliques",
    "generate_lb_planted",
    "generate_planted_partition",
    "load_ground_truth",
    "load_instance",
    "make_rng",
    "ordered_map",
    "perturb",
    "save_ground_truth",
    "save_instance",
    "seed_sequence",
    "skew_sizes",
    "spawn_seeds",
]

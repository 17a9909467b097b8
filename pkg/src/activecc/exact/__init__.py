"""
activecc Exact Module
Partition enumeration, exact OPT, ERM on sampled pairs, VC shattering.
"""

from .partitions import bell_number, iter_partitions, min_disagreement_partition
from .solver import erm_cc, exact_opt, sample_pairs
from .vc import hypothesis_table, is_shattered, vc_shattering_check

__all__ = [
    "bell_number",
    "erm_cc",
    "exact_opt",
    "hypothesis_table",
    "is_shattered",
    "iter_partitions",
    "min_disagreement_partition",
    "sample_pairs",
    "vc_shattering_check",
]

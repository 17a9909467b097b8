"""
activecc Metrics Module
Clustering cost, bad triangles, knit certificates and recovery distance.
"""

from .bounds import (
    ACC_ERROR_CONSTANT,
    acc_error_bound,
    acc_query_bound,
    access_error_bound,
    access_query_bound,
    recovery_bound,
)
from .cost import cost, cost_reference
from .structure import (
    BadTriangleStats,
    KnitCertificate,
    bad_triangle_stats,
    knit_check,
    recovery_distance,
    strongly_knit_check,
)

__all__ = [
    "ACC_ERROR_CONSTANT",
    "BadTriangleStats",
    "KnitCertificate",
    "acc_error_bound",
    "acc_query_bound",
    "access_error_bound",
    "access_query_bound",
    "bad_triangle_stats",
    "cost",
    "cost_reference",
    "knit_check",
    "recovery_bound",
    "recovery_distance",
    "strongly_knit_check",
]

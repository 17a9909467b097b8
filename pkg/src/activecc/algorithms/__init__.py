"""
activecc Algorithms Module
Query rate functions, the pivot family and amplified recovery.
"""

from .pivot import RunTrace, access, acc, kwikcluster
from .rates import CallableRate, PowerRate, QueryRateFunction
from .recovery import AcrOutcome, acr, acr_default_runs, acr_runs

__all__ = [
    "AcrOutcome",
    "CallableRate",
    "PowerRate",
    "QueryRateFunction",
    "RunTrace",
    "access",
    "acc",
    "acr",
    "acr_default_runs",
    "acr_runs",
    "kwikcluster",
]

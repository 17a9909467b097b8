"""
Closed-form guarantees of the pivot algorithms.
"""

import math

from ..algorithms.rates import QueryRateFunction

# (2e - 1) / (2(e - 1)), about 1.29
ACC_ERROR_CONSTANT = (2 * math.e - 1) / (2 * (math.e - 1))


def acc_query_bound(n: int, f: QueryRateFunction) -> int:
    """Q <= n * ceil(f(n)), deterministically."""
    return n * f.ceil(n) if n else 0


def acc_error_bound(n: int, f: QueryRateFunction, opt: float = 0.0) -> float:
    """E[cost] <= 3 OPT + (2e-1)/(2(e-1)) n^2/f(n) + n/e."""
    if n == 0:
        return 3 * opt
    return 3 * opt + ACC_ERROR_CONSTANT * n * n / f(n) + n / math.e


def access_query_bound(n: int, f: QueryRateFunction) -> int:
    """E[Q] <= n (ceil(f(n)) + 4)."""
    return n * (f.ceil(n) + 4) if n else 0


def access_error_bound(n: int, f: QueryRateFunction, opt: float = 0.0) -> float:
    """E[cost] <= 3 OPT + 2 n^2/f(n) + n/e."""
    if n == 0:
        return 3 * opt
    return 3 * opt + 2 * n * n / f(n) + n / math.e


def recovery_bound(size: int, n: int, f: QueryRateFunction, epsilon: float) -> float:
    """
    E[|C xor C_hat|] for a (1-epsilon)-knit C:
    3 eps |C| + min(2n/f(n), (1 - f(n)/n)|C|) + |C| exp(-|C| f(n) / 5n).
    """
    fn = f(n)
    return (
        3 * epsilon * size
        + min(2 * n / fn, (1 - fn / n) * size)
        + size * math.exp(-size * fn / (5 * n))
    )

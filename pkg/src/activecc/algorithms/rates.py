"""
Query rate functions.

A valid rate function has f(1) = 1 and f(m) <= f(m+1) <= (1 + 1/m) f(m).
Ceilings are taken at use sites through QueryRateFunction.ceil.
"""

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from ..errors import ParameterError

# Absorbs floating-point noise such as 900 ** 0.5 evaluating a hair above 30.
_CEIL_SLACK = 1e-9
_REL_TOL = 1e-12


class QueryRateFunction:
    """Base class; subclasses implement the vectorized `evaluate`."""

    tag: str = "f"

    def evaluate(self, m: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def __call__(self, m: int) -> float:
        return float(self.evaluate(np.array([m], dtype=float))[0])

    def ceil(self, m: int) -> int:
        """ceil(f(m)), never below 1."""
        return max(1, int(math.ceil(self(m) - _CEIL_SLACK)))

    def validate(self, n: int) -> None:
        """Check the rate-function conditions on 1..n; raise ParameterError if violated."""
        if n < 1:
            return
        m = np.arange(1, n + 1, dtype=float)
        values = np.asarray(self.evaluate(m), dtype=float)
        if not np.all(np.isfinite(values)):
            raise ParameterError(f"rate function {self.tag} is not finite on 1..{n}")
        if abs(values[0] - 1.0) > _CEIL_SLACK:
            raise ParameterError(f"rate function {self.tag} has f(1)={values[0]:.6g}, expected 1")
        if n == 1:
            return
        lower, upper = values[:-1], values[1:]
        slack = _REL_TOL * np.maximum(1.0, lower)
        if np.any(upper < lower - slack):
            m_bad = int(m[:-1][np.argmax(upper < lower - slack)])
            raise ParameterError(f"rate function {self.tag} decreases after m={m_bad}")
        bound = (1.0 + 1.0 / m[:-1]) * lower
        if np.any(upper > bound + slack):
            m_bad = int(m[:-1][np.argmax(upper > bound + slack)])
            raise ParameterError(
                f"rate function {self.tag} grows faster than (1+1/m)f(m) at m={m_bad}"
            )

    @staticmethod
    def power(alpha: float) -> "PowerRate":
        return PowerRate(alpha)

    @staticmethod
    def identity() -> "PowerRate":
        return PowerRate(1.0)

    @staticmethod
    def constant() -> "PowerRate":
        return PowerRate(0.0)

    def __repr__(self) -> str:
        return f"QueryRateFunction({self.tag})"


@dataclass(frozen=True, repr=False)
class PowerRate(QueryRateFunction):
    """f(x) = x ** alpha with alpha in [0, 1]; alpha = 1 is KwikCluster."""

    alpha: float

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise ParameterError(f"power-law exponent must be in [0, 1], got {self.alpha}")

    @property
    def tag(self) -> str:  # type: ignore[override]
        return f"x^{self.alpha:g}"

    def evaluate(self, m: np.ndarray) -> np.ndarray:
        m = np.asarray(m, dtype=float)
        if self.alpha == 1.0:
            return m.copy()
        return np.power(m, self.alpha)


class CallableRate(QueryRateFunction):
    """Wrap an arbitrary scalar function m -> f(m)."""

    def __init__(self, fn: Callable[[float], float], tag: str = "custom"):
        self._fn = np.vectorize(fn, otypes=[float])
        self.tag = tag

    def evaluate(self, m: np.ndarray) -> np.ndarray:
        return self._fn(np.asarray(m, dtype=float))

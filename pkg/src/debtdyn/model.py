"""Domain types and exact single-step dynamics of the coupled model.

A representative consumer holds a bank budget that evolves like a leaking
bucket: disposable income flows in, consumption (plus the tax on it) leaks
out. The state carries a per-capita public debt that accrues interest and
absorbs the gap between public expenditure and the consumer's tax bill.

All quantities are per-capita; the unit of time is one year. Index 0 of any
series holds initial conditions and the dynamics run over years 1..K.

Everything here is a pure function over frozen value types, so the module is
safe to use concurrently without any locking.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

__all__ = [
    "ModelError",
    "NonPositiveBudget",
    "ScheduleTooShort",
    "ConsumptionLaw",
    "ConsumerParams",
    "ConstantSchedule",
    "LinearSchedule",
    "ExplicitSchedule",
    "ExpenditureSchedule",
    "DebtParams",
    "Scenario",
    "Trajectory",
    "tax",
    "consumer_step",
    "debt_drift",
    "debt_step",
]


# ---------------------------------------------------------------------------
# Errors
# ---------------------------------------------------------------------------

class ModelError(Exception):
    """Base class for model-domain failures."""


class NonPositiveBudget(ModelError):
    """The implicit budget step has no positive solution."""


class ScheduleTooShort(ModelError):
    """An explicit expenditure schedule does not cover the requested year."""


def _check(condition: bool, message: str) -> None:
    if not condition:
        raise ValueError(message)


def _finite(value: float, name: str) -> float:
    value = float(value)
    _check(math.isfinite(value), f"{name} must be finite, got {value!r}")
    return value


# ---------------------------------------------------------------------------
# Domain types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConsumptionLaw:
    """Consumption as a power of the current budget: spending = a * b**n.

    The exponent is an integer >= 2; spending responds super-linearly to the
    available budget.
    """

    a: float
    n: int = 2

    def __post_init__(self):
        object.__setattr__(self, "a", _finite(self.a, "a"))
        _check(self.a > 0, f"a must be > 0, got {self.a!r}")
        _check(isinstance(self.n, int) and not isinstance(self.n, bool),
               f"n must be an integer, got {self.n!r}")
        _check(self.n >= 2, f"n must be >= 2, got {self.n!r}")

    def consumption(self, budget: float) -> float:
        """Yearly spending at the given budget level."""
        return self.a * budget ** self.n


@dataclass(frozen=True)
class ConsumerParams:
    """Income, taxation rates, and consumption law of the average consumer.

    Attributes
    ----------
    p_a : float
        Fixed yearly income.
    alpha : float
        Income tax rate, in [0, 1).
    beta : float
        One-off wealth tax rate in [0, 1), levied on the bank budget only in
        year ``m``; irrelevant when ``m`` is None.
    gamma : float
        Consumption tax rate, >= 0, charged on top of consumption.
    law : ConsumptionLaw
        Budget-to-consumption relation.
    m : int | None
        Year of the one-off wealth tax; None means the levy never fires.
    """

    p_a: float
    alpha: float
    beta: float
    gamma: float
    law: ConsumptionLaw
    m: int | None = None

    def __post_init__(self):
        for name in ("p_a", "alpha", "beta", "gamma"):
            object.__setattr__(self, name, _finite(getattr(self, name), name))
        _check(self.p_a > 0, f"p_a must be > 0, got {self.p_a!r}")
        _check(0 <= self.alpha < 1, f"alpha must be in [0, 1), got {self.alpha!r}")
        _check(0 <= self.beta < 1, f"beta must be in [0, 1), got {self.beta!r}")
        _check(self.gamma >= 0, f"gamma must be >= 0, got {self.gamma!r}")
        if self.m is not None:
            _check(isinstance(self.m, int) and not isinstance(self.m, bool),
                   f"m must be an integer year, got {self.m!r}")
            _check(self.m >= 1, f"m must be >= 1, got {self.m!r}")

    def wealth_tax_rate(self, k: int) -> float:
        """beta in the wealth-tax year, zero in every other year."""
        return self.beta if k == self.m else 0.0


@dataclass(frozen=True)
class ConstantSchedule:
    """The state spends the same amount every year."""

    g0: float

    def __post_init__(self):
        object.__setattr__(self, "g0", _finite(self.g0, "g0"))
        _check(self.g0 >= 0, f"g0 must be >= 0, got {self.g0!r}")

    def value_at(self, k: int) -> float:
        return self.g0


@dataclass(frozen=True)
class LinearSchedule:
    """Expenditure with a constant yearly increment: g_k = (k-1)*delta_g + g1.

    ``delta_g`` may be negative (shrinking expenditure).
    """

    g1: float
    delta_g: float

    def __post_init__(self):
        object.__setattr__(self, "g1", _finite(self.g1, "g1"))
        object.__setattr__(self, "delta_g", _finite(self.delta_g, "delta_g"))
        _check(self.g1 > 0, f"g1 must be > 0, got {self.g1!r}")

    def value_at(self, k: int) -> float:
        return (k - 1) * self.delta_g + self.g1


@dataclass(frozen=True)
class ExplicitSchedule:
    """Expenditure listed year by year (year 1 first)."""

    values: tuple[float, ...]

    def __post_init__(self):
        values = tuple(_finite(v, f"values[{i}]") for i, v in enumerate(self.values))
        object.__setattr__(self, "values", values)
        _check(len(values) > 0, "values must be nonempty")

    def value_at(self, k: int) -> float:
        if k > len(self.values):
            raise ScheduleTooShort(
                f"explicit schedule has {len(self.values)} value(s), year {k} requested"
            )
        return self.values[k - 1]


ExpenditureSchedule = Union[ConstantSchedule, LinearSchedule, ExplicitSchedule]


@dataclass(frozen=True)
class DebtParams:
    """Public-debt parameters: rate of return, initial level, expenditure plan.

    ``r = 0`` is allowed (the recursion is well defined there); the
    closed-form operations reject it separately because they divide by r.
    """

    r: float
    d0: float
    schedule: ExpenditureSchedule

    def __post_init__(self):
        object.__setattr__(self, "r", _finite(self.r, "r"))
        object.__setattr__(self, "d0", _finite(self.d0, "d0"))
        _check(self.r >= 0, f"r must be >= 0, got {self.r!r}")
        _check(self.d0 >= 0, f"d0 must be >= 0, got {self.d0!r}")


@dataclass(frozen=True)
class Scenario:
    """A complete simulation specification."""

    consumer: ConsumerParams
    debt: DebtParams
    b0: float
    horizon: int

    def __post_init__(self):
        object.__setattr__(self, "b0", _finite(self.b0, "b0"))
        _check(self.b0 > 0, f"b0 must be > 0, got {self.b0!r}")
        _check(isinstance(self.horizon, int) and not isinstance(self.horizon, bool),
               f"horizon must be an integer, got {self.horizon!r}")
        _check(self.horizon >= 1, f"horizon must be >= 1, got {self.horizon!r}")


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Per-year series of one simulation run.

    All arrays share length K+1. Index 0 carries initial conditions
    (``b[0] = b0``, ``debt[0] = D0``); the flow series ``c``, ``tau`` and
    ``delta`` are undefined at index 0 and hold NaN there. The accounting
    identity b_k - b_{k-1} = (p_a - tau_k) - c_k holds at every k >= 1 up to
    the step solver's tolerance.
    """

    scenario: Scenario
    b: np.ndarray
    c: np.ndarray
    tau: np.ndarray
    delta: np.ndarray
    debt: np.ndarray

    def __post_init__(self):
        lengths = {len(self.b), len(self.c), len(self.tau),
                   len(self.delta), len(self.debt)}
        _check(lengths == {len(self.b)}, f"series lengths differ: {sorted(lengths)}")
        _check(len(self.b) >= 1, "series must include the initial year")

    @property
    def horizon(self) -> int:
        return len(self.b) - 1

    @property
    def years(self) -> np.ndarray:
        """Year index per entry, 0..K (0 is the initial-conditions row)."""
        return np.arange(len(self.b))


# ---------------------------------------------------------------------------
# Single-step operations
# ---------------------------------------------------------------------------

def tax(params: ConsumerParams, b_k: float, c_k: float, k: int) -> float:
    """Total tax paid in year k: income tax, consumption tax, and the one-off
    wealth levy when k is the wealth-tax year."""
    return params.alpha * params.p_a + params.wealth_tax_rate(k) * b_k \
        + params.gamma * c_k


_STEP_RTOL = 1e-12
_MAX_ITER = 200


def _positive_root(coeff: float, n: int, slope: float, rhs: float) -> float:
    """Unique positive root of coeff*x**n + slope*x - rhs with all inputs > 0.

    The polynomial is strictly increasing on x > 0, negative at 0 and
    positive at rhs/slope, so (0, rhs/slope] brackets the root. Newton steps
    are taken from the upper end and fall back to bisection whenever a step
    would leave the bracket; terminates once the relative step drops below
    1e-12 (or after 200 iterations, which bisection alone cannot exhaust).
    """
    lo = 0.0
    hi = rhs / slope
    x = hi
    for _ in range(_MAX_ITER):
        f = coeff * x ** n + slope * x - rhs
        if f > 0.0:
            hi = x
        elif f < 0.0:
            lo = x
        else:
            return x
        step = f / (n * coeff * x ** (n - 1) + slope)
        x_new = x - step
        if not lo < x_new < hi:
            x_new = 0.5 * (lo + hi)
        if abs(x_new - x) <= _STEP_RTOL * abs(x_new):
            return x_new
        x = x_new
    return x


def consumer_step(params: ConsumerParams, b_prev: float, k: int) -> float:
    """Advance the consumer budget by one year.

    The new budget b solves the implicit balance

        (1 + gamma) * a * b**n + (1 + beta_k) * b = (1 - alpha) * p_a + b_prev

    where beta_k is the wealth-tax rate in year k (zero outside year m). The
    left side is strictly increasing on b > 0 and the right side is positive,
    so the positive root exists and is unique.

    Raises NonPositiveBudget if the right side is not positive (impossible
    under the type invariants; kept as a guard).
    """
    rhs = (1.0 - params.alpha) * params.p_a + b_prev
    if rhs <= 0.0:
        raise NonPositiveBudget(
            f"(1-alpha)*p_a + b_prev = {rhs!r} must be > 0 to admit a positive budget"
        )
    coeff = (1.0 + params.gamma) * params.law.a
    slope = 1.0 + params.wealth_tax_rate(k)
    return _positive_root(coeff, params.law.n, slope, rhs)


def debt_drift(params: ConsumerParams, g_k: float, b_k: float, k: int) -> float:
    """Non-interest change of the per-capita debt in year k: expenditure minus
    the consumer's full tax bill (income, wealth-levy, and consumption parts)."""
    law = params.law
    return (g_k - params.alpha * params.p_a) \
        - params.wealth_tax_rate(k) * b_k \
        - params.gamma * law.a * b_k ** law.n


def debt_step(debt: DebtParams, d_prev: float, drift: float) -> float:
    """One year of debt evolution: interest accrual plus the year's drift."""
    return (1.0 + debt.r) * d_prev + drift

"""Scenario file schema, validation, and trajectory serialization.

Scenario files are YAML documents with three sections::

    consumer:
      p_a: 100.0
      alpha: 0.25
      beta: 0.0
      gamma: 0.25
      # m: 5              # optional wealth-tax year
      law: {a: 0.15, n: 2}
    debt:
      r: 0.05
      D0: 100.0
      schedule: {kind: constant, g0: 30.0}
      # or {kind: linear, g1: 30.0, deltaG: 1.0}
      # or {kind: explicit, values: [30.0, 31.0, 33.0]}
    run:
      b0: 18.0             # optional; defaults to the consumer fixed point
      horizon: 10

Unknown keys are rejected at every level so typos fail loudly. Every model
invariant is re-checked here with an error message naming the offending
field path.
"""

from __future__ import annotations

import json
import math

import numpy as np
import yaml

from .analysis import fixed_point
from .model import (
    ConstantSchedule,
    ConsumerParams,
    ConsumptionLaw,
    DebtParams,
    ExplicitSchedule,
    LinearSchedule,
    Scenario,
    Trajectory,
)

__all__ = [
    "ParseError",
    "ValidationError",
    "load_scenario",
    "scenario_from_mapping",
    "scenario_to_dict",
    "write_trajectory",
    "read_trajectory",
]


class ParseError(Exception):
    """The document is not well-formed."""


class ValidationError(Exception):
    """A field violates its constraint; the message names the field path."""


# ---------------------------------------------------------------------------
# Field helpers
# ---------------------------------------------------------------------------

def _fail(path: str, message: str):
    raise ValidationError(f"{path}: {message}")


def _mapping(doc, path: str, allowed: set[str]) -> dict:
    if not isinstance(doc, dict):
        _fail(path, f"must be a mapping, got {type(doc).__name__}")
    unknown = set(doc) - allowed
    if unknown:
        _fail(path, f"unknown field(s) {sorted(map(str, unknown))}; "
                    f"allowed: {sorted(allowed)}")
    return doc


def _get(doc: dict, key: str, path: str):
    if key not in doc:
        _fail(path, "required field is missing")
    return doc[key]


def _number(value, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        _fail(path, f"must be a number, got {value!r}")
    if not math.isfinite(value):
        _fail(path, f"must be finite, got {value!r}")
    return float(value)


def _integer(value, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        _fail(path, f"must be an integer, got {value!r}")
    return value


# ---------------------------------------------------------------------------
# Scenario loading
# ---------------------------------------------------------------------------

def _parse_consumer(doc, path: str) -> ConsumerParams:
    doc = _mapping(doc, path, {"p_a", "alpha", "beta", "gamma", "m", "law"})
    p_a = _number(_get(doc, "p_a", f"{path}.p_a"), f"{path}.p_a")
    if p_a <= 0:
        _fail(f"{path}.p_a", f"must be > 0, got {p_a!r}")
    alpha = _number(_get(doc, "alpha", f"{path}.alpha"), f"{path}.alpha")
    if not 0 <= alpha < 1:
        _fail(f"{path}.alpha", f"must be in [0, 1), got {alpha!r}")
    beta = _number(_get(doc, "beta", f"{path}.beta"), f"{path}.beta")
    if not 0 <= beta < 1:
        _fail(f"{path}.beta", f"must be in [0, 1), got {beta!r}")
    gamma = _number(_get(doc, "gamma", f"{path}.gamma"), f"{path}.gamma")
    if gamma < 0:
        _fail(f"{path}.gamma", f"must be >= 0, got {gamma!r}")
    m = None
    if doc.get("m") is not None:  # explicit null reads as absent
        m = _integer(doc["m"], f"{path}.m")
        if m < 1:
            _fail(f"{path}.m", f"must be >= 1, got {m!r}")
    law_doc = _mapping(_get(doc, "law", f"{path}.law"), f"{path}.law", {"a", "n"})
    a = _number(_get(law_doc, "a", f"{path}.law.a"), f"{path}.law.a")
    if a <= 0:
        _fail(f"{path}.law.a", f"must be > 0, got {a!r}")
    n = _integer(_get(law_doc, "n", f"{path}.law.n"), f"{path}.law.n")
    if n < 2:
        _fail(f"{path}.law.n", f"must be >= 2, got {n!r}")
    return ConsumerParams(p_a=p_a, alpha=alpha, beta=beta, gamma=gamma,
                          law=ConsumptionLaw(a=a, n=n), m=m)


def _parse_schedule(doc, path: str):
    if not isinstance(doc, dict):
        _fail(path, f"must be a mapping, got {type(doc).__name__}")
    kind = _get(doc, "kind", f"{path}.kind")
    if kind == "constant":
        doc = _mapping(doc, path, {"kind", "g0"})
        g0 = _number(_get(doc, "g0", f"{path}.g0"), f"{path}.g0")
        if g0 < 0:
            _fail(f"{path}.g0", f"must be >= 0, got {g0!r}")
        return ConstantSchedule(g0=g0)
    if kind == "linear":
        doc = _mapping(doc, path, {"kind", "g1", "deltaG"})
        g1 = _number(_get(doc, "g1", f"{path}.g1"), f"{path}.g1")
        if g1 <= 0:
            _fail(f"{path}.g1", f"must be > 0, got {g1!r}")
        delta_g = _number(_get(doc, "deltaG", f"{path}.deltaG"), f"{path}.deltaG")
        return LinearSchedule(g1=g1, delta_g=delta_g)
    if kind == "explicit":
        doc = _mapping(doc, path, {"kind", "values"})
        values = _get(doc, "values", f"{path}.values")
        if not isinstance(values, list) or not values:
            _fail(f"{path}.values", "must be a nonempty list of numbers")
        parsed = tuple(_number(v, f"{path}.values[{i}]")
                       for i, v in enumerate(values))
        return ExplicitSchedule(values=parsed)
    _fail(f"{path}.kind",
          f"must be one of 'constant', 'linear', 'explicit', got {kind!r}")


def _parse_debt(doc, path: str) -> DebtParams:
    doc = _mapping(doc, path, {"r", "D0", "schedule"})
    r = _number(_get(doc, "r", f"{path}.r"), f"{path}.r")
    if r < 0:
        _fail(f"{path}.r", f"must be >= 0, got {r!r}")
    d0 = _number(_get(doc, "D0", f"{path}.D0"), f"{path}.D0")
    if d0 < 0:
        _fail(f"{path}.D0", f"must be >= 0, got {d0!r}")
    schedule = _parse_schedule(_get(doc, "schedule", f"{path}.schedule"),
                               f"{path}.schedule")
    return DebtParams(r=r, d0=d0, schedule=schedule)


def scenario_from_mapping(doc) -> Scenario:
    """Validate a parsed scenario mapping and build the Scenario.

    When run.b0 is absent it defaults to the consumer's fixed-point budget.
    """
    doc = _mapping(doc, "scenario", {"consumer", "debt", "run"})
    consumer = _parse_consumer(_get(doc, "consumer", "consumer"), "consumer")
    debt = _parse_debt(_get(doc, "debt", "debt"), "debt")
    run = _mapping(_get(doc, "run", "run"), "run", {"b0", "horizon"})
    if run.get("b0") is not None:  # explicit null reads as absent
        b0 = _number(run["b0"], "run.b0")
        if b0 <= 0:
            _fail("run.b0", f"must be > 0, got {b0!r}")
    else:
        b0 = fixed_point(consumer).b_lambda
    horizon = _integer(_get(run, "horizon", "run.horizon"), "run.horizon")
    if horizon < 1:
        _fail("run.horizon", f"must be >= 1, got {horizon!r}")
    try:
        return Scenario(consumer=consumer, debt=debt, b0=b0, horizon=horizon)
    except ValueError as exc:  # backstop; field checks above should catch first
        raise ValidationError(str(exc)) from exc


def load_scenario(document: str) -> Scenario:
    """Parse and validate a YAML scenario document."""
    try:
        doc = yaml.safe_load(document)
    except yaml.YAMLError as exc:
        raise ParseError(f"malformed scenario document: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError(
            "scenario document must be a mapping with sections "
            "'consumer', 'debt', 'run'"
        )
    return scenario_from_mapping(doc)


def scenario_to_dict(scenario: Scenario) -> dict:
    """Scenario as a plain mapping in the file schema (inverse of loading)."""
    consumer = scenario.consumer
    consumer_doc = {
        "p_a": consumer.p_a,
        "alpha": consumer.alpha,
        "beta": consumer.beta,
        "gamma": consumer.gamma,
        "law": {"a": consumer.law.a, "n": consumer.law.n},
    }
    if consumer.m is not None:
        consumer_doc["m"] = consumer.m
    schedule = scenario.debt.schedule
    if isinstance(schedule, ConstantSchedule):
        schedule_doc = {"kind": "constant", "g0": schedule.g0}
    elif isinstance(schedule, LinearSchedule):
        schedule_doc = {"kind": "linear", "g1": schedule.g1, "deltaG": schedule.delta_g}
    else:
        schedule_doc = {"kind": "explicit", "values": list(schedule.values)}
    return {
        "consumer": consumer_doc,
        "debt": {"r": scenario.debt.r, "D0": scenario.debt.d0,
                 "schedule": schedule_doc},
        "run": {"b0": scenario.b0, "horizon": scenario.horizon},
    }


# ---------------------------------------------------------------------------
# Trajectory serialization
# ---------------------------------------------------------------------------

def _fmt(x: float) -> str:
    return format(x, ".12g")


def _cell(x: float) -> str:
    return "" if math.isnan(x) else _fmt(x)


def _trajectory_csv(traj: Trajectory) -> str:
    lines = ["k,b,c,tau,delta,D"]
    for k in range(traj.horizon + 1):
        lines.append(",".join([
            str(k),
            _fmt(traj.b[k]),
            _cell(traj.c[k]),
            _cell(traj.tau[k]),
            _cell(traj.delta[k]),
            _fmt(traj.debt[k]),
        ]))
    return "\n".join(lines) + "\n"


def _series(values: np.ndarray) -> list:
    return [None if math.isnan(v) else float(v) for v in values]


def _trajectory_json(traj: Trajectory) -> str:
    doc = {
        "scenario": scenario_to_dict(traj.scenario),
        "k": list(range(traj.horizon + 1)),
        "b": _series(traj.b),
        "c": _series(traj.c),
        "tau": _series(traj.tau),
        "delta": _series(traj.delta),
        "D": _series(traj.debt),
    }
    return json.dumps(doc, indent=2) + "\n"


def write_trajectory(traj: Trajectory, format: str = "csv") -> str:
    """Serialize a trajectory.

    CSV has the fixed header ``k,b,c,tau,delta,D``, one row per year 0..K,
    12 significant digits, and empty cells for the undefined year-0 flows.
    JSON carries the same series (full precision, NaN as null) plus an echo
    of the scenario, and round-trips exactly through `read_trajectory`.
    """
    if format == "csv":
        return _trajectory_csv(traj)
    if format == "json":
        return _trajectory_json(traj)
    raise ValueError(f"unknown trajectory format {format!r}; use 'csv' or 'json'")


def read_trajectory(document: str) -> Trajectory:
    """Parse a JSON trajectory written by `write_trajectory`."""
    try:
        doc = json.loads(document)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed trajectory document: {exc}") from exc
    doc = _mapping(doc, "trajectory", {"scenario", "k", "b", "c", "tau", "delta", "D"})
    scenario = scenario_from_mapping(_get(doc, "scenario", "trajectory.scenario"))

    def array(key: str) -> np.ndarray:
        raw = _get(doc, key, f"trajectory.{key}")
        if not isinstance(raw, list):
            _fail(f"trajectory.{key}", "must be a list")
        return np.array([np.nan if v is None else _number(v, f"trajectory.{key}[{i}]")
                         for i, v in enumerate(raw)], dtype=float)

    try:
        return Trajectory(scenario=scenario, b=array("b"), c=array("c"),
                          tau=array("tau"), delta=array("delta"), debt=array("D"))
    except ValueError as exc:
        raise ValidationError(str(exc)) from exc

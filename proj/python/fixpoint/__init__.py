"""Alternating projections, sequence diagnostics and regularity estimates."""

import json

from ._fixpoint import (
    DimensionError,
    DomainError,
    InvariantError,
    SchemaError,
    Set,
    predicted_rate_msr,
    q_rate,
    r_rate,
    run_ap,
    sawtooth,
    scenario_names,
    sr,
    sr_prime,
    suite_criteria,
)
from . import _fixpoint

__all__ = [
    "DimensionError",
    "DomainError",
    "InvariantError",
    "SchemaError",
    "Set",
    "estimate",
    "predicted_rate_msr",
    "q_rate",
    "r_rate",
    "run_ap",
    "run_scenario",
    "sawtooth",
    "scenario",
    "scenario_names",
    "sr",
    "sr_prime",
    "suite_criteria",
    "verify",
]


def scenario(name):
    """Built-in scenario (or scenario file) as a dict."""
    return json.loads(_fixpoint.scenario_json(name))


def run_scenario(scenario="two_lines_pi3", **config):
    """Run a scenario like `fixpoint run`; returns the parsed report plus raw outputs.

    Keyword arguments are run-config fields (op, max_iter, residual_tol, start,
    diagnostics, estimators, delta, samples, seed).
    """
    cfg = dict(config, scenario=scenario)
    if "start" in cfg and cfg["start"] is not None:
        cfg["start"] = [float(v) for v in cfg["start"]]
    out = _fixpoint._run_scenario(json.dumps(cfg))
    out["report"] = json.loads(out["report_json"])
    return out


def estimate(constant, scenario, delta=None, samples=20000, seed=0):
    return json.loads(_fixpoint._estimate(constant, scenario, delta, samples, seed))


def verify(suite="all", seed=0):
    """Run an acceptance suite; returns a list of dicts, one per criterion."""
    results = []
    for cid in suite_criteria(suite):
        ok, title, summary, report = _fixpoint._criterion(cid, seed)
        results.append({"id": cid, "pass": ok, "title": title, "summary": summary, "report": json.loads(report)})
    return results

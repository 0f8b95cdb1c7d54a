"""Validation campaigns: generate, check, solve and (for small n) run the oracle.

Config (JSON)::

    {
      "schema": 1,
      "oracle_cutoff": 9,
      "solver": {"max_swap_size": 4, "max_iterations": null, "use_targeted_moves": true},
      "families": [
        {"family": "RandomRejection", "params": {"n": [5, 6, 7], "p_num": 1, "p_den": 2}, "count": 10},
        {"family": "Sharpness", "params": {"m": [1, 2]}, "seeds": [0]}
      ]
    }

List-valued params are expanded as a grid (keys in sorted order).  Each grid
point is instantiated for ``seeds`` or for ``seed_base .. seed_base+count-1``.
The solver seed of an instance is its family seed.
"""
from __future__ import annotations

import itertools
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Any, Mapping

from .families import FamilyError, FamilySpec, generate
from .graph import is_connected
from .oracle import OracleError, min_score
from .search import SolverConfig, SolveStatus, solve
from .structure import check_hypotheses

SCHEMA = 1
DEFAULT_ORACLE_CUTOFF = 9


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class CampaignConfig:
    specs: tuple[FamilySpec, ...] = ()
    oracle_cutoff: int = DEFAULT_ORACLE_CUTOFF
    solver: SolverConfig = field(default_factory=SolverConfig)

    def to_dict(self) -> dict:
        return {
            "oracle_cutoff": self.oracle_cutoff,
            "solver": {
                "max_swap_size": self.solver.max_swap_size,
                "max_iterations": self.solver.max_iterations,
                "use_targeted_moves": self.solver.use_targeted_moves,
            },
        }


def _expand(entry: Mapping[str, Any]) -> list[FamilySpec]:
    if "family" not in entry:
        raise ConfigError(f"family entry without a family name: {entry!r}")
    params = entry.get("params", {})
    if not isinstance(params, Mapping):
        raise ConfigError("params must be an object")
    keys = sorted(params)
    axes = [params[k] if isinstance(params[k], list) else [params[k]] for k in keys]
    if "seeds" in entry:
        seeds = entry["seeds"]
        if not isinstance(seeds, list):
            raise ConfigError("seeds must be a list")
    else:
        count = entry.get("count", 1)
        base = entry.get("seed_base", 0)
        if not isinstance(count, int) or count < 0 or not isinstance(base, int):
            raise ConfigError("count and seed_base must be non-negative integers")
        seeds = list(range(base, base + count))
    out = []
    for combo in itertools.product(*axes):
        for seed in seeds:
            try:
                out.append(FamilySpec.from_dict({"family": entry["family"], "params": dict(zip(keys, combo)),
                                                 "seed": seed}))
            except FamilyError as exc:
                raise ConfigError(str(exc)) from exc
    return out


def parse_config(data: Mapping[str, Any]) -> CampaignConfig:
    if not isinstance(data, Mapping):
        raise ConfigError("config must be a JSON object")
    if data.get("schema", SCHEMA) != SCHEMA:
        raise ConfigError(f"unsupported config schema {data.get('schema')!r}")
    cutoff = data.get("oracle_cutoff", DEFAULT_ORACLE_CUTOFF)
    if not isinstance(cutoff, int) or cutoff < 0:
        raise ConfigError("oracle_cutoff must be a non-negative integer")
    solver_raw = data.get("solver", {})
    allowed = {"max_swap_size", "max_iterations", "use_targeted_moves"}
    if not isinstance(solver_raw, Mapping) or set(solver_raw) - allowed:
        raise ConfigError(f"solver settings must be an object with keys from {sorted(allowed)}")
    try:
        solver = SolverConfig(**solver_raw)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad solver settings: {exc}") from exc
    families = data.get("families", [])
    if not isinstance(families, list):
        raise ConfigError("families must be a list")
    specs = tuple(spec for entry in families for spec in _expand(entry))
    return CampaignConfig(specs, cutoff, solver)


def load_config(path) -> CampaignConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc})") from exc
    return parse_config(data)


def _instance_id(i: int) -> str:
    return f"i{i:05d}"


def run_instance(index: int, spec: FamilySpec, cfg: CampaignConfig, timing: bool = True) -> dict:
    """Full pipeline for one instance; failures are captured in the record."""
    rec: dict[str, Any] = {"id": _instance_id(index), "spec": spec.to_dict()}
    times: dict[str, float] = {}
    clock = time.perf_counter
    try:
        t0 = clock()
        G = generate(spec)
        times["generate"] = clock() - t0
        rec["n"], rec["m_edges"] = G.n, G.m

        t0 = clock()
        hyp = check_hypotheses(G)
        times["check"] = clock() - t0
        rec["hypotheses"] = hyp.to_dict()

        result = None
        if is_connected(G):
            t0 = clock()
            result = solve(G, replace(cfg.solver, seed=spec.seed))
            times["solve"] = clock() - t0
            leaves, branches = _classes(result.tree)
            rec.update(status=result.status.value, score=result.score, iterations=result.iterations,
                       leaves=leaves, branches=branches)
        else:
            rec.update(status=None, score=None, iterations=0, leaves=None, branches=None)

        oracle = None
        if result is not None and G.n <= cfg.oracle_cutoff:
            t0 = clock()
            oracle = min_score(G)
            times["oracle"] = clock() - t0
        rec["oracle"] = None if oracle is None else {
            "min_score": oracle.min_score,
            "feasible_le5": oracle.feasible_le5,
            "exact": oracle.exact,
            "trees_enumerated": oracle.trees_enumerated,
        }

        solved = result is not None and result.status is SolveStatus.SOLVED
        if oracle is not None:
            rec["oracle_agrees"] = solved == oracle.feasible_le5
        problems = []
        if hyp.all_ok:
            rec["class"] = {
                SolveStatus.SOLVED: "solved",
                SolveStatus.ITERATION_CAP_HIT: "cap_hit",
            }.get(result.status, "stuck")
            if not solved:
                problems.append(f"solver ended {result.status.value} at score {result.score}")
            elif rec["branches"] > 1:
                problems.append(f"solved witness has {rec['branches']} branch vertices")
            if oracle is not None and not oracle.feasible_le5:
                problems.append(f"oracle minimum {oracle.min_score} exceeds 5")
            if oracle is not None and not rec["oracle_agrees"]:
                problems.append("solver and oracle disagree on feasibility")
        else:
            rec["class"] = "hypothesis_failed"
        rec["critical"] = bool(problems)
        rec["problems"] = problems
        if problems:
            rec["edges"] = [list(e) for e in G.edges()]
    except (FamilyError, OracleError, ValueError) as exc:
        rec.update(status="Error", critical=False, problems=[f"{type(exc).__name__}: {exc}"])
        rec["class"] = "error"
    except AssertionError as exc:
        # an internal invariant broke; keep the instance for reproduction
        rec.update(status="Error", critical=True, problems=[f"invariant violated: {exc}"])
        rec["class"] = "error"
    if timing:
        rec["timings"] = {k: round(v, 6) for k, v in times.items()}
    return rec


def _classes(T) -> tuple[int, int]:
    if len(T.vertices) < 2:
        return 0, 0
    leaves = sum(1 for v in T.vertices if T.degree(v) == 1)
    branches = sum(1 for v in T.vertices if T.degree(v) >= 3)
    return leaves, branches


def _run_packed(args):
    return run_instance(*args)


def aggregate(records: list[dict]) -> dict:
    by_class = {c: 0 for c in ("solved", "stuck", "cap_hit", "hypothesis_failed", "error")}
    for rec in records:
        by_class[rec["class"]] += 1
    oracle_runs = [r for r in records if r.get("oracle")]
    extremal = [r["id"] for r in records
                if r["class"] == "hypothesis_failed" and r.get("oracle") and r["oracle"]["min_score"] >= 6]
    return {
        "instances": len(records),
        "solved": by_class["solved"],
        "stuck": by_class["stuck"],
        "cap_hit": by_class["cap_hit"],
        "hypothesis_failed": by_class["hypothesis_failed"],
        "errors": by_class["error"],
        "oracle_runs": len(oracle_runs),
        "oracle_agreements": sum(1 for r in oracle_runs if r.get("oracle_agrees")),
        "critical": sum(1 for r in records if r.get("critical")),
        "extremal_candidates": extremal,
    }


def run_campaign(cfg: CampaignConfig, workers: int = 1, timing: bool = True) -> dict:
    """Run every instance; records come back in instance-id order whatever the worker count."""
    jobs = [(i, spec, cfg, timing) for i, spec in enumerate(cfg.specs)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_run_packed, jobs, chunksize=8))
    else:
        records = [run_instance(*job) for job in jobs]
    return {"schema": SCHEMA, "config": cfg.to_dict(), "records": records, "aggregate": aggregate(records)}


def report_ok(report: Mapping[str, Any]) -> bool:
    agg = report["aggregate"]
    return agg["critical"] == 0 and agg["cap_hit"] == 0


def dumps_report(report: Mapping[str, Any]) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"

"""Experiment orchestration: run searches, collect rows, export results.

Outputs per run directory:
  results.csv    one row per instance (the published schema)
  results.jsonl  one SearchResult summary per instance
  curves.json    success-rate curve over the configured budget grid
  resolved.cfg   the exact configuration the run used

Rows are ordered by instance index and every random stream derives from
(master seed, instance index), so output bytes are identical for any
worker count and across reruns.  Wall-clock timing is off by default
because it is the one inherently non-reproducible column.
"""

from __future__ import annotations

import csv
import io
import json
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from subsearch.envs.sokoban import SokobanEnv
from subsearch.envs.sokoban_deadend import DeadEndOracle, dead_end_fraction
from subsearch.errors import ResourceLimit
from subsearch.harness.components import SharedComponents, run_instance
from subsearch.harness.config import ExperimentConfig
from subsearch.harness.curves import success_curve, write_curves
from subsearch.harness.instances import make_instance
from subsearch.search.result import SearchResult

CSV_HEADER = ["instance_id", "seed", "algorithm", "env", "status", "nodes_total",
              "nodes_high_level", "solution_len", "subgoals_on_path", "wall_ms",
              "dead_end_fraction"]

_SHARED: SharedComponents | None = None


def _init_worker(cfg: ExperimentConfig) -> None:
    global _SHARED
    _SHARED = SharedComponents(cfg)


def _run_one(index: int) -> tuple[int, dict, str]:
    assert _SHARED is not None
    return _execute(_SHARED, index)


def _execute(shared: SharedComponents, index: int) -> tuple[int, dict, str]:
    cfg = shared.cfg
    instance = make_instance(cfg, index)
    start = time.perf_counter()
    result = run_instance(shared, instance)
    wall_ms = int((time.perf_counter() - start) * 1000)
    summary = json.loads(result.to_json())
    summary["instance_id"] = index
    summary["algorithm"] = cfg.algorithm_label()
    row = {
        "instance_id": index,
        "seed": instance.seed_label,
        "algorithm": cfg.algorithm_label(),
        "env": cfg.env,
        "status": result.status,
        "nodes_total": result.nodes_total,
        "nodes_high_level": result.nodes_high_level,
        "solution_len": (len(result.solution_actions)
                         if result.solution_actions is not None else ""),
        "subgoals_on_path": (result.tree.subgoals_on_path
                             if result.tree.subgoals_on_path is not None else ""),
        "wall_ms": wall_ms,
        "dead_end_fraction": _dead_end_cell(shared, result),
    }
    return index, row, json.dumps(summary, sort_keys=True)


def _dead_end_cell(shared: SharedComponents, result: SearchResult) -> str:
    cfg = shared.cfg
    if cfg.env != "sokoban" or not cfg.dead_end_stats:
        return ""
    oracle = DeadEndOracle(SokobanEnv(cfg.board_height, cfg.board_width))
    try:
        return f"{dead_end_fraction(result.visited, oracle):.6f}"
    except ResourceLimit:
        return ""


def run_experiment(cfg: ExperimentConfig, out_dir, record_timing: bool = False):
    """Run every instance, write results + curves, return (rows, curves)."""
    cfg.validate()
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    indices = list(range(cfg.n_instances))
    outcomes: dict[int, tuple[dict, str]] = {}
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers, initializer=_init_worker,
                                 initargs=(cfg,)) as pool:
            for index, row, summary in pool.map(_run_one, indices, chunksize=1):
                outcomes[index] = (row, summary)
    else:
        shared = SharedComponents(cfg)
        for index in indices:
            index, row, summary = _execute(shared, index)
            outcomes[index] = (row, summary)

    rows = []
    with open(out / "results.jsonl", "w") as fh:
        for index in indices:
            row, summary = outcomes[index]
            if not record_timing:
                row = dict(row, wall_ms=0)
            rows.append(row)
            fh.write(summary + "\n")

    (out / "results.csv").write_bytes(render_csv(rows).encode())
    curve = success_curve(rows, cfg.budget_grid, cfg.algorithm_label())
    write_curves([curve.to_dict()], out / "curves.json")
    (out / "resolved.cfg").write_text(cfg.resolved_text())
    return rows, curve


def render_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_HEADER, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()


def read_results_csv(path) -> list[dict]:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        rows = []
        for raw in reader:
            row = dict(raw)
            for key in ("instance_id", "nodes_total", "nodes_high_level", "wall_ms"):
                row[key] = int(row[key])
            for key in ("solution_len", "subgoals_on_path"):
                row[key] = int(row[key]) if row[key] else None
            row["dead_end_fraction"] = (float(row["dead_end_fraction"])
                                        if row["dead_end_fraction"] else None)
            rows.append(row)
        return rows

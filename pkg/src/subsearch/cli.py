"""Command-line interface.

Subcommands: gen-data (experts -> JSONL), fit (dataset -> guidance bundle),
solve (one instance, prints the SearchResult JSON), eval (config -> CSV +
curves), stats (tree statistics across runs), budget-compare (total vs
high-level-only budget curves).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from collections import defaultdict
from pathlib import Path

from subsearch.envs.base import Environment
from subsearch.errors import ConfigError
from subsearch.experts.datasets import ExpertSpec, assemble_dataset
from subsearch.guidance.bundle import fit_bundle, save_bundle
from subsearch.harness.components import SharedComponents, run_instance
from subsearch.harness.config import load_config
from subsearch.harness.curves import compare_budget_definitions, write_curves
from subsearch.harness.instances import make_instance
from subsearch.harness.runner import read_results_csv, run_experiment
from subsearch.harness.stats import format_table, tree_statistics
from subsearch.search.result import result_from_summary
from subsearch.trajectory import read_jsonl


def _cmd_gen_data(args) -> int:
    experts = []
    for chunk in args.experts.split(","):
        name, _, count = chunk.partition(":")
        params = {}
        if args.scramble_depth is not None:
            params["scramble_depth"] = args.scramble_depth
        if args.side is not None:
            params["side"] = args.side
        if args.shuffle_len is not None:
            params["shuffle_len"] = args.shuffle_len
        if args.height is not None:
            params["height"] = args.height
        if args.width is not None:
            params["width"] = args.width
        if args.n_boxes is not None:
            params["n_boxes"] = args.n_boxes
        if args.import_path is not None:
            params["path"] = args.import_path
        experts.append((ExpertSpec(name.strip(), params), int(count or 0)))
    manifest = assemble_dataset(experts, seed=args.seed, out_path=args.out)
    print(manifest.to_json())
    return 0


def _cmd_fit(args) -> int:
    cfg_env = _env_by_name(args.env, args.side, args.height, args.width)
    trajectories = read_jsonl(args.dataset)
    manifest_path = Path(args.dataset).with_suffix(".manifest.json")
    if manifest_path.exists():
        digest = hashlib.sha256(manifest_path.read_bytes()).hexdigest()
    else:
        digest = hashlib.sha256(Path(args.dataset).read_bytes()).hexdigest()
    bundle = fit_bundle(cfg_env, trajectories, digest, temperature=args.temperature)
    save_bundle(bundle, args.out)
    print(json.dumps({"out": str(args.out), "env": bundle["env"],
                      "manifest_digest": bundle["manifest_digest"]}))
    return 0


def _env_by_name(name: str, side, height, width) -> Environment:
    from subsearch.envs.npuzzle import NPuzzleEnv
    from subsearch.envs.rubik import RubikEnv
    from subsearch.envs.sokoban import SokobanEnv

    if name == "rubik":
        return RubikEnv()
    if name == "npuzzle":
        return NPuzzleEnv(side or 5)
    if name == "sokoban":
        return SokobanEnv(height or 12, width or 12)
    raise ConfigError(f"unknown env {name!r}")


def _cmd_solve(args) -> int:
    cfg = load_config(args.config)
    shared = SharedComponents(cfg)
    instance = make_instance(cfg, args.index)
    result = run_instance(shared, instance)
    print(result.to_json(include_states=args.include_states))
    return 0 if result.solved else 1


def _cmd_eval(args) -> int:
    cfg = load_config(args.config)
    rows, curve = run_experiment(cfg, args.out, record_timing=args.timings)
    solved = sum(1 for r in rows if r["status"] == "solved")
    print(json.dumps({"out": str(args.out), "instances": len(rows),
                      "solved": solved, "curve": curve.to_dict()}))
    return 0


def _cmd_stats(args) -> int:
    results_by_alg = defaultdict(list)
    for path in args.results:
        for line in Path(path).read_text().splitlines():
            if not line.strip():
                continue
            obj = json.loads(line)
            results_by_alg[obj["algorithm"]].append(result_from_summary(obj))
    table = tree_statistics(dict(results_by_alg))
    print(format_table(table))
    return 0


def _cmd_budget_compare(args) -> int:
    rows = read_results_csv(args.results_csv)
    budgets = [int(b) for b in args.budgets.split(",")]
    by_alg = defaultdict(list)
    for row in rows:
        by_alg[row["algorithm"]].append(row)
    curves = [compare_budget_definitions(alg_rows, budgets, alg)
              for alg, alg_rows in sorted(by_alg.items())]
    write_curves(curves, args.out)
    print(json.dumps({"out": str(args.out), "algorithms": sorted(by_alg)}))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="subsearch")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-data", help="generate expert trajectory datasets")
    p.add_argument("--experts", required=True,
                   help="comma list of name:count, e.g. rubik-random:100,rubik-beginner:100")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--scramble-depth", type=int, default=None)
    p.add_argument("--side", type=int, default=None)
    p.add_argument("--shuffle-len", type=int, default=None)
    p.add_argument("--height", type=int, default=None)
    p.add_argument("--width", type=int, default=None)
    p.add_argument("--n-boxes", type=int, default=None)
    p.add_argument("--import-path", default=None)
    p.set_defaults(func=_cmd_gen_data)

    p = sub.add_parser("fit", help="fit a guidance bundle from a dataset")
    p.add_argument("--dataset", required=True)
    p.add_argument("--env", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--temperature", type=float, default=1.0)
    p.add_argument("--side", type=int, default=None)
    p.add_argument("--height", type=int, default=None)
    p.add_argument("--width", type=int, default=None)
    p.set_defaults(func=_cmd_fit)

    p = sub.add_parser("solve", help="run one instance and print its result")
    p.add_argument("--config", required=True)
    p.add_argument("--index", type=int, default=0)
    p.add_argument("--include-states", action="store_true")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("eval", help="run a full experiment config")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--timings", action="store_true",
                   help="record wall-clock times (makes the CSV non-reproducible)")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("stats", help="tree statistics across result files")
    p.add_argument("results", nargs="+", help="results.jsonl files")
    p.set_defaults(func=_cmd_stats)

    p = sub.add_parser("budget-compare",
                       help="total vs high-level-only budget curves")
    p.add_argument("--results-csv", required=True)
    p.add_argument("--budgets", required=True, help="comma list, ascending")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_budget_compare)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

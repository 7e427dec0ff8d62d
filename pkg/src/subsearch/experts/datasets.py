"""Offline dataset assembly from expert solvers.

A dataset is a JSONL trajectory file plus a manifest JSON recording
per-expert counts, seeds and file paths.  Generation is deterministic in
(spec, seed): every trajectory draws its randomness from a stream derived
from (master seed, expert name, index), so output bytes do not depend on
scheduling.
"""

from __future__ import annotations

import hashlib
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from subsearch.envs.npuzzle import NPuzzleEnv, shuffle
from subsearch.envs.rubik import scramble
from subsearch.envs.sokoban import SokobanEnv, generate_board
from subsearch.errors import ConfigError, Unsolved
from subsearch.experts.npuzzle_solver import npuzzle_trajectory
from subsearch.experts.rubik_beginner import beginner_trajectory
from subsearch.experts.rubik_random import random_reversal_trajectory
from subsearch.experts.sokoban_astar import sokoban_trajectory
from subsearch.trajectory import Trajectory, read_jsonl, write_jsonl

log = logging.getLogger(__name__)

EXPERT_NAMES = ("rubik-random", "rubik-beginner", "npuzzle-ascending",
                "sokoban-astar", "imported")


@dataclass
class ExpertSpec:
    name: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.name not in EXPERT_NAMES:
            raise ConfigError(f"unknown expert {self.name!r}; choose from {EXPERT_NAMES}")


@dataclass
class DatasetManifest:
    env: str
    seed: int
    counts: dict[str, int]
    path: str
    total: int

    def to_json(self) -> str:
        return json.dumps(
            {"env": self.env, "seed": self.seed, "counts": self.counts,
             "path": self.path, "total": self.total},
            sort_keys=True, separators=(",", ":"))

    @classmethod
    def load(cls, path) -> "DatasetManifest":
        obj = json.loads(Path(path).read_text())
        return cls(env=obj["env"], seed=obj["seed"], counts=obj["counts"],
                   path=obj["path"], total=obj["total"])

    def digest(self) -> str:
        return hashlib.sha256(self.to_json().encode()).hexdigest()


def _derive_seed(master_seed, expert_name: str, index: int):
    return np.random.SeedSequence(
        [int(master_seed), int.from_bytes(expert_name.encode()[:8].ljust(8, b"\0"), "big"),
         index])


def _generate_one(spec: ExpertSpec, seed_seq, index: int) -> Trajectory | None:
    params = spec.params
    if spec.name == "rubik-random":
        return random_reversal_trajectory(seed_seq, params.get("scramble_depth", 20))
    if spec.name == "rubik-beginner":
        state, _ = scramble(seed_seq, params.get("scramble_depth", 20))
        return beginner_trajectory(state)
    if spec.name == "npuzzle-ascending":
        side = params.get("side", 5)
        env = NPuzzleEnv(side)
        state = shuffle(env, seed_seq, params.get("shuffle_len", 200))
        return npuzzle_trajectory(state, side)
    if spec.name == "sokoban-astar":
        env = SokobanEnv(params.get("height", 12), params.get("width", 12))
        board = generate_board(seed_seq, height=env.height, width=env.width,
                               n_boxes=params.get("n_boxes", 4),
                               pulls=params.get("pulls", 30))
        try:
            return sokoban_trajectory(env, board, params.get("node_cap", 60_000))
        except Unsolved:
            log.warning("sokoban expert hit node cap at index %d; instance dropped", index)
            return None
    raise ConfigError(f"expert {spec.name!r} cannot generate trajectories")


def assemble_dataset(experts: list[tuple[ExpertSpec, int]], seed: int,
                     out_path) -> DatasetManifest:
    """Generate trajectories per expert and write one JSONL + manifest."""
    out_path = Path(out_path)
    trajectories: list[Trajectory] = []
    counts: dict[str, int] = {}
    env_ids = set()
    for spec, count in experts:
        if count < 0:
            raise ConfigError("trajectory counts must be >= 0")
        emitted = 0
        index = 0
        while emitted < count:
            if spec.name == "imported":
                imported = read_jsonl(spec.params["path"])
                take = imported[:count]
                if len(take) < count:
                    raise ConfigError(f"imported file has only {len(take)} trajectories")
                trajectories.extend(take)
                env_ids.update(t.env_id for t in take)
                emitted = count
                break
            traj = _generate_one(spec, _derive_seed(seed, spec.name, index), index)
            index += 1
            if traj is None:
                continue
            trajectories.append(traj)
            env_ids.add(traj.env_id)
            emitted += 1
        counts[spec.name] = counts.get(spec.name, 0) + emitted
    if len(env_ids) > 1:
        raise ConfigError(f"dataset mixes environments: {sorted(env_ids)}")
    total = write_jsonl(out_path, trajectories)
    manifest = DatasetManifest(env=env_ids.pop() if env_ids else "empty",
                               seed=int(seed), counts=counts,
                               path=out_path.name, total=total)
    manifest_path = out_path.with_suffix(".manifest.json")
    manifest_path.write_text(manifest.to_json() + "\n")
    return manifest

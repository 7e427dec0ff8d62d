"""Seeded instance generation.

Each instance draws from a stream derived from (master seed, index), so
results are independent of worker count and schedule.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from subsearch.envs.inflate import inflate
from subsearch.envs.npuzzle import NPuzzleEnv, shuffle
from subsearch.envs.rubik import RubikEnv, scramble
from subsearch.envs.sokoban import SokobanEnv, generate_board
from subsearch.harness.config import ExperimentConfig


@dataclass
class Instance:
    index: int
    seed_label: str
    root: str
    scramble_moves: list[int] = field(default_factory=list)  # rubik only


def instance_seed(master_seed: int, index: int, stream: str = "instance"):
    tag = int.from_bytes(stream.encode()[:8].ljust(8, b"\0"), "big")
    return np.random.SeedSequence([int(master_seed), tag, int(index)])


def build_env(cfg: ExperimentConfig):
    if cfg.env == "rubik":
        return inflate(RubikEnv(), cfg.inflation)
    if cfg.env == "npuzzle":
        return NPuzzleEnv(cfg.side)
    return SokobanEnv(cfg.board_height, cfg.board_width)


def make_instance(cfg: ExperimentConfig, index: int) -> Instance:
    seed = instance_seed(cfg.master_seed, index)
    label = f"{cfg.master_seed}.{index}"
    if cfg.env == "rubik":
        root, moves = scramble(seed, cfg.scramble_depth)
        return Instance(index, label, root, moves)
    if cfg.env == "npuzzle":
        env = NPuzzleEnv(cfg.side)
        return Instance(index, label, shuffle(env, seed, cfg.shuffle_len))
    board = generate_board(seed, height=cfg.board_height, width=cfg.board_width,
                           n_boxes=cfg.n_boxes, pulls=cfg.pulls)
    return Instance(index, label, board)

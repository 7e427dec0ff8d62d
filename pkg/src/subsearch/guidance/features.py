"""Per-environment feature maps for fitted guidance components.

Features are small integer tuples, coarse enough that a desk-scale dataset
populates most buckets a search will query.
"""

from __future__ import annotations

from subsearch.envs.base import Environment
from subsearch.envs.inflate import InflatedEnv
from subsearch.envs.npuzzle import NPuzzleEnv
from subsearch.envs.rubik import (
    CORNER_SLOTS, EDGE_SLOTS, SOLVED, RubikEnv, pattern_distance_sums,
)
from subsearch.envs.sokoban import SokobanEnv
from subsearch.experts.sokoban_astar import matching_heuristic

_CROSS_SLOTS = [slot for slot in EDGE_SLOTS
                if any(SOLVED[i] == "w" for i in slot)]
_D_CORNER_SLOTS = [slot for slot in CORNER_SLOTS
                   if any(SOLVED[i] == "w" for i in slot)]
_MIDDLE_SLOTS = [slot for slot in EDGE_SLOTS
                 if not any(SOLVED[i] in "yw" for i in slot)]


def rubik_layers(state: str) -> int:
    """Layer-completion count: cross, first layer, first two layers."""
    cross = int(all(state[i] == SOLVED[i] for slot in _CROSS_SLOTS for i in slot))
    layer1 = int(cross and all(state[i] == SOLVED[i]
                               for slot in _D_CORNER_SLOTS for i in slot))
    layer2 = int(layer1 and all(state[i] == SOLVED[i]
                                for slot in _MIDDLE_SLOTS for i in slot))
    return cross + layer1 + layer2


def rubik_features(state: str) -> tuple[int, ...]:
    edge_dist, corner_dist = pattern_distance_sums(state)
    return (edge_dist, corner_dist, rubik_layers(state))


def rubik_face_features(state: str) -> tuple[int, ...]:
    """Per-face solved-sticker counts: a deliberately coarse alternative."""
    return tuple(sum(1 for i in range(f * 9, f * 9 + 9) if state[i] == SOLVED[i])
                 for f in range(6))


def make_npuzzle_features(env: NPuzzleEnv):
    def features(state: str) -> tuple[int, ...]:
        return (env.manhattan(state), env.misplaced(state))
    return features


def make_sokoban_features(env: SokobanEnv):
    def features(state: str) -> tuple[int, ...]:
        w = env.width
        player = divmod(env.player_pos(state), w)
        boxes = [divmod(p, w) for p in env.box_positions(state)]
        nearest = min(abs(player[0] - r) + abs(player[1] - c) for r, c in boxes)
        return (matching_heuristic(env, state), nearest)
    return features


def feature_map(env: Environment):
    if isinstance(env, InflatedEnv):
        env = env.base
    if isinstance(env, RubikEnv):
        return rubik_features
    if isinstance(env, NPuzzleEnv):
        return make_npuzzle_features(env)
    if isinstance(env, SokobanEnv):
        return make_sokoban_features(env)
    raise ValueError(f"no feature map for {env.env_id!r}")

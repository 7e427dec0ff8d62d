"""Value estimators.

All estimates follow one sign convention: value(s) = -(estimated number of
steps remaining), so "higher is better", solved states sit at 0, and a
max-priority queue pops the state believed closest to the goal.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from subsearch.envs.base import Environment
from subsearch.envs.inflate import InflatedEnv
from subsearch.envs.npuzzle import NPuzzleEnv
from subsearch.envs.rubik import RubikEnv, SOLVED
from subsearch.envs.sokoban import SokobanEnv
from subsearch.errors import EmptyDataset
from subsearch.experts.sokoban_astar import matching_heuristic
from subsearch.guidance.features import feature_map

log = logging.getLogger(__name__)


class ValueEstimator:
    def value(self, state: str) -> float:
        raise NotImplementedError

    def get_params(self) -> dict:
        return {}


class ConstantValue(ValueEstimator):
    def __init__(self, constant: float):
        self.constant = float(constant)

    def value(self, state: str) -> float:
        return self.constant

    def get_params(self):
        return {"constant": self.constant}


class HeuristicValue(ValueEstimator):
    """Cheap hand-rolled distance estimate; also the out-of-table fallback."""

    def __init__(self, env: Environment):
        if isinstance(env, InflatedEnv):
            env = env.base
        self.env = env

    def value(self, state: str) -> float:
        env = self.env
        if isinstance(env, RubikEnv):
            misplaced = sum(1 for i, ch in enumerate(state) if ch != SOLVED[i])
            return -misplaced / 4.0
        if isinstance(env, NPuzzleEnv):
            return -float(env.manhattan(state))
        if isinstance(env, SokobanEnv):
            w = env.width
            player = divmod(env.player_pos(state), w)
            boxes = [divmod(p, w) for p in env.box_positions(state)]
            nearest = min(abs(player[0] - r) + abs(player[1] - c) for r, c in boxes)
            return -float(matching_heuristic(env, state) + max(0, nearest - 1))
        raise ValueError(f"no heuristic for {env.env_id!r}")


class OracleValue(ValueEstimator):
    """Exact negated distances from a BFS table, with a fallback estimator
    for states beyond the table (fallback use is counted in metadata)."""

    def __init__(self, table: dict[str, int], fallback: ValueEstimator):
        self.table = table
        self.fallback = fallback
        self.fallback_queries = 0

    def value(self, state: str) -> float:
        dist = self.table.get(state)
        if dist is None:
            self.fallback_queries += 1
            return self.fallback.value(state)
        return -float(dist)

    def get_params(self):
        return {"table_size": len(self.table), "fallback_queries": self.fallback_queries}


class FittedValue(ValueEstimator):
    """Bucketed regression on expert trajectories.

    The supervised target for state i of an n-step trajectory is (i - n),
    the negated number of remaining steps.  Estimates are bucket means with
    a k-nearest-buckets fallback for unseen feature tuples.
    """

    def __init__(self, env: Environment, k_nearest: int = 3, features=None):
        self.env = env
        self.features = features if features is not None else feature_map(env)
        self.k_nearest = k_nearest
        self.buckets: dict[tuple, tuple[float, int]] = {}
        self._keys: np.ndarray | None = None
        self._key_list: list[tuple] | None = None
        self._miss_cache: dict[tuple, float] = {}

    def fit(self, trajectories) -> "FittedValue":
        count = 0
        for traj in trajectories:
            n = len(traj.actions)
            for i, state in enumerate(traj.states):
                key = self.features(state)
                total, cnt = self.buckets.get(key, (0.0, 0))
                self.buckets[key] = (total + (i - n), cnt + 1)
            count += 1
        if count == 0:
            raise EmptyDataset("no trajectories to fit on")
        self._index()
        return self

    def _index(self) -> None:
        self._key_list = sorted(self.buckets)
        self._keys = np.array(self._key_list, dtype=float)
        self._miss_cache = {}

    def value(self, state: str) -> float:
        if not self.buckets:
            raise EmptyDataset("estimator is not fitted")
        key = self.features(state)
        hit = self.buckets.get(key)
        if hit is not None:
            return hit[0] / hit[1]
        cached = self._miss_cache.get(key)
        if cached is not None:
            return cached
        # k nearest buckets by Euclidean feature distance; ties break on the
        # lexicographically smallest key so estimates stay deterministic.
        dists = ((self._keys - np.array(key, dtype=float)) ** 2).sum(axis=1)
        order = np.lexsort(tuple(self._keys[:, d] for d in
                                 range(self._keys.shape[1] - 1, -1, -1)) + (dists,))
        picked = [self._key_list[i] for i in order[: self.k_nearest]]
        estimate = sum(self.buckets[k][0] / self.buckets[k][1] for k in picked) / len(picked)
        self._miss_cache[key] = estimate
        return estimate

    def get_params(self):
        return {"k_nearest": self.k_nearest, "buckets": len(self.buckets)}

    def to_dict(self) -> dict:
        return {"k_nearest": self.k_nearest,
                "buckets": [[list(k), s, c] for k, (s, c) in sorted(self.buckets.items())]}

    def load_dict(self, obj: dict) -> "FittedValue":
        self.k_nearest = obj["k_nearest"]
        self.buckets = {tuple(k): (float(s), int(c)) for k, s, c in obj["buckets"]}
        self._index()
        return self


@dataclass(frozen=True)
class NoiseSpec:
    sigma: float
    seed: int = 0


class NoisyValue(ValueEstimator):
    """Adds one Gaussian draw per query.

    Searches query the value exactly once per node insertion, which makes
    "one draw per query" equal to the intended "one draw per node added to
    the tree".  sigma=0 bypasses the generator entirely, so the wrapper is
    bit-identical to the wrapped estimator and consumes no random stream.
    """

    def __init__(self, inner: ValueEstimator, spec: NoiseSpec):
        self.inner = inner
        self.spec = spec
        self._rng = np.random.default_rng(spec.seed)

    def value(self, state: str) -> float:
        clean = self.inner.value(state)
        if self.spec.sigma == 0:
            return clean
        return clean + self.spec.sigma * float(self._rng.standard_normal())

    def get_params(self):
        return {"sigma": self.spec.sigma, "seed": self.spec.seed}

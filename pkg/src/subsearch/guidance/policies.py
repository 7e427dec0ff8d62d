"""Action policies.

A policy maps a state to a probability vector over the environment's
action ids; inapplicable actions get zero mass and the rest sums to one.
"""

from __future__ import annotations

import numpy as np

from subsearch.envs.base import Environment
from subsearch.envs.inflate import InflatedEnv
from subsearch.errors import EmptyDataset
from subsearch.guidance.values import ValueEstimator


class Policy:
    def probs(self, state: str) -> np.ndarray:
        raise NotImplementedError

    def get_params(self) -> dict:
        return {}


class HeuristicSoftmaxPolicy(Policy):
    """Softmax over successor values.

    On an inflated environment the base distribution is computed once and
    spread evenly over the copies of each action, so aliases of one move
    carry exactly equal mass.
    """

    def __init__(self, env: Environment, value: ValueEstimator,
                 temperature: float = 1.0):
        if temperature <= 0:
            raise ValueError("temperature must be > 0")
        self.env = env
        self.value = value
        self.temperature = temperature

    def probs(self, state: str) -> np.ndarray:
        env = self.env
        if isinstance(env, InflatedEnv):
            base_probs = HeuristicSoftmaxPolicy(env.base, self.value,
                                                self.temperature).probs(state)
            return np.tile(base_probs / env.factor, env.factor)
        out = np.zeros(env.action_count)
        succ = env.successors(state)
        if not succ:
            return out
        values = np.array([self.value.value(s) for _, s in succ])
        scaled = (values - values.max()) / self.temperature
        weights = np.exp(scaled)
        weights /= weights.sum()
        for (action, _), w in zip(succ, weights):
            out[action] = w
        return out

    def get_params(self):
        return {"temperature": self.temperature}


class FittedPolicy(Policy):
    """Behavioral-cloning counts keyed by exact state, with a fallback
    policy for states the dataset never visited.

    Counts are kept per base action: copies of one action in an inflated
    environment are indistinguishable to a generalizing policy, so recorded
    alias ids fold onto their base action and the predicted mass spreads
    evenly back over the aliases.
    """

    def __init__(self, env: Environment, fallback: Policy):
        self.env = env
        self.fallback = fallback
        self.counts: dict[str, dict[int, int]] = {}

    def _base_count(self) -> int:
        return (self.env.base.action_count if isinstance(self.env, InflatedEnv)
                else self.env.action_count)

    def fit(self, trajectories) -> "FittedPolicy":
        n = 0
        base_n = self._base_count()
        for traj in trajectories:
            for state, action in zip(traj.states, traj.actions):
                row = self.counts.setdefault(state, {})
                base = action % base_n
                row[base] = row.get(base, 0) + 1
            n += 1
        if n == 0:
            raise EmptyDataset("no trajectories to fit on")
        return self

    def probs(self, state: str) -> np.ndarray:
        row = self.counts.get(state)
        if not row:
            return self.fallback.probs(state)
        base_n = self._base_count()
        base = np.zeros(base_n)
        total = sum(row.values())
        for action, count in row.items():
            base[action] = count / total
        if isinstance(self.env, InflatedEnv):
            return np.tile(base / self.env.factor, self.env.factor)
        return base

    def get_params(self):
        return {"states": len(self.counts)}

    def to_dict(self) -> dict:
        return {"counts": [[s, sorted(row.items())] for s, row in sorted(self.counts.items())]}

    def load_dict(self, obj: dict) -> "FittedPolicy":
        self.counts = {s: {int(a): int(c) for a, c in row} for s, row in obj["counts"]}
        return self


class MixturePolicy(Policy):
    """Convex combination of policies (e.g. a cloned policy blended with a
    softmax prior)."""

    def __init__(self, parts: list[tuple[float, Policy]]):
        if not parts or abs(sum(w for w, _ in parts) - 1.0) > 1e-9:
            raise ValueError("mixture weights must sum to 1")
        self.parts = parts

    def probs(self, state: str) -> np.ndarray:
        total = None
        for weight, policy in self.parts:
            contribution = policy.probs(state) * weight
            total = contribution if total is None else total + contribution
        norm = total.sum()
        return total / norm if norm > 0 else total

    def get_params(self):
        return {"weights": [w for w, _ in self.parts]}

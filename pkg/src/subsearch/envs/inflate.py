"""Action-space inflation wrapper.

Wrapping an environment with factor N creates N interchangeable copies of
every action: inflated index i maps to base action ``i % base_count``.
Successors and the solved predicate are unchanged.
"""

from __future__ import annotations

from subsearch.envs.base import Environment


class InflatedEnv(Environment):
    def __init__(self, base: Environment, factor: int):
        if factor < 1:
            raise ValueError("inflation factor must be >= 1")
        self.base = base
        self.factor = factor
        self.env_id = base.env_id
        self.action_count = base.action_count * factor

    def step(self, state: str, action: int) -> str:
        self.check_action(action)
        return self.base.step(state, action % self.base.action_count)

    def is_solved(self, state: str) -> bool:
        return self.base.is_solved(state)

    def validate(self, state: str) -> None:
        self.base.validate(state)

    def applicable_actions(self, state: str) -> list[int]:
        base_ok = set(self.base.applicable_actions(state))
        n = self.base.action_count
        return [a for a in range(self.action_count) if a % n in base_ok]


def inflate(base: Environment, factor: int) -> Environment:
    return base if factor == 1 else InflatedEnv(base, factor)

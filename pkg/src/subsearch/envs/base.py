"""Environment abstraction shared by all puzzles.

States are canonical strings: two states are equal iff their encodings are
equal, which lets seen-sets and priority queues hash uniformly across
environments.  Transitions are pure functions of (state, action).
"""

from __future__ import annotations

from abc import ABC, abstractmethod

from subsearch.errors import InvalidAction, MoveBlocked


class Environment(ABC):
    """Deterministic single-agent puzzle with an enumerable action space."""

    env_id: str
    action_count: int

    @abstractmethod
    def step(self, state: str, action: int) -> str:
        """Successor of ``state`` under ``action``.

        Raises InvalidAction for out-of-range indices and MoveBlocked for
        well-formed but inapplicable actions (e.g. a push into a wall).
        """

    @abstractmethod
    def is_solved(self, state: str) -> bool:
        ...

    @abstractmethod
    def validate(self, state: str) -> None:
        """Raise InvalidState if ``state`` is not a well-formed encoding."""

    def check_action(self, action: int) -> None:
        if not 0 <= action < self.action_count:
            raise InvalidAction(f"action {action} outside [0, {self.action_count})")

    def applicable_actions(self, state: str) -> list[int]:
        out = []
        for action in range(self.action_count):
            try:
                self.step(state, action)
            except MoveBlocked:
                continue
            out.append(action)
        return out

    def successors(self, state: str) -> list[tuple[int, str]]:
        out = []
        for action in range(self.action_count):
            try:
                out.append((action, self.step(state, action)))
            except MoveBlocked:
                continue
        return out

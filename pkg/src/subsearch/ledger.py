"""Budget accounting for search runs.

Every state a search materializes is charged here, including states built
for subgoal proposals that are later discarded.  ``total_visited`` is the
search budget; ``high_level_visited`` counts only subgoal-tree nodes.
Low-level searches (BestFS, A*, MCTS) charge every node as high-level,
so for them the two counters coincide and the reported low-level count
is zero.
"""

from __future__ import annotations

HIGH_LEVEL = "high_level"
LOW_LEVEL = "low_level"


class BudgetExhausted(Exception):
    """Raised by charge() the first time total_visited would exceed the cap."""


class BudgetLedger:
    """Counts states materialized by one search run.

    High-level charges are unconditional: they represent one generator (or
    expander) call each, so an accepted subgoal is charged high-level even
    when its state was already walked through by the low-level policy.
    Low-level charges are deduplicated per run: re-encountering an
    already-charged state is free.
    """

    def __init__(self, cap: int):
        if cap < 1:
            raise ValueError("budget cap must be positive")
        self.cap = cap
        self.total_visited = 0
        self.high_level_visited = 0
        self._charged: set[str] = set()
        self.visited: list[str] = []  # distinct states, first-charge order

    @property
    def low_level_visited(self) -> int:
        return self.total_visited - self.high_level_visited

    def _bump(self, state: str) -> None:
        if self.total_visited + 1 > self.cap:
            raise BudgetExhausted
        self.total_visited += 1
        if state not in self._charged:
            self._charged.add(state)
            self.visited.append(state)

    def charge(self, state: str, kind: str) -> bool:
        """Charge one state materialization. Returns False for a skipped
        duplicate low-level charge, True otherwise."""
        if kind == HIGH_LEVEL:
            self._bump(state)
            self.high_level_visited += 1
            return True
        if kind == LOW_LEVEL:
            if state in self._charged:
                return False
            self._bump(state)
            return True
        raise ValueError(f"unknown charge kind: {kind!r}")

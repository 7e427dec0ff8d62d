"""Tile-by-tile N-Puzzle expert.

Works toward the identity goal (blank home at the top-left) by placing
tiles in goal-reading order starting from the bottom row: each lower row
is fixed left end last (its final two cells go in as a pair), then the top
two rows are finished column by column from the right, ending in the 2x2
block that contains the blank's home.

Every placement is an exhaustive breadth-first search over the positions
of (the named tiles, the blank) inside the still-unlocked region, treating
all other tiles as interchangeable.  That keeps each step tiny and makes
the solver total: any solvable input is solved, with the long, structured,
suboptimal trajectories typical of a human strategy.
"""

from __future__ import annotations

from collections import deque

from subsearch.envs.npuzzle import NPuzzleEnv, decode
from subsearch.errors import InternalSolverError
from subsearch.trajectory import Trajectory, from_states_actions

EXPERT_NAME = "npuzzle-ascending"

_DIRS = ((-1, 0), (1, 0), (0, -1), (0, 1))  # action ids 0..3: blank movement


class TileSolver:
    def __init__(self, side: int):
        self.env = NPuzzleEnv(side)
        self.side = side

    def solve(self, state: str) -> list[int]:
        n = self.side
        self.env.validate(state)
        self.tiles = list(decode(state))
        self.locked = [False] * (n * n)
        self.actions: list[int] = []

        for r in range(n - 1, 1, -1):
            for c in range(n - 1, 1, -1):
                self._place({r * n + c: r * n + c})
            self._place({r * n + 1: r * n + 1, r * n: r * n})
        for c in range(n - 1, 1, -1):
            self._place({c: c, n + c: n + c})
        self._place({1: 1, n: n, n + 1: n + 1})

        if self.tiles != list(range(n * n)):
            raise InternalSolverError("tile solver finished unsolved")
        return self.actions

    # -- internals ---------------------------------------------------------

    def _place(self, named: dict[int, int]) -> None:
        moves = self._region_solve(named)
        n = self.side
        for action in moves:
            blank = self.tiles.index(0)
            dr, dc = _DIRS[action]
            other = blank + dr * n + dc
            self.tiles[blank], self.tiles[other] = self.tiles[other], self.tiles[blank]
            self.actions.append(action)
        for home in named.values():
            self.locked[home] = True

    def _region_solve(self, named: dict[int, int]) -> list[int]:
        """BFS over (blank, named tile positions) within unlocked cells."""
        n = self.side
        tiles_order = sorted(named)
        homes = tuple(named[t] for t in tiles_order)
        blank = self.tiles.index(0)
        start = (blank, tuple(self.tiles.index(t) for t in tiles_order))
        if start[1] == homes:
            return []

        def neighbors(pos):
            r, c = divmod(pos, n)
            for action, (dr, dc) in enumerate(_DIRS):
                nr, nc = r + dr, c + dc
                if 0 <= nr < n and 0 <= nc < n and not self.locked[nr * n + nc]:
                    yield action, nr * n + nc

        parents: dict[tuple, tuple] = {start: None}
        queue = deque([start])
        goal = None
        while queue and goal is None:
            cur = queue.popleft()
            cur_blank, cur_named = cur
            for action, dest in neighbors(cur_blank):
                if dest in cur_named:
                    idx = cur_named.index(dest)
                    new_named = cur_named[:idx] + (cur_blank,) + cur_named[idx + 1:]
                else:
                    new_named = cur_named
                nxt = (dest, new_named)
                if nxt in parents:
                    continue
                parents[nxt] = (cur, action)
                if new_named == homes:
                    goal = nxt
                    break
                queue.append(nxt)
        if goal is None:
            raise InternalSolverError("region BFS found no placement")
        path = []
        node = goal
        while parents[node] is not None:
            node, action = parents[node]
            path.append(action)
        path.reverse()
        return path


def npuzzle_trajectory(state: str, side: int | None = None) -> Trajectory:
    side = side if side is not None else int(len(decode(state)) ** 0.5)
    solver = TileSolver(side)
    actions = solver.solve(state)
    return from_states_actions(NPuzzleEnv(side), EXPERT_NAME, state, actions)

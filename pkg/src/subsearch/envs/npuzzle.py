"""Sliding-tile puzzle (8/15/24-puzzle).

States encode the tile permutation as a comma-separated list, row-major,
with 0 for the blank; the side length is inferred from the list length.
The goal is the identity permutation, so the blank's home is the top-left
cell.  Actions 0..3 move the blank up/down/left/right.
"""

from __future__ import annotations

from collections import deque

import numpy as np

from subsearch.envs.base import Environment
from subsearch.errors import InvalidState, MoveBlocked, ResourceLimit

UP, DOWN, LEFT, RIGHT = range(4)
_DELTAS = {UP: (-1, 0), DOWN: (1, 0), LEFT: (0, -1), RIGHT: (0, 1)}


def encode(tiles) -> str:
    return ",".join(str(t) for t in tiles)


def decode(state: str) -> tuple[int, ...]:
    return tuple(int(t) for t in state.split(","))


def solved_state(side: int) -> str:
    return encode(range(side * side))


def _perm_sign(perm) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length and length % 2 == 0:
            sign = -sign
    return sign


class NPuzzleEnv(Environment):
    env_id = "npuzzle"
    action_count = 4

    def __init__(self, side: int = 5):
        if side < 2:
            raise ValueError("side must be >= 2")
        self.side = side

    def step(self, state: str, action: int) -> str:
        self.check_action(action)
        tiles = list(decode(state))
        n = self.side
        blank = tiles.index(0)
        r, c = divmod(blank, n)
        dr, dc = _DELTAS[action]
        nr, nc = r + dr, c + dc
        if not (0 <= nr < n and 0 <= nc < n):
            raise MoveBlocked("blank is at the border")
        other = nr * n + nc
        tiles[blank], tiles[other] = tiles[other], tiles[blank]
        return encode(tiles)

    def is_solved(self, state: str) -> bool:
        return state == solved_state(self.side)

    def applicable_actions(self, state: str) -> list[int]:
        n = self.side
        blank = decode(state).index(0)
        r, c = divmod(blank, n)
        out = []
        for action, (dr, dc) in _DELTAS.items():
            if 0 <= r + dr < n and 0 <= c + dc < n:
                out.append(action)
        return out

    def validate(self, state: str) -> None:
        try:
            tiles = decode(state)
        except ValueError:
            raise InvalidState("tiles must be comma-separated integers") from None
        if len(tiles) != self.side**2:
            raise InvalidState(f"expected {self.side ** 2} tiles")
        if sorted(tiles) != list(range(self.side**2)):
            raise InvalidState("tiles must be a permutation of 0..n^2-1")
        if not self.is_solvable(state):
            raise InvalidState("permutation parity inconsistent with blank position")

    def is_solvable(self, state: str) -> bool:
        # Each slide is a transposition and moves the blank one step, so
        # sign(permutation) must match the parity of the blank's taxicab
        # distance from its home cell.
        tiles = decode(state)
        blank = tiles.index(0)
        r, c = divmod(blank, self.side)
        return _perm_sign(list(tiles)) == (1 if (r + c) % 2 == 0 else -1)

    def manhattan(self, state: str) -> int:
        n = self.side
        total = 0
        for pos, tile in enumerate(decode(state)):
            if tile == 0:
                continue
            total += abs(pos // n - tile // n) + abs(pos % n - tile % n)
        return total

    def misplaced(self, state: str) -> int:
        return sum(1 for pos, tile in enumerate(decode(state)) if tile and tile != pos)


def shuffle(env: NPuzzleEnv, seed, n: int) -> str:
    """State after ``n`` uniformly random valid slides from solved."""
    if n < 0:
        raise ValueError("shuffle length must be >= 0")
    rng = np.random.default_rng(seed)
    state = solved_state(env.side)
    for _ in range(n):
        actions = env.applicable_actions(state)
        state = env.step(state, actions[int(rng.integers(len(actions)))])
    return state


def bfs_distance_table(side: int, radius: int | None = None,
                       max_states: int = 400_000) -> dict[str, int]:
    """Exact slide distances from solved; full 3x3 space is 181,440 states."""
    n = side
    neighbors: list[tuple[int, ...]] = []
    for pos in range(n * n):
        r, c = divmod(pos, n)
        cells = []
        for dr, dc in _DELTAS.values():
            if 0 <= r + dr < n and 0 <= c + dc < n:
                cells.append((r + dr) * n + (c + dc))
        neighbors.append(tuple(cells))
    start = tuple(range(n * n))
    table = {start: 0}
    frontier = deque([(start, 0)])
    depth = 0
    while frontier and (radius is None or depth < radius):
        depth += 1
        next_frontier = deque()
        for tiles, blank in frontier:
            for other in neighbors[blank]:
                lst = list(tiles)
                lst[blank], lst[other] = lst[other], lst[blank]
                succ = tuple(lst)
                if succ not in table:
                    if len(table) >= max_states:
                        raise ResourceLimit(f"distance table exceeds {max_states} states")
                    table[succ] = depth
                    next_frontier.append((succ, other))
        frontier = next_frontier
    return {encode(tiles): d for tiles, d in table.items()}

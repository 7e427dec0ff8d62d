"""Dead-end detection for Sokoban boards.

A state is a dead-end when it is unsolved and no action sequence from it
reaches a solved board.  The exact oracle explores the push graph over
(box configuration, normalized player region) pairs, which makes
exactness affordable: the player's exact cell within its walk region is
irrelevant to future pushes.  The corner heuristic is a sound, incomplete
shortcut: a box in a non-target corner can never move again.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from subsearch.envs.sokoban import BOX, WALL, SokobanEnv
from subsearch.errors import ResourceLimit


@dataclass(frozen=True)
class DeadEndVerdict:
    is_dead_end: bool
    method: str  # "exact" or "corner-heuristic"


def corner_dead(env: SokobanEnv, state: str) -> bool:
    """True when some box sits in a non-target corner (sound, incomplete)."""
    w = env.width
    for pos, ch in enumerate(state):
        if ch != BOX:
            continue
        up_or_down = state[pos - w] == WALL or state[pos + w] == WALL
        left_or_right = state[pos - 1] == WALL or state[pos + 1] == WALL
        if up_or_down and left_or_right:
            return True
    return False


class DeadEndOracle:
    """Exact reachability oracle for one board geometry (walls + targets).

    Verdicts are memoized on normalized (boxes, player-region) states, so
    repeated queries from one search run stay cheap.
    """

    def __init__(self, env: SokobanEnv, max_states: int = 500_000):
        self.env = env
        self.max_states = max_states
        self._alive: dict[tuple, bool] = {}
        self._geometry: tuple[frozenset[int], frozenset[int]] | None = None

    def _static(self, state: str) -> tuple[frozenset[int], frozenset[int]]:
        walls = frozenset(i for i, ch in enumerate(state) if ch == WALL)
        targets = frozenset(self.env.target_positions(state))
        if self._geometry is None:
            self._geometry = (walls, targets)
        elif self._geometry != (walls, targets):
            raise ValueError("oracle is bound to a single board geometry")
        return walls, targets

    def _normalize(self, walls, boxes: frozenset[int], player: int) -> tuple:
        w = self.env.width
        blocked = walls | boxes
        seen = {player}
        stack = [player]
        best = player
        while stack:
            pos = stack.pop()
            if pos < best:
                best = pos
            for delta in (-w, w, -1, 1):
                nxt = pos + delta
                if nxt not in seen and nxt not in blocked:
                    seen.add(nxt)
                    stack.append(nxt)
        return boxes, best, frozenset(seen)

    def _push_successors(self, walls, boxes, region):
        w = self.env.width
        for box in boxes:
            for delta in (-w, w, -1, 1):
                side = box - delta
                dest = box + delta
                if side in region and dest not in walls and dest not in boxes:
                    yield frozenset(boxes - {box} | {dest}), box

    def is_dead_end(self, state: str) -> DeadEndVerdict:
        """Exact verdict; raises ResourceLimit when the configuration space
        exceeds the cap (callers may fall back to corner_dead)."""
        walls, targets = self._static(state)
        boxes = frozenset(self.env.box_positions(state))
        player = self.env.player_pos(state)
        if boxes <= targets:
            return DeadEndVerdict(False, "exact")
        boxes0, best0, region0 = self._normalize(walls, boxes, player)
        key0 = (boxes0, best0)
        if key0 in self._alive:
            return DeadEndVerdict(not self._alive[key0], "exact")

        parents: dict[tuple, tuple | None] = {key0: None}
        regions = {key0: region0}
        queue = deque([key0])
        solved_key = None
        while queue:
            key = queue.popleft()
            boxes_k, _ = key
            region_k = regions[key]
            for new_boxes, moved_from in self._push_successors(walls, boxes_k, region_k):
                nb, nbest, nregion = self._normalize(walls, new_boxes, moved_from)
                nkey = (nb, nbest)
                if nkey in parents:
                    continue
                if len(parents) >= self.max_states:
                    raise ResourceLimit("dead-end oracle exceeded its state cap")
                parents[nkey] = key
                regions[nkey] = nregion
                if nb <= targets or self._alive.get(nkey):
                    solved_key = nkey
                    queue.clear()
                    break
                queue.append(nkey)
        if solved_key is None:
            # Nothing solvable is reachable from here, hence from any state
            # explored on the way (descendant closure), so memo all of them.
            for key in parents:
                self._alive[key] = False
            return DeadEndVerdict(True, "exact")
        key: tuple | None = solved_key
        while key is not None:
            self._alive[key] = True
            key = parents[key]
        return DeadEndVerdict(False, "exact")


def dead_end_fraction(visited: list[str], oracle: DeadEndOracle) -> float:
    """Fraction of distinct visited states that are dead-ends."""
    distinct = list(dict.fromkeys(visited))
    if not distinct:
        return 0.0
    dead = sum(1 for s in distinct if oracle.is_dead_end(s).is_dead_end)
    return dead / len(distinct)

"""Sokoban on small rectangular boards.

Board cells use the standard ASCII alphabet: ``#`` wall, space empty,
``.`` target, ``$`` box, ``*`` box-on-target, ``@`` player, ``+``
player-on-target.  The canonical state encoding is the row-major string of
all cells (no newlines); level files are the same grid with newlines.
Actions 0..3 move the player up/down/left/right, pushing a box when one is
ahead and the cell beyond it is free.
"""

from __future__ import annotations

import numpy as np

from subsearch.envs.base import Environment
from subsearch.errors import InvalidState, MoveBlocked

WALL, EMPTY, TARGET, BOX, BOX_ON_TARGET, PLAYER, PLAYER_ON_TARGET = "# .$*@+"
CELLS = "# .$*@+"

UP, DOWN, LEFT, RIGHT = range(4)
_DELTAS = {UP: (-1, 0), DOWN: (1, 0), LEFT: (0, -1), RIGHT: (0, 1)}

_CLEAR_PLAYER = {PLAYER: EMPTY, PLAYER_ON_TARGET: TARGET}
_PUT_PLAYER = {EMPTY: PLAYER, TARGET: PLAYER_ON_TARGET}
_CLEAR_BOX = {BOX: EMPTY, BOX_ON_TARGET: TARGET}
_PUT_BOX = {EMPTY: BOX, TARGET: BOX_ON_TARGET}


class SokobanEnv(Environment):
    env_id = "sokoban"
    action_count = 4

    def __init__(self, height: int = 12, width: int = 12):
        self.height = height
        self.width = width

    def _index(self, r: int, c: int) -> int:
        return r * self.width + c

    def player_pos(self, state: str) -> int:
        pos = state.find(PLAYER)
        if pos < 0:
            pos = state.find(PLAYER_ON_TARGET)
        if pos < 0:
            raise InvalidState("no player on board")
        return pos

    def box_positions(self, state: str) -> list[int]:
        return [i for i, ch in enumerate(state) if ch in (BOX, BOX_ON_TARGET)]

    def target_positions(self, state: str) -> list[int]:
        return [i for i, ch in enumerate(state)
                if ch in (TARGET, BOX_ON_TARGET, PLAYER_ON_TARGET)]

    def step(self, state: str, action: int) -> str:
        self.check_action(action)
        w = self.width
        player = self.player_pos(state)
        dr, dc = _DELTAS[action]
        delta = dr * w + dc
        dest = player + delta
        dest_ch = state[dest]
        cells = list(state)
        if dest_ch == WALL:
            raise MoveBlocked("wall ahead")
        if dest_ch in (BOX, BOX_ON_TARGET):
            beyond = dest + delta
            if state[beyond] not in (EMPTY, TARGET):
                raise MoveBlocked("box cannot be pushed")
            cells[beyond] = _PUT_BOX[state[beyond]]
            cells[dest] = _CLEAR_BOX[dest_ch]
        cells[player] = _CLEAR_PLAYER[state[player]]
        cells[dest] = _PUT_PLAYER[cells[dest]]
        return "".join(cells)

    def is_solved(self, state: str) -> bool:
        return BOX not in state and BOX_ON_TARGET in state

    def validate(self, state: str) -> None:
        if len(state) != self.height * self.width:
            raise InvalidState(f"expected {self.height * self.width} cells")
        if any(ch not in CELLS for ch in state):
            raise InvalidState("unknown cell symbol")
        players = sum(state.count(c) for c in (PLAYER, PLAYER_ON_TARGET))
        if players != 1:
            raise InvalidState(f"expected exactly one player, found {players}")
        boxes = sum(state.count(c) for c in (BOX, BOX_ON_TARGET))
        targets = sum(state.count(c) for c in (TARGET, BOX_ON_TARGET, PLAYER_ON_TARGET))
        if boxes == 0 or boxes != targets:
            raise InvalidState(f"{boxes} boxes vs {targets} targets")
        w, h = self.width, self.height
        border = [self._index(0, c) for c in range(w)] + [self._index(h - 1, c) for c in range(w)]
        border += [self._index(r, 0) for r in range(h)] + [self._index(r, w - 1) for r in range(h)]
        if any(state[i] != WALL for i in border):
            raise InvalidState("board boundary must be wall-closed")

    def player_region(self, state: str) -> frozenset[int]:
        """Cells the player can walk to without pushing anything."""
        w = self.width
        blocked = set(i for i, ch in enumerate(state)
                      if ch in (WALL, BOX, BOX_ON_TARGET))
        start = self.player_pos(state)
        seen = {start}
        stack = [start]
        while stack:
            pos = stack.pop()
            for delta in (-w, w, -1, 1):
                nxt = pos + delta
                if nxt not in seen and 0 <= nxt < len(state) and nxt not in blocked:
                    seen.add(nxt)
                    stack.append(nxt)
        return frozenset(seen)


def parse_level(text: str) -> tuple[str, int, int]:
    """Parse a standard ASCII Sokoban level into (encoding, height, width).

    Ragged lines are padded with walls so the boundary stays closed.
    """
    lines = [line.rstrip("\n") for line in text.splitlines() if line.strip("\n").strip()]
    if not lines:
        raise InvalidState("empty level")
    width = max(len(line) for line in lines)
    rows = [line.ljust(width, WALL) for line in lines]
    rows = ["".join(ch if ch in CELLS else WALL for ch in row) for row in rows]
    encoding = "".join(rows)
    return encoding, len(rows), width


def format_level(state: str, width: int) -> str:
    return "\n".join(state[i:i + width] for i in range(0, len(state), width))


def generate_board(seed, height: int = 12, width: int = 12, n_boxes: int = 4,
                   wall_density: float = 0.12, pulls: int = 30,
                   max_attempts: int = 200) -> str:
    """Seeded solvable-by-construction board.

    Boxes start on their targets and are dragged backward by random pulls;
    replaying the pulls as pushes solves the board, so every emitted board
    is solvable.  Boards that end up still solved (no box moved off its
    target) are rejected and regenerated.
    """
    rng = np.random.default_rng(seed)
    env = SokobanEnv(height, width)
    for _ in range(max_attempts):
        board = _try_generate(rng, env, n_boxes, wall_density, pulls)
        if board is not None:
            env.validate(board)
            return board
    raise InvalidState("board generation failed; relax wall_density or size")


def _try_generate(rng, env: SokobanEnv, n_boxes: int, wall_density: float,
                  pulls: int):
    h, w = env.height, env.width
    cells = [[WALL] * w for _ in range(h)]
    interior = [(r, c) for r in range(1, h - 1) for c in range(1, w - 1)]
    for r, c in interior:
        cells[r][c] = WALL if rng.random() < wall_density else EMPTY
    floors = [(r, c) for r, c in interior if cells[r][c] == EMPTY]
    if len(floors) < n_boxes + 1:
        return None
    order = rng.permutation(len(floors))
    spots = [floors[i] for i in order[: n_boxes + 1]]
    boxes = set(spots[:n_boxes])
    targets = set(spots[:n_boxes])
    player = spots[n_boxes]

    def free(cell):
        r, c = cell
        return 0 <= r < h and 0 <= c < w and cells[r][c] != WALL and cell not in boxes

    def reachable_from(start):
        seen = {start}
        stack = [start]
        while stack:
            r, c = stack.pop()
            for dr, dc in ((-1, 0), (1, 0), (0, -1), (0, 1)):
                nxt = (r + dr, c + dc)
                if nxt not in seen and free(nxt):
                    seen.add(nxt)
                    stack.append(nxt)
        return seen

    for _ in range(pulls):
        region = reachable_from(player)
        candidates = []
        for br, bc in boxes:
            for dr, dc in ((-1, 0), (1, 0), (0, -1), (0, 1)):
                side = (br + dr, bc + dc)
                back = (br + 2 * dr, bc + 2 * dc)
                if side in region and free(side) and free(back):
                    candidates.append(((br, bc), (dr, dc)))
        if not candidates:
            break
        (br, bc), (dr, dc) = candidates[int(rng.integers(len(candidates)))]
        boxes.remove((br, bc))
        boxes.add((br + dr, bc + dc))
        player = (br + 2 * dr, bc + 2 * dc)

    if boxes == targets:
        return None  # still solved; nothing was pulled anywhere useful
    for r, c in targets:
        cells[r][c] = TARGET
    for r, c in boxes:
        cells[r][c] = BOX_ON_TARGET if cells[r][c] == TARGET else BOX
    pr, pc = player
    cells[pr][pc] = PLAYER_ON_TARGET if cells[pr][pc] == TARGET else PLAYER
    return "".join("".join(row) for row in cells)

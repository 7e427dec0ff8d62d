"""3x3x3 Rubik's Cube in the quarter-turn metric.

States are 54-character sticker strings over {y,b,r,g,o,w}, face-major in
the order Up, Front, Right, Back, Left, Down and row-major within a face.
The solved string is therefore ``"y"*9 + "b"*9 + ... + "w"*9``.

Move tables are generated from cube geometry: every sticker is modelled as
a (cubelet position, outward normal) pair and a face turn rotates the
face's layer by a quarter turn about the face normal.  The 12 actions are
U, U', F, F', R, R', B, B', L, L', D, D' (even index = clockwise seen from
outside the face; ``a ^ 1`` is the inverse of ``a``).
"""

from __future__ import annotations

from collections import deque
from functools import lru_cache

import numpy as np

from subsearch.envs.base import Environment
from subsearch.errors import InvalidState, ResourceLimit

FACES = "UFRBLD"
FACE_COLORS = {"U": "y", "F": "b", "R": "r", "B": "g", "L": "o", "D": "w"}
COLORS = "ybrgow"
SOLVED = "".join(FACE_COLORS[f] * 9 for f in FACES)

MOVE_NAMES = ["U", "U'", "F", "F'", "R", "R'", "B", "B'", "L", "L'", "D", "D'"]

# Face frames: (outward normal, direction of increasing row, increasing col).
_FRAMES = {
    "U": ((0, 1, 0), (0, 0, 1), (1, 0, 0)),
    "F": ((0, 0, 1), (0, -1, 0), (1, 0, 0)),
    "R": ((1, 0, 0), (0, -1, 0), (0, 0, -1)),
    "B": ((0, 0, -1), (0, -1, 0), (-1, 0, 0)),
    "L": ((-1, 0, 0), (0, -1, 0), (0, 0, 1)),
    "D": ((0, -1, 0), (0, 0, -1), (1, 0, 0)),
}


def _add(a, b):
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2])


def _scale(a, k):
    return (a[0] * k, a[1] * k, a[2] * k)


def _dot(a, b):
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def _cross(a, b):
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def _rotate_cw(v, axis):
    # Quarter turn, clockwise as seen from outside along -axis.
    return _add(_cross(v, axis), _scale(axis, _dot(axis, v)))


def _build_geometry():
    coords = []  # index -> (cubelet, normal)
    for face in FACES:
        normal, row_dir, col_dir = _FRAMES[face]
        for row in range(3):
            for col in range(3):
                q = _add(normal, _add(_scale(row_dir, row - 1), _scale(col_dir, col - 1)))
                coords.append((q, normal))
    index_of = {coord: i for i, coord in enumerate(coords)}
    return coords, index_of


_COORDS, _INDEX_OF = _build_geometry()


def _build_move(face: str) -> tuple[int, ...]:
    normal = _FRAMES[face][0]
    src = list(range(54))
    for i, (q, m) in enumerate(_COORDS):
        if _dot(q, normal) != 1:
            continue
        j = _INDEX_OF[(_rotate_cw(q, normal), _rotate_cw(m, normal))]
        src[j] = i
    return tuple(src)


def _invert(src: tuple[int, ...]) -> tuple[int, ...]:
    inv = [0] * 54
    for j, i in enumerate(src):
        inv[i] = j
    return tuple(inv)


def _build_moves() -> list[tuple[int, ...]]:
    moves = []
    for face in FACES:
        cw = _build_move(face)
        assert sorted(cw) == list(range(54))
        moves.append(cw)
        moves.append(_invert(cw))
    return moves


# MOVE_SRC[a][j] = source index of the sticker that lands at j under action a.
MOVE_SRC = _build_moves()


def apply_move(state: str, action: int) -> str:
    src = MOVE_SRC[action]
    return "".join([state[i] for i in src])


def apply_moves(state: str, actions) -> str:
    for a in actions:
        state = apply_move(state, a)
    return state


def inverse_move(action: int) -> int:
    return action ^ 1


# --- cubie decomposition, used for validity checks and features ---------

def _build_slots():
    by_cubelet: dict[tuple, list[int]] = {}
    for i, (q, _) in enumerate(_COORDS):
        by_cubelet.setdefault(q, []).append(i)
    edges, corners = [], []
    for q, idxs in by_cubelet.items():
        if len(idxs) == 2:
            edges.append((q, idxs))
        elif len(idxs) == 3:
            corners.append((q, idxs))
    # Edge reference sticker: the U/D one if present, else the F/B one.
    edge_slots = []
    for q, idxs in sorted(edges):
        ud = [i for i in idxs if _COORDS[i][1][1] != 0]
        fb = [i for i in idxs if _COORDS[i][1][2] != 0]
        ref = (ud or fb)[0]
        other = idxs[0] if idxs[1] == ref else idxs[1]
        edge_slots.append((ref, other))
    # Corner stickers ordered (U/D sticker, then clockwise around the corner).
    corner_slots = []
    for q, idxs in sorted(corners):
        ud = next(i for i in idxs if _COORDS[i][1][1] != 0)
        rest = [i for i in idxs if i != ud]
        n0 = _COORDS[ud][1]
        n1, n2 = _COORDS[rest[0]][1], _COORDS[rest[1]][1]
        if _dot(_cross(n0, n1), q) < 0:
            rest = [rest[1], rest[0]]
        corner_slots.append((ud, rest[0], rest[1]))
    return edge_slots, corner_slots


EDGE_SLOTS, CORNER_SLOTS = _build_slots()
_SOLVED_EDGE_SETS = [frozenset(SOLVED[i] for i in slot) for slot in EDGE_SLOTS]
_SOLVED_CORNER_SETS = [frozenset(SOLVED[i] for i in slot) for slot in CORNER_SLOTS]


# Cubie groups for the pattern tables: exact quarter-turn distances to
# simultaneously home four cubies at a time, ignoring all others.
_EDGE_GROUPS = ((0, 1, 2, 3), (4, 5, 6, 7), (8, 9, 10, 11))
_CORNER_GROUPS = ((0, 1, 2, 3), (4, 5, 6, 7))


def _build_group_table(slots, group, dest):
    positions = sorted({p for slot in slots for p in slot})
    pid = {p: i for i, p in enumerate(positions)}
    moves = [[pid[d[p]] for p in positions] for d in dest]
    start = tuple(pid[slots[h][0]] for h in group)

    def pack(t):
        return t[0] | t[1] << 5 | t[2] << 10 | t[3] << 15

    table = {pack(start): 0}
    frontier = [start]
    depth = 0
    while frontier:
        depth += 1
        nxt = []
        for cur in frontier:
            for move in moves:
                placed = (move[cur[0]], move[cur[1]], move[cur[2]], move[cur[3]])
                key = pack(placed)
                if key not in table:
                    table[key] = depth
                    nxt.append(placed)
        frontier = nxt
    return pid, table


@lru_cache(maxsize=1)
def _pattern_tables():
    dest = []
    for src in MOVE_SRC:
        d = [0] * 54
        for j, i in enumerate(src):
            d[i] = j
        dest.append(d)
    edge = [_build_group_table(EDGE_SLOTS, g, dest) for g in _EDGE_GROUPS]
    corner = [_build_group_table(CORNER_SLOTS, g, dest) for g in _CORNER_GROUPS]
    edge_home = {frozenset(SOLVED[i] for i in slot): h
                 for h, slot in enumerate(EDGE_SLOTS)}
    corner_home = {frozenset(SOLVED[i] for i in slot): h
                   for h, slot in enumerate(CORNER_SLOTS)}
    return edge, corner, edge_home, corner_home


def _ref_positions(state):
    _, _, edge_home, corner_home = _pattern_tables()
    epos = [0] * 12
    for slot in EDGE_SLOTS:
        h = edge_home[frozenset(state[i] for i in slot)]
        ref_color = SOLVED[EDGE_SLOTS[h][0]]
        epos[h] = slot[0] if state[slot[0]] == ref_color else slot[1]
    cpos = [0] * 8
    for slot in CORNER_SLOTS:
        h = corner_home[frozenset(state[i] for i in slot)]
        ref_color = SOLVED[CORNER_SLOTS[h][0]]
        cpos[h] = next(p for p in slot if state[p] == ref_color)
    return epos, cpos


def pattern_distance_sums(state: str) -> tuple[int, int]:
    """(edge, corner) sums of four-cubie pattern distances; (0,0) iff solved.

    A cheap distance proxy with usable gradient up to roughly twelve
    quarter turns, which is what fitted value estimators bucket on.
    """
    edge, corner, _, _ = _pattern_tables()
    epos, cpos = _ref_positions(state)
    edge_sum = 0
    for group, (pid, table) in zip(_EDGE_GROUPS, edge):
        key = (pid[epos[group[0]]] | pid[epos[group[1]]] << 5
               | pid[epos[group[2]]] << 10 | pid[epos[group[3]]] << 15)
        edge_sum += table[key]
    corner_sum = 0
    for group, (pid, table) in zip(_CORNER_GROUPS, corner):
        key = (pid[cpos[group[0]]] | pid[cpos[group[1]]] << 5
               | pid[cpos[group[2]]] << 10 | pid[cpos[group[3]]] << 15)
        corner_sum += table[key]
    return edge_sum, corner_sum


def _perm_sign(perm: list[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


class RubikEnv(Environment):
    env_id = "rubik"
    action_count = 12

    def step(self, state: str, action: int) -> str:
        self.check_action(action)
        return apply_move(state, action)

    def is_solved(self, state: str) -> bool:
        return state == SOLVED

    def applicable_actions(self, state: str) -> list[int]:
        return list(range(12))

    def validate(self, state: str) -> None:
        if len(state) != 54 or any(c not in COLORS for c in state):
            raise InvalidState("state must be 54 chars over ybrgow")
        for color in COLORS:
            if state.count(color) != 9:
                raise InvalidState(f"expected 9 stickers of {color!r}")
        for face_i, face in enumerate(FACES):
            if state[face_i * 9 + 4] != FACE_COLORS[face]:
                raise InvalidState("center stickers must match the fixed face colors")

        edge_perm, edge_ori = [], 0
        for ref, other in EDGE_SLOTS:
            pair = frozenset((state[ref], state[other]))
            try:
                edge_perm.append(_SOLVED_EDGE_SETS.index(pair))
            except ValueError:
                raise InvalidState(f"no such edge cubie: {sorted(pair)}") from None
            ref_color = next(c for c in ("y", "w", "b", "g") if c in pair)
            edge_ori += 0 if state[ref] == ref_color else 1
        if sorted(edge_perm) != list(range(12)):
            raise InvalidState("duplicate edge cubie")
        if edge_ori % 2 != 0:
            raise InvalidState("edge orientation sum is odd (flipped edge)")

        corner_perm, corner_ori = [], 0
        for slot in CORNER_SLOTS:
            triple = frozenset(state[i] for i in slot)
            try:
                corner_perm.append(_SOLVED_CORNER_SETS.index(triple))
            except ValueError:
                raise InvalidState(f"no such corner cubie: {sorted(triple)}") from None
            ud_color = "y" if "y" in triple else "w"
            corner_ori += next(k for k in range(3) if state[slot[k]] == ud_color)
        if sorted(corner_perm) != list(range(8)):
            raise InvalidState("duplicate corner cubie")
        if corner_ori % 3 != 0:
            raise InvalidState("corner orientation sum not divisible by 3")

        if _perm_sign(edge_perm) != _perm_sign(corner_perm):
            raise InvalidState("edge/corner permutation parity mismatch")


def scramble(seed, n: int) -> tuple[str, list[int]]:
    """State after ``n`` uniform random quarter turns from solved, plus the
    move list. Deterministic in ``seed`` (PCG64)."""
    if n < 0:
        raise ValueError("scramble length must be >= 0")
    rng = np.random.default_rng(seed)
    moves = [int(a) for a in rng.integers(0, 12, size=n)]
    return apply_moves(SOLVED, moves), moves


def bfs_distance_table(radius: int, max_states: int = 2_000_000) -> dict[str, int]:
    """Exact quarter-turn distances from solved for all states within
    ``radius``.  Memory grows ~9x per layer; radius 7 is the desk-scale
    ceiling and 5 (~105k states) covers the acceptance experiments."""
    if radius > 7:
        raise ValueError("radius > 7 exceeds the desk-scale memory bound")
    table = {SOLVED: 0}
    frontier = deque([SOLVED])
    depth = 0
    while frontier and depth < radius:
        depth += 1
        next_frontier = deque()
        for state in frontier:
            for action in range(12):
                succ = apply_move(state, action)
                if succ not in table:
                    if len(table) >= max_states:
                        raise ResourceLimit(f"distance table exceeds {max_states} states")
                    table[succ] = depth
                    next_frontier.append(succ)
        frontier = next_frontier
    return table

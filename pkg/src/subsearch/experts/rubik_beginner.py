"""Layer-by-layer Rubik's Cube solver (beginner's method).

Stages: white cross, first-layer corners, middle edges, last-layer edge
orientation, last-layer corner orientation, last-layer corner permutation,
last-layer edge permutation.  Each stage applies scripted macros from a
small table, so solutions are long and highly structured, like a human
following the printed method; move counts land in the low hundreds of
quarter turns.

Last-layer permutation picks the exact composition of U-conjugated swap /
cycle macros by breadth-first search over at most four applications, which
covers every corner and edge permutation a valid cube can present.
"""

from __future__ import annotations

from itertools import product

from subsearch.envs.rubik import (
    CORNER_SLOTS, EDGE_SLOTS, FACE_COLORS, FACES, MOVE_NAMES, SOLVED,
    RubikEnv, apply_move,
)
from subsearch.errors import InternalSolverError
from subsearch.trajectory import Trajectory, from_states_actions

__all__ = ["BeginnerSolver", "beginner_trajectory", "parse_alg", "apply_alg"]

EXPERT_NAME = "rubik-beginner"

_MOVE_ID = {name: i for i, name in enumerate(MOVE_NAMES)}
_RING = ["F", "R", "B", "L"]  # a U turn sends the piece at ring index i to i-1
_FACE_ORDER = {f: i for i, f in enumerate("UDFBRL")}
_COLOR_FACE = {color: face for face, color in FACE_COLORS.items()}


def parse_alg(alg: str) -> list[int]:
    """Expand a Singmaster string ("R U2 F'") into quarter-turn move ids."""
    out = []
    for token in alg.split():
        base = _MOVE_ID[token[0]]
        suffix = token[1:]
        if suffix == "":
            out.append(base)
        elif suffix == "'":
            out.append(base + 1)
        elif suffix == "2":
            out.extend([base, base])
        else:
            raise ValueError(f"bad move token {token!r}")
    return out


def apply_alg(state: str, alg: str) -> str:
    for move in parse_alg(alg):
        state = apply_move(state, move)
    return state


def _face_of(index: int) -> str:
    return FACES[index // 9]


def _slot_name(indices) -> str:
    faces = sorted((_face_of(i) for i in indices), key=_FACE_ORDER.__getitem__)
    return "".join(faces)


EDGE_NAME_TO_SLOT = {_slot_name(slot): slot for slot in EDGE_SLOTS}
CORNER_NAME_TO_SLOT = {_slot_name(slot): slot for slot in CORNER_SLOTS}


def _substitute(alg: str, front: str) -> str:
    """Rewrite a front=F macro for another front face (frame rotated about U)."""
    shift = _RING.index(front)
    mapping = {face: _RING[(i + shift) % 4] for i, face in enumerate(_RING)}
    mapping.update({"U": "U", "D": "D"})
    return " ".join(mapping[t[0]] + t[1:] for t in alg.split())


# Scripted macro tables (written relative to front=F where face-relative).
LIFT_MIDDLE_EDGE = {"FR": "R U R'", "FL": "L' U L", "BR": "R' U R", "BL": "L U L'"}
CROSS_FLIP_INSERT = "U L F' L'"         # flipped cross edge at UF (white on F)
INSERT_RIGHT = "U R U' R' U' F' U F"    # U edge matching F center -> FR slot
INSERT_LEFT = "U' L' U L U F U' F'"     # U edge matching F center -> FL slot
OLL_EDGE_LINE = "F R U R' U' F'"        # yellow line UL-UR -> cross
OLL_EDGE_ANGLE = "F U R U' R' F'"       # yellow angle at UB+UL -> line
CORNER_TWIST = "R' D' R D"              # twists UFR; D damage cancels by stage end
PERM_CORNER_SWAP = "R U R' U' R' F R R U' R' U' R U R' F'"  # adjacent corner swap
PERM_EDGE_CYCLE = "R U' R U R U R U' R' U' R R"             # 3-cycle of U edges
SEXY_FACE = {"DFR": "R", "DBR": "B", "DBL": "L", "DFL": "F"}
LIFT_CORNER = {name: f"{face} U {face}'" for name, face in SEXY_FACE.items()}

_PAIR_RING = [frozenset("FR"), frozenset("BR"), frozenset("BL"), frozenset("FL")]


class BeginnerSolver:
    """Solves any valid cube with the layer-by-layer beginner's method."""

    def __init__(self):
        self.env = RubikEnv()

    # -- plumbing ---------------------------------------------------------

    def _do(self, alg: str) -> None:
        for move in parse_alg(alg):
            self.state = apply_move(self.state, move)
            self.moves.append(move)

    def _find_edge(self, colors: frozenset) -> tuple[str, tuple]:
        for slot in EDGE_SLOTS:
            if frozenset(self.state[i] for i in slot) == colors:
                return _slot_name(slot), slot
        raise InternalSolverError(f"edge {sorted(colors)} not found")

    def _find_corner(self, colors: frozenset) -> tuple[str, tuple]:
        for slot in CORNER_SLOTS:
            if frozenset(self.state[i] for i in slot) == colors:
                return _slot_name(slot), slot
        raise InternalSolverError(f"corner {sorted(colors)} not found")

    def _slot_solved(self, slot) -> bool:
        return all(self.state[i] == SOLVED[i] for i in slot)

    def _sticker_face(self, slot, color: str) -> str:
        for i in slot:
            if self.state[i] == color:
                return _face_of(i)
        raise InternalSolverError(f"color {color!r} not on slot")

    def _align_u_edge(self, from_face: str, to_face: str) -> None:
        k = (_RING.index(from_face) - _RING.index(to_face)) % 4
        if k:
            self._do({1: "U", 2: "U U", 3: "U'"}[k])

    def _align_u_corner(self, current_pair: str, target_pair: str) -> None:
        cur = _PAIR_RING.index(frozenset(current_pair))
        tgt = _PAIR_RING.index(frozenset(target_pair))
        k = (cur - tgt) % 4
        if k:
            self._do({1: "U", 2: "U U", 3: "U'"}[k])

    # -- stage 1: white cross ----------------------------------------------

    def _cross(self) -> None:
        for face in _RING:
            colors = frozenset(("w", FACE_COLORS[face]))
            target = "D" + face
            for _ in range(6):
                name, slot = self._find_edge(colors)
                if name == target and self._slot_solved(slot):
                    break
                if "D" in name:
                    side = name.replace("D", "")
                    self._do(f"{side} {side}")
                elif "U" not in name:
                    self._do(LIFT_MIDDLE_EDGE[name])
                else:
                    side = name.replace("U", "")
                    white_on_u = self._sticker_face(slot, "w") == "U"
                    self._align_u_edge(side, face)
                    if white_on_u:
                        self._do(f"{face} {face}")
                    else:
                        self._do(_substitute(CROSS_FLIP_INSERT, face))
            else:
                raise InternalSolverError("cross stage did not converge")

    # -- stage 2: first-layer corners ---------------------------------------

    def _first_corners(self) -> None:
        for i in range(4):
            f1, f2 = _RING[i], _RING[(i + 1) % 4]
            colors = frozenset(("w", FACE_COLORS[f1], FACE_COLORS[f2]))
            target = next(_slot_name(s) for s in CORNER_SLOTS
                          if frozenset(SOLVED[k] for k in s) == colors)
            for _ in range(8):
                name, slot = self._find_corner(colors)
                if name == target and self._slot_solved(slot):
                    break
                if "D" in name:
                    self._do(LIFT_CORNER[name])
                    continue
                self._align_u_corner(name.replace("U", ""), target.replace("D", ""))
                face = SEXY_FACE[target]
                for _ in range(6):
                    _, slot = self._find_corner(colors)
                    if self._slot_solved(slot):
                        break
                    self._do(f"{face} U {face}' U'")
            else:
                raise InternalSolverError("first-layer corner stage did not converge")

    # -- stage 3: middle edges ----------------------------------------------

    def _middle_edges(self) -> None:
        for i in range(4):
            f1, f2 = _RING[i], _RING[(i + 1) % 4]
            colors = frozenset((FACE_COLORS[f1], FACE_COLORS[f2]))
            for _ in range(6):
                name, slot = self._find_edge(colors)
                if self._slot_solved(slot):
                    break
                if "U" not in name:
                    self._eject_middle(name)
                    continue
                side = name.replace("U", "")
                side_color = self.state[next(j for j in slot if _face_of(j) == side)]
                up_color = self.state[next(j for j in slot if _face_of(j) == "U")]
                front = _COLOR_FACE[side_color]
                self._align_u_edge(side, front)
                if _COLOR_FACE[up_color] == _RING[(_RING.index(front) + 1) % 4]:
                    self._do(_substitute(INSERT_RIGHT, front))
                else:
                    self._do(_substitute(INSERT_LEFT, front))
            else:
                raise InternalSolverError("middle edge stage did not converge")

    def _eject_middle(self, name: str) -> None:
        # Kick the slot's occupant to the U layer by inserting whatever U
        # edge is lined up with the slot right now.
        front = {"FR": "F", "BR": "R", "BL": "B", "FL": "L"}[name]
        self._do(_substitute(INSERT_RIGHT, front))

    # -- stage 4: orient last-layer edges ------------------------------------

    def _u_edge_pattern(self) -> dict[str, bool]:
        out = {}
        for face in _RING:
            slot = EDGE_NAME_TO_SLOT["U" + face]
            up = next(i for i in slot if _face_of(i) == "U")
            out[face] = self.state[up] == "y"
        return out

    def _orient_last_edges(self) -> None:
        for _ in range(6):
            ups = [f for f, yes in self._u_edge_pattern().items() if yes]
            if len(ups) == 4:
                return
            if len(ups) == 0:
                self._do(OLL_EDGE_LINE)
            elif len(ups) == 2:
                ia, ib = sorted((_RING.index(ups[0]), _RING.index(ups[1])))
                if ib - ia == 2:  # opposite edges: rotate the line onto L-R
                    self._align_u_edge(_RING[ia], "L")
                    self._do(OLL_EDGE_LINE)
                else:  # adjacent edges: rotate the angle onto B+L
                    for _ in range(4):
                        pattern = self._u_edge_pattern()
                        if pattern["B"] and pattern["L"]:
                            break
                        self._do("U")
                    else:
                        raise InternalSolverError("angle alignment failed")
                    self._do(OLL_EDGE_ANGLE)
            else:
                raise InternalSolverError("odd yellow-edge count (invalid cube)")
        raise InternalSolverError("edge orientation stage did not converge")

    # -- stage 5: orient last-layer corners ----------------------------------

    def _corner_up_is_yellow(self, name: str) -> bool:
        slot = CORNER_NAME_TO_SLOT[name]
        up = next(i for i in slot if _face_of(i) == "U")
        return self.state[up] == "y"

    def _orient_last_corners(self) -> None:
        u_corners = [n for n in CORNER_NAME_TO_SLOT if "U" in n]
        for _ in range(48):
            if all(self._corner_up_is_yellow(n) for n in u_corners):
                return
            if self._corner_up_is_yellow("UFR"):
                self._do("U")
            else:
                self._do(CORNER_TWIST)
                self._do(CORNER_TWIST)
        raise InternalSolverError("corner orientation stage did not converge")

    # -- stages 6-7: permute the last layer -----------------------------------

    def _misplaced_u_corners(self, state: str) -> int:
        return sum(1 for name, slot in CORNER_NAME_TO_SLOT.items() if "U" in name
                   and any(state[i] != SOLVED[i] for i in slot))

    def _misplaced_u_edges(self, state: str) -> int:
        return sum(1 for name, slot in EDGE_NAME_TO_SLOT.items() if "U" in name
                   and any(state[i] != SOLVED[i] for i in slot))

    def _permute_last(self, atoms: list[str], metric, stage: str) -> None:
        """Find (by BFS over at most 4 U-conjugated macro applications) a
        composition that zeroes the misplacement metric, then play it."""
        if metric(self.state) == 0:
            return
        for depth in range(1, 5):
            for combo in product(atoms, repeat=depth):
                probe = self.state
                for alg in combo:
                    probe = apply_alg(probe, alg)
                if metric(probe) == 0:
                    for alg in combo:
                        self._do(alg)
                    return
        raise InternalSolverError(f"no {stage} permutation within 4 macros")

    def _permute_last_corners(self) -> None:
        atoms = []
        for k in range(4):
            pre = {0: "", 1: "U ", 2: "U U ", 3: "U' "}[k]
            post = {0: "", 1: " U'", 2: " U U", 3: " U"}[k]
            atoms.append((pre + PERM_CORNER_SWAP + post).strip())
        self._permute_last(atoms, self._misplaced_u_corners, "corner")

    def _permute_last_edges(self) -> None:
        atoms = []
        for k in range(4):
            pre = {0: "", 1: "U ", 2: "U U ", 3: "U' "}[k]
            post = {0: "", 1: " U'", 2: " U U", 3: " U"}[k]
            for reps in (1, 2):
                body = " ".join([PERM_EDGE_CYCLE] * reps)
                atoms.append((pre + body + post).strip())
        self._permute_last(atoms, self._misplaced_u_edges, "edge")

    # -- entry point ----------------------------------------------------------

    def solve(self, state: str) -> list[int]:
        self.env.validate(state)
        self.state = state
        self.moves: list[int] = []
        self._cross()
        self._first_corners()
        self._middle_edges()
        self._orient_last_edges()
        self._orient_last_corners()
        self._permute_last_corners()
        self._permute_last_edges()
        if not self.env.is_solved(self.state):
            raise InternalSolverError("solver finished with an unsolved cube")
        return self.moves


def beginner_trajectory(state: str) -> Trajectory:
    moves = BeginnerSolver().solve(state)
    return from_states_actions(RubikEnv(), EXPERT_NAME, state, moves)

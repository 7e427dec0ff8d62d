import numpy as np
import pytest

from subsearch.envs.rubik import (
    CORNER_SLOTS, EDGE_SLOTS, MOVE_NAMES, MOVE_SRC, SOLVED, RubikEnv,
    apply_move, apply_moves, bfs_distance_table, inverse_move, scramble,
)
from subsearch.errors import InvalidAction, InvalidState, ResourceLimit

ENV = RubikEnv()


def test_solved_string_layout():
    assert SOLVED == "y" * 9 + "b" * 9 + "r" * 9 + "g" * 9 + "o" * 9 + "w" * 9
    assert ENV.is_solved(SOLVED)


def test_slot_tables_cover_every_sticker_once():
    centers = {9 * f + 4 for f in range(6)}
    slot_stickers = [i for slot in EDGE_SLOTS for i in slot]
    slot_stickers += [i for slot in CORNER_SLOTS for i in slot]
    assert len(EDGE_SLOTS) == 12 and len(CORNER_SLOTS) == 8
    assert sorted(slot_stickers + sorted(centers)) == list(range(54))


def test_moves_are_permutations_of_order_four():
    for src in MOVE_SRC:
        assert sorted(src) == list(range(54))
        state = SOLVED
        seen = []
        for _ in range(4):
            state = "".join(state[i] for i in src)
            seen.append(state)
        assert seen[-1] == SOLVED
        assert SOLVED not in seen[:-1]


def test_inverse_cancels_on_random_states():
    rng = np.random.default_rng(7)
    state = SOLVED
    for _ in range(200):
        move = int(rng.integers(12))
        assert apply_move(apply_move(state, move), inverse_move(move)) == state
        state = apply_move(state, move)


def test_step_preserves_color_counts_and_validity():
    state, moves = scramble(123, 40)
    for color in "ybrgow":
        assert state.count(color) == 9
    ENV.validate(state)
    assert apply_moves(state, [inverse_move(m) for m in reversed(moves)]) == SOLVED


def test_solved_plus_move_then_inverse_is_solved():
    for move in range(12):
        assert apply_move(apply_move(SOLVED, move), inverse_move(move)) == SOLVED
        assert not ENV.is_solved(apply_move(SOLVED, move))


def test_out_of_range_action_rejected():
    with pytest.raises(InvalidAction):
        ENV.step(SOLVED, 999)


def test_five_scramble_replays_back_to_solved():
    state, moves = scramble(42, 5)
    assert len(moves) == 5
    replay = apply_moves(state, [inverse_move(m) for m in reversed(moves)])
    assert replay == SOLVED


def test_scramble_depth_zero_and_determinism():
    state, moves = scramble(5, 0)
    assert state == SOLVED and moves == []
    a = scramble(99, 20)
    b = scramble(99, 20)
    assert a == b
    assert len(a[1]) == 20


def test_one_move_scrambles_cover_all_twelve_states():
    # Independent enumeration oracle: all 12 quarter turns from solved.
    expected = {apply_move(SOLVED, m) for m in range(12)}
    assert len(expected) == 12
    got = set()
    seed = 0
    while got != expected:
        state, _ = scramble(seed, 1)
        got.add(state)
        seed += 1
        assert seed < 1000
    assert got == expected


def _enumerate_distances(radius):
    # Brute-force oracle, independent of bfs_distance_table: expand every
    # move sequence up to `radius` and keep the first depth per state.
    dist = {SOLVED: 0}
    layer = [SOLVED]
    for depth in range(1, radius + 1):
        nxt = []
        for state in layer:
            for move in range(12):
                succ = apply_move(state, move)
                if succ not in dist:
                    dist[succ] = depth
                    nxt.append(succ)
        layer = nxt
    return dist


def test_bfs_distance_table_matches_enumeration_oracle():
    oracle = _enumerate_distances(3)
    table = bfs_distance_table(3)
    assert table == oracle
    counts = [sum(1 for d in table.values() if d == k) for k in range(4)]
    assert counts == [1, 12, 114, 1068]


def test_bfs_distance_table_limits():
    with pytest.raises(ValueError):
        bfs_distance_table(8)
    with pytest.raises(ResourceLimit):
        bfs_distance_table(3, max_states=50)


def test_validate_rejects_corrupted_states():
    with pytest.raises(InvalidState):
        ENV.validate("y" * 54)
    # Swap two stickers of one edge cubie: flips a single edge.
    ref, other = EDGE_SLOTS[0]
    cells = list(SOLVED)
    cells[ref], cells[other] = cells[other], cells[ref]
    with pytest.raises(InvalidState):
        ENV.validate("".join(cells))
    # Twist one corner in place.
    a, b, c = CORNER_SLOTS[0]
    cells = list(SOLVED)
    cells[a], cells[b], cells[c] = SOLVED[c], SOLVED[a], SOLVED[b]
    with pytest.raises(InvalidState):
        ENV.validate("".join(cells))


def test_validate_accepts_random_scrambles():
    for seed in range(30):
        state, _ = scramble(seed, 30)
        ENV.validate(state)


def test_move_names_align_with_indices():
    assert len(MOVE_NAMES) == 12
    assert MOVE_NAMES[0] == "U" and MOVE_NAMES[1] == "U'"
    for a in range(12):
        assert inverse_move(a) == a ^ 1


def test_inflated_env_aliases_base_actions():
    from subsearch.envs.inflate import InflatedEnv, inflate

    env = InflatedEnv(ENV, 100)
    assert env.action_count == 1200
    state, _ = scramble(4, 7)
    for base in range(12):
        successors = {env.step(state, base + 12 * k) for k in range(100)}
        assert successors == {ENV.step(state, base)}
    assert env.step(state, 0) == env.step(state, 12) == env.step(state, 24)
    assert inflate(ENV, 1) is ENV
    wrapped = inflate(ENV, 20)
    assert wrapped.is_solved(SOLVED)
    # successor multiset of an expansion = base successor set with multiplicity
    succ = [wrapped.step(state, a) for a in range(wrapped.action_count)]
    base_succ = [ENV.step(state, a) for a in range(12)]
    assert sorted(succ) == sorted(base_succ * 20)

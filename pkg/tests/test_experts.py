import statistics

import pytest

from subsearch.envs.npuzzle import NPuzzleEnv, bfs_distance_table, shuffle, solved_state
from subsearch.envs.rubik import SOLVED, RubikEnv, scramble
from subsearch.envs.sokoban import SokobanEnv, generate_board, parse_level
from subsearch.errors import Unsolved
from subsearch.experts.npuzzle_solver import TileSolver, npuzzle_trajectory
from subsearch.experts.rubik_beginner import BeginnerSolver, beginner_trajectory
from subsearch.experts.rubik_random import random_reversal_trajectory
from subsearch.experts.sokoban_astar import sokoban_trajectory, solve_sokoban


class TestRubikRandom:
    def test_depth_one(self):
        traj = random_reversal_trajectory(3, 1)
        assert len(traj) == 1
        assert traj.states[-1] == SOLVED

    def test_depth_twenty_replays(self):
        env = RubikEnv()
        traj = random_reversal_trajectory(11, 20)
        assert len(traj) == 20
        traj.validate(env)

    def test_deterministic(self):
        a = random_reversal_trajectory(5, 10)
        b = random_reversal_trajectory(5, 10)
        assert a.to_json() == b.to_json()


class TestRubikBeginner:
    def test_solved_input_empty(self):
        assert BeginnerSolver().solve(SOLVED) == []

    def test_random_scrambles_all_solved(self):
        env = RubikEnv()
        for seed in range(60):
            state, _ = scramble(seed, 20)
            traj = beginner_trajectory(state)
            traj.validate(env)

    def test_lengths_far_above_random_expert(self):
        lengths = []
        for seed in range(40):
            state, _ = scramble(seed, 20)
            lengths.append(len(beginner_trajectory(state)))
        assert statistics.mean(lengths) > 3 * 20

    def test_stage_postconditions_hold(self):
        # After each stage, the stickers owned by stages so far are solved.
        solver = BeginnerSolver()
        state, _ = scramble(99, 20)
        solver.env.validate(state)
        solver.state, solver.moves = state, []

        def solved_at(positions):
            return all(solver.state[i] == SOLVED[i] for i in positions)

        from subsearch.experts.rubik_beginner import (
            CORNER_NAME_TO_SLOT, EDGE_NAME_TO_SLOT,
        )
        cross = [i for n in ("DF", "DR", "DB", "DL") for i in EDGE_NAME_TO_SLOT[n]]
        corners = [i for n in CORNER_NAME_TO_SLOT if "D" in n
                   for i in CORNER_NAME_TO_SLOT[n]]
        middle = [i for n in ("FR", "BR", "BL", "FL") for i in EDGE_NAME_TO_SLOT[n]]

        solver._cross()
        assert solved_at(cross)
        solver._first_corners()
        assert solved_at(cross + corners)
        solver._middle_edges()
        assert solved_at(cross + corners + middle)
        solver._orient_last_edges()
        assert solved_at(cross + corners + middle)
        solver._orient_last_corners()
        assert solved_at(cross + corners + middle)  # twist damage repaired
        solver._permute_last_corners()
        solver._permute_last_edges()
        assert solver.env.is_solved(solver.state)


class TestNPuzzleExpert:
    def test_solved_input_empty(self):
        assert TileSolver(4).solve(solved_state(4)) == []

    @pytest.mark.parametrize("side", [3, 4, 5])
    def test_random_instances_solved(self, side):
        env = NPuzzleEnv(side)
        for seed in range(12):
            state = shuffle(env, seed, 40 * side)
            traj = npuzzle_trajectory(state, side)
            traj.validate(env)

    def test_length_at_least_optimal_on_3x3(self):
        env = NPuzzleEnv(3)
        table = bfs_distance_table(3)
        for seed in range(15):
            state = shuffle(env, seed, 50)
            traj = npuzzle_trajectory(state, 3)
            assert len(traj) >= table[state]


class TestSokobanExpert:
    def test_one_push_board(self):
        board, h, w = parse_level("#####\n#@$.#\n#####")
        env = SokobanEnv(h, w)
        traj = sokoban_trajectory(env, board)
        assert len(traj) == 1
        traj.validate(env)

    def test_generated_boards_mostly_solved(self):
        solved = 0
        for seed in range(20):
            env = SokobanEnv(8, 8)
            board = generate_board(seed, height=8, width=8, n_boxes=2, pulls=15)
            try:
                traj = sokoban_trajectory(env, board, node_cap=30_000)
            except Unsolved:
                continue
            traj.validate(env)
            solved += 1
        assert solved >= 19  # generator guarantees solvability; cap is generous

    def test_node_cap_enforced(self):
        env = SokobanEnv(10, 10)
        board = generate_board(0, height=10, width=10, n_boxes=3, pulls=30)
        with pytest.raises(Unsolved):
            solve_sokoban(env, board, node_cap=3)

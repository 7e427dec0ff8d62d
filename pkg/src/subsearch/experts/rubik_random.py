"""Random-reversal Rubik expert.

Scrambles a solved cube with n random quarter turns and emits the reversed
move sequence (each move replaced by its inverse) as the solution.  Random
moves are not guaranteed to increase the distance from solved, so these
trajectories are sub-optimal and may contain loops; that is intended.
"""

from __future__ import annotations

from subsearch.envs.rubik import RubikEnv, inverse_move, scramble
from subsearch.trajectory import Trajectory, from_states_actions

EXPERT_NAME = "rubik-random"


def random_reversal_trajectory(seed, scramble_depth: int) -> Trajectory:
    if scramble_depth < 1:
        raise ValueError("scramble_depth must be >= 1")
    start, moves = scramble(seed, scramble_depth)
    solution = [inverse_move(m) for m in reversed(moves)]
    return from_states_actions(RubikEnv(), EXPERT_NAME, start, solution)

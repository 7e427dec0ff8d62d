from subsearch.experts.rubik_beginner import BeginnerSolver, beginner_trajectory
from subsearch.experts.rubik_random import random_reversal_trajectory
from subsearch.experts.npuzzle_solver import TileSolver, npuzzle_trajectory
from subsearch.experts.sokoban_astar import solve_sokoban, sokoban_trajectory

__all__ = [
    "BeginnerSolver", "beginner_trajectory", "random_reversal_trajectory",
    "TileSolver", "npuzzle_trajectory", "solve_sokoban", "sokoban_trajectory",
]

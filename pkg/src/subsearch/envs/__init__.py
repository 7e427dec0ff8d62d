from subsearch.envs.base import Environment
from subsearch.envs.inflate import InflatedEnv
from subsearch.envs.npuzzle import NPuzzleEnv
from subsearch.envs.rubik import RubikEnv
from subsearch.envs.sokoban import SokobanEnv

__all__ = ["Environment", "InflatedEnv", "NPuzzleEnv", "RubikEnv", "SokobanEnv"]

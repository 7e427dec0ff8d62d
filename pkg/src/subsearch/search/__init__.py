from subsearch.search.lowlevel import AStarConfig, BestFSConfig, astar_search, best_first_search
from subsearch.search.mcts import MCTSConfig, mcts_solve
from subsearch.search.result import SearchResult, TreeStats
from subsearch.selection import ChildSelector, select_children
from subsearch.search.subgoal import SubgoalSearchConfig, adasubs_solve, ksubs_solve

__all__ = [
    "BestFSConfig", "AStarConfig", "MCTSConfig", "SubgoalSearchConfig",
    "best_first_search", "astar_search", "mcts_solve", "adasubs_solve",
    "ksubs_solve", "SearchResult", "TreeStats", "ChildSelector",
    "select_children",
]

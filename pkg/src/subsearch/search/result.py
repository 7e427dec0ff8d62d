"""Search outcome record shared by all algorithms."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

SOLVED = "solved"
BUDGET_EXHAUSTED = "budget_exhausted"
FRONTIER_EMPTY = "frontier_empty"


@dataclass
class TreeStats:
    tree_size: int = 0
    leaf_count: int = 0
    branching_factor: float = 0.0
    solution_length: int | None = None
    subgoals_on_path: int | None = None


def tree_stats(n_nodes: int, children_counts: dict[str, int],
               solution_length: int | None,
               subgoals_on_path: int | None = None) -> TreeStats:
    internal = [c for c in children_counts.values() if c > 0]
    branching = sum(internal) / len(internal) if internal else 0.0
    return TreeStats(
        tree_size=n_nodes,
        leaf_count=n_nodes - len(internal),
        branching_factor=branching,
        solution_length=solution_length,
        subgoals_on_path=subgoals_on_path,
    )


@dataclass
class SearchResult:
    status: str
    solution_actions: list[int] | None
    nodes_total: int
    nodes_high_level: int
    nodes_low_level: int
    tree: TreeStats
    expanded: list[str] = field(default_factory=list)
    visited: list[str] = field(default_factory=list)
    subgoal_ks_used: dict[int, int] | None = None

    @property
    def solved(self) -> bool:
        return self.status == SOLVED

    def to_json(self, include_states: bool = False) -> str:
        obj = {
            "status": self.status,
            "solution_actions": self.solution_actions,
            "nodes_total": self.nodes_total,
            "nodes_high_level": self.nodes_high_level,
            "nodes_low_level": self.nodes_low_level,
            "tree_size": self.tree.tree_size,
            "leaf_count": self.tree.leaf_count,
            "branching_factor": self.tree.branching_factor,
            "solution_length": self.tree.solution_length,
            "subgoals_on_path": self.tree.subgoals_on_path,
        }
        if self.subgoal_ks_used is not None:
            obj["subgoal_ks_used"] = sorted(self.subgoal_ks_used.items())
        if include_states:
            obj["expanded"] = self.expanded
            obj["visited"] = self.visited
        return json.dumps(obj, sort_keys=True)


def result_from_summary(obj: dict) -> SearchResult:
    """Rebuild a (stateless) SearchResult from its JSON summary."""
    return SearchResult(
        status=obj["status"],
        solution_actions=obj.get("solution_actions"),
        nodes_total=obj["nodes_total"],
        nodes_high_level=obj["nodes_high_level"],
        nodes_low_level=obj["nodes_low_level"],
        tree=TreeStats(
            tree_size=obj.get("tree_size", 0),
            leaf_count=obj.get("leaf_count", 0),
            branching_factor=obj.get("branching_factor", 0.0),
            solution_length=obj.get("solution_length"),
            subgoals_on_path=obj.get("subgoals_on_path"),
        ),
        subgoal_ks_used=(dict(obj["subgoal_ks_used"])
                         if obj.get("subgoal_ks_used") else None),
    )

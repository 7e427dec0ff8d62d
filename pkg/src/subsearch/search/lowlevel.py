"""Best-first search and A*.

Both keep a priority queue over value estimates, expand the policy's
selected children, deduplicate on a seen-set, and return as soon as a
solved child is generated.  A* keys the queue on f = lambda * depth +
max(0, -value); with lambda = 0 its expansion order is identical to
BestFS under the shared (key, insertion counter) tie-breaking, which the
test suite asserts exactly.

Every generated child is charged to the budget ledger before anything
else happens to it; for these low-level searches every node is charged as
a high-level node, so nodes_high_level equals nodes_total.
"""

from __future__ import annotations

import heapq
import logging
from dataclasses import dataclass

from subsearch.envs.base import Environment
from subsearch.errors import MoveBlocked
from subsearch.guidance.policies import Policy
from subsearch.guidance.values import ValueEstimator
from subsearch.ledger import HIGH_LEVEL, BudgetExhausted, BudgetLedger
from subsearch.search.result import (
    BUDGET_EXHAUSTED, FRONTIER_EMPTY, SOLVED, SearchResult, tree_stats,
)
from subsearch.selection import ChildSelector, select_children

log = logging.getLogger(__name__)


@dataclass
class BestFSConfig:
    selector: ChildSelector
    budget_cap: int


@dataclass
class AStarConfig:
    selector: ChildSelector
    budget_cap: int
    lam: float = 0.1

    def __post_init__(self):
        if self.lam < 0:
            raise ValueError("depth-cost weight must be >= 0")


class _SolvedFound(Exception):
    pass


def _reconstruct(parents: dict[str, tuple[str, int]], state: str) -> list[int]:
    actions = []
    while parents[state] is not None:
        state, action = parents[state]
        actions.append(action)
    actions.reverse()
    return actions


def _run(env: Environment, root: str, value: ValueEstimator, policy: Policy,
         selector: ChildSelector, budget_cap: int, key_fn) -> SearchResult:
    ledger = BudgetLedger(budget_cap)
    ledger.charge(root, HIGH_LEVEL)
    expanded: list[str] = []
    children_counts: dict[str, int] = {}
    parents: dict[str, tuple[str, int] | None] = {root: None}
    solution: list[int] | None = None

    if env.is_solved(root):
        status, solution = SOLVED, []
    else:
        counter = 0
        heap = [(key_fn(value.value(root), 0), counter, root, 0)]
        seen = {root}
        status = FRONTIER_EMPTY
        try:
            while heap:
                _, _, state, depth = heapq.heappop(heap)
                expanded.append(state)
                probs = policy.probs(state)
                for action in select_children(probs, selector):
                    try:
                        child = env.step(state, action)
                    except MoveBlocked:
                        continue
                    if child in seen:
                        continue
                    ledger.charge(child, HIGH_LEVEL)
                    seen.add(child)
                    parents[child] = (state, action)
                    children_counts[state] = children_counts.get(state, 0) + 1
                    counter += 1
                    heapq.heappush(heap, (key_fn(value.value(child), depth + 1),
                                          counter, child, depth + 1))
                    if env.is_solved(child):
                        raise _SolvedFound(child)
        except BudgetExhausted:
            status = BUDGET_EXHAUSTED
        except _SolvedFound as found:
            status = SOLVED
            solution = _reconstruct(parents, found.args[0])

    return SearchResult(
        status=status,
        solution_actions=solution,
        nodes_total=ledger.total_visited,
        nodes_high_level=ledger.high_level_visited,
        nodes_low_level=ledger.low_level_visited,
        tree=tree_stats(len(parents), children_counts,
                        len(solution) if solution is not None else None),
        expanded=expanded,
        visited=ledger.visited,
    )


def best_first_search(env: Environment, root: str, value: ValueEstimator,
                      policy: Policy, cfg: BestFSConfig) -> SearchResult:
    return _run(env, root, value, policy, cfg.selector, cfg.budget_cap,
                key_fn=lambda v, depth: -v)


def astar_search(env: Environment, root: str, value: ValueEstimator,
                 policy: Policy, cfg: AStarConfig) -> SearchResult:
    clamped = False

    def key_fn(v, depth):
        nonlocal clamped
        h = -v
        if h < 0:
            if not clamped:
                log.warning("negative heuristic clamped to 0 (estimate above solved)")
                clamped = True
            h = 0.0
        return cfg.lam * depth + h

    return _run(env, root, value, policy, cfg.selector, cfg.budget_cap, key_fn)

"""Subgoal search: kSubS and AdaSubS.

The priority queue is ordered lexicographically by (generator distance k,
value estimate), popped max-first, so longer-distance generators run
first and retraction to shorter distances happens only when the longer
queue is exhausted.  Each popped node asks its generator for proposals;
proposals whose state is already known are skipped for free, every other
proposal is handed to the conditional low-level policy, whose reaching
states are charged low-level whether or not the subgoal is accepted.
Accepted subgoals cost one extra high-level charge (the generator call)
and are pushed back for every generator distance.

kSubS is AdaSubS with a single generator.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from subsearch.envs.base import Environment
from subsearch.guidance.cllp import CLLP
from subsearch.guidance.generators import SubgoalGenerator
from subsearch.guidance.values import ValueEstimator
from subsearch.ledger import HIGH_LEVEL, BudgetExhausted, BudgetLedger
from subsearch.search.result import (
    BUDGET_EXHAUSTED, FRONTIER_EMPTY, SOLVED, SearchResult, tree_stats,
)


@dataclass
class SubgoalSearchConfig:
    generators: list[tuple[int, SubgoalGenerator]]  # ordered (k, generator)
    cllp: CLLP
    budget_cap: int

    def __post_init__(self):
        if not self.generators:
            raise ValueError("need at least one generator")
        ks = [k for k, _ in self.generators]
        if len(set(ks)) != len(ks):
            raise ValueError("generator distances must be distinct")


@dataclass
class _Segment:
    parent: str
    actions: list[int]
    k: int


class _SolvedFound(Exception):
    pass


def extract_low_level_trajectory(segments: dict[str, _Segment],
                                 goal: str) -> tuple[list[int], int]:
    """Concatenate stored low-level segments from the root to ``goal``.

    Returns (actions, number of segments on the path)."""
    chunks = []
    state = goal
    while state in segments:
        seg = segments[state]
        chunks.append(seg.actions)
        state = seg.parent
    chunks.reverse()
    return [a for chunk in chunks for a in chunk], len(chunks)


def adasubs_solve(env: Environment, root: str, value: ValueEstimator,
                  cfg: SubgoalSearchConfig) -> SearchResult:
    ledger = BudgetLedger(cfg.budget_cap)
    ledger.charge(root, HIGH_LEVEL)
    segments: dict[str, _Segment] = {}
    children_counts: dict[str, int] = {}
    ks_used: dict[int, int] = {}
    expanded: list[str] = []
    solution: list[int] | None = None
    subgoals_on_path: int | None = None
    generators = dict(cfg.generators)

    if env.is_solved(root):
        status, solution, subgoals_on_path = SOLVED, [], 0
    else:
        status = FRONTIER_EMPTY
        counter = 0
        root_value = value.value(root)
        heap: list[tuple] = []
        for k, _ in cfg.generators:
            heap.append((-k, -root_value, counter, root))
            counter += 1
        heapq.heapify(heap)
        seen = {root}
        try:
            while heap:
                neg_k, _, _, state = heapq.heappop(heap)
                k = -neg_k
                expanded.append(state)
                for proposal in generators[k].propose(state):
                    subgoal = proposal.subgoal
                    if subgoal in seen:
                        continue
                    reach = cfg.cllp.reach(state, proposal, k, ledger)
                    if reach is None:
                        continue  # discarded, but its budget stays spent
                    if reach.solved_early and reach.end_state != subgoal:
                        # A low-level state mid-segment is already solved.
                        segments[reach.end_state] = _Segment(state, reach.actions, k)
                        raise _SolvedFound(reach.end_state)
                    ledger.charge(subgoal, HIGH_LEVEL)
                    seen.add(subgoal)
                    segments[subgoal] = _Segment(state, reach.actions, k)
                    children_counts[state] = children_counts.get(state, 0) + 1
                    ks_used[k] = ks_used.get(k, 0) + 1
                    if env.is_solved(subgoal):
                        raise _SolvedFound(subgoal)
                    subgoal_value = value.value(subgoal)
                    for k_i, _ in cfg.generators:
                        heapq.heappush(heap, (-k_i, -subgoal_value, counter, subgoal))
                        counter += 1
        except BudgetExhausted:
            status = BUDGET_EXHAUSTED
        except _SolvedFound as found:
            status = SOLVED
            solution, subgoals_on_path = extract_low_level_trajectory(
                segments, found.args[0])

    n_high_nodes = 1 + sum(ks_used.values())
    return SearchResult(
        status=status,
        solution_actions=solution,
        nodes_high_level=ledger.high_level_visited,
        nodes_low_level=ledger.low_level_visited,
        nodes_total=ledger.total_visited,
        tree=tree_stats(n_high_nodes, children_counts,
                        len(solution) if solution is not None else None,
                        subgoals_on_path),
        expanded=expanded,
        visited=ledger.visited,
        subgoal_ks_used=ks_used,
    )


def ksubs_solve(env: Environment, root: str, value: ValueEstimator,
                k: int, generator: SubgoalGenerator, cllp: CLLP,
                budget_cap: int) -> SearchResult:
    cfg = SubgoalSearchConfig(generators=[(k, generator)], cllp=cllp,
                              budget_cap=budget_cap)
    return adasubs_solve(env, root, value, cfg)

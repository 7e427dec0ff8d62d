"""Conditional low-level policy: reach a proposed subgoal within k steps.

Proposals carrying a witness are verified step by step; each state the
verification materializes is charged to the ledger as a low-level node.
Proposals without a witness trigger a bounded best-first search guided by
Hamming distance to the subgoal encoding.  Either way, a proposal that
cannot be reached returns None (Unreachable) and the budget it consumed
stays consumed.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field

from subsearch.envs.base import Environment
from subsearch.errors import MoveBlocked
from subsearch.guidance.generators import SubgoalProposal
from subsearch.ledger import LOW_LEVEL, BudgetLedger


@dataclass
class ReachResult:
    actions: list[int] = field(default_factory=list)
    end_state: str = ""
    solved_early: bool = False


def _hamming(a: str, b: str) -> int:
    return sum(1 for x, y in zip(a, b) if x != y)


class CLLP:
    def __init__(self, env: Environment, cap_multiple: int = 4):
        self.env = env
        self.cap_multiple = cap_multiple

    def reach(self, source: str, proposal: SubgoalProposal, k: int,
              ledger: BudgetLedger) -> ReachResult | None:
        if proposal.subgoal == source:
            return ReachResult(actions=[], end_state=source,
                               solved_early=self.env.is_solved(source))
        if proposal.witness is not None:
            return self._verify_witness(source, proposal, k, ledger)
        return self._search(source, proposal.subgoal, k, ledger)

    def _verify_witness(self, source, proposal, k, ledger):
        state = source
        actions = []
        for action in proposal.witness[:k]:
            try:
                state = self.env.step(state, action)
            except MoveBlocked:
                return None
            ledger.charge(state, LOW_LEVEL)
            actions.append(action)
            if self.env.is_solved(state):
                return ReachResult(actions, state, solved_early=True)
            if state == proposal.subgoal:
                return ReachResult(actions, state)
        return None

    def _search(self, source, goal, k, ledger):
        cap = self.cap_multiple * k
        counter = 0
        heap = [(_hamming(source, goal), counter, source, [])]
        seen = {source}
        materialized = 0
        while heap:
            _, _, state, path = heapq.heappop(heap)
            if len(path) >= k:
                continue
            for action in self.env.applicable_actions(state):
                child = self.env.step(state, action)
                if child in seen:
                    continue
                seen.add(child)
                ledger.charge(child, LOW_LEVEL)
                materialized += 1
                child_path = path + [action]
                if child == goal:
                    return ReachResult(child_path, child,
                                       solved_early=self.env.is_solved(child))
                if self.env.is_solved(child):
                    return ReachResult(child_path, child, solved_early=True)
                if materialized >= cap:
                    return None
                counter += 1
                heapq.heappush(heap, (_hamming(child, goal), counter, child, child_path))
        return None

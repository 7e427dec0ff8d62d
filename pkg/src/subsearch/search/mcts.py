"""Single-player AlphaZero-style Monte Carlo tree search.

Policy and value estimators replace rollouts: expanding a leaf charges and
creates all its children with policy priors, the leaf is scored by the
value estimator, and the score is backed up with a discount and a -1 step
cost per edge (consistent with values being negated remaining steps).
After each simulation batch one real move is committed, sampled from root
visit counts at temperature tau (tau = 0 picks the argmax).  Generating a
solved state anywhere ends the episode immediately with the action path
to it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from subsearch.envs.base import Environment
from subsearch.errors import MoveBlocked
from subsearch.guidance.policies import Policy
from subsearch.guidance.values import ValueEstimator
from subsearch.ledger import HIGH_LEVEL, BudgetExhausted, BudgetLedger
from subsearch.search.result import (
    BUDGET_EXHAUSTED, FRONTIER_EMPTY, SOLVED, SearchResult, tree_stats,
)


@dataclass
class MCTSConfig:
    n_simulations: int
    budget_cap: int
    c_puct: float = 1.0
    temperature: float = 0.0
    gamma: float = 1.0
    max_episode_steps: int = 50
    seed: int = 0

    def __post_init__(self):
        if self.n_simulations < 1:
            raise ValueError("n_simulations must be >= 1")
        if not 0 < self.gamma <= 1:
            raise ValueError("gamma must be in (0, 1]")


class MCTSNode:
    __slots__ = ("state", "prior", "children", "actions", "visits", "value_sum",
                 "no_children", "est")

    def __init__(self, state: str, prior: float):
        self.state = state
        self.prior = prior
        self.children: list[MCTSNode] | None = None
        self.actions: list[int] | None = None
        self.visits = 0
        self.value_sum = 0.0
        self.no_children = False  # expanded but childless (dead position)
        self.est: float | None = None  # cached estimate: one value query per node

    @property
    def q(self) -> float:
        return self.value_sum / self.visits if self.visits else 0.0

    def expandable(self) -> bool:
        return self.children is None and not self.no_children


class _SolvedFound(Exception):
    pass


def _select_child(node: MCTSNode, c_puct: float) -> tuple[int, MCTSNode]:
    sqrt_n = np.sqrt(max(1, node.visits))
    best_i, best_score = 0, None
    for i, child in enumerate(node.children):
        score = child.q + c_puct * child.prior * sqrt_n / (1 + child.visits)
        if best_score is None or score > best_score:
            best_i, best_score = i, score
    return best_i, node.children[best_i]


def mcts_solve(env: Environment, root: str, value: ValueEstimator,
               policy: Policy, cfg: MCTSConfig, on_batch=None) -> SearchResult:
    ledger = BudgetLedger(cfg.budget_cap)
    charged: set[str] = set()

    def charge(state: str) -> None:
        if state not in charged:
            ledger.charge(state, HIGH_LEVEL)
            charged.add(state)

    def expand(node: MCTSNode, actions_to_node: list[int]) -> None:
        probs = policy.probs(node.state)
        children, actions = [], []
        for action in range(env.action_count):
            if probs[action] <= 0:
                continue
            try:
                child_state = env.step(node.state, action)
            except MoveBlocked:
                continue
            charge(child_state)
            children_counts[node.state] = children_counts.get(node.state, 0) + 1
            if env.is_solved(child_state):
                raise _SolvedFound(actions_to_node + [action])
            children.append(MCTSNode(child_state, float(probs[action])))
            actions.append(action)
        if children:
            node.children, node.actions = children, actions
        else:
            node.no_children = True

    children_counts: dict[str, int] = {}
    committed: list[int] = []
    status = FRONTIER_EMPTY
    solution: list[int] | None = None
    rng = np.random.default_rng(cfg.seed)

    charge(root)
    try:
        if env.is_solved(root):
            raise _SolvedFound([])
        current = root
        for _ in range(cfg.max_episode_steps):
            tree = MCTSNode(current, prior=1.0)
            for _ in range(cfg.n_simulations):
                node, path = tree, [tree]
                descent: list[int] = []
                while node.children is not None:
                    i, node = _select_child(path[-1], cfg.c_puct)
                    descent.append(path[-1].actions[i])
                    path.append(node)
                if node.expandable():
                    expand(node, committed + descent)
                if node.est is None:
                    node.est = value.value(node.state)
                backup = node.est
                for n in reversed(path):
                    n.visits += 1
                    n.value_sum += backup
                    backup = cfg.gamma * backup - 1.0
            if on_batch is not None:
                on_batch(tree)
            if tree.children is None:
                break  # dead position: nothing to commit
            move_i = _pick_move(tree, cfg.temperature, rng)
            committed.append(tree.actions[move_i])
            current = tree.children[move_i].state
    except BudgetExhausted:
        status = BUDGET_EXHAUSTED
    except _SolvedFound as found:
        status = SOLVED
        solution = found.args[0]

    return SearchResult(
        status=status,
        solution_actions=solution,
        nodes_total=ledger.total_visited,
        nodes_high_level=ledger.high_level_visited,
        nodes_low_level=ledger.low_level_visited,
        tree=tree_stats(len(charged), children_counts,
                        len(solution) if solution is not None else None),
        expanded=[],
        visited=ledger.visited,
    )


def _pick_move(tree: MCTSNode, temperature: float, rng) -> int:
    visits = np.array([c.visits for c in tree.children], dtype=float)
    if temperature == 0:
        return int(np.argmax(visits))
    weights = visits ** (1.0 / temperature)
    weights /= weights.sum()
    return int(rng.choice(len(weights), p=weights))

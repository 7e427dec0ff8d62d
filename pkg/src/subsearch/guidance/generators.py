"""Subgoal generators.

A generator proposes future states for the search to adopt as subgoals.
Expert-rollout generators run an expert solver for k steps from the query
state and attach the action path as a witness, so every proposal is
reachable by construction; whether it is worth reaching is the search's
problem.  Rollout experts may fail on states outside their competence
(e.g. a recorded-path expert queried off its path); failed experts simply
contribute no proposal.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from subsearch.envs.base import Environment
from subsearch.errors import InternalSolverError, MoveBlocked, SubsearchError
from subsearch.experts.rubik_beginner import BeginnerSolver
from subsearch.guidance.policies import Policy
from subsearch.selection import ChildSelector, select_children


@dataclass
class SubgoalProposal:
    subgoal: str
    k: int
    witness: list[int] | None = None


class SubgoalGenerator:
    k: int

    def propose(self, state: str) -> list[SubgoalProposal]:
        raise NotImplementedError


class BeginnerRollout:
    """Rollout expert backed by the layer-by-layer cube solver."""

    name = "beginner"

    def __init__(self):
        self.solver = BeginnerSolver()

    def rollout(self, state: str, k: int) -> list[int] | None:
        try:
            moves = self.solver.solve(state)
        except InternalSolverError:
            return None
        return moves[:k]


class ReversePathExpert:
    """Recorded-path expert: competent exactly on the states of one known
    solution path (e.g. the inverse of an instance's scramble)."""

    name = "reverse-path"

    def __init__(self, states: list[str], actions: list[int]):
        self.suffix = {state: actions[i:] for i, state in enumerate(states)}

    def rollout(self, state: str, k: int) -> list[int] | None:
        rest = self.suffix.get(state)
        if rest is None:
            return None
        return rest[:k]


class SolverRollout:
    """Rollout expert backed by any full solver function
    ``solve(state) -> list[int]``; failures yield no proposal."""

    def __init__(self, name: str, solve_fn):
        self.name = name
        self.solve_fn = solve_fn

    def rollout(self, state: str, k: int) -> list[int] | None:
        try:
            moves = self.solve_fn(state)
        except SubsearchError:
            return None
        return moves[:k] if moves else None


class PolicyRollout:
    """Greedy policy rollout: follows the argmax action for k steps."""

    name = "policy"

    def __init__(self, env: Environment, policy: Policy):
        self.env = env
        self.policy = policy

    def rollout(self, state: str, k: int) -> list[int] | None:
        actions = []
        for _ in range(k):
            if self.env.is_solved(state):
                break
            probs = self.policy.probs(state)
            if probs.sum() == 0:
                break
            action = int(np.argmax(probs))
            try:
                state = self.env.step(state, action)
            except MoveBlocked:
                return actions or None
            actions.append(action)
        return actions or None


class ExpertRolloutGenerator(SubgoalGenerator):
    """One proposal per expert: the expert's state k steps ahead, with the
    action path attached as a witness."""

    def __init__(self, env: Environment, experts: list, k: int):
        if k < 1:
            raise ValueError("k must be >= 1")
        self.env = env
        self.experts = experts
        self.k = k

    def propose(self, state: str) -> list[SubgoalProposal]:
        if self.env.is_solved(state):
            return []
        proposals = []
        for expert in self.experts:
            actions = expert.rollout(state, self.k)
            if not actions:
                continue
            subgoal = state
            witness = []
            for action in actions:
                try:
                    subgoal = self.env.step(subgoal, action)
                except MoveBlocked:
                    break
                witness.append(action)
                if self.env.is_solved(subgoal):
                    break
            if witness:
                proposals.append(SubgoalProposal(subgoal, self.k, witness))
        return proposals


class ChildMirrorGenerator(SubgoalGenerator):
    """Distance-1 generator that proposes exactly the children BestFS would
    select from the policy, each with a one-action witness."""

    def __init__(self, env: Environment, policy: Policy, selector: ChildSelector):
        self.env = env
        self.policy = policy
        self.selector = selector
        self.k = 1

    def propose(self, state: str) -> list[SubgoalProposal]:
        proposals = []
        for action in select_children(self.policy.probs(state), self.selector):
            try:
                child = self.env.step(state, action)
            except MoveBlocked:
                continue
            proposals.append(SubgoalProposal(child, 1, [action]))
        return proposals

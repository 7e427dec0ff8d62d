"""Sokoban expert: action-level A* with a box-target matching heuristic.

Stands in for a learned agent when building offline datasets.  Solutions
are valid but not optimal in general; instances that exceed the node cap
raise Unsolved and are dropped from datasets (logged by the caller).
"""

from __future__ import annotations

import heapq
from itertools import permutations

from subsearch.envs.sokoban import SokobanEnv
from subsearch.errors import MoveBlocked, Unsolved
from subsearch.trajectory import Trajectory, from_states_actions

EXPERT_NAME = "sokoban-astar"


def matching_heuristic(env: SokobanEnv, state: str) -> int:
    """Min-cost Manhattan assignment of boxes to targets (admissible)."""
    w = env.width
    boxes = [divmod(p, w) for p in env.box_positions(state)]
    targets = [divmod(p, w) for p in env.target_positions(state)]
    best = None
    for perm in permutations(range(len(targets)), len(boxes)):
        cost = sum(abs(br - targets[t][0]) + abs(bc - targets[t][1])
                   for (br, bc), t in zip(boxes, perm))
        if best is None or cost < best:
            best = cost
    return best or 0


def solve_sokoban(env: SokobanEnv, board: str, node_cap: int = 60_000) -> list[int]:
    """A* over player actions; raises Unsolved when the cap is hit."""
    if env.is_solved(board):
        return []
    counter = 0
    heap = [(matching_heuristic(env, board), 0, counter, board)]
    parents: dict[str, tuple[str, int]] = {board: None}
    expanded = 0
    while heap:
        _, g, _, state = heapq.heappop(heap)
        expanded += 1
        if expanded > node_cap:
            raise Unsolved(f"node cap {node_cap} reached")
        for action in range(4):
            try:
                nxt = env.step(state, action)
            except MoveBlocked:
                continue
            if nxt in parents:
                continue
            parents[nxt] = (state, action)
            if env.is_solved(nxt):
                actions = []
                node = nxt
                while parents[node] is not None:
                    node, act = parents[node]
                    actions.append(act)
                actions.reverse()
                return actions
            counter += 1
            heapq.heappush(heap, (g + 1 + matching_heuristic(env, nxt), g + 1,
                                  counter, nxt))
    raise Unsolved("search space exhausted without a solution")


def sokoban_trajectory(env: SokobanEnv, board: str,
                       node_cap: int = 60_000) -> Trajectory:
    actions = solve_sokoban(env, board, node_cap)
    return from_states_actions(env, EXPERT_NAME, board, actions)

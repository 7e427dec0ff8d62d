"""Build guidance components and run one search per the configuration.

Shared components (oracle tables, fitted estimators) are built once per
process and reused across instances; per-instance pieces (noise wrappers,
recorded-path experts) are derived from the instance seed so runs stay
deterministic under any scheduling.
"""

from __future__ import annotations

from subsearch.envs.inflate import InflatedEnv
from subsearch.envs.npuzzle import NPuzzleEnv
from subsearch.envs.npuzzle import bfs_distance_table as npuzzle_table
from subsearch.envs.rubik import RubikEnv, inverse_move
from subsearch.envs.rubik import bfs_distance_table as rubik_table
from subsearch.envs.sokoban import SokobanEnv
from subsearch.errors import ConfigError
from subsearch.experts.sokoban_astar import solve_sokoban
from subsearch.experts.npuzzle_solver import TileSolver
from subsearch.guidance.bundle import load_bundle
from subsearch.guidance.cllp import CLLP
from subsearch.guidance.generators import (
    BeginnerRollout, ChildMirrorGenerator, ExpertRolloutGenerator,
    PolicyRollout, ReversePathExpert, SolverRollout,
)
from subsearch.guidance.policies import FittedPolicy, HeuristicSoftmaxPolicy
from subsearch.guidance.values import (
    FittedValue, HeuristicValue, NoiseSpec, NoisyValue, OracleValue,
)
from subsearch.harness.config import ExperimentConfig
from subsearch.harness.instances import Instance, build_env, instance_seed
from subsearch.search.lowlevel import (
    AStarConfig, BestFSConfig, astar_search, best_first_search,
)
from subsearch.search.mcts import MCTSConfig, mcts_solve
from subsearch.search.subgoal import SubgoalSearchConfig, adasubs_solve
from subsearch.selection import ChildSelector
from subsearch.trajectory import read_jsonl


class SharedComponents:
    """Process-wide read-only guidance state for one experiment config."""

    def __init__(self, cfg: ExperimentConfig):
        self.cfg = cfg
        self.env = build_env(cfg)
        self.base_env = self.env.base if isinstance(self.env, InflatedEnv) else self.env
        self.clean_value = self._build_value()
        self.policy = self._build_policy()

    def _build_value(self):
        cfg = self.cfg
        heuristic = HeuristicValue(self.env)
        if cfg.value == "heuristic":
            return heuristic
        if cfg.value == "oracle":
            if isinstance(self.base_env, RubikEnv):
                table = rubik_table(cfg.oracle_radius)
                return OracleValue(table, _BoundaryValue(cfg.oracle_radius + 1))
            if isinstance(self.base_env, NPuzzleEnv):
                if self.base_env.side > 3:
                    raise ConfigError("npuzzle oracle is only exhaustive for side 3")
                return OracleValue(npuzzle_table(3), heuristic)
            raise ConfigError("no oracle value for sokoban; use fitted or heuristic")
        if self.cfg.bundle:
            value, _ = load_bundle(self.cfg.bundle, self.env)
            return value
        return FittedValue(self.env).fit(read_jsonl(self.cfg.dataset))

    def _build_policy(self):
        cfg = self.cfg
        softmax = HeuristicSoftmaxPolicy(self.env, self.clean_value, cfg.temperature)
        if cfg.policy == "softmax":
            return softmax
        if cfg.bundle:
            _, policy = load_bundle(cfg.bundle, self.env)
            policy.fallback = softmax
            return policy
        return FittedPolicy(self.env, softmax).fit(read_jsonl(cfg.dataset))


class _BoundaryValue:
    """Constant estimate used beyond an oracle table of known radius: every
    such state is at least radius+1 away, so -(radius+1) stays admissible
    and exact on the first out-of-table shell."""

    def __init__(self, beyond: int):
        self.beyond = float(beyond)

    def value(self, state: str) -> float:
        return -self.beyond


def _rollout_expert(kind: str, shared: SharedComponents, instance: Instance):
    env, cfg = shared.env, shared.cfg
    if kind == "beginner":
        if not isinstance(shared.base_env, RubikEnv):
            raise ConfigError("beginner generator is rubik-only")
        return BeginnerRollout()
    if kind == "policy":
        return PolicyRollout(env, shared.policy)
    if kind == "reverse":
        if not isinstance(shared.base_env, RubikEnv):
            raise ConfigError("reverse generator is rubik-only")
        solution = [inverse_move(m) for m in reversed(instance.scramble_moves)]
        states = [instance.root]
        for action in solution:
            states.append(env.step(states[-1], action))
        return ReversePathExpert(states, solution)
    if kind == "solver":
        if isinstance(shared.base_env, SokobanEnv):
            base = shared.base_env
            return SolverRollout("sokoban-astar",
                                 lambda s: solve_sokoban(base, s, node_cap=20_000))
        if isinstance(shared.base_env, NPuzzleEnv):
            solver = TileSolver(shared.base_env.side)
            return SolverRollout("tile-solver", solver.solve)
        raise ConfigError("solver generator supports sokoban and npuzzle")
    raise ConfigError(f"unknown rollout expert {kind!r}")


def build_generators(shared: SharedComponents, instance: Instance):
    cfg = shared.cfg
    generators = []
    for k in cfg.ks:
        if cfg.generator == ["mirror"]:
            if k != 1:
                raise ConfigError("mirror generator mirrors BestFS, so k must be 1")
            gen = ChildMirrorGenerator(shared.env, shared.policy, make_selector(cfg))
        else:
            experts = [_rollout_expert(kind, shared, instance)
                       for kind in cfg.generator]
            gen = ExpertRolloutGenerator(shared.env, experts, k)
        generators.append((k, gen))
    return generators


def make_selector(cfg: ExperimentConfig) -> ChildSelector:
    if cfg.child_mode == "top_k":
        return ChildSelector("top_k", k=cfg.top_k)
    return ChildSelector("confidence", t_conf=cfg.t_conf)


def search_value(shared: SharedComponents, instance: Instance):
    cfg = shared.cfg
    if cfg.sigma > 0:
        seed = instance_seed(cfg.master_seed, instance.index, "noise")
        return NoisyValue(shared.clean_value,
                          NoiseSpec(cfg.sigma, seed.generate_state(1)[0]))
    return shared.clean_value


def run_instance(shared: SharedComponents, instance: Instance):
    cfg = shared.cfg
    env = shared.env
    value = search_value(shared, instance)
    if cfg.algorithm == "bestfs":
        return best_first_search(env, instance.root, value, shared.policy,
                                 BestFSConfig(make_selector(cfg), cfg.budget_cap))
    if cfg.algorithm == "astar":
        return astar_search(env, instance.root, value, shared.policy,
                            AStarConfig(make_selector(cfg), cfg.budget_cap, cfg.lam))
    if cfg.algorithm == "mcts":
        seed = instance_seed(cfg.master_seed, instance.index, "mcts")
        mcfg = MCTSConfig(n_simulations=cfg.n_simulations, budget_cap=cfg.budget_cap,
                          c_puct=cfg.c_puct, temperature=cfg.mcts_temperature,
                          gamma=cfg.gamma, max_episode_steps=cfg.max_episode_steps,
                          seed=seed.generate_state(1)[0])
        return mcts_solve(env, instance.root, value, shared.policy, mcfg)
    generators = build_generators(shared, instance)
    sub_cfg = SubgoalSearchConfig(generators, CLLP(env, cfg.cllp_cap_multiple),
                                  cfg.budget_cap)
    return adasubs_solve(env, instance.root, value, sub_cfg)

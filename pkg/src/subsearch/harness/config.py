"""Experiment configuration.

Configs are flat ``key = value`` text files (``#`` starts a comment).
Every run writes its resolved configuration next to its results so the
exact settings are always recoverable.
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields
from pathlib import Path

from subsearch.errors import ConfigError

ENVS = ("rubik", "sokoban", "npuzzle")
ALGORITHMS = ("bestfs", "astar", "mcts", "ksubs", "adasubs")
VALUE_KINDS = ("oracle", "fitted", "heuristic")
POLICY_KINDS = ("softmax", "fitted")
GENERATOR_KINDS = ("reverse", "beginner", "policy", "mirror", "solver")


@dataclass
class ExperimentConfig:
    env: str = "rubik"
    algorithm: str = "bestfs"
    n_instances: int = 10
    budget_cap: int = 500
    budget_grid: list[int] = field(default_factory=lambda: [50, 100, 200, 500])
    master_seed: int = 0
    workers: int = 1

    # environment parameters
    scramble_depth: int = 10          # rubik
    inflation: int = 1                # rubik
    side: int = 5                     # npuzzle
    shuffle_len: int = 200            # npuzzle
    board_height: int = 12            # sokoban
    board_width: int = 12
    n_boxes: int = 4
    pulls: int = 30
    dead_end_stats: bool = False      # sokoban: annotate rows with the oracle

    # guidance
    value: str = "heuristic"
    policy: str = "softmax"
    dataset: str = ""                 # JSONL path for fitted guidance
    bundle: str = ""                  # pre-fitted bundle path (overrides dataset)
    temperature: float = 1.0
    sigma: float = 0.0
    oracle_radius: int = 5

    # algorithm parameters
    child_mode: str = "confidence"
    t_conf: float = 0.7
    top_k: int = 2
    lam: float = 0.1
    ks: list[int] = field(default_factory=lambda: [4])
    generator: list[str] = field(default_factory=lambda: ["beginner"])
    cllp_cap_multiple: int = 4
    n_simulations: int = 50
    c_puct: float = 1.0
    mcts_temperature: float = 0.0
    gamma: float = 1.0
    max_episode_steps: int = 50

    def validate(self) -> None:
        if self.env not in ENVS:
            raise ConfigError(f"env must be one of {ENVS}")
        if self.algorithm not in ALGORITHMS:
            raise ConfigError(f"algorithm must be one of {ALGORITHMS}")
        if self.value not in VALUE_KINDS:
            raise ConfigError(f"value must be one of {VALUE_KINDS}")
        if self.policy not in POLICY_KINDS:
            raise ConfigError(f"policy must be one of {POLICY_KINDS}")
        if self.n_instances < 1:
            raise ConfigError("n_instances must be >= 1")
        if self.budget_cap < 1:
            raise ConfigError("budget_cap must be >= 1")
        if sorted(self.budget_grid) != self.budget_grid:
            raise ConfigError("budget_grid must be ascending")
        if self.value == "fitted" or self.policy == "fitted":
            source = self.bundle or self.dataset
            if not source:
                raise ConfigError("fitted guidance needs a dataset or bundle path")
            if not Path(source).exists():
                raise ConfigError(f"guidance source not found: {source}")
        for g in self.generator:
            if g not in GENERATOR_KINDS:
                raise ConfigError(f"generator must be one of {GENERATOR_KINDS}")
        if self.algorithm in ("ksubs", "adasubs"):
            if not self.ks:
                raise ConfigError("subgoal search needs at least one k")
            if self.algorithm == "ksubs" and len(self.ks) != 1:
                raise ConfigError("ksubs takes exactly one k")

    def resolved_text(self) -> str:
        lines = []
        for f in fields(self):
            val = getattr(self, f.name)
            if isinstance(val, list):
                sep = "+" if f.name in ("ks", "generator") else ","
                val = sep.join(str(v) for v in val)
            lines.append(f"{f.name} = {val}")
        return "\n".join(lines) + "\n"

    def algorithm_label(self) -> str:
        if self.algorithm == "ksubs":
            return f"ksubs-{self.ks[0]}"
        if self.algorithm == "adasubs":
            return "adasubs-" + "+".join(str(k) for k in self.ks)
        if self.algorithm == "bestfs":
            mode = f"top{self.top_k}" if self.child_mode == "top_k" else f"{self.t_conf}"
            return f"bestfs-{mode}"
        if self.algorithm == "astar":
            return f"astar-{self.lam}"
        return self.algorithm


_BOOL = {"true": True, "false": False, "1": True, "0": False, "yes": True, "no": False}


def parse_config_text(text: str) -> ExperimentConfig:
    cfg = ExperimentConfig()
    spec = {f.name: f for f in fields(ExperimentConfig)}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key = value")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in spec:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        setattr(cfg, key, _coerce(key, value, spec[key]))
    cfg.validate()
    return cfg


def _coerce(key: str, value: str, field_spec):
    current = getattr(ExperimentConfig(), key)
    if isinstance(current, bool):
        if value.lower() not in _BOOL:
            raise ConfigError(f"{key}: expected a boolean, got {value!r}")
        return _BOOL[value.lower()]
    if isinstance(current, int):
        return int(value)
    if isinstance(current, float):
        return float(value)
    if isinstance(current, list):
        parts = [p for chunk in value.split("+") for p in chunk.split(",") if p]
        if key == "generator":
            return [p.strip() for p in parts]
        return [int(p) for p in parts]
    return value


def load_config(path) -> ExperimentConfig:
    return parse_config_text(Path(path).read_text())

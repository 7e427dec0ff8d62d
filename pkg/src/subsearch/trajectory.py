"""Expert trajectories and their JSONL interchange format.

One JSON object per line: ``{"env": str, "expert": str, "states": [str,...],
"actions": [int,...]}`` with states in each environment's canonical
encoding.  A trajectory with n actions has n+1 states, replaying the
actions reproduces the recorded states exactly, and the final state is
solved.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from subsearch.envs.base import Environment
from subsearch.errors import InvalidState


@dataclass
class Trajectory:
    env_id: str
    expert_name: str
    states: list[str] = field(default_factory=list)
    actions: list[int] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.actions)

    def validate(self, env: Environment) -> None:
        if len(self.states) != len(self.actions) + 1:
            raise InvalidState("trajectory needs len(states) == len(actions) + 1")
        for i, action in enumerate(self.actions):
            if env.step(self.states[i], action) != self.states[i + 1]:
                raise InvalidState(f"transition {i} does not replay")
        if not env.is_solved(self.states[-1]):
            raise InvalidState("terminal state is not solved")

    def to_json(self) -> str:
        return json.dumps(
            {"env": self.env_id, "expert": self.expert_name,
             "states": self.states, "actions": self.actions},
            separators=(",", ":"))

    @classmethod
    def from_json(cls, line: str) -> "Trajectory":
        obj = json.loads(line)
        return cls(env_id=obj["env"], expert_name=obj["expert"],
                   states=list(obj["states"]),
                   actions=[int(a) for a in obj["actions"]])


def from_states_actions(env: Environment, expert_name: str, start: str,
                        actions: list[int]) -> Trajectory:
    states = [start]
    for action in actions:
        states.append(env.step(states[-1], action))
    return Trajectory(env.env_id, expert_name, states, actions)


def write_jsonl(path, trajectories) -> int:
    count = 0
    with open(path, "w") as fh:
        for traj in trajectories:
            fh.write(traj.to_json() + "\n")
            count += 1
    return count


def read_jsonl(path) -> list[Trajectory]:
    out = []
    for line in Path(path).read_text().splitlines():
        if line.strip():
            out.append(Trajectory.from_json(line))
    return out

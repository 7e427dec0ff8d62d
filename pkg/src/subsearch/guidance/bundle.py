"""Fitted guidance bundle: versioned JSON with dataset provenance.

The bundle stores a fitted value estimator and behavioral-cloning policy
together with the digest of the dataset manifest they were trained on.
"""

from __future__ import annotations

import json
from pathlib import Path

from subsearch.envs.base import Environment
from subsearch.errors import ConfigError
from subsearch.guidance.policies import FittedPolicy, HeuristicSoftmaxPolicy
from subsearch.guidance.values import FittedValue, HeuristicValue

BUNDLE_VERSION = 1


def fit_bundle(env: Environment, trajectories, manifest_digest: str,
               temperature: float = 1.0) -> dict:
    value = FittedValue(env).fit(trajectories)
    fallback = HeuristicSoftmaxPolicy(env, HeuristicValue(env), temperature)
    policy = FittedPolicy(env, fallback).fit(trajectories)
    return {
        "version": BUNDLE_VERSION,
        "env": env.env_id,
        "manifest_digest": manifest_digest,
        "temperature": temperature,
        "value": value.to_dict(),
        "policy": policy.to_dict(),
    }


def save_bundle(bundle: dict, path) -> None:
    Path(path).write_text(json.dumps(bundle, sort_keys=True) + "\n")


def load_bundle(path, env: Environment) -> tuple[FittedValue, FittedPolicy]:
    obj = json.loads(Path(path).read_text())
    if obj.get("version") != BUNDLE_VERSION:
        raise ConfigError(f"unsupported bundle version {obj.get('version')!r}")
    if obj.get("env") != env.env_id:
        raise ConfigError(f"bundle was fitted for env {obj.get('env')!r}")
    value = FittedValue(env).load_dict(obj["value"])
    fallback = HeuristicSoftmaxPolicy(env, HeuristicValue(env),
                                      obj.get("temperature", 1.0))
    policy = FittedPolicy(env, fallback).load_dict(obj["policy"])
    return value, policy

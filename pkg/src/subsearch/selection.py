"""Child selection from a policy distribution.

Two modes: take the k most probable actions, or take the shortest prefix
of the probability-descending action list whose cumulative mass reaches a
confidence threshold.  Ties in probability break toward the lower action
index, which pins down the prefix uniquely and keeps searches
deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class ChildSelector:
    mode: str  # "top_k" or "confidence"
    k: int = 2
    t_conf: float = 0.7

    def __post_init__(self):
        if self.mode == "top_k":
            if self.k < 1:
                raise ValueError("k must be >= 1")
        elif self.mode == "confidence":
            if not 0 < self.t_conf <= 1:
                raise ValueError("t_conf must be in (0, 1]")
        else:
            raise ValueError(f"unknown child mode {self.mode!r}")

    def describe(self) -> str:
        return f"top_{self.k}" if self.mode == "top_k" else f"conf_{self.t_conf}"


def select_children(probs: np.ndarray, selector: ChildSelector) -> list[int]:
    """Action ids chosen for expansion, in descending-probability order.

    Zero-probability actions are never selected.
    """
    order = sorted(range(len(probs)), key=lambda a: (-probs[a], a))
    order = [a for a in order if probs[a] > 0]
    if selector.mode == "top_k":
        return order[: selector.k]
    chosen = []
    cumulative = 0.0
    for action in order:
        chosen.append(action)
        cumulative += float(probs[action])
        if cumulative >= selector.t_conf:
            break
    return chosen

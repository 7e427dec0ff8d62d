"""Success-rate-versus-budget curves.

One search runs per instance at the full budget cap; a curve point at
budget B is the fraction of instances solved with nodes_total <= B.  For
deterministic searches this threshold projection equals rerunning at each
smaller budget.
"""

from __future__ import annotations

import json
from dataclasses import dataclass


@dataclass
class SuccessCurve:
    algorithm: str
    budgets: list[int]
    rates: list[float]

    def __post_init__(self):
        if sorted(self.budgets) != self.budgets:
            raise ValueError("budgets must be ascending")
        for a, b in zip(self.rates, self.rates[1:]):
            if b < a:
                raise ValueError("success rates must be non-decreasing")
        if any(not 0 <= r <= 1 for r in self.rates):
            raise ValueError("rates must lie in [0, 1]")

    def to_dict(self) -> dict:
        return {"algorithm": self.algorithm, "budgets": self.budgets,
                "rates": self.rates}


def success_curve(rows: list[dict], budgets: list[int],
                  algorithm: str, count_key: str = "nodes_total") -> SuccessCurve:
    n = len(rows)
    rates = []
    for budget in budgets:
        solved = sum(1 for row in rows
                     if row["status"] == "solved" and row[count_key] <= budget)
        rates.append(solved / n if n else 0.0)
    return SuccessCurve(algorithm, list(budgets), rates)


def compare_budget_definitions(rows: list[dict], budgets: list[int],
                               algorithm: str) -> dict:
    """Paired curves: x = all visited states versus x = high-level nodes only."""
    total = success_curve(rows, budgets, algorithm, "nodes_total")
    high = success_curve(rows, budgets, algorithm, "nodes_high_level")
    return {"algorithm": algorithm, "budgets": list(budgets),
            "rates_total": total.rates, "rates_high_level_only": high.rates}


def write_curves(curves: list[dict], path) -> None:
    with open(path, "w") as fh:
        json.dump(curves, fh, sort_keys=True, indent=1)
        fh.write("\n")

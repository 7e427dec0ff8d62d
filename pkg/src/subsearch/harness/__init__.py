from subsearch.harness.config import ExperimentConfig, parse_config_text
from subsearch.harness.curves import SuccessCurve, compare_budget_definitions, success_curve
from subsearch.harness.runner import run_experiment
from subsearch.harness.stats import compare_to_optimal, tree_statistics

__all__ = [
    "ExperimentConfig", "parse_config_text", "run_experiment", "SuccessCurve",
    "success_curve", "compare_budget_definitions", "tree_statistics",
    "compare_to_optimal",
]

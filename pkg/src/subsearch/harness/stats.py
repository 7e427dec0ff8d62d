"""Aggregate statistics over search results.

Tree statistics and optimality gaps are averaged over instances solved by
every compared algorithm, so the comparison set is common to all columns.
"""

from __future__ import annotations

from subsearch.search.result import SearchResult


def _commonly_solved(results_by_alg: dict[str, list[SearchResult]]) -> list[int]:
    its = None
    for results in results_by_alg.values():
        solved = {i for i, r in enumerate(results) if r.solved}
        its = solved if its is None else its & solved
    return sorted(its or [])


def tree_statistics(results_by_alg: dict[str, list[SearchResult]]) -> list[dict]:
    """Per-algorithm means of tree size, leaves, branching factor, solution
    length and subgoals on the winning path, over commonly-solved instances."""
    common = _commonly_solved(results_by_alg)
    table = []
    for algorithm, results in results_by_alg.items():
        picked = [results[i] for i in common]
        n = len(picked)
        row = {"algorithm": algorithm, "instances": n}
        if n:
            row["tree_size"] = sum(r.tree.tree_size for r in picked) / n
            row["leaf_count"] = sum(r.tree.leaf_count for r in picked) / n
            row["branching_factor"] = sum(r.tree.branching_factor for r in picked) / n
            row["solution_length"] = sum(r.tree.solution_length for r in picked) / n
            with_subgoals = [r for r in picked if r.tree.subgoals_on_path is not None]
            row["subgoals_on_path"] = (
                sum(r.tree.subgoals_on_path for r in with_subgoals) / len(with_subgoals)
                if with_subgoals else None)
        table.append(row)
    return table


def compare_to_optimal(results_by_alg: dict[str, list[SearchResult]],
                       optimal_lengths: list[int]) -> list[dict]:
    """Mean (found length - optimal length) over commonly solved instances."""
    common = _commonly_solved(results_by_alg)
    table = []
    for algorithm, results in results_by_alg.items():
        gaps = [results[i].tree.solution_length - optimal_lengths[i] for i in common]
        table.append({
            "algorithm": algorithm,
            "instances": len(gaps),
            "mean_gap": sum(gaps) / len(gaps) if gaps else None,
        })
    return table


def format_table(rows: list[dict]) -> str:
    if not rows:
        return ""
    keys = list(rows[0])
    widths = {k: max(len(str(k)), *(len(_fmt(r.get(k))) for r in rows)) for k in keys}
    lines = ["  ".join(str(k).ljust(widths[k]) for k in keys)]
    for row in rows:
        lines.append("  ".join(_fmt(row.get(k)).ljust(widths[k]) for k in keys))
    return "\n".join(lines)


def _fmt(value) -> str:
    if value is None:
        return "-"
    if isinstance(value, float):
        return f"{value:.2f}"
    return str(value)

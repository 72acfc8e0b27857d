"""
`xkm eval`: score a saved tree, or run one of the brute-force oracles.
"""

from enum import Enum
from pathlib import Path
from typing import Optional

import typer

from src.cli.common import emit, handle_errors, load_centers, load_dataset, load_label_file, load_tree_file, require
from src.core.cost import cost_of_centers, cost_of_tree, theorem_bound
from src.core.io import tree_to_dict
from src.core.types import DataMatrix, Objective
from src.oracles.brute_force import brute_best_tree, brute_opt_partition, naive_best_cut, verify_matching_lemma
from src.utils.schema import OracleReport


class Oracle(str, Enum):
    CUT = "cut"
    PARTITION = "partition"
    TREE = "tree"
    MATCHING = "matching"


def run_oracle(
    oracle: Oracle,
    X: DataMatrix,
    objective: Objective,
    k: Optional[int],
    labels: Optional[Path],
    coordinate: int,
) -> OracleReport:
    if oracle is Oracle.CUT:
        cut = naive_best_cut(X, objective)
        return OracleReport(oracle=oracle.value, cost=cut.cost, cut=cut)
    if oracle is Oracle.PARTITION:
        best_labels, cost = brute_opt_partition(X, require(k, "--k", "for the partition oracle"), objective)
        return OracleReport(oracle=oracle.value, cost=cost, labels=best_labels.tolist())
    if oracle is Oracle.TREE:
        tree, cost = brute_best_tree(X, require(k, "--k", "for the tree oracle"), objective)
        return OracleReport(
            oracle=oracle.value,
            cost=cost if tree is not None else None,
            tree=tree_to_dict(tree) if tree is not None else None,
        )
    if labels is not None:
        two_clusters = load_label_file(labels)
    else:
        two_clusters, _ = brute_opt_partition(X, 2, objective)
    holds = verify_matching_lemma(X, two_clusters, coordinate, objective)
    return OracleReport(oracle=oracle.value, coordinate=coordinate, holds=holds)


def evaluate(
    input_path: Path = typer.Option(..., "--in", help="Dataset CSV"),
    tree_path: Optional[Path] = typer.Option(None, "--tree", help="Tree JSON from fit"),
    reference: Optional[Path] = typer.Option(None, "--reference", help="Reference centers CSV"),
    objective: Optional[Objective] = typer.Option(None, "--objective", help="Override the tree's objective"),
    oracle: Optional[Oracle] = typer.Option(None, "--oracle", help="cut | partition | tree | matching"),
    k: Optional[int] = typer.Option(None, "--k", help="Clusters (partition, tree oracles)"),
    labels: Optional[Path] = typer.Option(None, "--labels", help="2-clustering labels (matching oracle)"),
    coordinate: int = typer.Option(0, "--coordinate", help="Coordinate for the matching oracle"),
    header: bool = typer.Option(False, "--header", help="Skip the first row of --in and --reference"),
):
    """Print a CostReport (or an oracle result) as JSON."""
    with handle_errors("eval"):
        X = load_dataset(input_path, header)

        if oracle is not None:
            emit(run_oracle(oracle, X, objective or Objective.MEANS, k, labels, coordinate))
            return

        if tree_path is None:
            raise ValueError("--tree is required unless --oracle is given")
        tree = load_tree_file(tree_path)
        chosen = objective or tree.objective
        report = cost_of_tree(X, tree, chosen, allow_empty=True)
        if reference is not None:
            centers = load_centers(reference, chosen, header)
            report = report.against(
                cost_of_centers(X, centers).total_cost,
                bound=theorem_bound(chosen, tree.depth, tree.k),
            )
        emit(report)

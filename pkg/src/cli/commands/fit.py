"""
`xkm fit`: fit a tree (imm, twocut, id3) or reference centers (kmeans).

The stats JSON is printed to stdout and optionally written to --stats; the
tree JSON (or centers CSV for kmeans) goes to --out.
"""

import time
from enum import Enum
from pathlib import Path
from typing import Optional

import typer

from src.algorithms.id3_baseline import id3_fit
from src.algorithms.imm import imm_fit, tree_stats
from src.algorithms.reference_clustering import fit_reference
from src.algorithms.two_cut import best_cut, cut_to_tree
from src.cli.common import emit, handle_errors, load_centers, load_dataset, load_label_file, require
from src.core.cost import cost_of_centers
from src.core.io import save_tree, write_csv
from src.core.types import Objective
from src.core.validation import assign_labels
from src.utils.schema import TreeStats


class Algo(str, Enum):
    IMM = "imm"
    TWOCUT = "twocut"
    KMEANS = "kmeans"
    ID3 = "id3"


class Init(str, Enum):
    KMEANSPP = "kmeanspp"
    FILE = "file"


def fit(
    algo: Algo = typer.Option(..., "--algo", help="imm | twocut | kmeans | id3"),
    input_path: Path = typer.Option(..., "--in", help="Dataset CSV"),
    objective: Objective = typer.Option(Objective.MEANS, "--objective", help="means | medians"),
    k: Optional[int] = typer.Option(None, "--k", help="Number of clusters"),
    init: Init = typer.Option(Init.KMEANSPP, "--init", help="Reference centers for imm"),
    centers: Optional[Path] = typer.Option(None, "--centers", help="Centers CSV (with --init file)"),
    labels: Optional[Path] = typer.Option(None, "--labels", help="Labels CSV for id3"),
    leaves: Optional[int] = typer.Option(None, "--leaves", help="Leaf budget for id3"),
    out: Optional[Path] = typer.Option(None, "--out", help="Tree JSON (centers CSV for kmeans)"),
    stats: Optional[Path] = typer.Option(None, "--stats", help="Stats JSON"),
    seed: int = typer.Option(0, "--seed", help="PRNG seed for k-means++"),
    max_iters: Optional[int] = typer.Option(None, "--max-iters", help="Lloyd iteration cap"),
    tol: Optional[float] = typer.Option(None, "--tol", help="Lloyd relative tolerance"),
    header: bool = typer.Option(False, "--header", help="Skip the first row of --in and --centers"),
):
    """Fit a model and report cost, depth, mistakes and wall time."""
    with handle_errors("fit"):
        X = load_dataset(input_path, header)
        start = time.perf_counter()

        if algo is Algo.TWOCUT:
            cut = best_cut(X, objective)
            tree = cut_to_tree(cut, objective)
            result = tree_stats(tree, X, algorithm=algo.value, wall_time=time.perf_counter() - start)
            result = result.model_copy(update={"cut": cut})

        elif algo is Algo.KMEANS:
            run = fit_reference(X, require(k, "--k", "for kmeans"), objective, seed, max_iters, tol)
            if out is not None:
                write_csv(out, run.centers.centers)
            emit(
                TreeStats(
                    algorithm=algo.value,
                    objective=objective.value,
                    k=run.centers.k,
                    depth=0,
                    cost=run.cost,
                    wall_time=time.perf_counter() - start,
                    cost_history=run.cost_history,
                ),
                stats,
            )
            return

        elif algo is Algo.IMM:
            if init is Init.FILE:
                if centers is None:
                    raise ValueError("--centers is required with --init file")
                reference = load_centers(centers, objective, header)
            else:
                reference = fit_reference(X, require(k, "--k", "for imm"), objective, seed, max_iters, tol).centers
            tree = imm_fit(X, reference)
            result = tree_stats(tree, X, algorithm=algo.value, wall_time=time.perf_counter() - start)
            result = result.model_copy(update={"reference_cost": cost_of_centers(X, reference).total_cost})

        else:
            if labels is not None:
                truth = load_label_file(labels)
            else:
                run = fit_reference(X, require(k, "--k", "for id3 without --labels"), objective, seed, max_iters, tol)
                truth = assign_labels(X, run.centers).labels
            budget = leaves if leaves is not None else require(k, "--leaves", "for id3")
            tree = id3_fit(X, truth, budget, objective)
            result = tree_stats(tree, X, algorithm=algo.value, wall_time=time.perf_counter() - start)

        if out is not None:
            save_tree(out, tree)
        emit(result, stats)

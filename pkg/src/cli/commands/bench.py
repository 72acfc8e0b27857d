"""
`xkm bench`: time imm_fit over an (n, d, k) grid of mixture datasets.

Reference centers are the generator's label means, so only the tree
construction is timed.
"""

import csv
import io
import time
from itertools import product
from pathlib import Path
from typing import List, Optional

import typer

from src.algorithms.imm import imm_fit
from src.cli.common import handle_errors
from src.core.cost import cost_of_tree
from src.core.types import Objective
from src.datasets.generators import gen_mixture, natural_centers
from src.utils.logging import log_system_event
from src.utils.schema import BenchRow

COLUMNS = list(BenchRow.model_fields)


def run_grid(
    ns: List[int],
    ds: List[int],
    ks: List[int],
    repeats: int,
    seed: int,
    objective: Objective = Objective.MEANS,
) -> List[BenchRow]:
    rows = []
    for n, d, k in product(ns, ds, ks):
        data = gen_mixture(k, d, n, seed=seed)
        centers = natural_centers(data, objective)
        for repeat in range(repeats):
            start = time.perf_counter()
            tree = imm_fit(data.X, centers)
            seconds = time.perf_counter() - start
            cost = cost_of_tree(data.X, tree, allow_empty=True).total_cost
            rows.append(BenchRow(n=n, d=d, k=k, repeat=repeat, seconds=seconds, cost=cost, depth=tree.depth))
    log_system_event("bench_completed", {"cells": len(rows) // max(repeats, 1), "repeats": repeats})
    return rows


def render_csv(rows: List[BenchRow]) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row.model_dump())
    return buffer.getvalue()


def bench(
    n: List[int] = typer.Option(..., "--n", help="Point counts (repeatable)"),
    d: List[int] = typer.Option(..., "--d", help="Dimensions (repeatable)"),
    k: List[int] = typer.Option(..., "--k", help="Cluster counts (repeatable)"),
    repeats: int = typer.Option(3, "--repeats", min=1, help="Timed runs per cell"),
    seed: int = typer.Option(0, "--seed", help="Dataset seed"),
    objective: Objective = typer.Option(Objective.MEANS, "--objective", help="means | medians"),
    out: Optional[Path] = typer.Option(None, "--out", help="CSV file (stdout when omitted)"),
):
    """Print n,d,k,repeat,seconds,cost,depth for every run."""
    with handle_errors("bench"):
        text = render_csv(run_grid(n, d, k, repeats, seed, objective))
        if out is not None:
            out.write_text(text, encoding="utf-8")
        else:
            typer.echo(text, nl=False)

"""
`xkm gen`: write one of the dataset constructions to CSV.
"""

from pathlib import Path
from typing import Optional

import typer

from src.cli.common import emit, handle_errors, require
from src.core.io import write_csv, write_labels
from src.datasets.codewords import gen_codeword
from src.datasets.generators import (
    Family,
    GeneratedData,
    gen_basis,
    gen_id3_failure,
    gen_mixture,
    gen_two_cluster_lb,
)
from src.utils.schema import GenSummary


def build(
    family: Family,
    k: Optional[int],
    d: Optional[int],
    n: Optional[int],
    v: Optional[float],
    n_per_blob: int,
    spread: float,
    separation: float,
    seed: int,
) -> GeneratedData:
    if family is Family.BASIS:
        return gen_basis(require(k, "--k", "for the basis family"))
    if family is Family.LB2:
        return gen_two_cluster_lb(require(d, "--d", "for the lb2 family"))
    if family is Family.CODEWORD:
        return gen_codeword(require(k, "--k", "for the codeword family"), seed=seed)
    if family is Family.ID3FAIL:
        height = require(v, "--v", "for the id3fail family")
        return gen_id3_failure(height, n_per_blob=n_per_blob, spread=spread, seed=seed)
    return gen_mixture(
        require(k, "--k", "for the mixture family"),
        require(d, "--d", "for the mixture family"),
        require(n, "--n", "for the mixture family"),
        separation=separation,
        seed=seed,
        spread=spread,
    )


def gen(
    family: Family = typer.Option(..., "--family", help="Dataset construction"),
    out: Path = typer.Option(..., "--out", help="Dataset CSV to write"),
    labels_out: Optional[Path] = typer.Option(None, "--labels-out", help="Natural labels CSV to write"),
    k: Optional[int] = typer.Option(None, "--k", help="Clusters (basis, codeword, mixture)"),
    d: Optional[int] = typer.Option(None, "--d", help="Dimension (lb2, mixture)"),
    n: Optional[int] = typer.Option(None, "--n", help="Points (mixture)"),
    v: Optional[float] = typer.Option(None, "--v", help="Outlier height (id3fail)"),
    n_per_blob: int = typer.Option(500, "--n-per-blob", help="Points per blob (id3fail)"),
    spread: float = typer.Option(0.1, "--spread", help="Uniform jitter half-width (id3fail, mixture)"),
    separation: float = typer.Option(10.0, "--separation", help="Center scale (mixture)"),
    seed: int = typer.Option(0, "--seed", help="PRNG seed"),
):
    """Generate a dataset and print {n, d, family, seed}."""
    with handle_errors("gen"):
        data = build(family, k, d, n, v, n_per_blob, spread, separation, seed)
        write_csv(out, data.X)
        if labels_out is not None:
            write_labels(labels_out, data.labels.labels)
        emit(GenSummary(n=data.n, d=data.d, family=family.value, seed=seed))

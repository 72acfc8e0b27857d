"""
Main CLI router.

Aggregates every subcommand into the `xkm` Typer app and handles the global
options.
"""

from typing import Optional

import typer

from src.cli.commands import bench, evaluate, export, fit, gen
from src.config.settings import settings
from src.utils.logging import set_verbosity

app = typer.Typer(
    name="xkm",
    help="Explainable k-means / k-medians with threshold trees",
    add_completion=False,
    no_args_is_help=True,
)


@app.callback()
def main_options(
    threads: Optional[int] = typer.Option(
        None, "--threads", min=1, help="Worker threads (overrides XKM_THREADS)"
    ),
    verbose: bool = typer.Option(False, "--verbose", help="Enable debug logging"),
):
    """Global options applied before any subcommand runs."""
    if threads is not None:
        settings.threads = threads
    set_verbosity(verbose)


app.command("gen")(gen)
app.command("fit")(fit)
app.command("eval")(evaluate)
app.command("export")(export)
app.command("bench")(bench)

__all__ = ["app"]

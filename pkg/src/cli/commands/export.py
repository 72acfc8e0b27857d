"""
`xkm export`: render a saved tree as Graphviz DOT.
"""

from pathlib import Path
from typing import Optional

import typer

from src.cli.common import handle_errors, load_tree_file
from src.core.io import tree_to_dot


def export(
    tree_path: Path = typer.Option(..., "--tree", help="Tree JSON from fit"),
    out: Optional[Path] = typer.Option(None, "--out", help="DOT file (stdout when omitted)"),
):
    """Write DOT with pre-order node ids."""
    with handle_errors("export"):
        dot = tree_to_dot(load_tree_file(tree_path))
        if out is not None:
            out.write_text(dot, encoding="utf-8")
        else:
            typer.echo(dot, nl=False)

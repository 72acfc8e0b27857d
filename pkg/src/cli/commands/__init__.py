"""
Subcommand implementations; each module exposes one command function.
"""

from src.cli.commands.bench import bench
from src.cli.commands.evaluate import evaluate
from src.cli.commands.export import export
from src.cli.commands.fit import fit
from src.cli.commands.gen import gen

__all__ = ["bench", "evaluate", "export", "fit", "gen"]

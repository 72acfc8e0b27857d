"""
Helpers shared by the subcommands: exit-code mapping, file loading and JSON
output.

Exit codes: 2 bad flags, 3 unreadable or invalid files, 4 algorithm failure.
"""

from contextlib import contextmanager
from pathlib import Path
from typing import Iterator, Optional

import typer
from pydantic import BaseModel

from src.core.errors import (
    AlgorithmError,
    CostError,
    DatasetValidationError,
    KTooLargeError,
    TooLargeError,
)
from src.core.io import load_tree, read_csv, read_labels
from src.core.types import CenterSet, DataMatrix, Objective, ThresholdTree
from src.utils.logging import logger

EXIT_USAGE = 2
EXIT_IO = 3
EXIT_ALGORITHM = 4


class InputFileError(Exception):
    """A file exists but its contents cannot be used."""


@contextmanager
def handle_errors(command: str) -> Iterator[None]:
    """Translate package exceptions into logged messages and exit codes."""
    try:
        yield
    except typer.Exit:
        raise
    except (InputFileError, OSError) as exc:
        logger.error("%s: %s", command, exc)
        raise typer.Exit(EXIT_IO)
    except KTooLargeError as exc:
        logger.error("%s: %s", command, exc)
        raise typer.Exit(EXIT_USAGE)
    except (AlgorithmError, CostError, TooLargeError) as exc:
        logger.error("%s failed (%s): %s", command, exc.code, exc)
        raise typer.Exit(EXIT_ALGORITHM)
    except DatasetValidationError as exc:
        logger.error("%s: invalid input (%s): %s", command, exc.code, exc)
        raise typer.Exit(EXIT_IO)
    except ValueError as exc:
        logger.error("%s: %s", command, exc)
        raise typer.Exit(EXIT_USAGE)


def load_dataset(path: Path, header: bool = False) -> DataMatrix:
    try:
        return read_csv(path, header=header)
    except DatasetValidationError as exc:
        raise InputFileError(f"{path}: {exc}") from exc


def load_centers(path: Path, objective: Objective, header: bool = False) -> CenterSet:
    return CenterSet(load_dataset(path, header).values, objective)


def load_label_file(path: Path):
    try:
        return read_labels(path)
    except (ValueError, IndexError) as exc:
        raise InputFileError(f"{path}: not a label file ({exc})") from exc


def load_tree_file(path: Path) -> ThresholdTree:
    try:
        return load_tree(path)
    except (ValueError, KeyError, TypeError) as exc:
        raise InputFileError(f"{path}: not a threshold tree ({exc})") from exc


def require(value: Optional[int], flag: str, reason: str) -> int:
    if value is None:
        raise ValueError(f"{flag} is required {reason}")
    return value


def emit(model: BaseModel, path: Optional[Path] = None) -> None:
    """Print one JSON line to stdout and optionally write it to `path`."""
    text = model.model_dump_json(exclude_none=True)
    if path is not None:
        path.write_text(text + "\n", encoding="utf-8")
    typer.echo(text)

"""
Dataset validation and nearest-center assignment.
"""

from typing import Iterable, Sequence, Union

import numpy as np

from src.core.errors import EmptyDatasetError, NonFiniteError, RaggedRowError
from src.core.types import CenterSet, DataMatrix, Labeling, Objective


def validate_dataset(rows: Union[np.ndarray, Iterable[Sequence[float]]]) -> DataMatrix:
    """
    Build a DataMatrix from raw rows, rejecting malformed input.

    Raises:
        EmptyDatasetError: no rows
        RaggedRowError: a row whose length differs from the first row's
        NonFiniteError: NaN/inf (or an unparseable cell) at (row, col)
    """
    if isinstance(rows, np.ndarray):
        if rows.ndim != 2 or rows.shape[0] == 0:
            raise EmptyDatasetError()
        return DataMatrix(rows)

    rows = list(rows)
    if not rows:
        raise EmptyDatasetError()

    width = len(rows[0])
    if width == 0:
        raise RaggedRowError(0, expected=None, got=0)

    values = np.empty((len(rows), width), dtype=np.float64)
    for i, row in enumerate(rows):
        if len(row) != width:
            raise RaggedRowError(i, expected=width, got=len(row))
        for j, cell in enumerate(row):
            try:
                value = float(cell)
            except (TypeError, ValueError):
                raise NonFiniteError(i, j) from None
            if not np.isfinite(value):
                raise NonFiniteError(i, j)
            values[i, j] = value

    return DataMatrix(values)


def center_distances(values: np.ndarray, center: np.ndarray, objective: Objective) -> np.ndarray:
    """Distance from every row to one center: ℓ₁ for medians, squared ℓ₂ for means."""
    diff = values - center
    if objective is Objective.MEDIANS:
        return np.abs(diff).sum(axis=1)
    return np.einsum("ij,ij->i", diff, diff)


def assign_labels(X: DataMatrix, C: CenterSet) -> Labeling:
    """
    Map each point to its nearest center under the objective's metric.

    Exact ties go to the lowest center index. Works center by center so
    memory stays O(nd) for large inputs.
    """
    C.check_dims(X)
    best = center_distances(X.values, C.centers[0], C.objective)
    labels = np.zeros(X.n, dtype=np.int64)
    for j in range(1, C.k):
        dist = center_distances(X.values, C.centers[j], C.objective)
        closer = dist < best
        labels[closer] = j
        best = np.where(closer, dist, best)
    return Labeling(labels, C.k)

"""
Exception hierarchy shared by every module.

Each error carries a stable `code` so the CLI can report it without parsing
messages, and the attributes the message was built from.
"""

from typing import Optional


class ClusteringError(Exception):
    """Base class for all package errors."""

    code = "error"

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


# ── Input validation ─────────────────────────────────────────────────────────

class DatasetValidationError(ClusteringError):
    code = "invalid_input"


class NonFiniteError(DatasetValidationError):
    code = "non_finite"

    def __init__(self, row: int, col: int):
        super().__init__(f"non-finite value at row {row}, column {col}")
        self.row = row
        self.col = col


class RaggedRowError(DatasetValidationError):
    code = "ragged_row"

    def __init__(self, row: int, expected: Optional[int] = None, got: Optional[int] = None):
        detail = f" (expected {expected} values, got {got})" if expected is not None else ""
        super().__init__(f"row {row} has the wrong number of entries{detail}")
        self.row = row
        self.expected = expected
        self.got = got


class EmptyDatasetError(DatasetValidationError):
    code = "empty"

    def __init__(self, what: str = "dataset"):
        super().__init__(f"{what} has no rows")


class DimMismatchError(DatasetValidationError):
    code = "dim_mismatch"

    def __init__(self, expected: int, got: int):
        super().__init__(f"dimension mismatch: expected {expected}, got {got}")
        self.expected = expected
        self.got = got


class KTooLargeError(DatasetValidationError):
    code = "k_too_large"

    def __init__(self, k: int, n: int):
        super().__init__(f"k={k} exceeds the number of points n={n}")
        self.k = k
        self.n = n


# ── Cost evaluation ──────────────────────────────────────────────────────────

class CostError(ClusteringError):
    code = "cost_error"


class EmptyClusterError(CostError):
    code = "empty_cluster"

    def __init__(self, label: Optional[int] = None):
        where = f" {label}" if label is not None else ""
        super().__init__(f"cluster{where} has no points")
        self.label = label


class EmptyLeafError(CostError):
    code = "empty_leaf"

    def __init__(self, label: int):
        super().__init__(f"leaf {label} receives no points")
        self.label = label


class EmptyIndexSetError(CostError):
    code = "empty_index_set"

    def __init__(self):
        super().__init__("center index set is empty")


# ── Algorithms ───────────────────────────────────────────────────────────────

class AlgorithmError(ClusteringError):
    code = "algorithm_error"


class UnsplittableError(AlgorithmError):
    code = "unsplittable"

    def __init__(self, message: str = "no feature has two distinct values"):
        super().__init__(message)


class DuplicateCentersError(AlgorithmError):
    code = "duplicate_centers"

    def __init__(self, first: int, second: int):
        super().__init__(f"centers {first} and {second} are identical in every coordinate")
        self.first = first
        self.second = second


class PropertyFailureError(AlgorithmError):
    code = "property_failure"

    def __init__(self, attempts: int):
        super().__init__(f"no sample passed verification after {attempts} attempts")
        self.attempts = attempts


class TooLargeError(ClusteringError):
    code = "too_large"

    def __init__(self, what: str, size: int, limit: int):
        super().__init__(f"{what}: size {size} exceeds limit {limit}")
        self.what = what
        self.size = size
        self.limit = limit

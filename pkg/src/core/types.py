"""
Shared domain types.

All types are immutable after construction: numpy buffers are copied and
marked read-only, dataclasses are frozen. They are safe to share across
threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterator, List, Optional, Tuple, Union

import numpy as np

from src.core.errors import (
    DimMismatchError,
    EmptyDatasetError,
    NonFiniteError,
    RaggedRowError,
)


class Objective(str, Enum):
    """Clustering objective; fixes both the metric and the optimal center."""
    MEANS = "means"
    MEDIANS = "medians"

    @classmethod
    def parse(cls, value: Union[str, "Objective"]) -> "Objective":
        if isinstance(value, Objective):
            return value
        return cls(str(value).lower())


def _frozen(array: np.ndarray) -> np.ndarray:
    array = np.array(array, copy=True)
    array.setflags(write=False)
    return array


def _check_finite(values: np.ndarray) -> None:
    bad = ~np.isfinite(values)
    if bad.any():
        row, col = np.argwhere(bad)[0]
        raise NonFiniteError(int(row), int(col))


@dataclass(frozen=True, eq=False)
class DataMatrix:
    """n×d dataset of finite float64 values (the point universe)."""
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        if values.ndim != 2 or values.shape[0] == 0:
            raise EmptyDatasetError()
        if values.shape[1] == 0:
            raise RaggedRowError(0, expected=None, got=0)
        _check_finite(values)
        object.__setattr__(self, "values", _frozen(values))

    @property
    def n(self) -> int:
        return int(self.values.shape[0])

    @property
    def d(self) -> int:
        return int(self.values.shape[1])

    def __len__(self) -> int:
        return self.n


@dataclass(frozen=True, eq=False)
class CenterSet:
    """k reference centers plus the objective they were fit for."""
    centers: np.ndarray
    objective: Objective = Objective.MEANS

    def __post_init__(self):
        centers = np.asarray(self.centers, dtype=np.float64)
        if centers.ndim == 1:
            centers = centers.reshape(1, -1)
        if centers.ndim != 2 or centers.shape[0] == 0:
            raise EmptyDatasetError("center set")
        _check_finite(centers)
        object.__setattr__(self, "centers", _frozen(centers))
        object.__setattr__(self, "objective", Objective.parse(self.objective))

    @property
    def k(self) -> int:
        return int(self.centers.shape[0])

    @property
    def d(self) -> int:
        return int(self.centers.shape[1])

    def check_dims(self, X: DataMatrix) -> None:
        if X.d != self.d:
            raise DimMismatchError(self.d, X.d)

    def duplicate_pair(self) -> Optional[Tuple[int, int]]:
        """First pair (j, l), j < l, of centers identical in every coordinate."""
        for j in range(self.k):
            same = np.all(self.centers[j + 1:] == self.centers[j], axis=1)
            if same.any():
                return j, j + 1 + int(np.argmax(same))
        return None


@dataclass(frozen=True, eq=False)
class Labeling:
    """Cluster index per point, each in [0, k)."""
    labels: np.ndarray
    k: int

    def __post_init__(self):
        labels = np.asarray(self.labels)
        if labels.ndim != 1:
            raise DimMismatchError(1, labels.ndim)
        if labels.size and not np.issubdtype(labels.dtype, np.integer):
            if not np.all(labels == np.round(labels)):
                raise ValueError("labels must be integers")
        labels = labels.astype(np.int64)
        if labels.size and (labels.min() < 0 or labels.max() >= self.k):
            raise ValueError(f"labels must lie in [0, {self.k})")
        object.__setattr__(self, "labels", _frozen(labels))

    @property
    def n(self) -> int:
        return int(self.labels.shape[0])

    def sizes(self) -> np.ndarray:
        return np.bincount(self.labels, minlength=self.k)

    def members(self, label: int) -> np.ndarray:
        return np.flatnonzero(self.labels == label)


# ── Threshold trees ──────────────────────────────────────────────────────────

@dataclass(frozen=True)
class LeafNode:
    """Leaf; `label` is the cluster id. `majority` is set by supervised builders."""
    label: int
    majority: Optional[int] = None


@dataclass(frozen=True)
class SplitNode:
    """
    Internal node routing x to `left` iff x[feature] <= threshold.

    The optional metadata is recorded by IMM: mistake count t_u, the surviving
    center index set J_u and the corners of the J_u bounding box.
    """
    feature: int
    threshold: float
    left: "TreeNode"
    right: "TreeNode"
    mistakes: Optional[int] = None
    centers: Optional[Tuple[int, ...]] = None
    box_low: Optional[Tuple[float, ...]] = None
    box_high: Optional[Tuple[float, ...]] = None


TreeNode = Union[LeafNode, SplitNode]


def iter_preorder(node: TreeNode) -> Iterator[TreeNode]:
    stack: List[TreeNode] = [node]
    while stack:
        current = stack.pop()
        yield current
        if isinstance(current, SplitNode):
            stack.append(current.right)
            stack.append(current.left)


def _node_depth(node: TreeNode) -> int:
    depth = 0
    frontier = [(node, 0)]
    while frontier:
        current, level = frontier.pop()
        depth = max(depth, level)
        if isinstance(current, SplitNode):
            frontier.append((current.left, level + 1))
            frontier.append((current.right, level + 1))
    return depth


def _center_ids(node: TreeNode) -> Optional[Tuple[int, ...]]:
    if isinstance(node, LeafNode):
        return (node.label,)
    return node.centers


@dataclass(frozen=True)
class ThresholdTree:
    """
    Binary threshold tree with k leaves whose labels are exactly {0, ..., k-1}.

    Validates on construction: leaf labels distinct and complete, and wherever
    IMM metadata is present the children's center sets partition the parent's.
    """
    root: TreeNode
    k: int
    objective: Objective = Objective.MEANS

    def __post_init__(self):
        object.__setattr__(self, "objective", Objective.parse(self.objective))
        labels = sorted(leaf.label for leaf in self.leaves())
        if labels != list(range(self.k)):
            raise ValueError(f"leaf labels {labels} are not exactly 0..{self.k - 1}")

        for node in self.internal_nodes():
            if node.centers is None:
                continue
            left, right = _center_ids(node.left), _center_ids(node.right)
            if not left or not right:
                raise ValueError("every child of an annotated node needs a nonempty center set")
            if set(left) & set(right) or set(left) | set(right) != set(node.centers):
                raise ValueError("child center sets do not partition the parent's")

    @property
    def depth(self) -> int:
        return _node_depth(self.root)

    def leaves(self) -> List[LeafNode]:
        return [node for node in iter_preorder(self.root) if isinstance(node, LeafNode)]

    def internal_nodes(self) -> List[SplitNode]:
        return [node for node in iter_preorder(self.root) if isinstance(node, SplitNode)]

    def route(self, X: Union[DataMatrix, np.ndarray]) -> np.ndarray:
        """Leaf label reached by every row of X."""
        values = X.values if isinstance(X, DataMatrix) else np.asarray(X, dtype=np.float64)
        n = values.shape[0]
        max_feature = max((node.feature for node in self.internal_nodes()), default=-1)
        if max_feature >= values.shape[1]:
            raise DimMismatchError(max_feature + 1, values.shape[1])

        out = np.empty(n, dtype=np.int64)
        stack = [(self.root, np.arange(n))]
        while stack:
            node, idx = stack.pop()
            if isinstance(node, LeafNode):
                out[idx] = node.label
                continue
            go_left = values[idx, node.feature] <= node.threshold
            stack.append((node.left, idx[go_left]))
            stack.append((node.right, idx[~go_left]))
        return out

    def labeling(self, X: Union[DataMatrix, np.ndarray]) -> Labeling:
        return Labeling(self.route(X), self.k)

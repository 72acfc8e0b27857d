"""
Iterative Mistake Minimization: explain a set of reference centers with a
threshold tree of exactly k leaves.

Each node holds the centers lying in its cell (J_u) and the points that so far
travelled with their own center. The split is the (feature, θ) with ℓ_i ≤ θ < r_i
that separates the fewest points from their centers; those mistakes are dropped
before recursing.
"""

import time
from dataclasses import dataclass
from typing import List, Optional, Tuple, Union

import numpy as np

from src.core.cost import cost_of_tree
from src.core.errors import DuplicateCentersError, UnsplittableError
from src.core.types import (
    CenterSet,
    DataMatrix,
    Labeling,
    LeafNode,
    SplitNode,
    ThresholdTree,
    TreeNode,
)
from src.core.validation import assign_labels
from src.utils.logging import log_algorithm_run, logger
from src.utils.schema import TreeStats


@dataclass(frozen=True)
class NodeWorkset:
    """Surviving points (with their labels) and centers at one tree node."""
    points: np.ndarray
    labels: np.ndarray
    centers: np.ndarray
    low: np.ndarray
    high: np.ndarray

    @classmethod
    def build(cls, points: np.ndarray, labels: np.ndarray, centers: np.ndarray, C: CenterSet) -> "NodeWorkset":
        box = C.centers[centers]
        return cls(
            points=np.asarray(points, dtype=np.int64),
            labels=np.asarray(labels, dtype=np.int64),
            centers=np.asarray(centers, dtype=np.int64),
            low=box.min(axis=0),
            high=box.max(axis=0),
        )

    @property
    def splittable(self) -> bool:
        return self.centers.size >= 2 and bool(np.any(self.low < self.high))


def count_mistakes(
    points: np.ndarray,
    labels: np.ndarray,
    centers: np.ndarray,
    feature: int,
    threshold: float,
) -> int:
    """Points whose side of x_i <= θ differs from their own center's side."""
    points = np.atleast_2d(np.asarray(points, dtype=np.float64))
    own = np.asarray(centers, dtype=np.float64)[np.asarray(labels, dtype=np.int64)]
    return int(np.count_nonzero((points[:, feature] <= threshold) != (own[:, feature] <= threshold)))


def best_split(w: NodeWorkset, X: DataMatrix, C: CenterSet) -> Tuple[int, float, int]:
    """
    (feature, θ, mistakes) minimizing mistakes over θ in [ℓ_i, r_i).

    A point is a mistake at θ exactly when min(x_i, μ_i) <= θ < max(x_i, μ_i),
    so the count at θ is #{lo <= θ} - #{hi <= θ} over the sorted interval ends.
    """
    if not w.splittable:
        raise UnsplittableError(f"centers {w.centers.tolist()} cannot be separated by any threshold")

    values = X.values[w.points]
    own = C.centers[w.labels]
    lo = np.sort(np.minimum(values, own), axis=0)
    hi = np.sort(np.maximum(values, own), axis=0)
    center_values = C.centers[w.centers]

    best: Optional[Tuple[int, float, int]] = None
    for i in np.flatnonzero(w.low < w.high):
        i = int(i)
        merged = np.unique(np.concatenate([values[:, i], center_values[:, i]]))
        candidates = merged[(merged >= w.low[i]) & (merged < w.high[i])]
        mistakes = (
            np.searchsorted(lo[:, i], candidates, side="right")
            - np.searchsorted(hi[:, i], candidates, side="right")
        )
        j = int(np.argmin(mistakes))
        if best is None or mistakes[j] < best[2]:
            best = (i, float(candidates[j]), int(mistakes[j]))
    return best


def _grow(X: DataMatrix, C: CenterSet, w: NodeWorkset) -> TreeNode:
    if w.centers.size == 1:
        return LeafNode(label=int(w.centers[0]))

    feature, threshold, mistakes = best_split(w, X, C)
    point_left = X.values[w.points, feature] <= threshold
    center_left = C.centers[w.labels, feature] <= threshold
    kept = point_left == center_left
    centers_left = C.centers[w.centers, feature] <= threshold
    logger.debug(
        "IMM split x%d <= %.6g: |J|=%d, %d points, %d mistakes",
        feature, threshold, w.centers.size, w.points.size, mistakes,
    )

    left = NodeWorkset.build(
        w.points[kept & point_left], w.labels[kept & point_left], w.centers[centers_left], C
    )
    right = NodeWorkset.build(
        w.points[kept & ~point_left], w.labels[kept & ~point_left], w.centers[~centers_left], C
    )
    return SplitNode(
        feature=feature,
        threshold=threshold,
        left=_grow(X, C, left),
        right=_grow(X, C, right),
        mistakes=mistakes,
        centers=tuple(int(j) for j in w.centers),
        box_low=tuple(float(v) for v in w.low),
        box_high=tuple(float(v) for v in w.high),
    )


def imm_fit(X: DataMatrix, C: CenterSet, labels: Optional[Union[Labeling, np.ndarray]] = None) -> ThresholdTree:
    """
    Build the IMM tree for centers C.

    `labels` defaults to nearest-center assignment. Leaves are labeled by
    center index, so the tree always has exactly C.k leaves; a center whose
    points were all lost to mistakes still gets its (empty) leaf.
    """
    start = time.perf_counter()
    C.check_dims(X)
    duplicate = C.duplicate_pair()
    if duplicate is not None:
        raise DuplicateCentersError(*duplicate)

    if labels is None:
        labels = assign_labels(X, C)
    label_array = labels.labels if isinstance(labels, Labeling) else np.asarray(labels, dtype=np.int64)
    if label_array.shape != (X.n,):
        raise ValueError(f"{label_array.shape[0]} labels for {X.n} points")

    root = NodeWorkset.build(np.arange(X.n), label_array, np.arange(C.k), C)
    tree = ThresholdTree(root=_grow(X, C, root), k=C.k, objective=C.objective)

    log_algorithm_run(
        "imm",
        time.perf_counter() - start,
        objective=C.objective.value,
        n=X.n,
        d=X.d,
        k=C.k,
        depth=tree.depth,
        total_mistakes=sum(mistakes_per_node(tree)),
    )
    return tree


def mistakes_per_node(T: ThresholdTree) -> List[int]:
    """Recorded t_u of every annotated internal node, pre-order."""
    return [node.mistakes for node in T.internal_nodes() if node.mistakes is not None]


def tree_stats(
    T: ThresholdTree,
    X: DataMatrix,
    algorithm: str = "imm",
    wall_time: float = 0.0,
    cost_history: Optional[List[float]] = None,
) -> TreeStats:
    per_node = mistakes_per_node(T)
    return TreeStats(
        algorithm=algorithm,
        objective=T.objective.value,
        k=T.k,
        depth=T.depth,
        cost=cost_of_tree(X, T, allow_empty=True).total_cost,
        mistakes_per_node=per_node,
        total_mistakes=sum(per_node),
        wall_time=wall_time,
        cost_history=cost_history,
    )

"""
Supervised entropy-splitting tree grown best-first to a fixed number of leaves.

Used as the baseline that explains a clustering by fitting its labels; its
first split need not respect the cluster geometry.
"""

import time
from dataclasses import dataclass, field
from typing import List, Optional, Tuple, Union

import numpy as np

from src.core.types import DataMatrix, Labeling, LeafNode, Objective, SplitNode, ThresholdTree, TreeNode
from src.utils.logging import log_algorithm_run


def entropy(counts: np.ndarray) -> np.ndarray:
    """Shannon entropy (bits) of label counts along the last axis."""
    counts = np.asarray(counts, dtype=np.float64)
    totals = counts.sum(axis=-1, keepdims=True)
    p = np.divide(counts, totals, out=np.zeros_like(counts), where=totals > 0)
    logs = np.log2(p, out=np.zeros_like(p), where=p > 0)
    return -(p * logs).sum(axis=-1)


def best_entropy_split(values: np.ndarray, labels: np.ndarray, n_labels: int) -> Optional[Tuple[int, float, float]]:
    """
    (feature, θ, gain) with maximal information gain over midpoints between
    consecutive distinct values; None if every feature is constant.
    """
    n = values.shape[0]
    parent = float(entropy(np.bincount(labels, minlength=n_labels)))
    onehot = np.eye(n_labels, dtype=np.int64)[labels]

    best: Optional[Tuple[int, float, float]] = None
    for feature in range(values.shape[1]):
        order = np.argsort(values[:, feature], kind="stable")
        column = values[order, feature]
        cuts = np.flatnonzero(column[:-1] != column[1:]) + 1
        if cuts.size == 0:
            continue
        left_counts = np.cumsum(onehot[order], axis=0)[cuts - 1]
        right_counts = onehot.sum(axis=0) - left_counts
        sizes = cuts.astype(np.float64)
        children = (sizes * entropy(left_counts) + (n - sizes) * entropy(right_counts)) / n
        gains = parent - children
        j = int(np.argmax(gains))
        if best is None or gains[j] > best[2]:
            best = (feature, float((column[cuts[j] - 1] + column[cuts[j]]) / 2.0), float(max(gains[j], 0.0)))
    return best


@dataclass(eq=False)
class _Growing:
    """Mutable node used while the tree grows."""
    indices: np.ndarray
    order: int
    split: Optional[Tuple[int, float, float]] = None
    children: List["_Growing"] = field(default_factory=list)
    feature: int = -1
    threshold: float = 0.0


def _freeze(node: _Growing, labels: np.ndarray, n_labels: int, counter: List[int]) -> TreeNode:
    if not node.children:
        label = counter[0]
        counter[0] += 1
        majority = int(np.argmax(np.bincount(labels[node.indices], minlength=n_labels)))
        return LeafNode(label=label, majority=majority)
    left = _freeze(node.children[0], labels, n_labels, counter)
    right = _freeze(node.children[1], labels, n_labels, counter)
    return SplitNode(feature=node.feature, threshold=node.threshold, left=left, right=right)


def id3_fit(
    X: DataMatrix,
    labels: Union[Labeling, np.ndarray],
    leaves: int,
    objective: Union[str, Objective] = Objective.MEANS,
) -> ThresholdTree:
    """
    Grow until `leaves` leaves or no impure leaf can be split. The leaf with
    the largest size-weighted information gain is split next (ties: the
    earliest created). Leaves are numbered 0.. in pre-order and carry their
    majority label.
    """
    if leaves < 2:
        raise ValueError("leaf budget must be at least 2")
    start = time.perf_counter()
    label_array = labels.labels if isinstance(labels, Labeling) else np.asarray(labels, dtype=np.int64)
    if label_array.shape != (X.n,):
        raise ValueError(f"{label_array.shape[0]} labels for {X.n} points")
    n_labels = int(label_array.max()) + 1

    created = 0

    def make(indices: np.ndarray) -> _Growing:
        nonlocal created
        node = _Growing(indices=indices, order=created)
        created += 1
        if np.unique(label_array[indices]).size > 1:
            node.split = best_entropy_split(X.values[indices], label_array[indices], n_labels)
        return node

    root = make(np.arange(X.n))
    frontier = [root]
    while len(frontier) < leaves:
        open_leaves = [node for node in frontier if node.split is not None]
        if not open_leaves:
            break
        chosen = max(open_leaves, key=lambda node: (node.indices.size * node.split[2], -node.order))
        feature, threshold, _ = chosen.split
        go_left = X.values[chosen.indices, feature] <= threshold
        chosen.feature, chosen.threshold = feature, threshold
        chosen.children = [make(chosen.indices[go_left]), make(chosen.indices[~go_left])]
        frontier.remove(chosen)
        frontier.extend(chosen.children)

    counter = [0]
    tree = ThresholdTree(root=_freeze(root, label_array, n_labels, counter), k=counter[0], objective=objective)
    log_algorithm_run("id3", time.perf_counter() - start, n=X.n, leaves=tree.k, depth=tree.depth)
    return tree

"""
k-medians / k-means objectives for explicit centers, label partitions and
threshold trees.

Sums are accumulated in extended precision (np.longdouble) and reduced in a
fixed order: cluster index, then point, then coordinate.
"""

from typing import Iterable, List, Optional, Tuple, Union

import numpy as np

from src.core.errors import EmptyClusterError, EmptyIndexSetError, EmptyLeafError
from src.core.types import CenterSet, DataMatrix, Labeling, Objective, ThresholdTree
from src.core.validation import assign_labels
from src.utils.schema import CostReport


def optimal_center(points: np.ndarray, objective: Union[str, Objective]) -> np.ndarray:
    """
    Optimal center of one cluster: coordinate-wise mean (means) or
    coordinate-wise median (medians, midpoint of the middle pair when even).
    """
    objective = Objective.parse(objective)
    points = np.asarray(points, dtype=np.float64)
    if points.ndim == 1:
        points = points.reshape(-1, 1)
    if points.shape[0] == 0:
        raise EmptyClusterError()

    if objective is Objective.MEDIANS:
        return np.median(points, axis=0)
    return np.mean(points, axis=0, dtype=np.longdouble).astype(np.float64)


def cluster_cost(points: np.ndarray, center: np.ndarray, objective: Union[str, Objective]) -> float:
    """Σ ‖x − center‖₁ or Σ ‖x − center‖₂² over the rows of `points`."""
    objective = Objective.parse(objective)
    diff = np.asarray(points, dtype=np.longdouble) - np.asarray(center, dtype=np.longdouble)
    if objective is Objective.MEDIANS:
        return float(np.sum(np.abs(diff), dtype=np.longdouble))
    return float(np.sum(diff * diff, dtype=np.longdouble))


def _per_cluster(values: np.ndarray, labels: np.ndarray, k: int, objective: Objective,
                 allow_empty: bool, empty_error) -> List[float]:
    costs = []
    for j in range(k):
        members = values[labels == j]
        if members.shape[0] == 0:
            if not allow_empty:
                raise empty_error(j)
            costs.append(0.0)
            continue
        costs.append(cluster_cost(members, optimal_center(members, objective), objective))
    return costs


def cost_of_partition(
    X: DataMatrix,
    labels: Union[Labeling, np.ndarray],
    objective: Union[str, Objective],
    k: Optional[int] = None,
) -> CostReport:
    """Cost of a label partition with each cluster at its optimal center."""
    objective = Objective.parse(objective)
    if not isinstance(labels, Labeling):
        labels = np.asarray(labels)
        labels = Labeling(labels, k if k is not None else int(labels.max()) + 1)
    if labels.n != X.n:
        raise ValueError(f"{labels.n} labels for {X.n} points")

    per_cluster = _per_cluster(X.values, labels.labels, labels.k, objective, False, EmptyClusterError)
    return CostReport.from_clusters(objective.value, per_cluster)


def cost_of_tree(
    X: DataMatrix,
    T: ThresholdTree,
    objective: Optional[Union[str, Objective]] = None,
    allow_empty: bool = False,
) -> CostReport:
    """
    Route every point down T and score each leaf at its optimal center.

    A leaf that receives no point raises EmptyLeafError unless `allow_empty`,
    in which case it contributes zero.
    """
    objective = Objective.parse(objective or T.objective)
    routed = T.route(X)
    per_cluster = _per_cluster(X.values, routed, T.k, objective, allow_empty, EmptyLeafError)
    return CostReport.from_clusters(objective.value, per_cluster)


def cost_of_centers(X: DataMatrix, C: CenterSet) -> CostReport:
    """
    Cost of the supplied centers themselves: Σ_x min_j dist(x, μʲ).

    This is the reference value the tree guarantees are stated against.
    """
    labeling = assign_labels(X, C)
    per_cluster = []
    for j in range(C.k):
        members = X.values[labeling.labels == j]
        per_cluster.append(cluster_cost(members, C.centers[j], C.objective) if len(members) else 0.0)
    return CostReport.from_clusters(C.objective.value, per_cluster)


def bounding_box_diameters(C: CenterSet, J: Iterable[int]) -> Tuple[float, float]:
    """ℓ₁ and squared ℓ₂ diameter of the box spanned by the centers in J."""
    J = sorted(set(int(j) for j in J))
    if not J:
        raise EmptyIndexSetError()
    subset = C.centers[J]
    span = subset.max(axis=0) - subset.min(axis=0)
    return float(np.sum(span, dtype=np.longdouble)), float(np.sum(span * span, dtype=np.longdouble))


def theorem_bound(objective: Union[str, Objective], depth: int, k: int) -> float:
    """Approximation factor guaranteed for an IMM tree of the given depth."""
    objective = Objective.parse(objective)
    if objective is Objective.MEDIANS:
        return 2.0 * depth + 1.0
    return 8.0 * depth * k + 2.0


def mistake_bound_terms(T: ThresholdTree, C: CenterSet) -> Tuple[float, float]:
    """Σ_u t_u·diam₁(B(u)) and Σ_u t_u·diam₂²(B(u)) over the annotated nodes of T."""
    l1_total = 0.0
    l2_total = 0.0
    for node in T.internal_nodes():
        if node.mistakes is None or node.centers is None:
            continue
        l1, l2 = bounding_box_diameters(C, node.centers)
        l1_total += node.mistakes * l1
        l2_total += node.mistakes * l2
    return l1_total, l2_total

"""
Brute-force ground truth for the fast algorithms.

Nothing here reuses the cost module or the scanning code it checks: every
center and cost is recomputed from scratch with plain numpy reductions and
math.fsum. Size guards are hard errors.
"""

import math
import time
from functools import lru_cache
from typing import Iterator, List, Optional, Sequence, Tuple, Union

import networkx as nx
import numpy as np

from src.config.settings import settings
from src.core.errors import KTooLargeError, TooLargeError, UnsplittableError
from src.core.types import DataMatrix, Labeling, LeafNode, Objective, SplitNode, ThresholdTree, TreeNode
from src.utils.logging import log_algorithm_run
from src.utils.parallel import ordered_map
from src.utils.schema import CutResult

TREE_LIMITS = {"n": 10, "k": 3, "d": 3}
MATCHING_LIMIT = 40
PARTITION_CHUNK = 4096


def _block_cost(points: np.ndarray, objective: Objective) -> float:
    if points.shape[0] == 0:
        return 0.0
    if objective is Objective.MEDIANS:
        center = np.median(points, axis=0)
        return math.fsum(np.abs(points - center).ravel())
    center = np.mean(points, axis=0)
    return math.fsum(((points - center) ** 2).ravel())


def _select(candidates: List[Tuple[int, float, float, int]]) -> Tuple[int, float, float, int]:
    best = min(c[2] for c in candidates)
    limit = best + settings.tolerance(best)
    return min((c for c in candidates if c[2] <= limit), key=lambda c: (c[0], c[1]))


# ── Single cuts ──────────────────────────────────────────────────────────────

def naive_best_cut(X: DataMatrix, objective: Union[str, Objective] = Objective.MEANS) -> CutResult:
    """Score every valid (feature, position) by recomputing both clusters."""
    objective = Objective.parse(objective)
    if X.n < 2:
        raise UnsplittableError("need at least two points to cut")
    values = X.values
    candidates = []
    for feature in range(X.d):
        order = sorted(range(X.n), key=lambda idx: (values[idx, feature], idx))
        for p in range(1, X.n):
            theta = values[order[p - 1], feature]
            if theta == values[order[p], feature]:
                continue
            cost = _block_cost(values[order[:p]], objective) + _block_cost(values[order[p:]], objective)
            candidates.append((feature, float(theta), cost, p))
    if not candidates:
        raise UnsplittableError("all points are identical in every feature")
    feature, theta, cost, p = _select(candidates)
    return CutResult(feature=feature, threshold=theta, cost=cost, left_size=p, right_size=X.n - p)


# ── Exhaustive partitions ────────────────────────────────────────────────────

def stirling2(n: int, k: int) -> int:
    """Number of partitions of n items into exactly k nonempty blocks."""
    row = [1] + [0] * k
    for i in range(1, n + 1):
        for j in range(min(i, k), 0, -1):
            row[j] = j * row[j] + row[j - 1]
        row[0] = 0
    return row[k]


def restricted_growth_strings(n: int, k: int) -> Iterator[List[int]]:
    """Partitions of range(n) into exactly k blocks as restricted growth strings, lexicographic."""
    def extend(prefix: List[int], used: int) -> Iterator[List[int]]:
        remaining = n - len(prefix)
        if remaining == 0:
            if used == k:
                yield list(prefix)
            return
        if k - used > remaining:
            return
        for block in range(min(used + 1, k)):
            prefix.append(block)
            yield from extend(prefix, max(used, block + 1))
            prefix.pop()

    if 1 <= k <= n:
        yield from extend([], 0)


def _chunk_costs(values: np.ndarray, labelings: np.ndarray, k: int, objective: Objective) -> np.ndarray:
    """Total cost of every row of `labelings` (c × n) at optimal block centers."""
    costs = np.zeros(labelings.shape[0])
    for block in range(k):
        mask = labelings == block                                  # (c, n)
        masked = np.where(mask[:, :, None], values[None, :, :], np.nan)
        if objective is Objective.MEDIANS:
            center = np.nanmedian(masked, axis=1)
            costs += np.nansum(np.abs(masked - center[:, None, :]), axis=(1, 2))
        else:
            center = np.nanmean(masked, axis=1)
            costs += np.nansum((masked - center[:, None, :]) ** 2, axis=(1, 2))
    return costs


def brute_opt_partition(
    X: DataMatrix,
    k: int,
    objective: Union[str, Objective] = Objective.MEANS,
    threads: Optional[int] = None,
) -> Tuple[np.ndarray, float]:
    """
    Minimum-cost k-partition by exhaustive enumeration.

    Using exactly k blocks loses nothing: splitting a block never raises cost.
    The first minimizer in restricted-growth order is returned.
    """
    objective = Objective.parse(objective)
    if k > X.n:
        raise KTooLargeError(k, X.n)
    count = sum(stirling2(X.n, j) for j in range(1, k + 1))
    if count > settings.brute_force_limit:
        raise TooLargeError("partition enumeration", count, settings.brute_force_limit)
    start = time.perf_counter()

    chunks: List[np.ndarray] = []
    buffer: List[List[int]] = []
    for rgs in restricted_growth_strings(X.n, k):
        buffer.append(rgs)
        if len(buffer) == PARTITION_CHUNK:
            chunks.append(np.array(buffer, dtype=np.int64))
            buffer = []
    if buffer:
        chunks.append(np.array(buffer, dtype=np.int64))

    scored = ordered_map(lambda chunk: _chunk_costs(X.values, chunk, k, objective), chunks, threads=threads)
    best_labels, best_cost = None, math.inf
    for chunk, costs in zip(chunks, scored):
        j = int(np.argmin(costs))
        if costs[j] < best_cost:
            best_labels, best_cost = chunk[j], float(costs[j])

    exact = math.fsum(_block_cost(X.values[best_labels == block], objective) for block in range(k))
    log_algorithm_run("brute_opt_partition", time.perf_counter() - start,
                      n=X.n, k=k, partitions=count, cost=exact)
    return best_labels.copy(), exact


# ── Exhaustive trees ─────────────────────────────────────────────────────────

def brute_best_tree(
    X: DataMatrix,
    k: int,
    objective: Union[str, Objective] = Objective.MEANS,
    max_depth: Optional[int] = None,
) -> Tuple[Optional[ThresholdTree], float]:
    """
    Cheapest threshold tree with exactly k nonempty leaves over every shape
    and every data-value threshold. Returns (None, inf) when no such tree of
    depth <= max_depth exists.
    """
    objective = Objective.parse(objective)
    for what, size in (("n", X.n), ("k", k), ("d", X.d)):
        if size > TREE_LIMITS[what]:
            raise TooLargeError(f"tree enumeration ({what})", size, TREE_LIMITS[what])
    values = X.values
    depth_budget = k - 1 if max_depth is None else max_depth

    @lru_cache(maxsize=None)
    def best(subset: Tuple[int, ...], leaves: int, depth: int) -> Tuple[float, Optional[tuple]]:
        if leaves == 1:
            return _block_cost(values[list(subset)], objective), None
        if leaves > len(subset) or depth == 0:
            return math.inf, None
        rows = values[list(subset)]
        result: Tuple[float, Optional[tuple]] = (math.inf, None)
        for feature in range(X.d):
            for theta in np.unique(rows[:, feature])[:-1]:
                left = tuple(i for i in subset if values[i, feature] <= theta)
                right = tuple(i for i in subset if values[i, feature] > theta)
                for a in range(1, leaves):
                    cost_left, _ = best(left, a, depth - 1)
                    cost_right, _ = best(right, leaves - a, depth - 1)
                    if cost_left + cost_right < result[0]:
                        result = (cost_left + cost_right, (feature, float(theta), left, a, right, leaves - a))
        return result

    def build(subset: Tuple[int, ...], leaves: int, depth: int, counter: List[int]) -> TreeNode:
        if leaves == 1:
            counter[0] += 1
            return LeafNode(label=counter[0] - 1)
        _, (feature, theta, left, a, right, b) = best(subset, leaves, depth)
        return SplitNode(
            feature=feature,
            threshold=theta,
            left=build(left, a, depth - 1, counter),
            right=build(right, b, depth - 1, counter),
        )

    everything = tuple(range(X.n))
    cost, _ = best(everything, k, depth_budget)
    if math.isinf(cost):
        return None, math.inf
    tree = ThresholdTree(root=build(everything, k, depth_budget, [0]), k=k, objective=objective)
    return tree, cost


# ── Matching check ──────────────────────────────────────────────────────────

def _min_changes(values: np.ndarray, in_first: np.ndarray) -> int:
    """Smallest disagreement between the 2-clustering and any threshold cut (trivial cuts included)."""
    n = values.shape[0]
    best = int(min(in_first.sum(), n - in_first.sum()))
    for feature in range(values.shape[1]):
        for theta in np.unique(values[:, feature]):
            left = values[:, feature] <= theta
            disagree = int(np.count_nonzero(left != in_first))
            best = min(best, disagree, n - disagree)
    return best


def verify_matching_lemma(
    X: DataMatrix,
    labels: Union[Labeling, np.ndarray],
    coordinate: int,
    objective: Union[str, Objective] = Objective.MEANS,
) -> bool:
    """
    With t the fewest changes any threshold cut makes to the 2-clustering,
    check that the t points of C¹ with the largest coordinate value can be
    matched to distinct points q of C² with q_i <= p_i. C¹ is the cluster whose
    optimal center is smaller in the coordinate.
    """
    objective = Objective.parse(objective)
    if X.n > MATCHING_LIMIT:
        raise TooLargeError("matching check", X.n, MATCHING_LIMIT)
    label_array = labels.labels if isinstance(labels, Labeling) else np.asarray(labels, dtype=np.int64)
    if not 0 <= coordinate < X.d:
        raise ValueError(f"coordinate {coordinate} outside [0, {X.d})")
    values = X.values
    zero, one = label_array == 0, label_array == 1
    if not zero.any() or not one.any():
        return True

    def center(mask: np.ndarray) -> float:
        column = values[mask, coordinate]
        return float(np.median(column) if objective is Objective.MEDIANS else np.mean(column))

    first = zero if center(zero) <= center(one) else one
    t = _min_changes(values, first)
    if t == 0:
        return True

    c1 = np.flatnonzero(first)
    c2 = np.flatnonzero(~first)
    top = c1[np.argsort(-values[c1, coordinate], kind="stable")[:t]]

    graph = nx.Graph()
    p_nodes = [("p", int(i)) for i in top]
    graph.add_nodes_from(p_nodes, bipartite=0)
    graph.add_nodes_from((("q", int(j)) for j in c2), bipartite=1)
    graph.add_edges_from(
        (("p", int(i)), ("q", int(j)))
        for i in top
        for j in c2
        if values[j, coordinate] <= values[i, coordinate]
    )
    matching = nx.bipartite.hopcroft_karp_matching(graph, top_nodes=p_nodes)
    return len(matching) // 2 == t


# ── Per-node IMM replay ──────────────────────────────────────────────────────

def brute_best_split(
    points: np.ndarray,
    labels: Sequence[int],
    centers: np.ndarray,
    J: Sequence[int],
) -> Tuple[int, float, int]:
    """
    (feature, θ, mistakes) over every feature and every point/center value θ
    that leaves at least one center of J on each side; ties to the lowest
    feature, then the lowest θ.
    """
    points = np.atleast_2d(np.asarray(points, dtype=np.float64))
    centers = np.asarray(centers, dtype=np.float64)
    J = list(J)
    best: Optional[Tuple[int, float, int]] = None
    for feature in range(centers.shape[1]):
        values = sorted(set(points[:, feature].tolist()) | set(centers[J, feature].tolist()))
        for theta in values:
            left = sum(1 for j in J if centers[j, feature] <= theta)
            if left == 0 or left == len(J):
                continue
            mistakes = sum(
                1 for x, label in zip(points, labels)
                if (x[feature] <= theta) != (centers[label, feature] <= theta)
            )
            if best is None or mistakes < best[2]:
                best = (feature, float(theta), mistakes)
    if best is None:
        raise UnsplittableError("no threshold separates the centers")
    return best


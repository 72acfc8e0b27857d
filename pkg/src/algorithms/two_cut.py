"""
Exact optimal single threshold cut for 2-means and 2-medians.

For every feature the points are sorted (value, then original index) and all
positions p with x^p_i != x^{p+1}_i are scored; the cut is x_i <= x^p_i.

- 2-means uses the prefix/suffix identity
      cost(p) = u - ||s^p||² / p - ||r^p||² / (n - p)
  on mean-centered data in extended precision.
- 2-medians walks p upward with the incremental update
      cost(p) = cost(p-1) + dist(x^p, M(C1)) - dist(x^p, M(C2))
  where M(·) is the coordinate-wise median interval, kept by two heaps per
  coordinate.

Among cuts within tolerance of the minimum the lowest feature, then the lowest
threshold, wins.
"""

import heapq
import time
from dataclasses import dataclass
from typing import List, Optional, Tuple, Union

import numpy as np

from src.config.settings import settings
from src.core.errors import DimMismatchError, UnsplittableError
from src.core.types import DataMatrix, Labeling, LeafNode, Objective, SplitNode, ThresholdTree
from src.utils.logging import log_algorithm_run, logger
from src.utils.parallel import ordered_map
from src.utils.schema import CutResult

# (feature, threshold, cost, left_size)
Candidate = Tuple[int, float, float, int]


@dataclass(frozen=True)
class PrefixState2Means:
    """
    Prefix sums s^p, suffix sums r^p and u = Σ‖x‖² for every split position
    p = 1..n-1 of one feature ordering (row p-1 holds position p).
    """
    s: np.ndarray
    r: np.ndarray
    u: np.longdouble
    positions: np.ndarray

    @classmethod
    def from_sorted(cls, rows: np.ndarray) -> "PrefixState2Means":
        rows = rows.astype(np.longdouble)
        n = rows.shape[0]
        s = np.cumsum(rows, axis=0)[:-1]
        r = np.cumsum(rows[::-1], axis=0)[::-1][1:]
        u = np.sum(rows * rows, dtype=np.longdouble)
        return cls(s=s, r=r, u=u, positions=np.arange(1, n))

    def check_totals(self) -> bool:
        """s + r equals the total sum vector at every position."""
        total = self.s[0] + self.r[0]
        scale = float(np.max(np.abs(total))) if total.size else 0.0
        return bool(np.all(np.abs(self.s + self.r - total) <= max(1e-12, 1e-9 * scale)))

    def costs(self) -> np.ndarray:
        p = self.positions.astype(np.longdouble)
        n = p[-1] + 1
        cost = self.u - np.sum(self.s * self.s, axis=1) / p - np.sum(self.r * self.r, axis=1) / (n - p)
        return _clamp(cost, float(self.u))


def _clamp(cost: np.ndarray, scale: float) -> np.ndarray:
    cost = np.asarray(cost, dtype=np.float64)
    floor = -1e-9 * max(scale, 1.0)
    if np.any(cost < floor):
        logger.warning("2-cut cost underflow below tolerance (min %.3e)", float(cost.min()))
    return np.maximum(cost, 0.0)


def _sorted_order(column: np.ndarray) -> np.ndarray:
    # stable: equal values keep original index order
    return np.argsort(column, kind="stable")


def _valid_positions(sorted_column: np.ndarray) -> np.ndarray:
    """Left sizes p (1..n-1) where the p-th and (p+1)-th sorted values differ."""
    return np.flatnonzero(sorted_column[:-1] != sorted_column[1:]) + 1


def select_cut(candidates: List[Candidate]) -> Candidate:
    """Lowest (feature, threshold) among candidates within tolerance of the minimum."""
    best = min(cost for _, _, cost, _ in candidates)
    limit = best + settings.tolerance(best)
    return min((c for c in candidates if c[2] <= limit), key=lambda c: (c[0], c[1]))


# ── 2-means ──────────────────────────────────────────────────────────────────

def _scan_means(values: np.ndarray, feature: int) -> List[Candidate]:
    order = _sorted_order(values[:, feature])
    column = values[order, feature]
    valid = _valid_positions(column)
    if valid.size == 0:
        return []
    centered = values - values.mean(axis=0)
    state = PrefixState2Means.from_sorted(centered[order])
    costs = state.costs()
    return [(feature, float(column[p - 1]), float(costs[p - 1]), int(p)) for p in valid]


# ── 2-medians ────────────────────────────────────────────────────────────────

class _RunningMedian:
    """Median interval of a growing multiset of scalars (max-heap / min-heap pair)."""

    def __init__(self):
        self.low: List[float] = []   # negated
        self.high: List[float] = []

    def add(self, value: float) -> None:
        if not self.low or value <= -self.low[0]:
            heapq.heappush(self.low, -value)
        else:
            heapq.heappush(self.high, value)
        if len(self.low) > len(self.high) + 1:
            heapq.heappush(self.high, -heapq.heappop(self.low))
        elif len(self.high) > len(self.low):
            heapq.heappush(self.low, -heapq.heappop(self.high))

    def distance(self, value: float) -> float:
        """Distance from value to the median interval (0 when empty)."""
        if not self.low:
            return 0.0
        lo = -self.low[0]
        hi = lo if len(self.low) > len(self.high) else self.high[0]
        if value < lo:
            return lo - value
        if value > hi:
            return value - hi
        return 0.0


def _insertion_costs(rows: np.ndarray) -> np.ndarray:
    """
    For each row t, the ℓ₁ distance from row t to the coordinate-wise median
    interval of rows[:t]; this is exactly the 1-median cost increase of adding it.
    """
    n, d = rows.shape
    trackers = [_RunningMedian() for _ in range(d)]
    out = np.zeros(n, dtype=np.float64)
    for t in range(n):
        row = rows[t]
        out[t] = sum(trackers[c].distance(float(row[c])) for c in range(d))
        for c in range(d):
            trackers[c].add(float(row[c]))
    return out


def _scan_medians(values: np.ndarray, feature: int) -> List[Candidate]:
    order = _sorted_order(values[:, feature])
    column = values[order, feature]
    valid = _valid_positions(column)
    if valid.size == 0:
        return []
    rows = values[order]
    n = rows.shape[0]

    base = float(np.sum(np.abs(rows - np.median(rows, axis=0)), dtype=np.longdouble))
    joins = _insertion_costs(rows)                    # x^p joining C1(p-1)
    leaves = _insertion_costs(rows[::-1])[::-1]       # x^p leaving, measured against C2(p)
    steps = joins[: n - 1] - leaves[: n - 1]
    costs = _clamp(base + np.cumsum(steps, dtype=np.longdouble), base)
    return [(feature, float(column[p - 1]), float(costs[p - 1]), int(p)) for p in valid]


# ── Public API ───────────────────────────────────────────────────────────────

def _best_cut(X: DataMatrix, objective: Objective, scan, reference=None, threads=None) -> CutResult:
    start = time.perf_counter()
    if X.n < 2:
        raise UnsplittableError("need at least two points to cut")
    values = X.values
    per_feature = ordered_map(lambda i: scan(values, i), range(X.d), threads=threads)
    candidates = [c for feature_candidates in per_feature for c in feature_candidates]
    if not candidates:
        raise UnsplittableError("all points are identical in every feature")

    feature, threshold, cost, left_size = select_cut(candidates)
    cut = CutResult(
        feature=feature,
        threshold=threshold,
        cost=cost,
        left_size=left_size,
        right_size=X.n - left_size,
    )
    if reference is not None:
        cut = cut.model_copy(update={"changes": change_count(X, reference, cut)})

    log_algorithm_run(
        "twocut",
        time.perf_counter() - start,
        objective=objective.value,
        n=X.n,
        d=X.d,
        feature=feature,
        threshold=threshold,
        cost=cost,
    )
    return cut


def best_cut_means(X: DataMatrix, reference=None, threads: Optional[int] = None) -> CutResult:
    """Optimal 2-means threshold cut."""
    return _best_cut(X, Objective.MEANS, _scan_means, reference, threads)


def best_cut_medians(X: DataMatrix, reference=None, threads: Optional[int] = None) -> CutResult:
    """Optimal 2-medians threshold cut."""
    return _best_cut(X, Objective.MEDIANS, _scan_medians, reference, threads)


def best_cut(X: DataMatrix, objective: Union[str, Objective] = Objective.MEANS,
             reference=None, threads: Optional[int] = None) -> CutResult:
    if Objective.parse(objective) is Objective.MEDIANS:
        return best_cut_medians(X, reference, threads)
    return best_cut_means(X, reference, threads)


def cut_side(X: DataMatrix, cut: CutResult) -> np.ndarray:
    """Boolean mask of points on the x_i <= θ side."""
    if cut.feature >= X.d:
        raise DimMismatchError(cut.feature + 1, X.d)
    return X.values[:, cut.feature] <= cut.threshold


def cut_labels(X: DataMatrix, cut: CutResult) -> Labeling:
    """Label 0 for the x_i <= θ side, 1 for the other."""
    return Labeling(np.where(cut_side(X, cut), 0, 1), 2)


def change_count(X: DataMatrix, reference: Union[Labeling, np.ndarray], cut: CutResult) -> int:
    """
    t = min(|C¹ Δ Ĉ¹|, |C¹ Δ Ĉ²|) between a reference 2-clustering and the cut.
    """
    labels = reference.labels if isinstance(reference, Labeling) else np.asarray(reference)
    if labels.shape != (X.n,):
        raise DimMismatchError(X.n, int(labels.shape[0]) if labels.ndim else 0)
    if np.any((labels != 0) & (labels != 1)):
        raise ValueError("reference must be a 2-clustering with labels 0/1")
    left = cut_side(X, cut)
    disagree = int(np.count_nonzero(left != (labels == 0)))
    return min(disagree, X.n - disagree)


def cut_to_tree(cut: CutResult, objective: Union[str, Objective] = Objective.MEANS) -> ThresholdTree:
    """The 2-leaf tree equivalent to a cut (left leaf 0, right leaf 1)."""
    root = SplitNode(feature=cut.feature, threshold=cut.threshold, left=LeafNode(0), right=LeafNode(1))
    return ThresholdTree(root=root, k=2, objective=Objective.parse(objective))

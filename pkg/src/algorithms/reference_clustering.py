"""
Reference centers for IMM: k-means++ style seeding followed by Lloyd
alternation, in ℓ₂² geometry for means and ℓ₁ geometry for medians.

The medians variant is a heuristic reference; the tree guarantees are always
measured against whatever centers are supplied.
"""

import time
from dataclasses import dataclass, field
from typing import List, Optional, Union

import numpy as np

from src.config.settings import settings
from src.core.cost import cost_of_centers, optimal_center
from src.core.errors import KTooLargeError
from src.core.types import CenterSet, DataMatrix, Objective
from src.core.validation import assign_labels, center_distances
from src.utils.logging import log_algorithm_run, logger


def make_rng(seed: int) -> np.random.Generator:
    """The package's frozen PRNG: numpy PCG64."""
    return np.random.Generator(np.random.PCG64(int(seed)))


@dataclass
class LloydResult:
    """Final centers with the objective value recorded before and after every iteration."""
    centers: CenterSet
    cost_history: List[float] = field(default_factory=list)
    iterations: int = 0
    converged: bool = False

    @property
    def cost(self) -> float:
        return self.cost_history[-1]


def kmeanspp_seed(
    X: DataMatrix,
    k: int,
    seed: Optional[int] = None,
    objective: Union[str, Objective] = Objective.MEANS,
) -> CenterSet:
    """
    Pick k distinct row indices by D²-weighted sampling (D¹ for medians).

    When every unchosen point sits on a chosen one the remaining picks are
    uniform over unchosen indices.
    """
    objective = Objective.parse(objective)
    if k > X.n:
        raise KTooLargeError(k, X.n)
    rng = make_rng(settings.seed if seed is None else seed)

    chosen = [int(rng.integers(0, X.n))]
    available = np.ones(X.n, dtype=bool)
    available[chosen[0]] = False
    nearest = center_distances(X.values, X.values[chosen[0]], objective)

    for _ in range(1, k):
        weights = np.where(available, nearest, 0.0)
        total = weights.sum()
        if total > 0:
            index = int(rng.choice(X.n, p=weights / total))
        else:
            index = int(rng.choice(np.flatnonzero(available)))
        chosen.append(index)
        available[index] = False
        nearest = np.minimum(nearest, center_distances(X.values, X.values[index], objective))

    return CenterSet(X.values[chosen], objective)


def _repair_empty(X: DataMatrix, centers: np.ndarray, objective: Objective) -> np.ndarray:
    """Reseat each empty center at the point farthest from its own center."""
    k = centers.shape[0]
    for _ in range(k):
        labels = assign_labels(X, CenterSet(centers, objective)).labels
        sizes = np.bincount(labels, minlength=k)
        empty = np.flatnonzero(sizes == 0)
        if empty.size == 0:
            break
        own = np.zeros(X.n)
        for j in range(k):
            mask = labels == j
            if mask.any():
                own[mask] = center_distances(X.values[mask], centers[j], objective)
        farthest = int(np.argmax(own))
        if own[farthest] == 0:
            logger.warning("Cannot repair %d empty cluster(s): fewer distinct points than centers", empty.size)
            break
        centers = centers.copy()
        centers[int(empty[0])] = X.values[farthest]
    return centers


def lloyd_run(
    X: DataMatrix,
    C: CenterSet,
    max_iters: Optional[int] = None,
    tol: Optional[float] = None,
) -> LloydResult:
    """
    Alternate assignment and center updates until the relative improvement
    drops below `tol` or `max_iters` is reached. The recorded cost never
    increases: a step that would raise it is rejected and the run stops.
    """
    C.check_dims(X)
    max_iters = settings.max_iters if max_iters is None else max_iters
    tol = settings.tol if tol is None else tol
    objective = C.objective
    start = time.perf_counter()

    centers = np.array(C.centers, copy=True)
    history = [cost_of_centers(X, C).total_cost]
    converged = False
    iterations = 0

    for iterations in range(1, max_iters + 1):
        centers = _repair_empty(X, centers, objective)
        labels = assign_labels(X, CenterSet(centers, objective)).labels
        updated = centers.copy()
        for j in range(centers.shape[0]):
            members = X.values[labels == j]
            if members.shape[0]:
                updated[j] = optimal_center(members, objective)

        new_cost = cost_of_centers(X, CenterSet(updated, objective)).total_cost
        old_cost = history[-1]
        if new_cost > old_cost:
            converged = True
            break
        centers = updated
        history.append(new_cost)
        if old_cost == 0 or (old_cost - new_cost) <= tol * old_cost:
            converged = True
            break

    log_algorithm_run(
        "lloyd",
        time.perf_counter() - start,
        objective=objective.value,
        n=X.n,
        k=C.k,
        iterations=iterations,
        cost=history[-1],
        converged=converged,
    )
    return LloydResult(CenterSet(centers, objective), history, iterations, converged)


def lloyd_refine(
    X: DataMatrix,
    C: CenterSet,
    max_iters: Optional[int] = None,
    tol: Optional[float] = None,
) -> CenterSet:
    """Lloyd-refined copy of C (see `lloyd_run`)."""
    return lloyd_run(X, C, max_iters=max_iters, tol=tol).centers


def fit_reference(
    X: DataMatrix,
    k: int,
    objective: Union[str, Objective] = Objective.MEANS,
    seed: Optional[int] = None,
    max_iters: Optional[int] = None,
    tol: Optional[float] = None,
) -> LloydResult:
    """Seed with k-means++ and refine with Lloyd."""
    seeds = kmeanspp_seed(X, k, seed=seed, objective=objective)
    return lloyd_run(X, seeds, max_iters=max_iters, tol=tol)

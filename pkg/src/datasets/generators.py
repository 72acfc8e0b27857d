"""
Deterministic dataset constructions.

Every generator is a pure function of its arguments; randomized ones draw
from the package PRNG (`make_rng`) in a fixed order.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Union

import numpy as np

from src.algorithms.reference_clustering import make_rng
from src.core.cost import optimal_center
from src.core.errors import KTooLargeError
from src.core.types import CenterSet, DataMatrix, Labeling, Objective


class Family(str, Enum):
    """Dataset constructions available to `gen`."""
    BASIS = "basis"
    LB2 = "lb2"
    CODEWORD = "codeword"
    ID3FAIL = "id3fail"
    MIXTURE = "mixture"


@dataclass(frozen=True)
class GeneratedData:
    """A generated dataset with its intended (natural) labels."""
    X: DataMatrix
    labels: Labeling
    family: Family
    codewords: Optional[np.ndarray] = None

    @property
    def n(self) -> int:
        return self.X.n

    @property
    def d(self) -> int:
        return self.X.d


def gen_basis(k: int) -> GeneratedData:
    """The k-1 standard basis vectors of R^{k-1} followed by the origin."""
    if k < 2:
        raise ValueError("basis dataset needs k >= 2")
    values = np.vstack([np.eye(k - 1), np.zeros((1, k - 1))])
    return GeneratedData(DataMatrix(values), Labeling(np.arange(k), k), Family.BASIS)


def gen_two_cluster_lb(d: int) -> GeneratedData:
    """
    2d points: -1 + e^i for every i (label 0), then 1 - e^i for every i
    (label 1). Each row has exactly one zero.
    """
    if d < 2:
        raise ValueError("two-cluster dataset needs d >= 2")
    eye = np.eye(d)
    values = np.vstack([eye - 1.0, 1.0 - eye])
    labels = np.repeat([0, 1], d)
    return GeneratedData(DataMatrix(values), Labeling(labels, 2), Family.LB2)


def gen_id3_failure(v: float, n_per_blob: int = 500, spread: float = 0.1, seed: int = 0) -> GeneratedData:
    """
    Two blobs around (-2, 0) and (2, 0) with uniform jitter in [-spread, spread]²
    (labels 0 and 1) plus the outliers (-2, v), (2, v) (label 2).
    """
    if v <= 0:
        raise ValueError("outlier height v must be positive")
    if n_per_blob < 1 or spread < 0:
        raise ValueError("need n_per_blob >= 1 and spread >= 0")
    rng = make_rng(seed)
    jitter = rng.uniform(-spread, spread, size=(2 * n_per_blob, 2)) if spread > 0 else np.zeros((2 * n_per_blob, 2))
    blobs = np.repeat([[-2.0, 0.0], [2.0, 0.0]], n_per_blob, axis=0) + jitter
    values = np.vstack([blobs, [[-2.0, float(v)], [2.0, float(v)]]])
    labels = np.concatenate([np.repeat([0, 1], n_per_blob), [2, 2]])
    return GeneratedData(DataMatrix(values), Labeling(labels, 3), Family.ID3FAIL)


def gen_mixture(
    k: int,
    d: int,
    n: int,
    separation: float = 10.0,
    seed: int = 0,
    spread: float = 1.0,
) -> GeneratedData:
    """
    k blobs with uniform jitter in [-spread, spread]^d around centers drawn
    uniformly from [-separation, separation]^d. The first k points seed one
    blob each, so no cluster is empty.
    """
    if k < 1 or d < 1:
        raise ValueError("need k >= 1 and d >= 1")
    if k > n:
        raise KTooLargeError(k, n)
    rng = make_rng(seed)
    centers = rng.uniform(-1.0, 1.0, size=(k, d)) * separation
    labels = np.concatenate([np.arange(k), rng.integers(0, k, size=n - k)])
    jitter = rng.uniform(-spread, spread, size=(n, d)) if spread > 0 else np.zeros((n, d))
    return GeneratedData(DataMatrix(centers[labels] + jitter), Labeling(labels, k), Family.MIXTURE)


def natural_centers(data: GeneratedData, objective: Union[str, Objective] = Objective.MEANS) -> CenterSet:
    """
    Closed-form centers of the natural clustering: ±1 (medians) or
    ±(d-1)/d (means) for the two-cluster dataset, the codewords scaled the same
    way for the codeword dataset, otherwise each label's optimal center.
    """
    objective = Objective.parse(objective)
    scale = 1.0 if objective is Objective.MEDIANS else (data.d - 1) / data.d

    if data.family == Family.LB2:
        signs = np.array([[-1.0], [1.0]])
        return CenterSet(np.repeat(signs, data.d, axis=1) * scale, objective)
    if data.family == Family.CODEWORD and data.codewords is not None:
        return CenterSet(data.codewords * scale, objective)

    centers = [optimal_center(data.X.values[data.labels.members(j)], objective) for j in range(data.labels.k)]
    return CenterSet(np.vstack(centers), objective)

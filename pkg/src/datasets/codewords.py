"""
Codeword dataset: k random ±1 codewords in d = k³ dimensions, each emitting d
points that equal the codeword with one coordinate zeroed.

Existence of good codewords is only probabilistic, so codewords are sampled
and checked (pairwise distance, small-subset balance) until a draw passes.
"""

import math
from itertools import combinations
from typing import Optional

import numpy as np

from src.algorithms.reference_clustering import make_rng
from src.config.settings import settings
from src.core.errors import PropertyFailureError
from src.core.types import DataMatrix, Labeling
from src.datasets.generators import Family, GeneratedData
from src.utils.logging import log_system_event, logger
from src.utils.schema import CodewordReport

SUBSET_SAMPLE_LIMIT = 20_000


def default_epsilon(k: int) -> float:
    return math.log(k) / math.sqrt(k)


def _coordinate_subsets(d: int, size: int, rng: np.random.Generator) -> np.ndarray:
    """All size-subsets of range(d) when few enough, otherwise a fixed-size sample."""
    if math.comb(d, size) <= SUBSET_SAMPLE_LIMIT:
        return np.array(list(combinations(range(d), size)), dtype=np.int64).reshape(-1, size)
    return np.array(
        [np.sort(rng.choice(d, size=size, replace=False)) for _ in range(SUBSET_SAMPLE_LIMIT)],
        dtype=np.int64,
    )


def verify_codeword_properties(
    codewords: np.ndarray,
    l_max: int = 2,
    epsilon: Optional[float] = None,
    seed: int = 0,
) -> CodewordReport:
    """
    Check pairwise Hamming distance >= d/4 over all pairs, and for every
    coordinate subset S with |S| <= l_max that each of the 2^|S| sign patterns
    on S is taken by at least k(2^-|S| - ε) codewords.
    """
    codewords = np.asarray(codewords, dtype=np.float64)
    if codewords.ndim != 2 or not np.all(np.abs(codewords) == 1.0):
        raise ValueError("codewords must be a k×d matrix of ±1 entries")
    k, d = codewords.shape
    epsilon = default_epsilon(k) if epsilon is None else epsilon

    distances = np.count_nonzero(codewords[:, None, :] != codewords[None, :, :], axis=2)
    upper = distances[np.triu_indices(k, 1)]
    min_distance = int(upper.min()) if upper.size else d

    rng = make_rng(seed)
    positive = codewords > 0
    balance_ok, worst_balance, checked = {}, {}, {}
    for size in range(1, l_max + 1):
        subsets = _coordinate_subsets(d, size, rng)
        weights = 1 << np.arange(size)
        patterns = positive[:, subsets] @ weights                  # (k, subsets)
        counts = np.stack([(patterns == p).sum(axis=0) for p in range(2 ** size)])
        worst = int(counts.min())
        worst_balance[size] = worst
        balance_ok[size] = worst >= k * (2.0 ** -size - epsilon)
        checked[size] = int(subsets.shape[0])

    return CodewordReport(
        k=k,
        d=d,
        min_distance=min_distance,
        distance_floor=d / 4.0,
        distance_ok=min_distance >= d / 4.0,
        epsilon=epsilon,
        balance_ok=balance_ok,
        worst_balance=worst_balance,
        subsets_checked=checked,
    )


def codeword_points(codewords: np.ndarray) -> GeneratedData:
    """d points per codeword, point i of cluster j being codeword j with coordinate i set to 0."""
    codewords = np.asarray(codewords, dtype=np.float64)
    k, d = codewords.shape
    values = np.repeat(codewords, d, axis=0)
    values[np.arange(k * d), np.tile(np.arange(d), k)] = 0.0
    labels = np.repeat(np.arange(k), d)
    return GeneratedData(DataMatrix(values), Labeling(labels, k), Family.CODEWORD, codewords=codewords)


def gen_codeword(k: int, seed: int = 0, max_retries: Optional[int] = None, l_max: int = 2) -> GeneratedData:
    """Sample codewords with d = k³ until the property checks pass; n = dk points."""
    if k < 3:
        raise ValueError("codeword dataset needs k >= 3")
    max_retries = settings.codeword_retries if max_retries is None else max_retries
    d = k ** 3
    rng = make_rng(seed)

    for attempt in range(1, max_retries + 1):
        codewords = rng.choice(np.array([-1.0, 1.0]), size=(k, d))
        report = verify_codeword_properties(codewords, l_max=l_max, seed=seed + attempt)
        if report.passed:
            log_system_event("codewords_accepted", {"k": k, "d": d, "attempt": attempt,
                                                    "min_distance": report.min_distance})
            return codeword_points(codewords)
        logger.debug("Codeword draw %d rejected (min distance %d)", attempt, report.min_distance)

    raise PropertyFailureError(max_retries)

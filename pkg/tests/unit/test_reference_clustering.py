"""
Unit tests for k-means++ seeding and Lloyd refinement.
"""

import numpy as np
import pytest

from src.algorithms.reference_clustering import fit_reference, kmeanspp_seed, lloyd_refine, lloyd_run
from src.core.cost import cost_of_centers
from src.core.errors import DimMismatchError, KTooLargeError
from src.core.types import CenterSet, DataMatrix, Objective
from src.datasets.generators import gen_mixture


@pytest.mark.unit
class TestKMeansPlusPlus:
    """Seeding picks distinct data points deterministically."""

    def test_distinct_rows(self, rng):
        X = DataMatrix(rng.normal(size=(50, 3)))
        C = kmeanspp_seed(X, 5, seed=1)
        rows = {tuple(row) for row in C.centers}
        assert len(rows) == 5
        assert rows <= {tuple(row) for row in X.values}

    def test_same_seed_same_centers(self, rng):
        X = DataMatrix(rng.normal(size=(40, 2)))
        assert np.array_equal(kmeanspp_seed(X, 4, seed=7).centers, kmeanspp_seed(X, 4, seed=7).centers)

    def test_k_equals_n(self):
        """k = n picks every point."""
        X = DataMatrix(np.array([[0.0], [1.0], [5.0]]))
        C = kmeanspp_seed(X, 3, seed=0)
        assert sorted(C.centers[:, 0].tolist()) == [0.0, 1.0, 5.0]

    def test_k_too_large(self):
        with pytest.raises(KTooLargeError):
            kmeanspp_seed(DataMatrix(np.zeros((2, 1))), 3)

    def test_duplicate_points_fall_back_to_uniform(self):
        """With all points identical the remaining picks are still distinct indices."""
        X = DataMatrix(np.zeros((4, 2)))
        assert kmeanspp_seed(X, 3, seed=0).k == 3


@pytest.mark.unit
class TestLloyd:
    """Lloyd refinement."""

    def test_cost_never_increases(self, rng):
        X = DataMatrix(rng.normal(size=(80, 2)))
        for objective in Objective:
            run = lloyd_run(X, kmeanspp_seed(X, 4, seed=3, objective=objective))
            history = run.cost_history
            assert all(b <= a + 1e-12 for a, b in zip(history, history[1:]))

    def test_two_point_clusters(self):
        """{0,1} and {10,11} with centers at 0 and 10 move to 0.5 and 10.5."""
        X = DataMatrix(np.array([[0.0], [1.0], [10.0], [11.0]]))
        C = lloyd_refine(X, CenterSet(np.array([[0.0], [10.0]])))
        assert C.centers[:, 0].tolist() == pytest.approx([0.5, 10.5])

    def test_final_cost_matches_centers(self, rng):
        X = DataMatrix(rng.normal(size=(60, 3)))
        run = lloyd_run(X, kmeanspp_seed(X, 3, seed=0))
        assert run.cost == pytest.approx(cost_of_centers(X, run.centers).total_cost)

    def test_separated_mixture_recovers_labels(self):
        """Well-separated blobs give cost close to the generator's partition."""
        data = gen_mixture(3, 2, 90, separation=100.0, seed=4, spread=0.5)
        run = fit_reference(data.X, 3, seed=0)
        assert run.cost < 90 * 2 * 0.5 ** 2

    def test_dimension_mismatch(self):
        with pytest.raises(DimMismatchError):
            lloyd_run(DataMatrix(np.zeros((3, 2))), CenterSet(np.zeros((1, 3))))

"""
Unit tests for domain types, validation and nearest-center assignment.
"""

import numpy as np
import pytest

from src.core.errors import DimMismatchError, EmptyDatasetError, NonFiniteError, RaggedRowError
from src.core.types import (
    CenterSet,
    DataMatrix,
    Labeling,
    LeafNode,
    Objective,
    SplitNode,
    ThresholdTree,
)
from src.core.validation import assign_labels, validate_dataset


def caterpillar() -> ThresholdTree:
    root = SplitNode(
        feature=0,
        threshold=0.5,
        left=SplitNode(feature=1, threshold=0.5, left=LeafNode(2), right=LeafNode(1)),
        right=LeafNode(0),
    )
    return ThresholdTree(root=root, k=3)


@pytest.mark.unit
class TestValidateDataset:
    """Dataset construction rejects malformed input."""

    def test_accepts_rows(self):
        """Lists of numbers become an n×d matrix."""
        X = validate_dataset([[1, 2], [3, 4], [5, 6]])
        assert (X.n, X.d) == (3, 2)
        assert X.values.dtype == np.float64

    def test_empty(self):
        """No rows raises EmptyDatasetError."""
        with pytest.raises(EmptyDatasetError):
            validate_dataset([])

    def test_ragged_row_reports_index(self):
        """A short row is reported with its index."""
        with pytest.raises(RaggedRowError) as info:
            validate_dataset([[1, 2], [3, 4], [5]])
        assert info.value.row == 2

    def test_nan_reports_position(self):
        """NaN at (1, 0) is located exactly."""
        with pytest.raises(NonFiniteError) as info:
            validate_dataset([[1.0, 2.0], [float("nan"), 0.0]])
        assert (info.value.row, info.value.col) == (1, 0)

    def test_unparseable_cell(self):
        """Text that is not a number counts as non-finite."""
        with pytest.raises(NonFiniteError):
            validate_dataset([["1", "abc"]])

    def test_values_are_read_only(self):
        """The stored buffer cannot be mutated."""
        X = validate_dataset([[1.0]])
        with pytest.raises(ValueError):
            X.values[0, 0] = 2.0


@pytest.mark.unit
class TestCenterSet:
    """Center sets and assignment."""

    def test_duplicate_pair(self):
        """Identical centers are detected as the first (j, l) pair."""
        C = CenterSet(np.array([[0.0, 1.0], [2.0, 2.0], [0.0, 1.0]]))
        assert C.duplicate_pair() == (0, 2)

    def test_no_duplicates(self, line_centers):
        assert line_centers.duplicate_pair() is None

    def test_assign_ties_go_to_lowest_index(self):
        """A point equidistant to two centers takes the lower index."""
        X = DataMatrix(np.array([[1.0], [0.0], [2.0]]))
        C = CenterSet(np.array([[0.0], [2.0]]))
        assert assign_labels(X, C).labels.tolist() == [0, 0, 1]

    def test_assign_uses_objective_metric(self):
        """ℓ₁ and squared ℓ₂ can disagree on the nearest center."""
        X = DataMatrix(np.array([[0.0, 0.0]]))
        centers = np.array([[3.0, 0.0], [2.0, 2.0]])
        assert assign_labels(X, CenterSet(centers, Objective.MEDIANS)).labels.tolist() == [0]
        assert assign_labels(X, CenterSet(centers, Objective.MEANS)).labels.tolist() == [1]

    @pytest.mark.property
    @pytest.mark.parametrize("objective", list(Objective))
    def test_assign_matches_exhaustive_scan(self, rng, objective):
        """Integer grids make distances exact, so ties are genuine."""
        for _ in range(20):
            X = DataMatrix(rng.integers(-3, 4, size=(8, 3)).astype(float))
            C = CenterSet(rng.integers(-3, 4, size=(4, 3)).astype(float), objective)
            expected = []
            for x in X.values:
                if objective is Objective.MEDIANS:
                    distances = [sum(abs(a - b) for a, b in zip(x, c)) for c in C.centers]
                else:
                    distances = [sum((a - b) ** 2 for a, b in zip(x, c)) for c in C.centers]
                expected.append(distances.index(min(distances)))
            assert assign_labels(X, C).labels.tolist() == expected

    @pytest.mark.property
    def test_assign_follows_center_permutation(self, rng):
        X = DataMatrix(rng.normal(size=(30, 3)))
        centers = rng.normal(size=(5, 3))
        before = assign_labels(X, CenterSet(centers)).labels
        for _ in range(10):
            perm = rng.permutation(5)
            after = assign_labels(X, CenterSet(centers[perm])).labels
            assert np.array_equal(perm[after], before)

    def test_dimension_mismatch(self, line_centers):
        with pytest.raises(DimMismatchError):
            assign_labels(DataMatrix(np.zeros((2, 3))), line_centers)


@pytest.mark.unit
class TestLabeling:
    """Label vectors."""

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            Labeling(np.array([0, 3]), 3)

    def test_sizes_include_empty_clusters(self):
        assert Labeling(np.array([0, 0, 2]), 4).sizes().tolist() == [2, 0, 1, 0]


@pytest.mark.unit
class TestThresholdTree:
    """Tree structure and routing."""

    def test_depth_and_leaves(self):
        tree = caterpillar()
        assert tree.depth == 2
        assert [leaf.label for leaf in tree.leaves()] == [2, 1, 0]
        assert len(tree.internal_nodes()) == 2

    def test_route_is_left_inclusive(self):
        """x_i == θ goes left."""
        tree = caterpillar()
        X = np.array([[0.5, 0.5], [0.5, 0.6], [0.6, 0.0]])
        assert tree.route(X).tolist() == [2, 1, 0]

    def test_route_checks_dimension(self):
        with pytest.raises(DimMismatchError):
            caterpillar().route(np.zeros((1, 1)))

    def test_labels_must_be_complete(self):
        """Repeated or missing leaf labels are rejected."""
        root = SplitNode(feature=0, threshold=0.0, left=LeafNode(0), right=LeafNode(0))
        with pytest.raises(ValueError):
            ThresholdTree(root=root, k=2)

    def test_center_sets_must_partition(self):
        """Annotated nodes need children whose center sets partition theirs."""
        root = SplitNode(
            feature=0, threshold=0.0, left=LeafNode(0), right=LeafNode(1), mistakes=0, centers=(0, 1, 2)
        )
        with pytest.raises(ValueError):
            ThresholdTree(root=root, k=2)

    def test_single_leaf(self):
        tree = ThresholdTree(root=LeafNode(0), k=1)
        assert tree.depth == 0
        assert tree.route(np.zeros((3, 2))).tolist() == [0, 0, 0]

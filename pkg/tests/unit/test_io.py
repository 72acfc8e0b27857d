"""
Unit tests for CSV, tree JSON and DOT formats.
"""

import json

import numpy as np
import pytest

from src.algorithms.imm import imm_fit
from src.core.errors import NonFiniteError, RaggedRowError
from src.core.io import (
    load_tree,
    read_csv,
    read_labels,
    save_tree,
    tree_from_json,
    tree_to_dot,
    tree_to_json,
    write_csv,
    write_labels,
)
from src.core.types import CenterSet, LeafNode, Objective, SplitNode, ThresholdTree


def small_tree() -> ThresholdTree:
    root = SplitNode(
        feature=1,
        threshold=0.25,
        left=LeafNode(1),
        right=SplitNode(feature=0, threshold=-3.5, left=LeafNode(0), right=LeafNode(2)),
    )
    return ThresholdTree(root=root, k=3, objective=Objective.MEDIANS)


@pytest.mark.unit
class TestCsv:
    """Dataset and label files."""

    def test_write_then_read(self, tmp_path, rng):
        values = rng.normal(size=(5, 3))
        path = tmp_path / "points.csv"
        write_csv(path, values)
        assert np.array_equal(read_csv(path).values, values)

    def test_header_and_blank_lines(self, tmp_path):
        path = tmp_path / "points.csv"
        path.write_text("a,b\n1,2\n\n3,4\n")
        assert read_csv(path, header=True).values.tolist() == [[1.0, 2.0], [3.0, 4.0]]

    def test_ragged_file(self, tmp_path):
        path = tmp_path / "points.csv"
        path.write_text("1,2\n3\n")
        with pytest.raises(RaggedRowError):
            read_csv(path)

    def test_infinite_value(self, tmp_path):
        path = tmp_path / "points.csv"
        path.write_text("1,inf\n")
        with pytest.raises(NonFiniteError):
            read_csv(path)

    def test_labels(self, tmp_path):
        path = tmp_path / "labels.txt"
        write_labels(path, [2, 0, 1])
        assert read_labels(path).tolist() == [2, 0, 1]


@pytest.mark.unit
class TestTreeJson:
    """Canonical tree serialization."""

    def test_schema(self):
        data = json.loads(tree_to_json(small_tree()))
        assert list(data) == ["objective", "k", "root"]
        assert data["objective"] == "medians"
        assert data["root"]["left"] == {"leaf": 1}

    def test_byte_stable(self):
        text = tree_to_json(small_tree())
        assert tree_to_json(tree_from_json(text)) == text

    def test_file_preserves_routing(self, tmp_path, basis4):
        tree = imm_fit(basis4.X, CenterSet(basis4.X.values))
        path = tmp_path / "tree.json"
        save_tree(path, tree)
        loaded = load_tree(path)
        assert loaded.route(basis4.X).tolist() == tree.route(basis4.X).tolist()
        assert (loaded.k, loaded.depth) == (tree.k, tree.depth)

    def test_incomplete_labels_rejected(self):
        text = '{"objective": "means", "k": 3, "root": {"feature": 0, "threshold": 1.0, "left": {"leaf": 0}, "right": {"leaf": 1}}}'
        with pytest.raises(ValueError):
            tree_from_json(text)


@pytest.mark.unit
class TestDot:
    """Graphviz export."""

    def test_counts(self):
        dot = tree_to_dot(small_tree())
        assert dot.startswith("digraph ThresholdTree {")
        assert dot.count("shape=ellipse") == 3
        assert dot.count("->") == 4
        assert 'label="x1 ≤ 0.25"' in dot

    def test_deterministic(self):
        assert tree_to_dot(small_tree()) == tree_to_dot(small_tree())

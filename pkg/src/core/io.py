"""
File formats: dataset/center/label CSVs, the canonical tree JSON and the
Graphviz DOT export.

Tree JSON schema (field order fixed so output is byte-stable):
    {"objective": "means"|"medians", "k": int, "root": node}
    node = {"feature": int, "threshold": float, "left": node, "right": node} | {"leaf": int}
"""

import csv
import json
from pathlib import Path
from typing import Any, Dict, List, Sequence, Union

import numpy as np

from src.core.types import (
    DataMatrix,
    LeafNode,
    Objective,
    SplitNode,
    ThresholdTree,
    TreeNode,
    iter_preorder,
)
from src.core.validation import validate_dataset

PathLike = Union[str, Path]


def _format_float(value: float) -> str:
    return repr(float(value))


# ── CSV ──────────────────────────────────────────────────────────────────────

def read_rows(path: PathLike, header: bool = False) -> List[List[str]]:
    with Path(path).open(newline="", encoding="utf-8") as handle:
        rows = [row for row in csv.reader(handle) if row and any(cell.strip() for cell in row)]
    return rows[1:] if header else rows


def read_csv(path: PathLike, header: bool = False) -> DataMatrix:
    """Read one point per row; validation errors carry data-row indices."""
    return validate_dataset(read_rows(path, header=header))


def write_csv(path: PathLike, values: Union[DataMatrix, np.ndarray]) -> None:
    array = values.values if isinstance(values, DataMatrix) else np.asarray(values, dtype=np.float64)
    with Path(path).open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        for row in array:
            writer.writerow(_format_float(v) for v in row)


def read_labels(path: PathLike, header: bool = False) -> np.ndarray:
    return np.array([int(float(row[0])) for row in read_rows(path, header=header)], dtype=np.int64)


def write_labels(path: PathLike, labels: Sequence[int]) -> None:
    with Path(path).open("w", encoding="utf-8") as handle:
        handle.writelines(f"{int(label)}\n" for label in labels)


# ── Tree JSON ────────────────────────────────────────────────────────────────

def node_to_dict(node: TreeNode) -> Dict[str, Any]:
    if isinstance(node, LeafNode):
        return {"leaf": int(node.label)}
    return {
        "feature": int(node.feature),
        "threshold": float(node.threshold),
        "left": node_to_dict(node.left),
        "right": node_to_dict(node.right),
    }


def node_from_dict(data: Dict[str, Any]) -> TreeNode:
    if "leaf" in data:
        return LeafNode(label=int(data["leaf"]))
    return SplitNode(
        feature=int(data["feature"]),
        threshold=float(data["threshold"]),
        left=node_from_dict(data["left"]),
        right=node_from_dict(data["right"]),
    )


def tree_to_dict(tree: ThresholdTree) -> Dict[str, Any]:
    return {"objective": tree.objective.value, "k": int(tree.k), "root": node_to_dict(tree.root)}


def tree_to_json(tree: ThresholdTree) -> str:
    return json.dumps(tree_to_dict(tree))


def tree_from_json(text: str) -> ThresholdTree:
    data = json.loads(text)
    return ThresholdTree(
        root=node_from_dict(data["root"]),
        k=int(data["k"]),
        objective=Objective.parse(data["objective"]),
    )


def save_tree(path: PathLike, tree: ThresholdTree) -> None:
    Path(path).write_text(tree_to_json(tree) + "\n", encoding="utf-8")


def load_tree(path: PathLike) -> ThresholdTree:
    return tree_from_json(Path(path).read_text(encoding="utf-8"))


# ── DOT export ───────────────────────────────────────────────────────────────

def tree_to_dot(tree: ThresholdTree) -> str:
    """Graphviz rendering; node ids follow pre-order so output is stable."""
    nodes = list(iter_preorder(tree.root))
    ids = {id(node): f"n{index}" for index, node in enumerate(nodes)}

    lines = ["digraph ThresholdTree {", "  node [shape=box];"]
    for node in nodes:
        name = ids[id(node)]
        if isinstance(node, LeafNode):
            lines.append(f'  {name} [label="cluster {node.label}", shape=ellipse];')
        else:
            lines.append(f'  {name} [label="x{node.feature} ≤ {_format_float(node.threshold)}"];')
    for node in nodes:
        if isinstance(node, SplitNode):
            lines.append(f'  {ids[id(node)]} -> {ids[id(node.left)]} [label="yes"];')
            lines.append(f'  {ids[id(node)]} -> {ids[id(node.right)]} [label="no"];')
    lines.append("}")
    return "\n".join(lines) + "\n"

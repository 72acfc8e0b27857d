"""
Central Pydantic (v2) models for results that leave the library.

Everything the CLI prints or writes as JSON is one of these models; add new
DTOs here to avoid duplicate definitions.
"""

import math
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field, model_validator

REL_TOL = 1e-9
ABS_TOL = 1e-12


class CutResult(BaseModel):
    """A single threshold cut x[feature] <= threshold and its cost."""
    feature: int = Field(..., ge=0)
    threshold: float
    cost: float = Field(..., ge=0)
    left_size: int = Field(..., ge=1)
    right_size: int = Field(..., ge=1)
    changes: Optional[int] = Field(None, ge=0, description="t versus a reference 2-clustering")

    @property
    def n(self) -> int:
        return self.left_size + self.right_size


class CostReport(BaseModel):
    """Objective value, per-cluster breakdown and optional comparison to a reference."""
    objective: str
    total_cost: float = Field(..., ge=0)
    per_cluster_cost: List[float] = Field(default_factory=list)
    reference_cost: Optional[float] = Field(None, ge=0)
    ratio: Optional[float] = None
    bound: Optional[float] = Field(None, description="guarantee factor printed alongside the ratio")

    @model_validator(mode="after")
    def _check_totals(self) -> "CostReport":
        if self.per_cluster_cost:
            summed = math.fsum(self.per_cluster_cost)
            if abs(summed - self.total_cost) > max(ABS_TOL, REL_TOL * abs(summed)):
                raise ValueError(f"total_cost {self.total_cost} != sum of clusters {summed}")
        if self.reference_cost is not None and self.reference_cost > 0 and self.ratio is None:
            self.ratio = self.total_cost / self.reference_cost
        if self.reference_cost is not None and self.reference_cost == 0:
            self.ratio = None
        return self

    @classmethod
    def from_clusters(
        cls,
        objective: str,
        per_cluster: List[float],
        reference_cost: Optional[float] = None,
    ) -> "CostReport":
        return cls(
            objective=objective,
            total_cost=math.fsum(per_cluster),
            per_cluster_cost=list(per_cluster),
            reference_cost=reference_cost,
        )

    def against(self, reference_cost: float, bound: Optional[float] = None) -> "CostReport":
        """Copy of this report compared to `reference_cost`."""
        return CostReport(
            objective=self.objective,
            total_cost=self.total_cost,
            per_cluster_cost=self.per_cluster_cost,
            reference_cost=reference_cost,
            bound=bound,
        )


class TreeStats(BaseModel):
    """Sidecar written next to a fitted tree."""
    algorithm: str
    objective: str
    k: int
    depth: int
    cost: float
    mistakes_per_node: List[int] = Field(default_factory=list)
    total_mistakes: int = 0
    wall_time: float = 0.0
    cost_history: Optional[List[float]] = None
    reference_cost: Optional[float] = None
    cut: Optional[CutResult] = None

    @model_validator(mode="after")
    def _check_mistakes(self) -> "TreeStats":
        if sum(self.mistakes_per_node) != self.total_mistakes:
            raise ValueError("total_mistakes must equal the per-node sum")
        return self


class GenSummary(BaseModel):
    """One-line summary printed by `gen`."""
    n: int
    d: int
    family: str
    seed: int


class CodewordReport(BaseModel):
    """Outcome of the codeword property checks."""
    k: int
    d: int
    min_distance: int
    distance_floor: float
    distance_ok: bool
    epsilon: float
    balance_ok: Dict[int, bool] = Field(default_factory=dict)
    worst_balance: Dict[int, int] = Field(default_factory=dict)
    subsets_checked: Dict[int, int] = Field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.distance_ok and all(self.balance_ok.values())


class BenchRow(BaseModel):
    """One cell of the scaling grid."""
    n: int
    d: int
    k: int
    repeat: int
    seconds: float
    cost: float
    depth: int


class OracleReport(BaseModel):
    """Result of `eval --oracle`; only the fields the oracle produces are set."""
    oracle: str
    cost: Optional[float] = None
    labels: Optional[List[int]] = None
    cut: Optional[CutResult] = None
    tree: Optional[Dict[str, Any]] = None
    coordinate: Optional[int] = None
    holds: Optional[bool] = None

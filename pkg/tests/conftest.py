"""
Test configuration and fixtures for the threshold-tree package.
"""

import numpy as np
import pytest
from typer.testing import CliRunner

from src.config.settings import settings
from src.core.types import CenterSet, DataMatrix, Objective
from src.datasets.generators import gen_basis, gen_two_cluster_lb


def random_instance(rng: np.random.Generator, n: int, d: int, integer: bool = False) -> DataMatrix:
    """Random dataset mixing scales; integer grids provoke ties."""
    if integer:
        return DataMatrix(rng.integers(-3, 4, size=(n, d)).astype(np.float64))
    scales = rng.choice([0.1, 1.0, 100.0], size=d)
    return DataMatrix(rng.normal(size=(n, d)) * scales)


@pytest.fixture
def rng():
    """Fixed-seed generator so every randomized test is reproducible."""
    return np.random.default_rng(20240601)


@pytest.fixture
def test_settings():
    """Settings with overrides restored after the test."""
    original = settings.model_dump()
    yield settings
    for key, value in original.items():
        setattr(settings, key, value)


@pytest.fixture
def runner():
    """CLI runner for the Typer app."""
    return CliRunner()


@pytest.fixture
def basis4():
    return gen_basis(4)


@pytest.fixture
def lb3():
    return gen_two_cluster_lb(3)


@pytest.fixture
def two_blobs():
    """Two far-apart groups of identical points, two per group."""
    return DataMatrix(np.array([[0.0, 0.0], [0.0, 0.0], [10.0, 10.0], [10.0, 10.0]]))


@pytest.fixture
def line_centers():
    """Three centers on a line, used for IMM and assignment checks."""
    return CenterSet(np.array([[0.0, 0.0], [5.0, 0.0], [10.0, 0.0]]), Objective.MEANS)

"""
Shared pytest fixtures and configuration.
"""

import numpy as np
import pytest

from common.config import DEFAULT_SEED
from engine.classgroup.schemas import ClassLattice
from engine.floer.schemas import CountTableFile
from engine.floer.tools import validate_count_table
from engine.trees.generator import generic_lattice
from engine.trees.tools import tree_from_dict
from tests.fixtures.sample_data import (
    CURVED_LATTICE,
    CURVED_TABLE,
    MASLOV4_LATTICE,
    MASLOV4_TABLE,
    disk_one_marker,
    strip_with_disk,
    two_strip_tree,
)


def pytest_addoption(parser):
    parser.addoption(
        "--seed",
        action="store",
        type=int,
        default=DEFAULT_SEED,
        help="Seed for the randomized property suites",
    )


@pytest.fixture
def seed(request) -> int:
    return request.config.getoption("--seed")


@pytest.fixture
def rng(seed):
    """Fresh generator per test, so each test sees the same draws."""
    return np.random.default_rng(seed)


@pytest.fixture
def lattice():
    """Maslov-4 lattice: b1, b2 strip classes and the disk class a."""
    return ClassLattice.from_dict(MASLOV4_LATTICE)


@pytest.fixture
def curved_lattice():
    return ClassLattice.from_dict(CURVED_LATTICE)


@pytest.fixture
def random_lattice():
    return generic_lattice()


@pytest.fixture
def strip_tree(lattice):
    return tree_from_dict(strip_with_disk(), lattice)


@pytest.fixture
def broken_strip_tree(lattice):
    return tree_from_dict(two_strip_tree(), lattice)


@pytest.fixture
def disk_tree(lattice):
    return tree_from_dict(disk_one_marker(), lattice)


@pytest.fixture
def maslov4_complex(lattice):
    """(generators, validated table) of the three-generator complex."""
    generators, table = CountTableFile.model_validate(MASLOV4_TABLE).to_domain(lattice)
    return generators, validate_count_table(generators, table)


@pytest.fixture
def curved_complex(curved_lattice):
    """(table file, generators, validated table) of the curved two-generator complex."""
    table_file = CountTableFile.model_validate(CURVED_TABLE)
    generators, table = table_file.to_domain(curved_lattice)
    return table_file, generators, validate_count_table(generators, table)

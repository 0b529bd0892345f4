"""
Shared fixtures: the packaged eight-customer example and the tiny instances.
"""

from pathlib import Path

import pytest

from core.instance import Instance
from core.solution import Solution
from instance_io.native_format import read_instance
from instance_io.solution_format import read_solution
from tests.factories import make_tiny_min_cost, make_tiny_min_time

DATA_DIR = Path(__file__).resolve().parent.parent / "data"


@pytest.fixture
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture
def example8() -> Instance:
    return read_instance(DATA_DIR / "instances" / "example8.txt")


@pytest.fixture
def example8_solution() -> Solution:
    return read_solution(DATA_DIR / "solutions" / "example8.sol")


@pytest.fixture
def tiny_min_time() -> Instance:
    return make_tiny_min_time()


@pytest.fixture
def tiny_min_cost() -> Instance:
    return make_tiny_min_cost()

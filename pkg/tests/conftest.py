import json
import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from geometry import DyadicCube, Figure  # noqa: E402


@pytest.fixture
def unit_square() -> Figure:
    return Figure.cube(DyadicCube(0, (0, 0)))


@pytest.fixture
def two_squares() -> Figure:
    return Figure.from_cubes(2, [DyadicCube(0, (0, 0)), DyadicCube(0, (1, 0))])


@pytest.fixture
def l_shape() -> Figure:
    return Figure.from_cubes(2, [DyadicCube(0, (0, 0)), DyadicCube(0, (1, 0)), DyadicCube(0, (0, 1))])


@pytest.fixture
def quarter() -> Figure:
    return Figure.cube(DyadicCube(1, (0, 0)))


DATA_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'data')


@pytest.fixture
def data_dir() -> str:
    return DATA_DIR


@pytest.fixture
def load_data():
    """Read a JSON file from data/ by relative path."""
    def load(relative: str):
        with open(os.path.join(DATA_DIR, relative), encoding='utf-8') as f:
            return json.load(f)
    return load


def random_figure(rng, dim: int, level: int = 2, max_cells: int = 8) -> Figure:
    """Nonempty union of distinct level-`level` cells inside the unit cube."""
    side = 2 ** level
    count = int(rng.integers(1, max_cells + 1))
    cells = {tuple(int(v) for v in rng.integers(0, side, dim)) for _ in range(count)}
    return Figure.from_cells(level, cells, dim)

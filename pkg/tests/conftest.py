import os
import sys
from pathlib import Path

import numpy as np
import pytest

# Add the src directory to the Python path
sys.path.insert(0, str(Path(__file__).parent.parent / 'src'))

from geometry.sampling import sample_chambers  # noqa: E402
from geometry.weights import WeightVector  # noqa: E402

DEFAULT_SEED = 20240607


def test_seed() -> int:
    return int(os.getenv("POLYSPACE_TEST_SEED", DEFAULT_SEED))


test_seed.__test__ = False


@pytest.fixture
def rng():
    return np.random.default_rng(test_seed())


@pytest.fixture(scope="session")
def small_chambers():
    """Distinct chambers for n = 4, 5, 6; n = 4 has only eight."""
    seed = test_seed()
    return (
        sample_chambers([4], count=8, seed=seed)
        + sample_chambers([5], count=30, seed=seed)
        + sample_chambers([6], count=40, seed=seed)
    )


@pytest.fixture(scope="session")
def medium_chambers():
    return sample_chambers([7], count=6, seed=test_seed() + 1, max_weight=12)


@pytest.fixture(scope="session")
def fano_chambers():
    return sample_chambers(range(4, 10), count=8, seed=test_seed() + 2, max_weight=15)


@pytest.fixture
def pentagon():
    return WeightVector((1, 1, 1, 1, 1))

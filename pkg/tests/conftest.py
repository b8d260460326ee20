import random

import pytest

from consetlab import create_app
from consetlab.config import TestingConfig
from consetlab.graphcore import random_connected_graph


@pytest.fixture
def app():
    return create_app(TestingConfig)


@pytest.fixture
def runner(app):
    return app.test_cli_runner()


@pytest.fixture
def random_connected():
    """Seeded random connected graphs with orders in [lo, hi] and mixed densities."""

    def draw(count, lo, hi, seed=2024):
        rng = random.Random(seed)
        percents = (10, 25, 40, 60, 85)
        return [
            random_connected_graph(rng.randint(lo, hi), percents[i % len(percents)], rng)
            for i in range(count)
        ]

    return draw

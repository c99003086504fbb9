import random

import pytest

from gemkit.library import (
    k2,
    order4_nonbipartite,
    q4,
    rp3,
    torus6,
    torus_disk,
    torus_interval,
)


@pytest.fixture
def t6():
    return torus6()


@pytest.fixture
def k24():
    return k2(4)


@pytest.fixture
def fixtures_all():
    return [
        k2(2),
        k2(4),
        torus6(),
        torus_interval(),
        torus_disk(),
        q4(),
        order4_nonbipartite(0),
        order4_nonbipartite(1),
        rp3(),
    ]


@pytest.fixture
def rng():
    return random.Random(20250808)

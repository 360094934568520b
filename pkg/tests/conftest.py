"""Shared fixtures: the order-3^5 benchmark group H and small friends."""

import pytest

from pcforge.pcgroup import PcPresentation


def make_h_presentation():
    """H = <a,b,c,d,e | all cubes trivial, [b,a]=c, [c,a]=d, [c,b]=e>.

    Order 3^5, class 3; generators indexed a=0..e=4, weights 1,1,2,3,3.
    """
    return PcPresentation(
        p=3,
        weights=(1, 1, 2, 3, 3),
        power={},
        comm={(1, 0): ((2, 1),), (2, 0): ((3, 1),), (2, 1): ((4, 1),)},
        definitions={2: ("comm", 1, 0), 3: ("comm", 2, 0), 4: ("comm", 2, 1)},
    )


@pytest.fixture(scope="session")
def h_group():
    return make_h_presentation()


@pytest.fixture(scope="session")
def c3c3():
    return PcPresentation(p=3, weights=(1, 1))


@pytest.fixture(scope="session")
def c5c5():
    return PcPresentation(p=5, weights=(1, 1))

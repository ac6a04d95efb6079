from __future__ import annotations

import pytest

from ufgkit import (
    GroundSet,
    corrigendum_inputs,
    enumerate_all_posets,
    enumerate_ufg_exhaustive,
)


@pytest.fixture(scope="session")
def corr():
    """(ground, p1, p2, p3, q) of the counterexample scenario."""
    return corrigendum_inputs()


@pytest.fixture(scope="session")
def g2():
    return GroundSet.numbered(2)


@pytest.fixture(scope="session")
def g3():
    return GroundSet.numbered(3)


@pytest.fixture(scope="session")
def pool3(g3):
    return tuple(enumerate_all_posets(g3))


@pytest.fixture(scope="session")
def catalog3(g3):
    """Full exhaustive ufg catalog over all orders of three items."""
    return enumerate_ufg_exhaustive(g3)

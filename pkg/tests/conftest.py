"""Shared fixtures."""

import pytest

from src.schemas.hypercube import Decomposition
from src.schemas.hypercube import PartyDims
from src.schemas.states import StateSet
from src.services.hypercube import build_decomposition
from src.services.states import build_opb
from src.services.states import build_ops
from src.services.states import build_upb


# Acceptance dimensions of the layer lemmas
LEMMA_DIMS = [
    (3, 3, 3),
    (3, 3, 3, 3, 3),
    (3, 4, 5),
    (4, 4, 4),
    (5, 5, 5),
    (3, 3, 3, 3, 3, 3, 3),
]


@pytest.fixture(scope="session")
def dims333() -> PartyDims:
    return PartyDims(dims=(3, 3, 3))


@pytest.fixture(scope="session")
def dec333(dims333: PartyDims) -> Decomposition:
    return build_decomposition(dims333)


@pytest.fixture(scope="session")
def dec33333() -> Decomposition:
    return build_decomposition(PartyDims(dims=(3, 3, 3, 3, 3)))


@pytest.fixture(scope="session")
def opb333(dims333: PartyDims) -> StateSet:
    return build_opb(dims333)


@pytest.fixture(scope="session")
def ops333(dims333: PartyDims) -> StateSet:
    return build_ops(dims333)


@pytest.fixture(scope="session")
def upb333(dims333: PartyDims) -> StateSet:
    return build_upb(dims333)

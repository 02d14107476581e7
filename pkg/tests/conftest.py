"""Shared fixtures and the opt-in switch for long table reproductions."""

import pytest

from src.calculi.domains import DomainSpec
from src.oracle import enumerate_ct
from src.relations.table import CompositionTable


def pytest_addoption(parser: pytest.Parser) -> None:
    parser.addoption(
        "--runslow", action="store_true", default=False, help="run slow reproductions"
    )


def pytest_collection_modifyitems(config: pytest.Config, items: list) -> None:
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(scope="session")
def pa_table() -> CompositionTable:
    """Exact PA table over the points {0, 1, 2}."""
    return enumerate_ct(DomainSpec(calculus="pa", M=3))


@pytest.fixture(scope="session")
def ia_table() -> CompositionTable:
    """Complete IA table (intervals over 6 nodes)."""
    return enumerate_ct(DomainSpec(calculus="ia", M=6))


@pytest.fixture(scope="session")
def rcc8_rect_table() -> CompositionTable:
    """Complete RCC-8 table over rectangles with corners in a 6x6 grid."""
    return enumerate_ct(DomainSpec(calculus="rcc8-rect", M=6))


@pytest.fixture(scope="session")
def rcc8_disk_table() -> CompositionTable:
    """RCC-8 table over disks with M=5."""
    return enumerate_ct(DomainSpec(calculus="rcc8-disk", M=5))


@pytest.fixture(scope="session")
def indu_table() -> CompositionTable:
    """Complete INDU table (intervals over 11 nodes)."""
    return enumerate_ct(DomainSpec(calculus="indu", M=11))


@pytest.fixture(scope="session")
def opra1_polar_table() -> CompositionTable:
    """Exact OPRA_1 table of the polar (2, 8) o-points."""
    return enumerate_ct(DomainSpec(calculus="opra1-polar", M1=2, M2=8))

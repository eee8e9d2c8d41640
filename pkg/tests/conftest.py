import sys
from pathlib import Path

import pytest

PROJECT_ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(PROJECT_ROOT))

from plugins.catalog.manager import KnotCatalog  # noqa: E402
from plugins.satellite.braid import BraidLetter, BraidWord  # noqa: E402
from plugins.satellite.cable import SatelliteSpec  # noqa: E402

ASSETS = Path(__file__).parent / "assets"


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: 长时间退火，用 -m \"not slow\" 跳过")


def cable_pattern(n: int) -> BraidWord:
    """σ1 σ2 … σ_{n−1}"""
    return BraidWord(n, tuple(BraidLetter(j, 1) for j in range(1, n)))


@pytest.fixture(scope="session")
def catalog() -> KnotCatalog:
    return KnotCatalog(catalog_dir=PROJECT_ROOT / "catalog")


@pytest.fixture(scope="session")
def trefoil(catalog):
    return catalog.load("trefoil")


@pytest.fixture(scope="session")
def figure_eight(catalog):
    return catalog.load("figure_eight")


@pytest.fixture(scope="session")
def unknot(catalog):
    return catalog.load("unknot")


@pytest.fixture
def trefoil_cable2(trefoil) -> SatelliteSpec:
    return SatelliteSpec(trefoil, cable_pattern(2))


@pytest.fixture
def assets() -> Path:
    return ASSETS

import pytest

from src.formats.graph_io import parse_surftri_line
from src.generation.triangulation_gen import K4_SURFTRI


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run slow full-scale tests")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def k4():
    return parse_surftri_line(K4_SURFTRI)

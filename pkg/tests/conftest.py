import random

import pytest

from app.ff import make_context


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run checks over sampled prime ranges")
    parser.addoption(
        "--runexhaustive", action="store_true", default=False, help="run checks over the full prime ranges (hours)"
    )


def pytest_collection_modifyitems(config, items):
    gates = {
        "slow": (config.getoption("--runslow"), pytest.mark.skip(reason="needs --runslow")),
        "exhaustive": (config.getoption("--runexhaustive"), pytest.mark.skip(reason="needs --runexhaustive")),
    }
    for item in items:
        for keyword, (enabled, skip) in gates.items():
            if keyword in item.keywords and not enabled:
                item.add_marker(skip)


@pytest.fixture
def ctx7():
    """F_49 as F_7[z]/(z^2 - z + 3)"""
    return make_context(7, [3, -1, 1])


@pytest.fixture
def ctx11():
    return make_context(11)


@pytest.fixture
def rng():
    return random.Random(20240601)


@pytest.fixture
def client():
    from fastapi.testclient import TestClient

    from main import app

    return TestClient(app)

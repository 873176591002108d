"""
Shared fixtures for the qlbench test suite.
"""

import os

import pytest

from qlbench.backends import LOCAL_EXACT, JobStore, SimulatedBackend
from qlbench.core.config import reset_settings
from qlbench.landscape import GridSpec
from qlbench.problem import paper_instance


@pytest.fixture(autouse=True)
def isolated_environment(tmp_path, monkeypatch):
    """Keep every test away from user config files and QLB_ variables."""
    for name in list(os.environ):
        if name.upper().startswith("QLB_"):
            monkeypatch.delenv(name)
    monkeypatch.setenv("HOME", str(tmp_path))
    monkeypatch.chdir(tmp_path)
    reset_settings()
    yield
    reset_settings()


@pytest.fixture
def paper_graph():
    """The 5-node benchmark instance."""
    return paper_instance()


@pytest.fixture
def job_store():
    """In-memory job store."""
    return JobStore()


@pytest.fixture
def exact_backend(job_store):
    """Noise-free local backend with an exact evaluation path."""
    return SimulatedBackend(LOCAL_EXACT, job_store)


@pytest.fixture
def small_grid():
    """5 x 3 grid with spacing pi/4."""
    return GridSpec.default(4)

import os

import pytest

from gradedgeo import config
from gradedgeo.specfile import load_spec, parse_spec
from gradedgeo.geometry import christoffel, ricci, riemann

SPECS_DIR = os.path.join(os.path.dirname(__file__), "..", "data", "specs")

CORPUS = (
    "flat", "disk", "g0", "g0_factor1", "g0_factor2", "g0_warped", "odd_r1111", "odd_r1111_warped",
    "super_line", "ppwave", "euclidean_plane", "line_x", "line_y", "sphere", "poincare_disk",
)
ODD_CORPUS = ("odd_r1111", "odd_r1111_warped", "super_line")


def spec_path(name: str) -> str:
    return os.path.join(SPECS_DIR, f"{name}.spec")


def load(name: str, trunc=None):
    return load_spec(spec_path(name), trunc)


@pytest.fixture(autouse=True)
def _zero_test_defaults():
    config.configure(tolerance=1e-9, samples=5, seed=0)
    yield
    config.configure(tolerance=1e-9, samples=5, seed=0)


@pytest.fixture
def flat():
    return load("flat")


@pytest.fixture
def g0():
    return load("g0")


@pytest.fixture
def odd():
    return load("odd_r1111")


@pytest.fixture
def super_line():
    return load("super_line")


@pytest.fixture
def small_flat():
    return load("flat", trunc=2)


@pytest.fixture
def spec_text():
    return parse_spec


def curvature(m):
    """(Christoffel, Riemann, Ricci) de una métrica."""
    c = christoffel(m)
    r = riemann(c)
    return c, r, ricci(c, r)

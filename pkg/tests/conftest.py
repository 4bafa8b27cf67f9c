import pathlib

import pytest

from bratteli import compute_point_set, normalize_with_positions

from .helpers import m3_line, paper_diagram

DATA = pathlib.Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def paper():
    return paper_diagram()


@pytest.fixture(scope="session")
def normalized(paper):
    diagram, positions = normalize_with_positions(paper, "drinen")
    return diagram, positions, compute_point_set(diagram, "drinen")


@pytest.fixture(scope="session")
def kumjianized(paper):
    diagram, positions = normalize_with_positions(paper, "kumjian")
    return diagram, positions, compute_point_set(diagram, "kumjian")


@pytest.fixture(scope="session")
def m3():
    diagram = m3_line(5)
    return diagram, compute_point_set(diagram, "drinen")


@pytest.fixture
def data_dir():
    return DATA

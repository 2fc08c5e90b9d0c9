from pathlib import Path

import pytest

from knotgap.diagram import parse_pd, parse_pd_file

FIXTURES = Path(__file__).resolve().parents[1] / "fixtures"

TREFOIL = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"
FIGURE_EIGHT = "X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)"


def corpus():
    return [d for _, d in parse_pd_file((FIXTURES / "corpus.pd").read_text())]


def fixture_named(name):
    return next(d for d in corpus() if d.name == name)


@pytest.fixture
def trefoil():
    return parse_pd(TREFOIL, name="trefoil")


@pytest.fixture
def figure_eight():
    return parse_pd(FIGURE_EIGHT, name="figure_eight")

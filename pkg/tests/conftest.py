import importlib.resources as resources

import pytest

from skewcover.inputfmt import build_input, parse_input
from skewcover.skew import build_presentation
from skewcover.ar import knit_ar_quiver


def data_text(name: str) -> str:
    return resources.files("skewcover").joinpath(f"data/{name}").read_text()


def golden_text(name: str) -> str:
    return resources.files("skewcover").joinpath(f"data/golden/{name}").read_text()


def load_built(name: str, build_algebra: bool = True):
    return build_input(parse_input(data_text(name)), build_algebra=build_algebra)


@pytest.fixture(scope="session")
def fig5():
    return load_built("fig5.skw")


@pytest.fixture(scope="session")
def fig1():
    return load_built("fig1.skw")


@pytest.fixture(scope="session")
def fig6():
    return load_built("fig6.skw")


@pytest.fixture(scope="session")
def fig2():
    return load_built("fig2.skw")


@pytest.fixture(scope="session")
def kronecker():
    return load_built("kronecker_z3.skw")


@pytest.fixture(scope="session")
def free_a3():
    return load_built("free_action_a3.skw")


@pytest.fixture(scope="session")
def fig5_pres(fig5):
    return build_presentation(fig5.algebra, fig5.group, fig5.action)


@pytest.fixture(scope="session")
def fig1_pres(fig1):
    return build_presentation(fig1.algebra, fig1.group, fig1.action)


@pytest.fixture(scope="session")
def kron_pres(kronecker):
    return build_presentation(kronecker.algebra, kronecker.group, kronecker.action)


@pytest.fixture(scope="session")
def fig5_arq(fig5):
    return knit_ar_quiver(fig5.algebra)


@pytest.fixture(scope="session")
def fig5_skew_arq(fig5_pres):
    return knit_ar_quiver(fig5_pres.algebra)


@pytest.fixture(scope="session")
def fig6_arq(fig6):
    return knit_ar_quiver(fig6.algebra)

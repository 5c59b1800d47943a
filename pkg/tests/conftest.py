import pytest

from foresthopf import DecorationRegistry, parse_forest


@pytest.fixture(scope="session")
def reg():
    # Enough names for every worked example: leaves x,y; operators a,b,c.
    return DecorationRegistry(["x", "y"], ["a", "b", "c"])


@pytest.fixture(scope="session")
def reg_small():
    return DecorationRegistry(["x"], ["a", "b"])


@pytest.fixture(scope="session")
def reg_tiny():
    return DecorationRegistry(["x"], ["a"])


@pytest.fixture(scope="session")
def reg_plain():
    # No leaf-only decorations at all: plane forests on one label.
    return DecorationRegistry([], ["a"])


@pytest.fixture(scope="session")
def P(reg):
    def parse(text):
        return parse_forest(text, reg)

    return parse

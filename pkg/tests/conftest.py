import pytest

from qfox import get_diagram, load_registry


@pytest.fixture(scope="session")
def registry():
    return load_registry()


@pytest.fixture(scope="session")
def trefoil():
    return get_diagram("3_1")


@pytest.fixture(scope="session")
def l4a1():
    return get_diagram("L4a1_1")

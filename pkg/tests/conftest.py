import pytest

from spreadlab import build_tower


@pytest.fixture(scope="session")
def c312():
    """q = 3, n = 2: ambient F_81."""
    return build_tower(3, 1, 2)


@pytest.fixture(scope="session")
def c313():
    """q = 3, n = 3: ambient F_729."""
    return build_tower(3, 1, 3)


@pytest.fixture(scope="session")
def c213():
    """q = 2, n = 3: ambient F_64."""
    return build_tower(2, 1, 3)


@pytest.fixture(scope="session")
def c214():
    """q = 2, n = 4: ambient F_256."""
    return build_tower(2, 1, 4)


@pytest.fixture(scope="session")
def c212():
    """q = 2, n = 2: ambient F_16."""
    return build_tower(2, 1, 2)


@pytest.fixture(scope="session")
def c311():
    """q = 3, n = 1: ambient F_9."""
    return build_tower(3, 1, 1)


@pytest.fixture(scope="session")
def c321():
    """q = 9 (p=3, e=2), n = 1: ambient F_81."""
    return build_tower(3, 2, 1)


@pytest.fixture(scope="session")
def c513():
    """q = 5, n = 3: ambient F_15625."""
    return build_tower(5, 1, 3)

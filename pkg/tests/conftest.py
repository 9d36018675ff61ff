import pytest

from bgg.cartan import validate_gcm


@pytest.fixture(scope="session")
def A1():
    return validate_gcm([[2]])


@pytest.fixture(scope="session")
def A2():
    return validate_gcm([[2, -1], [-1, 2]])


@pytest.fixture(scope="session")
def B2():
    return validate_gcm([[2, -2], [-1, 2]])


@pytest.fixture(scope="session")
def AFF():
    # rank-one affine matrix: infinite Weyl group, imaginary roots
    return validate_gcm([[2, -2], [-2, 2]])

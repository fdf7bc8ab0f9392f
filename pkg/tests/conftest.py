import pytest

from cellform import builtin_instances


@pytest.fixture(scope="session")
def boctor():
    return builtin_instances()["boctor-7x11"]

import random

import pytest

from carlitzbases import FieldConfig


@pytest.fixture(scope="session")
def f2():
    return FieldConfig(2)


@pytest.fixture(scope="session")
def f3():
    return FieldConfig(3)


@pytest.fixture(scope="session")
def f4():
    return FieldConfig(2, 2)


@pytest.fixture
def rng():
    return random.Random(20260826)

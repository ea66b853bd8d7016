import random

import pytest
from hypothesis import HealthCheck, settings

from nilorbit.corpus import get_example
from nilorbit.estimates import build_section_model

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def ex_i():
    return get_example("1.10-i")


@pytest.fixture(scope="session")
def ex_2():
    return get_example("1.10-2")


@pytest.fixture(scope="session")
def model_i(ex_i):
    return build_section_model(ex_i)


@pytest.fixture(scope="session")
def model_2(ex_2):
    return build_section_model(ex_2)


@pytest.fixture
def rng():
    return random.Random(12345)

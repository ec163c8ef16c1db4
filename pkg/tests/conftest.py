import pytest
from hypothesis import settings
from mpmath import mp

settings.register_profile("default", max_examples=25, deadline=None)
settings.load_profile("default")


@pytest.fixture(autouse=True)
def _precision():
    with mp.workdps(40):
        yield

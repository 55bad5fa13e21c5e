import random

import pytest

from folab.instances import running_instance


@pytest.fixture
def running():
    return running_instance()


@pytest.fixture
def rng():
    return random.Random(20261018)

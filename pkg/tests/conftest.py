import numpy as np
import pytest

import funklab as fl


@pytest.fixture(autouse=True)
def default_config():
    fl.reset_config()
    yield fl.get_config()
    fl.reset_config()


@pytest.fixture
def rng():
    return np.random.default_rng(20240517)

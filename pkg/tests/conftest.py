import logging

import numpy as np
import pytest

from psl2colmez.colmez.a_phi import make_extended
from psl2colmez.groups.psl2 import make_group


@pytest.fixture(autouse=True)
def quiet_logging(caplog):
    root = logging.getLogger()
    before = list(root.handlers)
    caplog.set_level(logging.WARNING)
    yield
    # drop the handlers setup_logging installed
    for handler in root.handlers[:]:
        if handler not in before:
            root.removeHandler(handler)
            handler.close()


@pytest.fixture
def rng():
    return np.random.default_rng(0)


@pytest.fixture
def group5():
    return make_group(5)


@pytest.fixture
def group7():
    return make_group(7)


@pytest.fixture
def ext5():
    return make_extended(5)


@pytest.fixture
def ext7():
    return make_extended(7)


@pytest.fixture(params=[5, 7, 9, 11, 13])
def small_q(request):
    return request.param

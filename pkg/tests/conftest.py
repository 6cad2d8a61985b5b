import random

import pytest

from ckpolylog.padic import PrecisionPolicy
from ckpolylog.polylog import get_engine
import ckpolylog.galois as galois


@pytest.fixture(scope="session")
def policy():
    return PrecisionPolicy(12, 3)


@pytest.fixture(scope="session")
def eng5(policy):
    return get_engine(5, policy)


@pytest.fixture(scope="session")
def eng7(policy):
    return get_engine(7, policy)


@pytest.fixture(scope="session")
def table_z_half():
    return galois.build_table_z_half()


@pytest.fixture(scope="session")
def table_z_sixth():
    return galois.build_table_z_sixth()


@pytest.fixture()
def rng():
    return random.Random(20260808)

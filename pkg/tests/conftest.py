import pytest
from hypothesis import strategies as st

from mindeg.config import EngineConfig
from mindeg.constructors import construct
from mindeg.parser import parse_spec
from mindeg.perm import Perm


def build(text: str):
    """Construct a spec string into its permutation group."""
    return construct(parse_spec(text)).group


@pytest.fixture
def config():
    return EngineConfig()


@pytest.fixture
def sym4():
    return build("S(4)")


def perms(degree: int):
    """Hypothesis strategy for permutations of {0, ..., degree - 1}."""
    return st.permutations(list(range(degree))).map(lambda images: Perm(tuple(images)))


SMALL_PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]

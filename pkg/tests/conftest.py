import random

import pytest
from hypothesis import strategies as st
from sympy import Rational

from src.family.models import StandardPair
from src.family.services import family_services
from src.lattes.models import Cubic


def random_pair(rng: random.Random, d: int, lam=None, lo: int = -5, hi: int = 5) -> StandardPair:
    """An integral standard-form pair; not necessarily a family member."""
    if lam is None:
        lam = rng.choice([v for v in range(lo, hi + 1) if v != 0])
    a = [rng.randint(lo, hi) for _ in range(d)]
    b = [rng.randint(lo, hi) for _ in range(d - 1)]
    return StandardPair.from_coefficients(d, lam, a, b)


def random_member(rng: random.Random, d: int, lam, lo: int = -5, hi: int = 5) -> StandardPair:
    """A member of F_{d,lambda}: a_{d-1} = epsilon b_{d-2} and Delta != 0."""
    epsilon = family_services.epsilon(d, lam)
    while True:
        a = [rng.randint(lo, hi) for _ in range(d - 1)]
        b = [rng.randint(lo, hi) for _ in range(d - 1)]
        pair = StandardPair.from_coefficients(d, lam, a + [epsilon * b[-1]], b)
        if family_services.critical_discriminant(pair) != 0:
            return pair


def random_cubic(rng: random.Random, lo: int = -20, hi: int = 20) -> Cubic:
    while True:
        cubic = Cubic(a=rng.randint(lo, hi), b=rng.randint(lo, hi), c=rng.randint(lo, hi))
        if cubic.is_elliptic():
            return cubic


@pytest.fixture
def rng():
    return random.Random(20240617)


@pytest.fixture
def x3_plus_x():
    return Cubic(a=0, b=1, c=0)


@pytest.fixture
def lattes_x3_plus_x():
    return StandardPair(d=4, lam=4, A="x^4-2x^2+1", B="4x^3+4x")


nonzero_rationals = st.builds(
    Rational,
    st.integers(min_value=-30, max_value=30).filter(lambda n: n != 0),
    st.integers(min_value=1, max_value=12),
)

small_rationals = st.builds(
    Rational,
    st.integers(min_value=-30, max_value=30),
    st.integers(min_value=1, max_value=12),
)

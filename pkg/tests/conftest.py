import random
from fractions import Fraction

import pytest

from nodalhodge import (Pencil, Polynomial, QQ, QQ_T, elementary_symmetric,
                        power_sum)


def random_fraction(rng, span=30):
    return Fraction(rng.randint(-span, span), rng.randint(1, span))


def random_poly(rng, nvars, maxdeg, field=QQ, terms=6, span=9):
    """Random sparse polynomial with small integer coefficients."""
    t = {}
    for _ in range(terms):
        mono = [0] * nvars
        for _ in range(rng.randint(0, maxdeg)):
            mono[rng.randrange(nvars)] += 1
        c = rng.randint(-span, span)
        if c:
            t[tuple(mono)] = field.from_int(c)
    return Polynomial(nvars, field, t)


def random_homogeneous(rng, nvars, deg, terms=6, span=9):
    t = {}
    for _ in range(terms):
        mono = [0] * nvars
        for _ in range(deg):
            mono[rng.randrange(nvars)] += 1
        c = rng.randint(-span, span)
        if c:
            t[tuple(mono)] = Fraction(c)
    return Polynomial(nvars, QQ, t)


@pytest.fixture
def rng():
    return random.Random(20260814)


@pytest.fixture(scope="session")
def fermat5():
    """Fermat quintic in five variables."""
    return power_sum(5, 5)


@pytest.fixture(scope="session")
def hesse_pencil():
    """Cubic pencil p_3 - t e_3 in three variables."""
    return Pencil(power_sum(3, 3), elementary_symmetric(3, 3))


@pytest.fixture(scope="session")
def dwork_pencil():
    """Quintic pencil p_5 - 5 t e_5 in five variables."""
    g = elementary_symmetric(5, 5) * Polynomial.constant(Fraction(5), 5)
    return Pencil(power_sum(5, 5), g)


@pytest.fixture(scope="session")
def nodal_quintic_family():
    """p_5 - t p_2 p_3 in six variables over Q(t), restricted to the
    hyperplane x5 = -(x0+...+x4); general members are quintic threefolds
    in P^4 carrying 100 nodes."""
    from nodalhodge import RatFun, restrict_to_hyperplane
    p5 = power_sum(5, 6, QQ_T)
    p2p3 = power_sum(2, 6, QQ_T) * power_sum(3, 6, QQ_T)
    t = Polynomial.constant(RatFun.t(), 6, QQ_T)
    return restrict_to_hyperplane(p5 - t * p2p3)

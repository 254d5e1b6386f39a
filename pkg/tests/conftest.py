import random

import pytest

from modsym.fields import ExtField, FpField, QField, RatFunField


@pytest.fixture
def Q():
    return QField()


@pytest.fixture
def F7():
    return FpField(7)


@pytest.fixture
def Qt(Q):
    return RatFunField(Q, "t")


@pytest.fixture
def F7u(F7):
    return RatFunField(F7, "u")


@pytest.fixture
def F7ut(F7u):
    return RatFunField(F7u, "t")


@pytest.fixture
def rng():
    return random.Random(13)


def rand_poly(K, rng, deg, monic=False, nonzero=False):
    """Random coefficient tuple of exact degree ``deg``."""
    coeffs = [K.rand(rng) for _ in range(deg)]
    lead = K.one if monic else K.rand(rng)
    while K.is_zero(lead):
        lead = K.rand(rng)
    coeffs.append(lead)
    if nonzero and all(K.is_zero(c) for c in coeffs):
        coeffs[0] = K.one
    return tuple(coeffs)


def rand_ratfun(R, rng, deg=3, nonzero=False):
    K = R.below
    num = rand_poly(K, rng, rng.randrange(deg + 1))
    den = rand_poly(K, rng, rng.randrange(deg + 1), monic=True)
    v = R.make(num, den)
    if nonzero and R.is_zero(v):
        return R.one
    return v


def poly_mul(K, a, b):
    out = [K.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = K.add(out[i + j], K.mul(x, y))
    return tuple(out)

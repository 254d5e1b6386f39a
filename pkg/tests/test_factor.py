import random
from fractions import Fraction

import pytest

from modsym.errors import UnsupportedField
from modsym.factor import elems, factor, factor_squarefree, is_irreducible
from modsym.fields import ExtField, FpField, QField, RatFunField, pmul

from conftest import poly_mul, rand_poly


def reassemble(K, lead, factors):
    p = (lead,)
    for q, m in factors:
        for _ in range(m):
            p = poly_mul(K, p, q)
    return p


class TestFiniteFields:
    def test_known_split(self):
        F = FpField(7)
        # t^2 + 1 irreducible (no sqrt of -1 mod 7); t^2 - 2 splits (3^2 = 2)
        assert is_irreducible(F, (F.one, F.zero, F.one))
        lead, fs = factor(F, (F.from_int(-2), F.zero, F.one))
        assert lead == F.one and len(fs) == 2

    def test_random_products_recovered(self):
        rng = random.Random(7)
        F = FpField(5)
        for _ in range(20):
            p = rand_poly(F, rng, rng.randrange(1, 5), monic=True)
            lead, fs = factor(F, p)
            assert reassemble(F, lead, fs) == p
            assert all(is_irreducible(F, q) for q, _ in fs)

    def test_char2_extension(self):
        F = FpField(2)
        E = ExtField(F, "w", (F.one, F.one, F.one))  # F_4
        assert len(list(elems(E))) == 4
        rng = random.Random(3)
        for _ in range(10):
            p = rand_poly(E, rng, 3, monic=True)
            lead, fs = factor(E, p)
            assert reassemble(E, lead, fs) == p

    def test_multiplicities(self):
        F = FpField(3)
        # (t+1)^3 (t^2+1)
        p = poly_mul(F, (F.one, F.zero, F.one), (F.one, F.zero, F.zero, F.one))
        lead, fs = factor(F, p)
        assert sorted(m for _, m in fs) == [1, 3]


class TestRationals:
    def test_cyclotomic_like(self):
        Q = QField()
        # t^4 - 1 = (t-1)(t+1)(t^2+1)
        lead, fs = factor(Q, (Fraction(-1), 0, 0, 0, Fraction(1)))
        assert len(fs) == 3
        assert reassemble(Q, lead, fs) == tuple(
            Fraction(c) for c in (-1, 0, 0, 0, 1)
        )

    def test_nonmonic_lead(self):
        Q = QField()
        lead, fs = factor(Q, (Fraction(-2), Fraction(0), Fraction(2)))
        assert lead == Fraction(2)
        assert len(fs) == 2


class TestRatFunCoefficients:
    def test_bivariate_over_q(self):
        Q = QField()
        K = RatFunField(Q, "w")
        w = K.from_poly((Q.zero, Q.one))
        # t^2 - w^2 = (t-w)(t+w); t^2 - w irreducible
        lead, fs = factor(K, (K.neg(K.mul(w, w)), K.zero, K.one))
        assert len(fs) == 2
        assert is_irreducible(K, (K.neg(w), K.zero, K.one))

    def test_bivariate_over_f7(self):
        F = FpField(7)
        K = RatFunField(F, "u")
        u = K.from_poly((F.zero, F.one))
        lead, fs = factor(K, (K.neg(K.mul(u, u)), K.zero, K.one))
        assert len(fs) == 2
        assert is_irreducible(K, (K.neg(u), K.zero, K.one))

    def test_random_products_over_f7u(self):
        rng = random.Random(11)
        F = FpField(7)
        K = RatFunField(F, "u")
        for _ in range(6):
            p = rand_poly(K, rng, rng.randrange(2, 5), monic=True)
            lead, fs = factor(K, p)
            assert reassemble(K, lead, fs) == pmul(K, (lead,), reassemble(K, K.one, fs))
            assert reassemble(K, lead, fs) == p

    def test_char_p_pure_power(self):
        F = FpField(3)
        K = RatFunField(F, "u")
        u = K.from_poly((F.zero, F.one))
        # t^3 - u^3 = (t - u)^3
        p = (K.neg(K.pow(u, 3)), K.zero, K.zero, K.one)
        lead, fs = factor(K, p)
        assert fs == [((K.neg(u), K.one), 3)]
        # t^3 - u is irreducible (u has no cube root)
        assert is_irreducible(K, (K.neg(u), K.zero, K.zero, K.one))


class TestAlgebraicExtensionStep:
    def test_trager_split(self):
        F = FpField(7)
        E = ExtField(F, "i", (F.one, F.zero, F.one))  # contains sqrt(-1)
        K = RatFunField(E, "u")
        # t^2 + 1 splits over E(u)
        lead, fs = factor(K, (K.one, K.zero, K.one))
        assert len(fs) == 2

    def test_ext_over_ratfun(self):
        Q = QField()
        K = RatFunField(Q, "w")
        w = K.from_poly((Q.zero, Q.one))
        E = ExtField(K, "r", (K.neg(w), K.zero, K.one))  # r^2 = w
        r = E.gen()
        # t^2 - w = (t - r)(t + r) over E
        lead, fs = factor(E, (E.neg(E.mul(r, r)), E.zero, E.one))
        assert len(fs) == 2
        assert reassemble(E, lead, fs) == (E.neg(E.mul(r, r)), E.zero, E.one)

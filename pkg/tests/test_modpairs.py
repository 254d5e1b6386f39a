import random

import pytest

from modsym.curve import INF, Divisor
from modsym.errors import DegenerateMap, InfiniteValuation, UnsupportedField
from modsym.fields import FpField, RatFunField
from modsym.localfield import Laurent
from modsym.modpairs import (
    MAX,
    SUM,
    ModulusPair,
    ValuationProbe,
    admissible,
    pair_box,
    pair_ga,
    pair_gm,
    pair_p1,
    probe_multiplicities,
    product_pair,
    pullback_divisor,
    required_modulus,
)


def T(R):
    return R.from_poly((R.below.zero, R.below.one))


@pytest.fixture
def R():
    return RatFunField(FpField(7), "t")


class TestPairs:
    def test_standard_pairs(self, R):
        F = R.below
        assert pair_ga(R).infty[INF] == 2
        assert pair_gm(R).infty[(F.zero, F.one)] == 1
        assert pair_gm(R).infty[INF] == 1
        assert pair_box(R).infty.degree() == 1

    def test_effectivity_enforced(self, R):
        with pytest.raises(ValueError):
            pair_p1(Divisor(R, {INF: -1}))

    def test_json_roundtrip(self, R):
        m = product_pair(pair_ga(R), pair_gm(R), MAX)
        assert ModulusPair.from_json(R, m.to_json()) == m


class TestProbes:
    def mk(self, F, lead, coeffs):
        return Laurent(F, "s", lead, tuple(F.from_int(c) for c in coeffs))

    def test_known_probe(self):
        F = FpField(7)
        probe = ValuationProbe(self.mk(F, 2, [1]), self.mk(F, 3, [1]))
        assert probe_multiplicities(probe) == {
            "vE": 2,
            "vD1": 0,
            "vD2": 1,
            "vInfty_sum": 5,
            "vInfty_max": 3,
        }

    def test_degenerate_probes(self):
        F = FpField(7)
        zero = Laurent(F, "s", 0, ())
        with pytest.raises(InfiniteValuation):
            probe_multiplicities(ValuationProbe(zero, self.mk(F, 1, [1])))
        with pytest.raises(InfiniteValuation):
            probe_multiplicities(ValuationProbe(self.mk(F, -1, [1]), self.mk(F, 1, [1])))

    def test_chart_consistency_random(self):
        # in the blow-up charts the coordinates are (t1/t2, t2) resp.
        # (t1, t2/t1); multiplicities must agree with direct chart valuations
        F = FpField(7)
        rng = random.Random(23)
        for _ in range(25):
            a = rng.randrange(0, 5)
            b = rng.randrange(0, 5)
            u1 = [rng.randrange(1, 7)] + [rng.randrange(7) for _ in range(3)]
            u2 = [rng.randrange(1, 7)] + [rng.randrange(7) for _ in range(3)]
            t1 = self.mk(F, a, u1)
            t2 = self.mk(F, b, u2)
            out = probe_multiplicities(ValuationProbe(t1, t2))
            assert out["vE"] == min(a, b)
            quot = t1 * t2.inv(4)
            assert out["vD1"] == max(quot.valuation(), 0)
            assert out["vD2"] == max(-quot.valuation(), 0)
            assert out["vInfty_sum"] == out["vE"] * 2 + out["vD1"] + out["vD2"]
            assert out["vInfty_max"] == out["vE"] + max(out["vD1"], out["vD2"])


class TestPullback:
    def test_pullback_at_infinity(self, R):
        t = T(R)
        # g = t^2 pulls (inf) back to 2(inf)
        D = pullback_divisor(R, R.mul(t, t), Divisor(R, {INF: 1}))
        assert D[INF] == 2 and D.degree() == 2

    def test_pullback_finite_target(self, R):
        F = R.below
        t = T(R)
        # g = t^2 pulls (1) back to (1) + (-1)
        D = pullback_divisor(R, R.mul(t, t), Divisor(R, {(F.neg(F.one), F.one): 1}))
        assert D[(F.neg(F.one), F.one)] == 1
        assert D[(F.one, F.one)] == 1

    def test_degenerate_map_rejected(self, R):
        F = R.below
        with pytest.raises(DegenerateMap):
            pullback_divisor(R, R.one, Divisor(R, {(F.neg(F.one), F.one): 1}))

    def test_required_modulus_product_target(self, R):
        t = T(R)
        target = product_pair(pair_gm(R), pair_gm(R), SUM)
        D = required_modulus(R, (t, R.sub(R.one, t)), target)
        F = R.below
        assert D[(F.zero, F.one)] == 1
        assert D[(F.neg(F.one), F.one)] == 1
        assert D[INF] == 2


class TestAdmissible:
    def test_line_source(self, R):
        t = T(R)
        # t: (P^1, (0)+(inf)) -> Gm pair is admissible; from the box it is not
        assert admissible((t,), pair_gm(R), pair_gm(R))
        assert not admissible((t,), pair_box(R), pair_gm(R))
        # t^2 needs doubled modulus
        t2 = R.mul(t, t)
        assert not admissible((t2,), pair_gm(R), pair_gm(R))
        big = pair_p1(Divisor(R, {(R.below.zero, R.below.one): 2, INF: 2}))
        assert admissible((t2,), big, pair_gm(R))

    def test_multiplication_on_sum_product(self, R):
        gm2_sum = product_pair(pair_gm(R), pair_gm(R), SUM)
        assert admissible(("monomial", 1, 1), gm2_sum, pair_gm(R))

    def test_multiplication_fails_on_max_product(self, R):
        gm2_max = product_pair(pair_gm(R), pair_gm(R), MAX)
        assert not admissible(("monomial", 1, 1), gm2_max, pair_gm(R))

    def test_projections_always_admissible(self, R):
        for conv in (SUM, MAX):
            prod = product_pair(pair_gm(R), pair_gm(R), conv)
            assert admissible(("monomial", 1, 0), prod, pair_gm(R))
            assert admissible(("monomial", 0, 1), prod, pair_gm(R))

    def test_monotone_in_source(self, R):
        big1 = pair_p1(Divisor(R, {INF: 3}))
        prod_small = product_pair(pair_box(R), pair_box(R), MAX)
        prod_big = product_pair(big1, big1, MAX)
        g = ("monomial", 1, 1)
        target = pair_box(R)
        if admissible(g, prod_small, target):
            assert admissible(g, prod_big, target)

    def test_constant_monomial_rejected(self, R):
        prod = product_pair(pair_gm(R), pair_gm(R), SUM)
        with pytest.raises(DegenerateMap):
            admissible(("monomial", 0, 0), prod, pair_gm(R))
        with pytest.raises(UnsupportedField):
            admissible(("other", 1, 1), prod, pair_gm(R))

    def test_max_cone_brute_force(self, R):
        # the closed-form cone test must match direct probing over a grid
        for M1 in range(1, 4):
            for M2 in range(1, 4):
                src = product_pair(
                    pair_p1(Divisor(R, {INF: M1})),
                    pair_p1(Divisor(R, {INF: M2})),
                    MAX,
                )
                for k in range(1, 3):
                    tgt = pair_p1(Divisor(R, {INF: k}))
                    for m in range(0, 3):
                        for n in range(0, 3):
                            if m == 0 and n == 0:
                                continue
                            brute = all(
                                k * (m * a + n * b) <= max(M1 * a, M2 * b)
                                for a in range(0, 12)
                                for b in range(0, 12)
                                if (a, b) != (0, 0)
                            )
                            got = admissible(("monomial", m, n), src, tgt)
                            assert got == brute, (k, m, n, M1, M2)

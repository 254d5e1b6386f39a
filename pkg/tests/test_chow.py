import pytest
from fractions import Fraction

from modsym.chow import (
    GA,
    GM,
    ChowClass,
    chow_class,
    higher_cycle_class,
    rat_equiv_zero,
    zero_cycle,
)
from modsym.errors import (
    CharacteristicUnsupported,
    CongruenceFailure,
    PointOnDivisor,
    ZeroFirstCoordinate,
)
from modsym.fields import ExtField, FpField, QField, RatFunField
from modsym.kahler import dlog, dlog_wedge, jet_from_tensor
from modsym.modpairs import MAX, SUM


def T(R):
    return R.from_poly((R.below.zero, R.below.one))


class TestChowClass:
    def test_rational_point_class(self):
        F = FpField(13)
        K = RatFunField(F, "u")
        u = T(K)
        a = K.add(u, K.one)
        z = zero_cycle(K, (GA, GM), [(K, (a, u), 1)])
        c = chow_class(z)
        assert c.degree == 1
        assert c.j1 == a and c.j2 == u
        assert c.pairing == dlog(K, u).scale(a)
        assert not c.is_zero()

    def test_basepoint_is_neutral(self):
        F = FpField(13)
        K = RatFunField(F, "u")
        z = zero_cycle(K, (GA, GM), [(K, (K.zero, K.one), 1)])
        c = chow_class(z)
        assert c.degree == 1  # only the degree survives at the basepoint
        assert c.j1 == K.zero and c.j2 == K.one and c.pairing.is_zero()

    def test_extension_point_traces_down(self):
        F = FpField(13)
        E = ExtField(F, "i", (F.one, F.zero, F.one))  # i^2 = -1
        i = E.gen()
        z = zero_cycle(F, (GA, GM), [(E, (i, i), 1)])
        c = chow_class(z)
        assert c.degree == 2
        assert c.j1 == F.zero  # Tr(i) = 0
        assert c.j2 == F.one  # N(i) = 1

    def test_ga_ga_pairing_is_jet(self):
        F = FpField(7)
        K = RatFunField(F, "u")
        u = T(K)
        z = zero_cycle(K, (GA, GA), [(K, (u, K.mul(u, u)), 1)])
        c = chow_class(z)
        assert c.pairing == jet_from_tensor(K, u, K.mul(u, u))
        assert c.j2 == K.mul(u, u)

    def test_gm_gm_pairing_is_dlog_wedge(self):
        F = FpField(13)
        K = RatFunField(F, "u")
        u = T(K)
        v = K.add(u, K.one)
        z = zero_cycle(K, (GM, GM), [(K, (u, v), 1)])
        c = chow_class(z)
        assert c.pairing == dlog_wedge(K, [u, v])
        assert c.j1 == u and c.j2 == v

    def test_characteristic_guards(self):
        F3 = FpField(3)
        K = RatFunField(F3, "u")
        z = zero_cycle(K, (GA, GM), [(K, (K.one, T(K)), 1)])
        with pytest.raises(CharacteristicUnsupported):
            chow_class(z)
        assert chow_class(z, allow_out_of_hypothesis=True).degree == 1
        F2 = FpField(2)
        K2 = RatFunField(F2, "u")
        z2 = zero_cycle(K2, (GA, GA), [(K2, (K2.one, T(K2)), 1)])
        with pytest.raises(CharacteristicUnsupported):
            chow_class(z2)

    def test_divisor_points_rejected(self):
        F = FpField(13)
        K = RatFunField(F, "u")
        with pytest.raises(PointOnDivisor):
            zero_cycle(K, (GA, GM), [(K, (K.one, K.zero), 1)])

    def test_json(self):
        F = FpField(13)
        K = RatFunField(F, "u")
        z = zero_cycle(K, (GA, GM), [(K, (K.one, T(K)), 2)])
        data = z.to_json()
        assert data["terms"][0]["coeff"] == 2
        assert "degree" in chow_class(z).to_json()


class TestRationalEquivalence:
    def setup_method(self):
        self.F = FpField(13)
        self.K = RatFunField(self.F, "u")
        self.R = RatFunField(self.K, "t")

    def mkpoly(self, *ints):
        return tuple(self.K.lift(self.F.from_int(c)) for c in ints)

    def test_boundary_class_vanishes(self):
        R, K = self.R, self.K
        t = T(R)
        # ambient (Ga, Gm): g1 = t regular away from inf, g2 = t unit away
        # from 0, inf; pulled-back modulus (0) + 3(inf)
        gs = (t, t)
        # f == 1 mod (0) + 3(inf), zeros and poles away from 0, inf
        f = R.make(self.mkpoly(-2, 1, 0, 0, -2, 1), self.mkpoly(-2, 0, 0, 0, -2, 1))
        z = rat_equiv_zero(R, K, gs, f, (GA, GM))
        assert chow_class(z).is_zero()

    def test_boundary_class_vanishes_gm_gm(self):
        R, K = self.R, self.K
        t = T(R)
        # modulus for (t, t) is 2(0) + 2(inf); f - 1 = t^2/(t^5 - 2)
        f = R.make(self.mkpoly(-2, 0, 1, 0, 0, 1), self.mkpoly(-2, 0, 0, 0, 0, 1))
        z = rat_equiv_zero(R, K, (t, t), f, (GM, GM))
        c = chow_class(z)
        assert c.degree == 0
        assert c.j1 == K.one and c.j2 == K.one
        assert c.pairing.is_zero()

    def test_congruence_enforced(self):
        R, K = self.R, self.K
        t = T(R)
        f = R.make(self.mkpoly(1, 1), self.mkpoly(2, 1))
        with pytest.raises(CongruenceFailure):
            rat_equiv_zero(R, K, (t, t), f, (GA, GM))


class TestHigherClass:
    def test_point_class_over_q(self):
        Q = QField()
        K = RatFunField(Q, "u")
        u = T(K)
        a = K.lift(Fraction(5))
        out = higher_cycle_class(K, a, [u])
        assert out["composite"] == dlog(K, u).scale(a)
        assert out["bloch_esnault"] == dlog(K, u).scale(K.inv(a))
        assert out["milnor"]["dlog"] == dlog(K, u)

    def test_constant_entries_die_over_q(self):
        Q = QField()
        K = RatFunField(Q, "u")
        out = higher_cycle_class(K, K.lift(Fraction(2)), [K.lift(Fraction(3))])
        assert out["composite"].is_zero()  # dlog of a rational constant

    def test_zero_first_coordinate(self):
        Q = QField()
        K = RatFunField(Q, "u")
        with pytest.raises(ZeroFirstCoordinate):
            higher_cycle_class(K, K.zero, [T(K)])

    def test_characteristic_guard(self):
        K = RatFunField(FpField(5), "u")
        with pytest.raises(CharacteristicUnsupported):
            higher_cycle_class(K, K.one, [T(K)])
        out = higher_cycle_class(K, K.one, [T(K)], allow_out_of_hypothesis=True)
        assert out["composite"] == dlog(K, T(K))

import random
from fractions import Fraction

import pytest

from modsym.curve import INF
from modsym.errors import InsufficientPrecision, ZeroFunction
from modsym.fields import FpField, QField, RatFunField
from modsym.kahler import DifferentialForm, differential, dlog, dlog_wedge
from modsym.localfield import (
    ConductorProfile,
    Laurent,
    conductor,
    conductor_ga,
    conductor_gm,
    conductor_omega,
    expand_at,
    hi_criterion,
    localize_form,
    reciprocity_sum,
    residue_form,
    residue_pairing,
)
from modsym.symcalc import kummer_push_local

from conftest import rand_ratfun


def T(R):
    return R.from_poly((R.below.zero, R.below.one))


class TestLaurent:
    def test_arithmetic_and_inverse(self):
        F = FpField(7)
        one_minus_s = Laurent(F, "s", 0, (F.one, F.from_int(-1)))
        inv = one_minus_s.inv(5)
        # geometric series 1 + s + s^2 + ...
        assert all(inv.coeff(k) == F.one for k in range(5))
        assert (one_minus_s * inv).coeff(0) == F.one
        assert (one_minus_s * inv).coeff(1) == F.zero

    def test_valuation_and_shift(self):
        F = FpField(5)
        l = Laurent(F, "s", -2, (F.one, F.zero, F.from_int(3)))
        assert l.valuation() == -2
        assert l.shift(2).valuation() == 0
        assert (-l + l).valuation() is None

    def test_precision_tracking(self):
        F = FpField(5)
        a = Laurent(F, "s", 0, (F.one, F.one), prec=2)
        b = Laurent(F, "s", 0, (F.one,), prec=4)
        assert (a * b).prec == 2
        with pytest.raises(InsufficientPrecision):
            a.coeff(3)

    def test_json_roundtrip(self):
        F = FpField(5)
        l = Laurent(F, "s", -1, (F.one, F.from_int(2)), prec=3)
        assert Laurent.from_json(F, l.to_json()).coeffs == l.coeffs


class TestExpansion:
    def test_finite_point_anchor(self):
        Q = QField()
        R = RatFunField(Q, "t")
        t = T(R)
        # 1/(1 - t) at t = 0: geometric series
        f = R.inv(R.sub(R.one, t))
        l = expand_at(R, f, (Fraction(0), Fraction(1)), prec=4)
        assert [l.coeff(k) for k in range(4)] == [Fraction(1)] * 4

    def test_infinity_anchor(self):
        Q = QField()
        R = RatFunField(Q, "t")
        t = T(R)
        # t^2 at infinity has valuation -2 in s = 1/t
        l = expand_at(R, R.mul(t, t), INF, prec=2)
        assert l.valuation() == -2
        assert l.coeff(-2) == Fraction(1)

    def test_consistency_with_evaluation(self, rng, F7u):
        from modsym.curve import evaluate_at

        R = RatFunField(FpField(7), "t")
        pt = (R.below.from_int(-2), R.below.one)  # t = 2
        for _ in range(10):
            f = rand_ratfun(R, rng)
            v = evaluate_at(R, f, pt)
            if v is None:
                continue
            assert expand_at(R, f, pt, prec=1).coeff(0) == v


class TestResidues:
    def test_dlog_t_residues(self):
        F = FpField(7)
        K = RatFunField(F, "u")
        R = RatFunField(K, "t")
        t = T(R)
        u = R.lift(T(K))
        omega = dlog(R, t).scale(u)  # u dt/t
        zero_pt = (K.zero, K.one)
        r0 = residue_form(R, omega, zero_pt)
        rinf = residue_form(R, omega, INF)
        du_over_u = DifferentialForm(K, 0, {(): T(K)})
        assert r0 == DifferentialForm(K, 0, {(): T(K)})
        assert (r0 + rinf).is_zero()

    def test_pairing_anchor(self):
        # a = t du/u against f = (t-1)/(t-2) over F7(u)
        F = FpField(7)
        K = RatFunField(F, "u")
        R = RatFunField(K, "t")
        t = T(R)
        a_form = dlog(R, R.lift(T(K))).scale(t)
        f = R.div(
            R.sub(t, R.one), R.sub(t, R.lift(K.lift(F.from_int(2))))
        )
        one_pt = (K.neg(K.one), K.one)
        two_pt = (K.neg(K.lift(F.from_int(2))), K.one)
        u = T(K)
        r1 = residue_pairing(R, a_form, f, one_pt)
        r2 = residue_pairing(R, a_form, f, two_pt)
        rinf = residue_pairing(R, a_form, f, INF)
        assert r1 == dlog(K, u)  # value 1 at t=1
        assert r2 == dlog(K, u).scale(K.neg(K.lift(F.from_int(2))))
        assert (r1 + r2 + rinf).is_zero()
        with pytest.raises(ZeroFunction):
            residue_pairing(R, a_form, R.zero, one_pt)

    def test_reciprocity_random(self, rng):
        F = FpField(7)
        K = RatFunField(F, "u")
        R = RatFunField(K, "t")
        for _ in range(5):
            a = rand_ratfun(R, rng, deg=2)
            f = rand_ratfun(R, rng, deg=2, nonzero=True)
            if R.is_zero(f) or R.is_zero(a):
                continue
            form = dlog(R, R.lift(T(K))).scale(a)
            assert reciprocity_sum(R, form, f).is_zero()


class TestConductors:
    def mk(self, F, lead, coeffs):
        return Laurent(F, "s", lead, tuple(F.from_int(c) for c in coeffs))

    def test_gm_levels(self):
        F = FpField(7)
        assert conductor_gm(self.mk(F, 0, [3])).result == 0
        assert conductor_gm(self.mk(F, -4, [1])).result == 1

    def test_ga_char_zero(self):
        Q = QField()
        l = Laurent(Q, "s", -2, (Fraction(1),))
        assert conductor_ga(l).result == 3
        assert conductor_ga(Laurent(Q, "s", 0, (Fraction(5),))).result == 0

    def test_ga_char_p_frobenius_drop(self):
        # s^{-3} in char 3: Artin-Schreier twisting lowers the level to 2
        F = FpField(3)
        assert conductor_ga(self.mk(F, -3, [1])).result == 2
        # s^{-2} in char 3 stays at level 3
        assert conductor_ga(self.mk(F, -2, [1])).result == 3
        # s^{-9} in char 3 drops twice: level 2
        assert conductor_ga(self.mk(F, -9, [1])).result == 2

    def test_omega_log_pole(self):
        F = FpField(7)
        # ds/s localizes as coefficient s^{-1} on the parameter slot:
        # g ds with v(g) = -1 is log-regular at level 1
        lf = {("s",): self.mk(F, -1, [1])}
        assert conductor_omega(lf, 1).result == 1
        lf2 = {("s",): self.mk(F, -3, [1])}
        assert conductor_omega(lf2, 1).result == 3
        lf3 = {("u",): self.mk(F, -1, [1])}
        assert conductor_omega(lf3, 1).result == 2

    def test_dispatch_and_hi(self):
        F = FpField(7)
        assert conductor("Gm", self.mk(F, 0, [2])).result == 0
        assert hi_criterion("Gm", [self.mk(F, 0, [1]), self.mk(F, 5, [3])])
        assert not hi_criterion("Ga", [Laurent(QField(), "s", -2, (Fraction(1),))])
        prof = conductor("Ga", self.mk(F, -1, [1]))
        assert ConductorProfile(**{k: prof.to_json()[k] for k in ("tag", "characteristic", "result", "witness")}).result == prof.result

    def test_insufficient_precision(self):
        F = FpField(7)
        l = Laurent(F, "s", -2, (F.one,), prec=0)
        with pytest.raises(InsufficientPrecision):
            conductor_ga(l)


class TestLocalizeAndKummer:
    def test_localize_dlog_t_at_zero(self):
        F = FpField(7)
        K = RatFunField(F, "u")
        R = RatFunField(K, "t")
        local = localize_form(R, dlog(R, T(R)), (K.zero, K.one), prec=3)
        (mono, lau), = [(m, l) for m, l in local.items() if not l.is_known_zero()]
        assert "s" in mono
        assert lau.valuation() == -1

    def test_kummer_push_dlog(self):
        # Tr(dlog s') = dlog s under s = s'^e; scalars pick up the degree e
        F = FpField(7)
        local = {("s",): Laurent(F, "s", -1, (F.one,))}
        out = kummer_push_local(local, 3)
        lau = out[("s",)]
        assert lau.valuation() == -1
        assert lau.coeff(-1) == F.one
        scal = kummer_push_local({(): Laurent(F, "s", 0, (F.one,))}, 3)[()]
        assert scal.coeff(0) == F.from_int(3)

    def test_kummer_push_selects_residues(self):
        # c * s'^j ds' survives iff e | j+1
        F = FpField(7)
        local = {("s",): Laurent(F, "s", 0, (F.one, F.from_int(2), F.from_int(3)))}
        out = kummer_push_local(local, 2)
        lau = out[("s",)]
        # only j=1 survives: 2 s'^1 ds' -> 2 s^0 ds
        assert lau.coeff(0) == F.from_int(2)
        assert lau.coeff(-1) == F.zero

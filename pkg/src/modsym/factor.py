"""Univariate factorization over the supported field towers.

Routes:

* finite fields (any finite tower)      -- Cantor-Zassenhaus
* Q                                     -- sympy (lift-based)
* Q(u)                                  -- sympy bivariate over QQ
* F_q(u)                                -- evaluation + Hensel lifting + subset
                                           recombination (sympy has no
                                           multivariate factoring over GF(p))
* separable K[x]/(m) over the above     -- norm-based reduction (resultants)

Multiplicity bookkeeping is characteristic-aware: p-th-power parts are peeled
off via f(t) = g(t^p) and coefficientwise p-th roots.  Anything outside the
table above raises UnsupportedField.
"""

from __future__ import annotations

import json
import random
from fractions import Fraction
from itertools import combinations

import sympy

from .errors import UnsupportedField, ZeroFunction
from .fields import (
    ExtField,
    Field,
    FpField,
    QField,
    RatFunField,
    padd,
    pconst,
    pderiv,
    pdivmod,
    peval,
    pgcd,
    pmod,
    pmonic,
    pmul,
    pneg,
    ppow_mod,
    pscale,
    psub,
    ptrim,
    pxgcd,
    _resultant,
)

_RNG_SEED = 20260824


def _pquo(field, a, b):
    q, r = pdivmod(field, a, b)
    if r:
        raise ArithmeticError("inexact polynomial division")
    return q


def elems(field):
    """Iterate over all elements of a finite field."""
    if isinstance(field, FpField):
        for i in range(field.p):
            yield i
        return
    if isinstance(field, ExtField):
        below = list(elems(field.below))
        idx = [0] * field.deg

        def rec(i):
            if i == field.deg:
                yield ()
                return
            for c in below:
                for rest in rec(i + 1):
                    yield (c,) + rest

        for tup in rec(0):
            yield tup
        return
    raise UnsupportedField("cannot enumerate an infinite field")


# ---------------------------------------------------------------------------
# Cantor-Zassenhaus over finite fields
# ---------------------------------------------------------------------------


def _edf(field, f, d, rng):
    """Split a product of degree-d irreducibles (equal-degree factorization)."""
    n = len(f) - 1
    if n == d:
        return [f]
    q = field.size()
    x_deg = n
    while True:
        a = ptrim(field, [field.rand(rng) for _ in range(x_deg)])
        if len(a) < 2:
            continue
        if q % 2:
            b = ppow_mod(field, a, (q ** d - 1) // 2, f)
            g = pgcd(field, psub(field, b, (field.one,)), f)
        else:
            # char 2: additive trace map splits where the power map cannot
            m = q.bit_length() - 1
            tr = a
            sq = a
            for _ in range(d * m - 1):
                sq = pmod(field, pmul(field, sq, sq), f)
                tr = padd(field, tr, sq)
            g = pgcd(field, tr, f)
        if 1 < len(g) < len(f):
            return _edf(field, g, d, rng) + _edf(field, _pquo(field, f, g), d, rng)


def _cz_factor(field, f):
    """Irreducible factors of a monic squarefree f over a finite field."""
    q = field.size()
    rng = random.Random(_RNG_SEED)
    x = (field.zero, field.one)
    pieces = []
    h = x
    d = 0
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        h = ppow_mod(field, h, q, f)
        g = pgcd(field, psub(field, h, x), f)
        if len(g) > 1:
            pieces.append((g, d))
            f = _pquo(field, f, g)
            h = pmod(field, h, f)
    if len(f) > 1:
        pieces.append((f, len(f) - 1))
    out = []
    for g, d in pieces:
        out.extend(_edf(field, g, d, rng))
    return out


# ---------------------------------------------------------------------------
# sympy bridge (Q and Q(u))
# ---------------------------------------------------------------------------


def _q_factor(field, f):
    x = sympy.Symbol("x")
    poly = sympy.Poly(
        [sympy.Rational(c.numerator, c.denominator) for c in reversed(f)], x, domain="QQ"
    )
    out = []
    for fac, _ in poly.factor_list()[1]:
        cs = tuple(
            Fraction(int(r.p), int(r.q)) for r in reversed(fac.all_coeffs())
        )
        out.append(pmonic(field, cs))
    return out


def _q_ratfun_factor(K, f):
    """Bivariate factorization over Q for f in Q(u)[t], monic squarefree."""
    F = K.below
    t_, u_ = sympy.symbols("t_ u_")

    den = (F.one,)
    for c in f:
        g = pgcd(F, den, c[1])
        den = _pquo(F, pmul(F, den, c[1]), g)
    coeffs_u = [_pquo(F, pmul(F, c[0], den), c[1]) for c in f]

    def upoly_expr(cu):
        return sum(
            sympy.Rational(x.numerator, x.denominator) * u_ ** j
            for j, x in enumerate(cu)
        )

    expr = sum(upoly_expr(cu) * t_ ** i for i, cu in enumerate(coeffs_u))
    out = []
    for fac, _ in sympy.factor_list(sympy.Poly(expr, t_, u_, domain="QQ"))[1]:
        pt = sympy.Poly(fac.as_expr(), t_)
        if pt.degree() == 0:
            continue  # content in u is a unit of Q(u)
        fac_coeffs = []
        for i in range(pt.degree() + 1):
            cu = sympy.Poly(pt.as_expr().coeff(t_, i), u_).all_coeffs()
            tup = tuple(Fraction(int(sympy.Rational(r).p), int(sympy.Rational(r).q)) for r in reversed(cu))
            fac_coeffs.append(K.make(ptrim(F, tup), (F.one,)))
        out.append(pmonic(K, ptrim(K, fac_coeffs)))
    return out


# ---------------------------------------------------------------------------
# bivariate Hensel over finite coefficient fields
# ---------------------------------------------------------------------------


class _SeriesRing(Field):
    """Truncated power series F[[w]]/(w^B).

    A ring, not a field; inv works on units only, which is all the Hensel
    steps need (divisions are by monic polynomials).
    """

    def __init__(self, F, B):
        self.F = F
        self.B = B
        self.char = F.char
        self.zero = ()
        self.one = (F.one,)

    def _cut(self, a):
        return ptrim(self.F, a[: self.B])

    def add(self, a, b):
        return self._cut(padd(self.F, a, b))

    def neg(self, a):
        return pneg(self.F, a)

    def mul(self, a, b):
        return self._cut(pmul(self.F, a, b))

    def inv(self, a):
        F = self.F
        if not a or F.is_zero(a[0]):
            raise ZeroDivisionError("series is not a unit")
        b0 = F.inv(a[0])
        out = [b0]
        for k in range(1, self.B):
            s = F.zero
            for i in range(1, min(k, len(a) - 1) + 1):
                s = F.add(s, F.mul(a[i], out[k - i]))
            out.append(F.neg(F.mul(b0, s)))
        return ptrim(F, out)

    def from_int(self, n):
        c = self.F.from_int(n)
        return () if self.F.is_zero(c) else (c,)


def _taylor_shift(F, poly, c):
    """poly(c + w) as a polynomial in w."""
    lin = ptrim(F, (c, F.one))
    out = ()
    for coeff in reversed(poly):
        out = padd(F, pmul(F, out, lin), pconst(F, coeff))
    return out


def _hensel_pair(W, F, fm, g, h, B):
    """Lift fm = g*h mod w to precision B; g, h monic coprime over F."""
    _, _, tb = pxgcd(F, g, h)

    def emb(poly, k=0):
        return ptrim(
            W, tuple(() if F.is_zero(c) else (F.zero,) * k + (c,) for c in poly)
        )

    G, H = emb(g), emb(h)
    for k in range(1, B):
        e = psub(W, fm, pmul(W, G, H))
        ek = ptrim(F, [s[k] if len(s) > k else F.zero for s in e])
        if not ek:
            continue
        r = pmod(F, pmul(F, ek, tb), g)
        A = _pquo(F, psub(F, ek, pmul(F, r, h)), g)
        G = padd(W, G, emb(r, k))
        H = padd(W, H, emb(A, k))
    return G, H


def _lift_tree(W, F, fm, gs, B):
    if len(gs) == 1:
        return [fm]
    mid = len(gs) // 2
    g = (F.one,)
    for p in gs[:mid]:
        g = pmul(F, g, p)
    h = (F.one,)
    for p in gs[mid:]:
        h = pmul(F, h, p)
    G, H = _hensel_pair(W, F, fm, g, h, B)
    return _lift_tree(W, F, G, gs[:mid], B) + _lift_tree(W, F, H, gs[mid:], B)


def _find_irreducible(F, k, rng):
    while True:
        cand = tuple(F.rand(rng) for _ in range(k)) + (F.one,)
        if is_irreducible(F, cand):
            return cand


def _fq_ratfun_factor(K, f):
    """Factor monic squarefree f in F_q(u)[t] by lifting from u = c.

    If no evaluation point in F_q keeps the input squarefree, points are
    taken in an extension F_{q^k}; candidate factors are projected back.
    """
    F = K.below

    den = (F.one,)
    for c in f:
        g = pgcd(F, den, c[1])
        den = _pquo(F, pmul(F, den, c[1]), g)
    cu = [_pquo(F, pmul(F, c[0], den), c[1]) for c in f]
    content = ()
    for c in cu:
        content = pgcd(F, content, c)
    if len(content) > 1:
        cu = [_pquo(F, c, content) for c in cu]

    du = max(len(c) - 1 for c in cu if c)
    if du == 0:
        const = ptrim(F, [c[0] if c else F.zero for c in cu])
        return [
            tuple(K.lift(x) for x in fac) for fac in _cz_factor(F, pmonic(F, const))
        ]

    rng = random.Random(_RNG_SEED)
    fcur = pmonic(K, ptrim(K, [K.make(c, (F.one,)) for c in cu]))
    for ext_deg in (1, 2, 3, 4):
        if ext_deg == 1:
            E = F
            lift_e = lambda x: x
            proj_e = lambda x: x
        else:
            E = ExtField(F, "~e", _find_irreducible(F, ext_deg, rng))
            lift_e = E.lift
            proj_e = E.in_below_image
        cu_e = [tuple(lift_e(x) for x in c) for c in cu]
        lead = cu_e[-1]
        c0 = None
        for cand in elems(E):
            if E.is_zero(peval(E, lead, cand)):
                continue
            f_at = pmonic(E, ptrim(E, [peval(E, c, cand) for c in cu_e]))
            if len(pgcd(E, f_at, pderiv(E, f_at))) == 1:
                c0 = cand
                break
        if c0 is None:
            continue

        B = 2 * du + 1
        W = _SeriesRing(E, B)
        ser = [W._cut(_taylor_shift(E, c, c0)) for c in cu_e]
        lead_ser = ser[-1]
        inv_lead = W.inv(lead_ser)
        fm = ptrim(W, [W.mul(s, inv_lead) for s in ser])
        gs = _cz_factor(E, pmonic(E, ptrim(E, [peval(E, c, c0) for c in cu_e])))
        if len(gs) == 1:
            return [fcur]
        lifted = _lift_tree(W, E, fm, gs, B)

        neg_c0 = E.neg(c0)
        found = []
        remaining = list(range(len(lifted)))
        size = 1
        while remaining and size <= len(remaining):
            hit = None
            for S in combinations(remaining, size):
                H = (W.one,)
                for i in S:
                    H = pmul(W, H, lifted[i])
                cand = ptrim(W, [W.mul(lead_ser, s) for s in H])
                cand_coeffs = []
                ok = True
                for s in cand:
                    upoly = _taylor_shift(E, s, neg_c0)
                    down = tuple(proj_e(x) for x in upoly)
                    if any(d is None for d in down):
                        ok = False
                        break
                    cand_coeffs.append(K.make(ptrim(F, down), (F.one,)))
                if not ok:
                    continue
                cand_K = ptrim(K, cand_coeffs)
                if len(cand_K) < 2:
                    continue
                cand_K = pmonic(K, cand_K)
                q, r = pdivmod(K, fcur, cand_K)
                if not r:
                    found.append(cand_K)
                    fcur = q
                    hit = set(S)
                    break
            if hit is None:
                size += 1
            else:
                remaining = [i for i in remaining if i not in hit]
        if len(fcur) > 1:
            found.append(fcur)
        return found
    raise UnsupportedField("no good evaluation point in any small extension")


# ---------------------------------------------------------------------------
# norm-based reduction for separable algebraic extensions
# ---------------------------------------------------------------------------


def _shift_candidates(K):
    n = 1
    gens = []
    f = K
    while f is not None:
        if isinstance(f, RatFunField):
            gens.append(K.lift_from(f, f.from_poly((f.below.zero, f.below.one))))
        f = f.below
    while True:
        yield K.from_int(n)
        for g in gens:
            yield K.mul(K.from_int(n), g)
        n += 1
        if n > 40:
            raise UnsupportedField("no squarefree norm found")


def _compose(field, f, g):
    """f(g(t)) for coefficient-tuple polynomials."""
    out = ()
    for c in reversed(f):
        out = padd(field, pmul(field, out, g), pconst(field, c))
    return out


def _ext_factor(L, f):
    """Trager reduction: factor monic squarefree f over L = K[x]/(m)."""
    K = L.below
    R = RatFunField(K, "~t")
    m_R = tuple(R.lift(c) for c in L.minpoly)

    for s in _shift_candidates(K):
        # g(t) = f(t + s*x) over L; then treat x as a free variable for Res_x
        g = _compose(L, f, ptrim(L, (L.make((K.zero, s)), L.one)))
        # transpose into x-major order: coefficient of x^j is a t-poly over K
        g_xmajor = []
        for j in range(L.deg):
            cj = [coeff[j] if j < len(coeff) else K.zero for coeff in g]
            poly_t = ptrim(K, cj)
            g_xmajor.append(R.make(poly_t, (K.one,)))
        g_xmajor = ptrim(R, g_xmajor)
        N = _resultant(R, m_R, g_xmajor)
        if R.is_zero(N):
            continue
        num, dden = N
        if len(dden) != 1:
            continue
        N_poly = pmonic(K, num)
        if len(pgcd(K, N_poly, pderiv(K, N_poly))) > 1:
            continue
        sub_factors = factor_squarefree(K, N_poly)
        out = []
        back = ptrim(L, (L.make((K.zero, K.neg(s))), L.one))  # t - s*x
        for Ni in sub_factors:
            Ni_L = tuple(L.lift(c) for c in Ni)
            cand = pgcd(L, f, _compose(L, Ni_L, back))
            if len(cand) > 1:
                out.append(cand)
        prod = (L.one,)
        for c in out:
            prod = pmul(L, prod, c)
        if prod == f:
            return out
    raise UnsupportedField("norm-based reduction failed")


# ---------------------------------------------------------------------------
# top level
# ---------------------------------------------------------------------------


def factor_squarefree(field, f):
    """Irreducible monic factors of a monic squarefree polynomial."""
    f = pmonic(field, ptrim(field, f))
    if len(f) <= 1:
        return []
    if len(f) == 2:
        return [f]
    if field.size() is not None:
        return _cz_factor(field, f)
    if isinstance(field, QField):
        return _q_factor(field, f)
    if isinstance(field, RatFunField):
        if isinstance(field.below, QField):
            return _q_ratfun_factor(field, f)
        if field.below.size() is not None:
            return _fq_ratfun_factor(field, f)
        raise UnsupportedField("rational functions over an unsupported base")
    if isinstance(field, ExtField) and not field.inseparable:
        return _ext_factor(field, f)
    raise UnsupportedField(f"factorization over {field!r} is not implemented")


def _factor_monic(field, f):
    """dict {irreducible monic factor: multiplicity} for monic f."""
    out = {}
    if len(f) <= 1:
        return out
    p = field.char
    df = pderiv(field, f)
    if p and not df:
        # f = g(t^p); recurse on g and resolve each factor q(t^p)
        g = ptrim(field, [f[i] for i in range(0, len(f), p)])
        for q, m in _factor_monic(field, g).items():
            roots = [field.pth_root(c) for c in q]
            if all(r is not None for r in roots):
                for q2, m2 in _factor_monic(field, ptrim(field, roots)).items():
                    out[q2] = out.get(q2, 0) + m * p * m2
            else:
                qp = tuple(
                    q[i // p] if i % p == 0 else field.zero
                    for i in range(p * (len(q) - 1) + 1)
                )
                out[ptrim(field, qp)] = out.get(ptrim(field, qp), 0) + m
        return out
    g = pgcd(field, f, df)
    sf = _pquo(field, f, g) if len(g) > 1 else f
    rem = f
    for q in factor_squarefree(field, sf):
        m = 0
        while True:
            quo, r = pdivmod(field, rem, q)
            if r:
                break
            rem = quo
            m += 1
        if m:
            out[q] = out.get(q, 0) + m
    for q, m in _factor_monic(field, rem).items():
        out[q] = out.get(q, 0) + m
    return out


def _sort_key(field, poly):
    return (len(poly), json.dumps([field.elem_to_json(c) for c in poly]))


def factor(field, coeffs):
    """Full factorization: (leading coefficient, [(monic irreducible, mult)]).

    The product of the factors times the leading coefficient equals the
    input exactly.
    """
    f = ptrim(field, coeffs)
    if not f:
        raise ZeroFunction("cannot factor the zero polynomial")
    lead = f[-1]
    facs = _factor_monic(field, pmonic(field, f))
    items = sorted(facs.items(), key=lambda kv: _sort_key(field, kv[0]))
    return lead, items


def is_irreducible(field, coeffs):
    f = ptrim(field, coeffs)
    if len(f) < 2:
        return False
    _, facs = factor(field, f)
    return len(facs) == 1 and facs[0][1] == 1

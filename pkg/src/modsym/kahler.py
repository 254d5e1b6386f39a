"""Absolute Kahler differentials and the first jet algebra of a tower field.

Omega^1_{K/Z} is presented on the free basis determined by the tower:
each rational-function step contributes d(var); a separable algebraic step
contributes nothing (dx is solved from the minimal polynomial); a degree-p
root adjunction x^p = y contributes dx and imposes dy = 0, eliminating one
lower basis element.  Towers where this recipe fails to produce a free
module are rejected.

Jets (K tensor_Z K)/I_Delta^2 are stored decomposed as (omega, scalar) with
a tensor a(x)b mapping to (a db, ab); the alternative decomposition
(b da, ab) of the same tensor corresponds to (d(scalar) - omega, scalar).
"""

from __future__ import annotations

from .errors import NotAlgebraicStep, UnsupportedField, ZeroArgument
from .fields import (
    ExtField,
    RatFunField,
    pderiv,
    ptrim,
    trace_norm,
)

_BASIS_CACHE = {}
_ELIM_CACHE = {}


def basis_vars(K):
    """Ordered basis {d(v)} of Omega^1_K, named by tower variables."""
    if K in _BASIS_CACHE:
        return _BASIS_CACHE[K]
    if K.below is None:
        out = ()
    elif isinstance(K, RatFunField):
        out = basis_vars(K.below) + (K.var,)
    elif isinstance(K, ExtField) and not K.inseparable:
        out = basis_vars(K.below)
    else:  # inseparable root x^p = y: dy = 0 eliminates a variable, dx enters
        v0, _ = _elim_data(K)
        out = tuple(v for v in basis_vars(K.below) if v != v0) + (K.var,)
    _BASIS_CACHE[K] = out
    return out


def _elim_data(K):
    """(eliminated variable, lifted coefficients of dy) for an insep step."""
    if K in _ELIM_CACHE:
        return _ELIM_CACHE[K]
    B = K.below
    y = B.neg(K.minpoly[0])
    dy = _d(B, y)
    order = basis_vars(B)
    v0 = None
    for v in reversed(order):
        if v in dy and not B.is_zero(dy[v]):
            v0 = v
            break
    if v0 is None:
        raise UnsupportedField("dy = 0: cannot present Omega of this tower freely")
    lifted = {v: K.lift(w) for v, w in dy.items() if not B.is_zero(w)}
    _ELIM_CACHE[K] = (v0, lifted)
    return v0, lifted


def _collect(K, poly_dicts):
    """Combine per-coefficient differentials into K-elements of Sum w_i gen^i.

    ``poly_dicts`` is a list of dicts over the field below (one per
    coefficient of a polynomial in the generator of K).
    """
    B = K.below
    vs = set()
    for dct in poly_dicts:
        vs |= set(dct)
    out = {}
    for v in vs:
        vec = [dct.get(v, B.zero) for dct in poly_dicts]
        if isinstance(K, RatFunField):
            out[v] = K.make(ptrim(B, vec), (B.one,))
        else:
            out[v] = K.make(ptrim(B, vec))
    return out


def _d(K, a):
    """d(a) as a dict basis-variable -> coefficient in K."""
    if K.below is None:
        return {}
    B = K.below
    if isinstance(K, RatFunField):
        num, den = a

        def dpoly(poly):
            out = _collect(K, [_d(B, c) for c in poly])
            dp = pderiv(B, poly)
            if dp:
                out[K.var] = K.add(out.get(K.var, K.zero), K.make(dp, (B.one,)))
            return out

        dnum, dden = dpoly(num), dpoly(den)
        numK = K.make(num, (B.one,))
        denK = K.make(den, (B.one,))
        den2 = K.mul(denK, denK)
        res = {}
        for v in set(dnum) | set(dden):
            val = K.sub(
                K.mul(dnum.get(v, K.zero), denK), K.mul(numK, dden.get(v, K.zero))
            )
            val = K.div(val, den2)
            if not K.is_zero(val):
                res[v] = val
        return res

    # algebraic step
    res = _collect(K, [_d(B, c) for c in a])
    aprime = pderiv(B, a)
    aprimeK = K.make(aprime) if aprime else K.zero
    if not K.inseparable:
        m = K.minpoly
        mprime = pderiv(B, m)
        mprimeK = K.make(mprime)
        dm = _collect(K, [_d(B, c) for c in m])
        for v, w in dm.items():
            dx_v = K.neg(K.div(w, mprimeK))
            res[v] = K.add(res.get(v, K.zero), K.mul(aprimeK, dx_v))
    else:
        if not K.is_zero(aprimeK):
            res[K.var] = K.add(res.get(K.var, K.zero), aprimeK)
        v0, dy = _elim_data(K)
        c0 = res.pop(v0, K.zero)
        if not K.is_zero(c0):
            inv = K.inv(dy[v0])
            for v, w in dy.items():
                if v == v0:
                    continue
                res[v] = K.sub(res.get(v, K.zero), K.mul(c0, K.mul(w, inv)))
    return {v: w for v, w in res.items() if not K.is_zero(w)}


class DifferentialForm:
    """Element of Omega^n_{K/Z} in the canonical d(variable) wedge basis.

    coords maps sorted tuples of basis-variable names to nonzero coefficients.
    """

    def __init__(self, field, degree, coords=None):
        self.field = field
        self.degree = degree
        self.coords = {m: c for m, c in (coords or {}).items() if not field.is_zero(c)}

    # -- constructors --------------------------------------------------

    @classmethod
    def zero(cls, field, degree):
        return cls(field, degree, {})

    @classmethod
    def scalar(cls, field, a):
        return cls(field, 0, {(): a})

    def __eq__(self, other):
        return (
            isinstance(other, DifferentialForm)
            and other.field == self.field
            and other.degree == self.degree
            and other.coords == self.coords
        )

    def __hash__(self):
        return hash((self.field, self.degree, tuple(sorted(self.coords.items()))))

    def is_zero(self):
        return not self.coords

    def __add__(self, other):
        K = self.field
        assert other.degree == self.degree
        out = dict(self.coords)
        for m, c in other.coords.items():
            out[m] = K.add(out.get(m, K.zero), c)
        return DifferentialForm(K, self.degree, out)

    def __neg__(self):
        K = self.field
        return DifferentialForm(
            K, self.degree, {m: K.neg(c) for m, c in self.coords.items()}
        )

    def __sub__(self, other):
        return self + (-other)

    def scale(self, a):
        K = self.field
        return DifferentialForm(
            K, self.degree, {m: K.mul(a, c) for m, c in self.coords.items()}
        )

    def wedge(self, other):
        K = self.field
        order = {v: i for i, v in enumerate(basis_vars(K))}
        out = {}
        for m1, c1 in self.coords.items():
            for m2, c2 in other.coords.items():
                mono = m1 + m2
                if len(set(mono)) < len(mono):
                    continue
                idx = [order[v] for v in mono]
                sign = _sort_sign(idx)
                if sign == 0:
                    continue
                key = tuple(v for _, v in sorted(zip(idx, mono)))
                c = K.mul(c1, c2)
                if sign < 0:
                    c = K.neg(c)
                out[key] = K.add(out.get(key, K.zero), c)
        return DifferentialForm(K, self.degree + other.degree, out)

    def __repr__(self):
        if not self.coords:
            return "0"
        bits = []
        for m in sorted(self.coords):
            c = self.field.to_str(self.coords[m])
            mono = "^".join(f"d{v}" for v in m) if m else ""
            bits.append(f"({c})" + (f" {mono}" if mono else ""))
        return " + ".join(bits)

    def to_json(self):
        K = self.field
        return [
            {"coeff": K.elem_to_json(self.coords[m]), "basis_monomial": list(m)}
            for m in sorted(self.coords)
        ]

    @classmethod
    def from_json(cls, field, degree, data):
        coords = {}
        for item in data:
            coords[tuple(item["basis_monomial"])] = field.elem_from_json(item["coeff"])
        return cls(field, degree, coords)


def _sort_sign(idx):
    """Sign of the permutation sorting idx; 0 on repeats."""
    sign = 1
    idx = list(idx)
    for i in range(len(idx)):
        for j in range(i + 1, len(idx)):
            if idx[i] == idx[j]:
                return 0
            if idx[i] > idx[j]:
                idx[i], idx[j] = idx[j], idx[i]
                sign = -sign
    return sign


def differential(K, a):
    """d(a) in Omega^1_{K/Z}."""
    return DifferentialForm(K, 1, {(v,): c for v, c in _d(K, a).items()})


def d_form(form):
    """Exterior derivative of a reduced form."""
    K = form.field
    out = DifferentialForm.zero(K, form.degree + 1)
    for m, c in form.coords.items():
        mono = DifferentialForm(K, form.degree, {m: K.one})
        out = out + differential(K, c).wedge(mono)
    return out


def dlog(K, b):
    if K.is_zero(b):
        raise ZeroArgument("dlog of zero")
    return differential(K, b).scale(K.inv(b))


def dlog_wedge(K, bs):
    """dlog(b1) ^ ... ^ dlog(bn)."""
    out = DifferentialForm(K, 0, {(): K.one})
    for b in bs:
        out = out.wedge(dlog(K, b))
    return out


# ---------------------------------------------------------------------------
# transfers
# ---------------------------------------------------------------------------


def trace_form(L, form):
    """Push a form along the top algebraic step L/K."""
    if not isinstance(L, ExtField):
        raise NotAlgebraicStep("trace of forms requires an algebraic top step")
    K = L.below
    if not L.inseparable:
        # separable: the basis is unchanged; trace coefficient-wise
        out = {}
        for m, c in form.coords.items():
            out[m] = trace_norm(L, c)[0]
        return DifferentialForm(K, form.degree, out)

    # purely inseparable L = K[x]/(x^p - y):
    # no dx in the monomial  -> Tr(c)·mono = 0  (the trace map L -> K is zero)
    # dx present             -> pick the x^{p-1} coefficient, dx -> dy
    p = L.char
    y = K.neg(L.minpoly[0])
    dy = differential(K, y)
    xvar = L.var
    order = {v: i for i, v in enumerate(basis_vars(L))}
    out = DifferentialForm.zero(K, form.degree)
    for m, c in form.coords.items():
        if xvar not in m:
            continue
        pos = m.index(xvar)
        rest = tuple(v for v in m if v != xvar)
        # move dx to the front of the wedge
        sign = -1 if pos % 2 else 1
        a = c[p - 1]  # x^{p-1} component, an element of K
        if K.is_zero(a):
            continue
        if sign < 0:
            a = K.neg(a)
        rest_form = DifferentialForm(K, len(rest), {rest: K.one})
        out = out + dy.scale(a).wedge(rest_form)
    _ = order
    return out


class JetElement:
    """(omega, scalar) decomposition of a first-order jet."""

    def __init__(self, field, omega, scalar):
        assert omega.degree == 1
        self.field = field
        self.omega = omega
        self.scalar = scalar

    def __eq__(self, other):
        return (
            isinstance(other, JetElement)
            and other.field == self.field
            and other.omega == self.omega
            and other.scalar == self.scalar
        )

    def __hash__(self):
        return hash((self.field, self.omega, self.scalar))

    def __add__(self, other):
        return JetElement(
            self.field,
            self.omega + other.omega,
            self.field.add(self.scalar, other.scalar),
        )

    def __neg__(self):
        return JetElement(self.field, -self.omega, self.field.neg(self.scalar))

    def __sub__(self, other):
        return self + (-other)

    def scale(self, n):
        c = self.field.from_int(n)
        return JetElement(self.field, self.omega.scale(c), self.field.mul(c, self.scalar))

    def is_zero(self):
        return self.omega.is_zero() and self.field.is_zero(self.scalar)

    def __repr__(self):
        return f"({self.omega!r} ; {self.field.to_str(self.scalar)})"

    def to_json(self):
        return {
            "omega": self.omega.to_json(),
            "scalar": self.field.elem_to_json(self.scalar),
        }

    @classmethod
    def from_json(cls, field, data):
        return cls(
            field,
            DifferentialForm.from_json(field, 1, data["omega"]),
            field.elem_from_json(data["scalar"]),
        )

    @classmethod
    def zero(cls, field):
        return cls(field, DifferentialForm.zero(field, 1), field.zero)


def jet_from_tensor(K, a, b):
    """a tensor b  ->  (a db, ab)."""
    return JetElement(K, differential(K, b).scale(a), K.mul(a, b))


def jet_from_tensor_alt(K, a, b):
    """The (b da, ab) decomposition, rewritten into standard coordinates.

    (b da) in the alternative split corresponds to d(ab) - b da = a db in
    the standard one, so the two constructions agree on the nose; kept as a
    distinct route for the transfer-coincidence checks.
    """
    omega_alt = differential(K, a).scale(b)
    scalar = K.mul(a, b)
    return JetElement(K, differential(K, scalar) - omega_alt, scalar)


def trace_jet(L, jet, route="phi"):
    """Push a jet along the top algebraic step, via either decomposition.

    route="phi": componentwise (trace_form, trace).  route="phi_prime":
    convert to the alternative split, push componentwise, convert back.
    """
    if not isinstance(L, ExtField):
        raise NotAlgebraicStep("jet transfer requires an algebraic top step")
    K = L.below
    tr_scalar = trace_norm(L, jet.scalar)[0]
    if route == "phi":
        return JetElement(K, trace_form(L, jet.omega), tr_scalar)
    if route == "phi_prime":
        omega_alt = differential(L, jet.scalar) - jet.omega
        tr_alt = trace_form(L, omega_alt)
        return JetElement(K, differential(K, tr_scalar) - tr_alt, tr_scalar)
    raise ValueError(f"unknown route {route!r}")

"""Laurent-series local fields, residue symbols, and motivic conductors.

Expansions at closed points of P^1 use t = theta + s (s the uniformizer) at
finite separable points and s = 1/t at infinity; the residue at infinity is
computed in s with ds, which is the convention making the full reciprocity
sum vanish.  Conductors implement the logarithmic pole filtration for
Omega^n (with Omega^0 = Ga in characteristic 0) and the Frobenius pole
filtration for Ga in characteristic p.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .curve import INF, residue_coordinate, residue_field
from .errors import (
    InseparableResiduePoint,
    InsufficientPrecision,
    ZeroDivisionInField,
    ZeroFunction,
)
from .fields import pderiv, ptrim, trace_norm
from .kahler import DifferentialForm, basis_vars, differential, dlog

_DEFAULT_PREC = 16


class Laurent:
    """Truncated Laurent series over a residue field.

    ``coeffs[i]`` is the coefficient of var^(lead+i); exponents below
    ``prec`` are exact.  ``prec=None`` means the element is an exact Laurent
    polynomial.
    """

    __slots__ = ("F", "var", "lead", "coeffs", "prec")

    def __init__(self, F, var, lead, coeffs, prec=None):
        coeffs = list(coeffs)
        while coeffs and F.is_zero(coeffs[0]):
            coeffs.pop(0)
            lead += 1
        if prec is None:
            while coeffs and F.is_zero(coeffs[-1]):
                coeffs.pop()
        else:
            del coeffs[max(0, prec - lead):]
        self.F = F
        self.var = var
        self.lead = lead
        self.coeffs = tuple(coeffs)
        self.prec = prec

    @property
    def exact(self):
        return self.prec is None

    def coeff(self, e):
        if not self.exact and e >= self.prec:
            raise InsufficientPrecision(f"coefficient of {self.var}^{e} unknown")
        i = e - self.lead
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.F.zero

    def is_known_zero(self):
        return self.exact and not self.coeffs

    def valuation(self):
        if not self.coeffs:
            if self.exact:
                return None  # the zero element
            raise InsufficientPrecision("no nonzero coefficient within precision")
        return self.lead

    def _prec_min(self, other):
        if self.prec is None:
            return other.prec
        if other.prec is None:
            return self.prec
        return min(self.prec, other.prec)

    def __add__(self, other):
        F = self.F
        prec = self._prec_min(other)
        lo = min(self.lead, other.lead) if (self.coeffs or other.coeffs) else 0
        hi = max(self.lead + len(self.coeffs), other.lead + len(other.coeffs))
        if prec is not None:
            hi = min(hi, prec) if hi > prec else hi
        out = [
            F.add(self.coeff_raw(e), other.coeff_raw(e)) for e in range(lo, hi)
        ]
        return Laurent(F, self.var, lo, out, prec)

    def coeff_raw(self, e):
        i = e - self.lead
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.F.zero

    def __neg__(self):
        return Laurent(
            self.F, self.var, self.lead, [self.F.neg(c) for c in self.coeffs], self.prec
        )

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        F = self.F
        if self.exact and other.exact:
            prec = None
            hi = self.lead + other.lead + len(self.coeffs) + len(other.coeffs)
        else:
            p1 = self.prec if self.prec is not None else 10 ** 9
            p2 = other.prec if other.prec is not None else 10 ** 9
            prec = min(self.lead + p2, other.lead + p1)
            hi = prec
        lo = self.lead + other.lead
        if not self.coeffs or not other.coeffs:
            return Laurent(F, self.var, 0, [], prec)
        out = [F.zero] * max(0, hi - lo)
        for i, a in enumerate(self.coeffs):
            if F.is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                k = i + j
                if k >= len(out):
                    break
                out[k] = F.add(out[k], F.mul(a, b))
        return Laurent(F, self.var, lo, out, prec)

    def scale(self, c):
        return Laurent(
            self.F, self.var, self.lead, [self.F.mul(c, x) for x in self.coeffs], self.prec
        )

    def shift(self, k):
        return Laurent(self.F, self.var, self.lead + k, self.coeffs,
                       None if self.prec is None else self.prec + k)

    def inv(self, prec_target):
        """Inverse, exact below the absolute exponent bound prec_target."""
        F = self.F
        v = self.valuation()
        if v is None:
            raise ZeroDivisionInField("inverse of the zero series")
        u = self.coeffs
        nterms = prec_target + v
        if nterms <= 0:
            return Laurent(F, self.var, -v, [], prec_target)
        b0 = F.inv(u[0])
        out = [b0]
        for k in range(1, nterms):
            s = F.zero
            for i in range(1, min(k, len(u) - 1) + 1):
                s = F.add(s, F.mul(u[i], out[k - i]))
            out.append(F.neg(F.mul(b0, s)))
        prec = None if (self.exact and len(u) == 1) else prec_target
        return Laurent(F, self.var, -v, out, prec)

    def truncate(self, prec):
        if self.exact or self.prec > prec:
            return Laurent(self.F, self.var, self.lead, self.coeffs, prec)
        return self

    def __repr__(self):
        bits = []
        for i, c in enumerate(self.coeffs):
            if self.F.is_zero(c):
                continue
            e = self.lead + i
            cs = self.F.to_str(c)
            if e == 0:
                bits.append(cs)
            else:
                head = "" if cs == "1" else f"{cs}*"
                bits.append(f"{head}{self.var}" + (f"^{e}" if e != 1 else ""))
        tail = "" if self.exact else f" + O({self.var}^{self.prec})"
        return (" + ".join(bits) if bits else "0") + tail

    def to_json(self):
        return {
            "var": self.var,
            "lead_exp": self.lead,
            "coeffs": [self.F.elem_to_json(c) for c in self.coeffs],
            "precision": self.prec,
            "exact": self.exact,
        }

    @classmethod
    def from_json(cls, F, data):
        return cls(
            F,
            data["var"],
            int(data["lead_exp"]),
            [F.elem_from_json(c) for c in data["coeffs"]],
            None if data.get("exact") else int(data["precision"]),
        )


def _taylor(F, poly, c):
    """poly(c + s) as a coefficient tuple in s over F."""
    out = ()
    from .fields import padd, pmul, pconst

    lin = ptrim(F, (c, F.one))
    for coeff in reversed(poly):
        out = padd(F, pmul(F, out, lin), pconst(F, coeff))
    return out


def point_is_separable(R, point):
    if point == INF or len(point) == 2:
        return True
    return bool(pderiv(R.below, point))


def expand_at(R, f, point, prec=_DEFAULT_PREC):
    """Truncated Laurent expansion of f in K(t) at a closed point of P^1."""
    K = R.below
    if not point_is_separable(R, point):
        raise InseparableResiduePoint("residue field is inseparable over the base")
    num, den = f
    if not num:
        return Laurent(K, "s", 0, [])
    if point == INF:
        Kx = K
        ln = Laurent(K, "s", -(len(num) - 1), tuple(reversed(num)))
        ld = Laurent(K, "s", -(len(den) - 1), tuple(reversed(den)))
    else:
        Kx = residue_field(R, point)
        if len(point) == 2:
            theta = K.neg(point[0])
            lift = lambda c: c
        else:
            theta = Kx.gen()
            lift = Kx.lift
        ln = Laurent(Kx, "s", 0, _taylor(Kx, tuple(lift(c) for c in num), theta))
        ld = Laurent(Kx, "s", 0, _taylor(Kx, tuple(lift(c) for c in den), theta))
    return ln * ld.inv(prec - ln.valuation())


# ---------------------------------------------------------------------------
# residues and reciprocity
# ---------------------------------------------------------------------------


def residue_form(R, form, point, prec=None):
    """Res_x of a form over K(t): s^{-1} ds coefficient, traced down to K.

    Only monomials containing dt contribute: dt = ds at finite points
    (t = theta + s) and dt = -s^{-2} ds at infinity.
    """
    K = R.below
    tvar = R.var
    Kx = K if point == INF or len(point) == 2 else residue_field(R, point)
    # only one coefficient of the expansion is read; keep precision minimal
    need = 3 if point == INF else 1
    if prec is not None:
        need = max(need, prec)
    out = DifferentialForm.zero(K, form.degree - 1)
    for m, c in form.coords.items():
        if tvar not in m:
            continue
        pos = m.index(tvar)
        rest = tuple(v for v in m if v != tvar)
        # move dt to the last slot: (a, f) = Res(a ^ dlog f) specializes to
        # v_x(f) * a(x) for regular a only with the parameter form trailing
        sign = -1 if (len(m) - 1 - pos) % 2 else 1
        lau = expand_at(R, c, point, prec=need)
        if point == INF:
            r = Kx.neg(lau.coeff(1))  # (c ds part) = -c s^{-2} ds
        else:
            r = lau.coeff(-1)
        if sign < 0:
            r = Kx.neg(r)
        tr = r if Kx == K else trace_norm(Kx, r)[0]
        if K.is_zero(tr):
            continue
        out = out + DifferentialForm(K, len(rest), {rest: tr})
    return out


def residue_pairing(R, a_form, f, point, prec=None):
    """(a, f)_x = Res_x(a dlog f), a local symbol value in Omega^q_K."""
    if R.is_zero(f):
        raise ZeroFunction("dlog of zero in the local symbol")
    return residue_form(R, a_form.wedge(dlog(R, f)), point, prec=prec)


def _irregular_points(R, form):
    from . import factor as _factor

    pts = {INF}
    for c in form.coords.values():
        for poly, _ in _factor.factor(R.below, c[1])[1]:
            pts.add(poly)
    return pts


def reciprocity_sum(R, a_form, f, prec=None):
    """Sum of residue pairings over all closed points; contract: zero."""
    omega = a_form.wedge(dlog(R, f))
    K = R.below
    total = DifferentialForm.zero(K, omega.degree - 1)
    for point in _irregular_points(R, omega):
        total = total + residue_form(R, omega, point, prec=prec)
    return total


# ---------------------------------------------------------------------------
# conductors
# ---------------------------------------------------------------------------


@dataclass
class ConductorProfile:
    tag: str
    characteristic: int
    result: int
    witness: dict = dc_field(default_factory=dict)

    def to_json(self):
        return {
            "tag": self.tag,
            "characteristic": self.characteristic,
            "result": self.result,
            "witness": self.witness,
        }


def _require_resolved(lau):
    if not lau.exact and lau.prec < 1:
        raise InsufficientPrecision("pole part not fully resolved")


def conductor_gm(lau):
    """0 for units, 1 otherwise."""
    _require_resolved(lau)
    v = lau.valuation()
    if v is None:
        raise ZeroFunction("Gm sections are nonzero")
    r = 0 if v == 0 else 1
    return ConductorProfile("Gm", lau.F.char, r, {"valuation": v})


def _frob_level(F, c, e, p):
    """Minimal r >= 2 admitting a Frobenius witness for c*t^e, plus the witness."""
    r = 2
    while True:
        m = r - 1 if r % p else r
        j = 0
        ee = e
        cc = c
        while True:
            if ee >= -m:
                return r, {"j": j, "exp": ee}
            if ee % p:
                break
            root = F.pth_root(cc)
            if root is None:
                break
            ee //= p
            cc = root
            j += 1
        r += 1


def conductor_ga(lau):
    """Minimal pole level of a Ga-section of a Laurent local field."""
    _require_resolved(lau)
    F = lau.F
    p = F.char
    v = lau.valuation()
    if v is None or v >= 0:
        return ConductorProfile("Ga", p, 0, {})
    if p == 0:
        return ConductorProfile("Ga", 0, 1 - v, {"valuation": v})
    # char p: levels are monomial-wise via the Frobenius filtration
    best = 0
    witness = {}
    for i, c in enumerate(lau.coeffs):
        e = lau.lead + i
        if e >= 0:
            break
        if F.is_zero(c):
            continue
        r, w = _frob_level(F, c, e, p)
        if r > best:
            best = r
        witness[str(e)] = w
    return ConductorProfile("Ga", p, best, witness)


def conductor_omega(local_form, n):
    """Pole level of a form with Laurent coefficients, log filtration.

    ``local_form`` maps monomial keys to Laurent coefficients; the key is a
    tuple whose entries are residue-field basis variables, with the local
    parameter's own differential written as the Laurent variable name.
    """
    r = 0
    detail = {}
    for mono, lau in local_form.items():
        _require_resolved(lau)
        v = lau.valuation()
        if v is None:
            continue
        if lau.var in mono:
            # g dpi = (g pi) dlog pi: log-regular when v(g) >= -r, r >= 1
            need = 0 if v >= 0 else -v
        else:
            need = 0 if v >= 0 else 1 - v
        detail["^".join(mono) or "1"] = {"valuation": v, "level": need}
        r = max(r, need)
    char = next(iter(local_form.values())).F.char if local_form else 0
    return ConductorProfile(f"Omega({n})", char, r, detail)


def conductor(tag, data):
    if tag == "Gm":
        return conductor_gm(data)
    if tag == "Ga":
        return conductor_ga(data)
    if tag.startswith("Omega"):
        n = int(tag[tag.index("(") + 1 : -1]) if "(" in tag else 1
        if isinstance(data, Laurent):
            return conductor_omega({(): data}, n)
        return conductor_omega(data, n)
    raise ValueError(f"unknown conductor tag {tag!r}")


def hi_criterion(tag, samples):
    """True iff every sampled section has conductor at most one."""
    return all(conductor(tag, s).result <= 1 for s in samples)


# ---------------------------------------------------------------------------
# localization of global forms
# ---------------------------------------------------------------------------


def localize_form(R, form, point, prec=_DEFAULT_PREC):
    """Expand a form over K(t) at a point into Laurent-coefficient data.

    Returns {monomial: Laurent} where dt has been rewritten in terms of the
    local parameter: ds at finite points (theta constant for rational
    points), -s^{-2} ds at infinity.  Only rational points and infinity are
    supported, which keeps the residue-field basis equal to that of K.
    """
    K = R.below
    if point != INF and len(point) != 2:
        raise InseparableResiduePoint(
            "localized conductor data only at rational points and infinity"
        )
    out = {}
    svar = "s"

    def put(mono, lau):
        if mono in out:
            out[mono] = out[mono] + lau
        else:
            out[mono] = lau

    for m, c in form.coords.items():
        lau = expand_at(R, c, point, prec=prec)
        if R.var not in m:
            put(m, lau)
            continue
        pos = m.index(R.var)
        rest = tuple(v for v in m if v != R.var)
        sign = -1 if pos % 2 else 1
        if point == INF:
            lau = lau.shift(-2)
            lau = -lau
        if sign < 0:
            lau = -lau
        key = rest[:0] + (svar,) + rest
        put(key, lau)
    return {m: l for m, l in out.items() if not l.is_known_zero()}

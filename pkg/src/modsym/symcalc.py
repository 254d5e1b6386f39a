"""Symbol groups on field towers: generators, relations, evaluation maps.

A symbol [a_1,...,a_n]_{L/K} carries per-slot sheaf tags (Z, Ga, Gm,
Omega(n), KM(n)).  Two relation families are implemented:

* projection-formula rewriting (all slots but one defined below L: push the
  remaining slot down by its tag's transfer), and
* curve relations: for f = 1 mod D on the projective line, the weighted sum
  of evaluations of the slot sections at the zeros and poles of f.

The quotient group has no canonical form; equality is certified through the
evaluation homomorphisms onto differential forms, jets, and Milnor data,
which are faithful in the characteristics where the corresponding
isomorphism theorems hold (guarded: jets need char != 2, forms char not in
{2, 3, 5}).
"""

from __future__ import annotations

from dataclasses import dataclass

from . import factor as _factor
from .curve import (
    INF,
    Divisor,
    check_congruence,
    combine_divisors,
    divisor_of,
    evaluate_at,
    residue_field,
)
from .errors import (
    CharacteristicUnsupported,
    CongruenceFailure,
    ConductorCertificateFailure,
    NoEvaluationMap,
    UnsupportedField,
    ZeroArgument,
)
from .fields import ExtField, field_to_descriptor, make_field, trace_norm
from .kahler import (
    DifferentialForm,
    JetElement,
    differential,
    dlog_wedge,
    jet_from_tensor,
    trace_form,
    trace_jet,
)
from .localfield import Laurent, conductor_ga, conductor_gm, conductor_omega, expand_at, localize_form

SUM = "sum"
MAX = "max"


def canonical_modulus(tag, R):
    """The modulus of the representing pair on P^1: 2(inf) for Ga, (0)+(inf) for Gm."""
    K = R.below
    zero_pt = (K.zero, K.one)
    if tag == "Ga":
        return Divisor(R, {INF: 2})
    if tag == "Gm":
        return Divisor(R, {zero_pt: 1, INF: 1})
    raise NoEvaluationMap(f"no canonical modulus pair for tag {tag!r}")


def _check_section(tag, field, value):
    if tag == "Gm" and field.is_zero(value):
        raise ZeroArgument("Gm sections are nonzero")


@dataclass(frozen=True)
class SymbolTerm:
    coeff: int
    field: object  # the tower L the entries live in
    tags: tuple
    values: tuple

    def key(self):
        return (self.field, self.tags, self.values)


class SymbolSum:
    """Z-linear combination of symbols over extensions of a common base."""

    def __init__(self, base, convention=SUM, terms=()):
        self.base = base
        self.convention = convention
        merged = {}
        order = []
        for t in terms:
            if t.coeff == 0:
                continue
            k = t.key()
            if k in merged:
                merged[k] = merged[k]._replace_coeff(merged[k].coeff + t.coeff)
            else:
                merged[k] = t
                order.append(k)
        self.terms = tuple(merged[k] for k in order if merged[k].coeff != 0)

    def __add__(self, other):
        assert other.base == self.base and other.convention == self.convention
        return SymbolSum(self.base, self.convention, self.terms + other.terms)

    def __neg__(self):
        return SymbolSum(
            self.base,
            self.convention,
            tuple(t._replace_coeff(-t.coeff) for t in self.terms),
        )

    def __sub__(self, other):
        return self + (-other)

    def is_empty(self):
        return not self.terms

    def to_json(self):
        out = []
        for t in self.terms:
            out.append(
                {
                    "coeff": t.coeff,
                    "ext": field_to_descriptor(t.field),
                    "entries": [
                        {"tag": tag, "value": _value_to_json(t.field, tag, v)}
                        for tag, v in zip(t.tags, t.values)
                    ],
                }
            )
        return {"convention": self.convention, "terms": out}

    @classmethod
    def from_json(cls, base, data):
        terms = []
        for t in data["terms"]:
            L = make_field(t["ext"])
            tags = tuple(e["tag"] for e in t["entries"])
            values = tuple(
                _value_from_json(L, e["tag"], e["value"]) for e in t["entries"]
            )
            terms.append(SymbolTerm(int(t["coeff"]), L, tags, values))
        return cls(base, data.get("convention", SUM), terms)


def _value_to_json(L, tag, v):
    if tag == "Z":
        return int(v)
    return L.elem_to_json(v)


def _value_from_json(L, tag, v):
    if tag == "Z":
        return int(v)
    return L.elem_from_json(v)


def _term(coeff, field, tags, values):
    for tag, v in zip(tags, values):
        _check_section(tag, field, v)
    return SymbolTerm(coeff, field, tuple(tags), tuple(values))


def symbol(base, coeff, field, tags, values, convention=SUM):
    return SymbolSum(base, convention, [_term(coeff, field, tags, values)])


def _replace_coeff(self, c):
    return SymbolTerm(c, self.field, self.tags, self.values)


SymbolTerm._replace_coeff = _replace_coeff


# ---------------------------------------------------------------------------
# (R1): projection-formula rewriting
# ---------------------------------------------------------------------------


def _push_value(L, tag, v):
    """Transfer a single slot down the top step of L."""
    if tag == "Ga":
        return trace_norm(L, v)[0]
    if tag == "Gm":
        return trace_norm(L, v)[1]
    if tag == "Z":
        return v  # pushed through the coefficient instead
    raise NoEvaluationMap(f"no transfer implemented for tag {tag!r}")


def _try_push(term, base):
    L = term.field
    if L == base or not isinstance(L, ExtField):
        return None
    B = L.below
    images = []
    stranger = None
    for i, (tag, v) in enumerate(zip(term.tags, term.values)):
        if tag == "Z":
            images.append(v)
            continue
        below = L.in_below_image(v)
        if below is None:
            if stranger is not None:
                return None  # two slots genuinely upstairs: (R1) does not apply
            stranger = i
            images.append(None)
        else:
            images.append(below)
    if stranger is None:
        stranger = next((i for i, t in enumerate(term.tags) if t != "Z"), None)
        if stranger is None:
            # all slots are Z: push through the degree
            return SymbolTerm(term.coeff * L.deg, B, term.tags, term.values)
        images[stranger] = None
    values = list(images)
    v = term.values[stranger]
    if images[stranger] is not None:
        v = L.lift(images[stranger])
    values[stranger] = _push_value(L, term.tags[stranger], v)
    if term.tags[stranger] == "Gm" and B.is_zero(values[stranger]):
        return None
    return SymbolTerm(term.coeff, B, term.tags, tuple(values))


def r1_reduce(s):
    """Greedy projection-formula rewriting toward the base; idempotent."""
    out = []
    for term in s.terms:
        cur = term
        while True:
            nxt = _try_push(cur, s.base)
            if nxt is None:
                break
            cur = nxt
        out.append(cur)
    return SymbolSum(s.base, s.convention, out)


# ---------------------------------------------------------------------------
# (R2): curve relations
# ---------------------------------------------------------------------------


@dataclass
class RelationInstance:
    R: object  # RatFunField(L, t): the curve P^1_L
    base: object  # the symbol base K
    f: object
    sections: tuple  # ((tag, g, D), ...)
    convention: str
    symbol_sum: SymbolSum


def _local_conductor(R, tag, g, point):
    if tag == "Z":
        return 0
    from .curve import valuation_at

    if tag == "Gm":
        return 0 if valuation_at(R, g, point) == 0 else 1
    if tag == "Ga":
        if R.is_zero(g) or valuation_at(R, g, point) >= 0:
            return 0
        return conductor_ga(expand_at(R, g, point, prec=1)).result
    raise NoEvaluationMap(f"no conductor hook for tag {tag!r}")


def _certify_section(R, tag, g, D):
    """Every pole/zero level of g must be covered by its declared divisor."""
    if tag == "Z":
        return
    if tag == "Gm":
        for point, v in divisor_of(R, g).support.items():
            if v != 0 and D[point] < 1:
                raise ConductorCertificateFailure(
                    f"Gm section not a unit outside the divisor at {point!r}"
                )
        return
    if tag == "Ga":
        num, den = g
        pole_pts = [p for p, m in _factor.factor(R.below, den)[1]]
        if len(num) > len(den):
            pole_pts.append(INF)
        for point in set(pole_pts) | set(D.support):
            c = _local_conductor(R, tag, g, point)
            if c > D[point]:
                raise ConductorCertificateFailure(
                    f"Ga conductor {c} exceeds declared level {D[point]} at {point!r}"
                )
        return
    raise NoEvaluationMap(f"unsupported section tag {tag!r}")


def make_relation(R, base, f, sections, convention=SUM):
    """Build the weighted evaluation sum of a curve relation, fully certified.

    ``R`` is RatFunField(L, t) for a finite extension L of ``base``;
    ``sections`` is a list of (tag, g, D) with g in R and D an effective
    divisor bounding g's local conductors.
    """
    divisors = [D for _, _, D in sections]
    D_total = combine_divisors(divisors, convention)
    if not check_congruence(R, f, D_total):
        raise CongruenceFailure("f is not congruent to 1 modulo the combined divisor")
    for tag, g, D in sections:
        _certify_section(R, tag, g, D)

    L = R.below
    tags = tuple(tag for tag, _, _ in sections)
    terms = []
    for point, v in divisor_of(R, f).support.items():
        if v == 0:
            continue
        assert D_total[point] == 0, "zeros/poles of f must avoid the modulus"
        Kx = residue_field(R, point)
        values = []
        for tag, g, _ in sections:
            val = evaluate_at(R, g, point)
            if val is None:
                raise ConductorCertificateFailure(
                    f"section has a pole at an evaluation point {point!r}"
                )
            values.append(val)
        terms.append(_term(v, Kx, tags, values))
    ss = SymbolSum(base, convention, terms)
    return RelationInstance(R, base, f, tuple(sections), convention, ss)


# ---------------------------------------------------------------------------
# evaluation homomorphisms
# ---------------------------------------------------------------------------


def _guard_char(base, forbidden, allow_out_of_hypothesis):
    if base.char in forbidden and not allow_out_of_hypothesis:
        raise CharacteristicUnsupported(
            f"characteristic {base.char} outside theorem hypotheses {sorted(forbidden)}"
        )


def _trace_chain(L, base):
    chain = []
    f = L
    while f != base:
        if not isinstance(f, ExtField):
            raise UnsupportedField("term field is not a tower of algebraic steps")
        chain.append(f)
        f = f.below
    return chain


def eval_omega(s, allow_out_of_hypothesis=False):
    """[a, b_1,...,b_n] -> Tr(a dlog b_1 ^ ... ^ dlog b_n) in Omega^n."""
    _guard_char(s.base, {2, 3, 5}, allow_out_of_hypothesis)
    n = None
    total = None
    for term in s.terms:
        if not (term.tags and term.tags[0] == "Ga" and all(t == "Gm" for t in term.tags[1:])):
            raise NoEvaluationMap("omega evaluation needs tags (Ga, Gm, ..., Gm)")
        L = term.field
        a = term.values[0]
        form = dlog_wedge(L, term.values[1:]).scale(a)
        for step in _trace_chain(L, s.base):
            form = trace_form(step, form)
        form = form.scale(s.base.from_int(term.coeff))
        if total is None:
            n = form.degree
            total = form
        else:
            assert form.degree == n
            total = total + form
    if total is None:
        arity = 1
        return DifferentialForm.zero(s.base, arity - 1)
    return total


def eval_jet(s, allow_out_of_hypothesis=False):
    """[a, b] with tags (Ga, Ga) -> transferred jet of a tensor b."""
    _guard_char(s.base, {2}, allow_out_of_hypothesis)
    total = JetElement.zero(s.base)
    for term in s.terms:
        if term.tags != ("Ga", "Ga"):
            raise NoEvaluationMap("jet evaluation needs tags (Ga, Ga)")
        L = term.field
        jet = jet_from_tensor(L, term.values[0], term.values[1])
        for step in _trace_chain(L, s.base):
            jet = trace_jet(step, jet)
        total = total + jet.scale(term.coeff)
    return total


def jet_section(base, a, b):
    """The section a tensor b -> [a, b]_K of the jet evaluation."""
    return symbol(base, 1, base, ("Ga", "Ga"), (a, b))


def omega_section(base, a, bs):
    """a dlog b_1...dlog b_n -> [a, b_1, ..., b_n]_K."""
    return symbol(base, 1, base, ("Ga",) + ("Gm",) * len(bs), (a,) + tuple(bs))


# -- Milnor data ------------------------------------------------------------


def _tame_expand(K, pi_point, entries):
    """Multilinear expansion into (coeff, [('pi',) | ('u', unit)]) pieces."""
    from .curve import valuation_at

    pieces = [(1, [])]
    for b in entries:
        e = valuation_at(K, b, pi_point)
        if pi_point == INF:
            pi = K.inv(K.from_poly((K.below.zero, K.below.one)))
        else:
            pi = K.make(pi_point, (K.below.one,))
        unit = K.div(b, K.pow(pi, e))
        new = []
        for coeff, slots in pieces:
            if e != 0:
                new.append((coeff * e, slots + [("pi",)]))
            if not K.is_one(unit):
                new.append((coeff, slots + [("u", unit)]))
            if e == 0 and K.is_one(unit):
                # slot is exactly 1: the whole symbol dies
                pass
        pieces = new
    return pieces


def _tame_normalize(K, pieces):
    """Reduce multiple uniformizer slots via {pi, pi} = {-1, pi}."""
    out = []
    work = list(pieces)
    minus1 = K.from_int(-1)
    while work:
        coeff, slots = work.pop()
        pis = [i for i, s in enumerate(slots) if s[0] == "pi"]
        if len(pis) <= 1:
            out.append((coeff, slots))
            continue
        i, j = pis[0], pis[1]
        # move the second uniformizer next to the first: sign per transposition
        sign = -1 if (j - i - 1) % 2 else 1
        slots2 = list(slots)
        del slots2[j]
        slots2.insert(i + 1, ("u", minus1))
        work.append((coeff * sign, slots2))
    return out


def _tame_residue(R, pieces, pi_point):
    """Drop the uniformizer slot and reduce units to the residue field."""
    K = R.below
    out = []
    for coeff, slots in pieces:
        pis = [i for i, s in enumerate(slots) if s[0] == "pi"]
        if not pis:
            continue
        i = pis[0]
        sign = -1 if i % 2 else 1
        rest = [s[1] for s in slots if s[0] == "u"]
        resd = []
        ok = True
        for u in rest:
            if pi_point == INF:
                val = evaluate_at(R, u, INF)
            else:
                val = evaluate_at(R, u, pi_point)
            if val is None:
                ok = False
                break
            resd.append(val)
        if not ok:
            raise UnsupportedField("unit residue undefined at the chosen valuation")
        out.append((coeff * sign, resd))
    return out


def tame_symbol(R, entries, point):
    """Iterated tame symbol at a valuation of R = K0(u)-style fields.

    Returns canonical data: for one remaining slot, the product in the
    residue field; for none, the integer; otherwise the formal list (zero in
    Milnor K-theory of a finite residue field in degrees >= 2).
    """
    Kx = residue_field(R, point)
    pieces = _tame_residue(R, _tame_normalize(R, _tame_expand(R, point, entries)), point)
    arity = len(entries) - 1
    if arity == 0:
        return {"degree": 0, "value": sum(c for c, _ in pieces)}
    if arity == 1:
        acc = Kx.one
        for c, resd in pieces:
            acc = Kx.mul(acc, Kx.pow(resd[0], c))
        return {"degree": 1, "value": acc, "field": Kx}
    finite = Kx.size() is not None
    return {
        "degree": arity,
        "value": 0 if finite else [(c, resd) for c, resd in pieces],
        "residue_field_finite": finite,
    }


def eval_milnor(s, valuation_point=None, allow_out_of_hypothesis=True):
    """Milnor data of an all-Gm symbol sum: norm pushes, dlog image, tame data."""
    norm_pushed = []
    dlog_total = None
    tame_data = []
    for term in s.terms:
        if not all(t == "Gm" for t in term.tags):
            raise NoEvaluationMap("Milnor evaluation needs all-Gm tags")
        L = term.field
        # dlog image: eval_omega with a = 1
        form = dlog_wedge(L, term.values)
        for step in _trace_chain(L, s.base):
            form = trace_form(step, form)
        form = form.scale(s.base.from_int(term.coeff))
        dlog_total = form if dlog_total is None else dlog_total + form
        # norm push: direct for arity one, slot-wise reduction otherwise
        if len(term.values) == 1:
            v = term.values[0]
            for step in _trace_chain(L, s.base):
                v = trace_norm(step, v)[1]
            norm_pushed.append((term.coeff, [v]))
        elif L == s.base:
            norm_pushed.append((term.coeff, list(term.values)))
        else:
            reduced = _try_push(term, s.base)
            if reduced is not None and reduced.field == s.base:
                norm_pushed.append((reduced.coeff, list(reduced.values)))
            else:
                norm_pushed.append((term.coeff, None))  # no direct norm formula
        if valuation_point is not None and L == s.base:
            t = tame_symbol(L, list(term.values), valuation_point)
            tame_data.append((term.coeff, t))
    if dlog_total is None:
        dlog_total = DifferentialForm.zero(s.base, max((len(t.values) for t in s.terms), default=1))
    return {"norm_pushed": norm_pushed, "dlog": dlog_total, "tame": tame_data}


# ---------------------------------------------------------------------------
# twists and conductor bounds
# ---------------------------------------------------------------------------


def twist_differential(K, a):
    """Ga -> Ga<1> realized in Omega^1: the absolute differential."""
    return differential(K, a)


def twist_chain(K, a, n):
    """Iterate d through Ga<n> = Omega^n; vanishes for n >= 2 (d d = 0)."""
    from .kahler import d_form

    form = DifferentialForm.scalar(K, a)
    for _ in range(n):
        form = d_form(form)
    return form


@dataclass
class SubadditivityReport:
    slot_conductors: list
    bound: int
    evaluated_conductor: int
    holds: bool


def _ceil_div(a, b):
    return -((-a) // b)


def conductor_subadditivity_check(
    R, entries, point, convention=SUM, ram_e=1, allow_out_of_hypothesis=True
):
    """Check c(eval(term)) <= bound on a valuation probe of the t-line.

    ``entries`` are (tag, g) with g in R = K(t); the bound is the sum or max
    of the slot conductors at the point, with a ceiling division by the
    ramification index for pushed terms.
    """
    tags = tuple(tag for tag, _ in entries)
    if not (tags and tags[0] == "Ga" and all(t == "Gm" for t in tags[1:])):
        raise NoEvaluationMap("subadditivity check needs tags (Ga, Gm, ..., Gm)")
    cs = [_local_conductor(R, tag, g, point) for tag, g in entries]
    raw = sum(cs) if convention == SUM else max(cs)
    bound = _ceil_div(raw, ram_e)

    a = entries[0][1]
    form = dlog_wedge(R, [g for _, g in entries[1:]]).scale(a)
    local = localize_form(R, form, point, prec=max(2, raw + 2))
    if ram_e > 1:
        local = kummer_push_local(local, ram_e)
    n = len(entries) - 1
    c_eval = conductor_omega(local, n).result
    return SubadditivityReport(cs, bound, c_eval, c_eval <= bound)


def kummer_push_local(local, e):
    """Trace of localized form data along s = s'^e (tame Kummer extension).

    Monomial rules for coefficients c*s'^j: with ds' present the term is
    c s'^{j+1} dlog s', surviving iff e | j+1 as c s^{(j+1)/e - 1} ds; without
    ds' it survives iff e | j as e*c s^{j/e}.
    """
    out = {}
    for mono, lau in local.items():
        F = lau.F
        if lau.prec is not None and not lau.exact:
            prec2 = _ceil_div(lau.prec, e)
        else:
            prec2 = None
        coeffs = {}
        has_ds = lau.var in mono
        for i, c in enumerate(lau.coeffs):
            j = lau.lead + i
            if F.is_zero(c):
                continue
            if has_ds:
                if (j + 1) % e == 0:
                    coeffs[(j + 1) // e - 1] = c
            else:
                if j % e == 0:
                    coeffs[j // e] = F.mul(F.from_int(e), c)
        if not coeffs:
            continue
        lo = min(coeffs)
        hi = max(coeffs)
        arr = [coeffs.get(k, F.zero) for k in range(lo, hi + 1)]
        out[mono] = Laurent(F, lau.var, lo, arr, prec2)
    return out

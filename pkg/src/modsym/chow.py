"""Zero-cycles with modulus on products of the two standard line pairs.

The class of a cycle on a product of Ga- and Gm-pairs decomposes as degree,
two Jacobian components (additive traces resp. multiplicative norms of the
coordinates), and a pairing component living in jets, forms, or Milnor data
according to the factor tags.  The splitting uses the degree-one basepoints
0 (additive factor) and 1 (multiplicative factor); only the total class is
canonical.  Rational equivalence is generated by cycles of the shape
sum v_x(f) * (g1(x), g2(x)) for f congruent to 1 along the pulled-back
modulus; their classes vanish identically, which is the checkable contract.
"""

from __future__ import annotations

from dataclasses import dataclass

from .curve import check_congruence, divisor_of, evaluate_at, residue_field
from .errors import (
    CharacteristicUnsupported,
    CongruenceFailure,
    PointOnDivisor,
    ZeroFirstCoordinate,
)
from .fields import field_to_descriptor, trace_norm
from .kahler import DifferentialForm, dlog_wedge
from .modpairs import SUM, required_modulus
from .symcalc import SymbolSum, SymbolTerm, eval_jet, eval_milnor, eval_omega

GA = "GaM"
GM = "GmM"


def _check_coord(tag, L, v):
    if tag == GM and L.is_zero(v):
        raise PointOnDivisor("multiplicative coordinate meets the divisor")


@dataclass(frozen=True)
class ZeroCycleWithModulus:
    base: object
    tags: tuple  # (GA|GM, GA|GM)
    conv: str
    terms: tuple  # ((L, (c1, c2), coeff), ...)

    def __add__(self, other):
        assert other.base == self.base and other.tags == self.tags
        return ZeroCycleWithModulus(
            self.base, self.tags, self.conv, self.terms + other.terms
        )

    def to_json(self):
        return {
            "ambient": {"m1": self.tags[0], "m2": self.tags[1], "conv": self.conv},
            "terms": [
                {
                    "ext": field_to_descriptor(L),
                    "coords": [L.elem_to_json(c1), L.elem_to_json(c2)],
                    "coeff": n,
                }
                for L, (c1, c2), n in self.terms
            ],
        }


def zero_cycle(base, tags, terms, conv=SUM):
    for L, (c1, c2), _ in terms:
        _check_coord(tags[0], L, c1)
        _check_coord(tags[1], L, c2)
    return ZeroCycleWithModulus(base, tuple(tags), conv, tuple(terms))


@dataclass
class ChowClass:
    tags: tuple
    degree: int
    j1: object
    j2: object
    pairing: object  # JetElement | DifferentialForm (Milnor: its dlog form)
    base: object

    def __eq__(self, other):
        return (
            isinstance(other, ChowClass)
            and other.tags == self.tags
            and other.degree == self.degree
            and other.j1 == self.j1
            and other.j2 == self.j2
            and other.pairing == self.pairing
        )

    def is_zero(self):
        K = self.base
        zeros = {GA: K.zero, GM: K.one}
        return (
            self.degree == 0
            and self.j1 == zeros[self.tags[0]]
            and self.j2 == zeros[self.tags[1]]
            and self.pairing.is_zero()
        )

    def to_json(self):
        K = self.base
        pairing = self.pairing.to_json() if hasattr(self.pairing, "to_json") else self.pairing
        return {
            "degree": self.degree,
            "j1": K.elem_to_json(self.j1),
            "j2": K.elem_to_json(self.j2),
            "pairing": pairing,
        }


def _guard(base, tags, allow_out_of_hypothesis):
    forbidden = set()
    if tags == (GA, GM):
        forbidden = {2, 3, 5}
    elif tags == (GA, GA):
        forbidden = {2}
    if base.char in forbidden and not allow_out_of_hypothesis:
        raise CharacteristicUnsupported(
            f"characteristic {base.char} outside the {tags} case hypotheses"
        )


def _j_component(base, tag, pieces):
    """pieces: (L, coord, coeff); additive trace or multiplicative norm."""
    if tag == GA:
        acc = base.zero
    else:
        acc = base.one
    for L, v, c in pieces:
        f = L
        while f != base:
            v = trace_norm(f, v)[0 if tag == GA else 1]
            f = f.below
        if tag == GA:
            acc = base.add(acc, base.mul(base.from_int(c), v))
        else:
            acc = base.mul(acc, base.pow(v, c))
    return acc


def chow_class(z, allow_out_of_hypothesis=False):
    base = z.base
    _guard(base, z.tags, allow_out_of_hypothesis)
    degree = sum(c * L.absolute_degree_over(base) for L, _, c in z.terms)
    j1 = _j_component(base, z.tags[0], [(L, cs[0], c) for L, cs, c in z.terms])
    j2 = _j_component(base, z.tags[1], [(L, cs[1], c) for L, cs, c in z.terms])

    sym_tags = tuple("Ga" if t == GA else "Gm" for t in z.tags)
    ss = SymbolSum(
        base,
        z.conv,
        [SymbolTerm(c, L, sym_tags, tuple(cs)) for L, cs, c in z.terms],
    )
    if z.tags == (GA, GM):
        pairing = eval_omega(ss, allow_out_of_hypothesis=True)
    elif z.tags == (GA, GA):
        pairing = eval_jet(ss, allow_out_of_hypothesis=True)
    else:
        pairing = eval_milnor(ss)["dlog"]
    return ChowClass(z.tags, degree, j1, j2, pairing, base)


def rat_equiv_zero(R, base, gs, f, ambient_tags, conv=SUM, allow_out_of_hypothesis=False):
    """The boundary cycle sum v_x(f) * (g1(x), g2(x)); its class is zero.

    The minimal valid modulus D on the parametrizing line is the pullback of
    the ambient modulus along (g1, g2); f must be congruent to 1 modulo D.
    """
    from .modpairs import ModulusPair, pair_ga, pair_gm, product_pair

    pairs = {GA: pair_ga(R), GM: pair_gm(R)}
    target = product_pair(pairs[ambient_tags[0]], pairs[ambient_tags[1]], conv)
    D = required_modulus(R, tuple(gs), target)
    if not check_congruence(R, f, D):
        raise CongruenceFailure(
            "parameter function is not congruent to 1 modulo the pulled-back modulus"
        )
    terms = []
    for point, v in divisor_of(R, f).support.items():
        if v == 0:
            continue
        Kx = residue_field(R, point)
        coords = []
        for tag, g in zip(ambient_tags, gs):
            val = evaluate_at(R, g, point)
            if val is None or (tag == GM and Kx.is_zero(val)):
                raise PointOnDivisor("boundary point meets the ambient divisor")
            coords.append(val)
        terms.append((Kx, tuple(coords), v))
    return zero_cycle(base, ambient_tags, terms, conv)


def higher_cycle_class(K, a, bs, allow_out_of_hypothesis=False):
    """Evaluation of a rational point (a, b_1, ..., b_n) with modulus 2(inf).

    Returns the Milnor data of {b_1,...,b_n} together with both form
    normalizations: (1/a) dlog b_1...dlog b_n and a dlog b_1...dlog b_n.
    """
    if K.char in {2, 3, 5} and not allow_out_of_hypothesis:
        raise CharacteristicUnsupported(
            f"characteristic {K.char} outside theorem hypotheses"
        )
    ss = SymbolSum(K, SUM, [SymbolTerm(1, K, ("Gm",) * len(bs), tuple(bs))])
    milnor = eval_milnor(ss)
    wedge = dlog_wedge(K, bs)
    composite = wedge.scale(a)
    if K.is_zero(a):
        raise ZeroFirstCoordinate("the 1/a-normalized map needs a nonzero coordinate")
    bloch_esnault = wedge.scale(K.inv(a))
    return {
        "milnor": milnor,
        "composite": composite,
        "bloch_esnault": bloch_esnault,
    }

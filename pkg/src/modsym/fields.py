"""Exact field towers: Q or F_p extended by rational-function and algebraic steps.

A tower is a chain of Field objects.  Raw element data is nested hashable
data (Fraction / int / tuples), so structural equality is mathematical
equality thanks to canonical normal forms:

* ``QField``       -- elements are ``Fraction``
* ``FpField``      -- elements are ints in ``[0, p)``
* ``RatFunField``  -- elements are ``(num, den)`` coefficient tuples, the
  fraction reduced with monic denominator
* ``ExtField``     -- elements are coefficient tuples of fixed length
  ``deg`` over the field below, reduced mod the minimal polynomial

The public entry point mirroring the CLI descriptor grammar is
:func:`make_field`.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import (
    NonPrimeCharacteristic,
    PthPowerRoot,
    ReduciblePolynomial,
    UnsupportedField,
    ZeroDivisionInField,
)


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class Field:
    """Base class for all tower levels."""

    char = 0
    below = None
    var = None  # generator name for extension levels

    # -- chain helpers -------------------------------------------------

    def chain(self):
        """All levels of the tower, base first."""
        out = []
        f = self
        while f is not None:
            out.append(f)
            f = f.below
        out.reverse()
        return out

    def depth(self):
        return len(self.chain())

    def var_names(self):
        return [f.var for f in self.chain() if f.var is not None]

    def is_extension_of(self, other):
        f = self
        while f is not None:
            if f is other or f == other:
                return True
            f = f.below
        return False

    def steps_above(self, other):
        """Levels strictly above ``other``, bottom first."""
        out = []
        f = self
        while f is not None and f != other:
            out.append(f)
            f = f.below
        if f is None:
            raise ValueError("not an extension of the given field")
        out.reverse()
        return out

    def absolute_degree_over(self, other):
        d = 1
        for step in self.steps_above(other):
            if not isinstance(step, ExtField):
                raise UnsupportedField("transcendental step in relative degree")
            d *= step.deg
        return d

    # -- arithmetic interface (implemented per subclass) ---------------

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a):
        return a == self.zero

    def is_one(self, a):
        return a == self.one

    def pow(self, a, n):
        if n < 0:
            return self.pow(self.inv(a), -n)
        r = self.one
        b = a
        while n:
            if n & 1:
                r = self.mul(r, b)
            b = self.mul(b, b)
            n >>= 1
        return r

    def size(self):
        """Number of elements, or None if infinite."""
        return None

    def lift_from(self, ancestor, a):
        """Embed an element of an ancestor level into this field."""
        if self is ancestor or self == ancestor:
            return a
        below = self.below
        if below is None:
            raise ValueError("not an ancestor")
        b = below.lift_from(ancestor, a)
        return self.lift(b)

    def in_below_image(self, a):
        """Return the element of the field below mapping to ``a``, else None."""
        raise UnsupportedField("base field has no level below")

    def elem(self, data):
        return Elem(self, data)

    def __call__(self, n):
        """Coerce a Python int."""
        return Elem(self, self.from_int(n))

    # -- p-th powers ----------------------------------------------------

    def pth_root(self, a):
        """Return b with b^p == a, or None.  Only in characteristic p."""
        raise UnsupportedField("p-th roots undefined in characteristic 0")


class QField(Field):
    char = 0

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def __eq__(self, other):
        return isinstance(other, QField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "Q"

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionInField("inverse of 0 in Q")
        return 1 / a

    def from_int(self, n):
        return Fraction(n)

    def rand(self, rng, size=6):
        return Fraction(rng.randint(-size, size), rng.randint(1, size))

    def to_str(self, a):
        return str(a)

    def elem_to_json(self, a):
        return str(a)

    def elem_from_json(self, j):
        return Fraction(str(j))


class FpField(Field):
    def __init__(self, p):
        if not _is_prime(p):
            raise NonPrimeCharacteristic(f"{p} is not prime")
        self.p = p
        self.char = p
        self.zero = 0
        self.one = 1 % p

    def __eq__(self, other):
        return isinstance(other, FpField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return f"F{self.p}"

    def add(self, a, b):
        return (a + b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionInField(f"inverse of 0 in F{self.p}")
        return pow(a, self.p - 2, self.p)

    def from_int(self, n):
        return n % self.p

    def size(self):
        return self.p

    def rand(self, rng, size=None):
        return rng.randrange(self.p)

    def to_str(self, a):
        return str(a)

    def elem_to_json(self, a):
        return str(a)

    def elem_from_json(self, j):
        return int(j) % self.p

    def pth_root(self, a):
        return a  # F_p is perfect and Frobenius is the identity


# ---------------------------------------------------------------------------
# raw coefficient-tuple polynomial helpers (shared with poly.Poly)
# ---------------------------------------------------------------------------


def ptrim(field, c):
    c = tuple(c)
    n = len(c)
    while n and field.is_zero(c[n - 1]):
        n -= 1
    return c[:n]


def padd(field, a, b):
    n = max(len(a), len(b))
    z = field.zero
    out = [field.add(a[i] if i < len(a) else z, b[i] if i < len(b) else z) for i in range(n)]
    return ptrim(field, out)


def pneg(field, a):
    return tuple(field.neg(x) for x in a)


def psub(field, a, b):
    return padd(field, a, pneg(field, b))


def pmul(field, a, b):
    if not a or not b:
        return ()
    z = field.zero
    out = [z] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if field.is_zero(x):
            continue
        for j, y in enumerate(b):
            out[i + j] = field.add(out[i + j], field.mul(x, y))
    return ptrim(field, out)


def pscale(field, a, c):
    return ptrim(field, [field.mul(x, c) for x in a])


def pdivmod(field, a, b):
    if not b:
        raise ZeroDivisionInField("polynomial division by zero")
    a = list(a)
    q = [field.zero] * max(0, len(a) - len(b) + 1)
    inv_lead = field.inv(b[-1])
    while len(a) >= len(b):
        if field.is_zero(a[-1]):
            a.pop()
            continue
        c = field.mul(a[-1], inv_lead)
        k = len(a) - len(b)
        q[k] = c
        for i, y in enumerate(b):
            a[k + i] = field.sub(a[k + i], field.mul(c, y))
        a.pop()
    return ptrim(field, q), ptrim(field, a)


def pmod(field, a, b):
    return pdivmod(field, a, b)[1]


def pgcd(field, a, b):
    # fraction-field coefficients: Euclid's algorithm swells intermediate
    # denominators badly, so route through a primitive pseudo-remainder
    # sequence on the cleared integral model instead
    if isinstance(field, RatFunField) and (len(a) > 2 or len(b) > 2):
        return _pgcd_prs(field, a, b)
    while b:
        a, b = b, pmod(field, a, b)
    if a:
        a = pscale(field, a, field.inv(a[-1]))
    return a


def _pgcd_prs(K, a, b):
    F = K.below

    def clear(poly):
        den = (F.one,)
        for _, d in poly:
            g = pgcd(F, den, d)
            den = pdivmod(F, pmul(F, den, d), g)[0]
        out = []
        for n, d in poly:
            q = pdivmod(F, den, d)[0]
            out.append(pmul(F, n, q))
        while out and not out[-1]:
            out.pop()
        return out

    def primitive(P):
        g = ()
        for c in P:
            g = pgcd(F, g, c)
        if len(g) > 1:
            P = [pdivmod(F, c, g)[0] for c in P]
        return P

    A, B = primitive(clear(a)), primitive(clear(b))
    if len(A) < len(B):
        A, B = B, A
    while B:
        R = _prem(F, A, B)
        A, B = B, primitive(R)
    return pmonic(K, tuple(K.make(c, (F.one,)) for c in A))


def _prem(F, A, B):
    """Pseudo-remainder of coefficient-cleared polynomials over F[u]."""
    dB = len(B) - 1
    lb = B[-1]
    A = list(A)
    while A and len(A) - 1 >= dB:
        la = A[-1]
        delta = len(A) - 1 - dB
        A = [pmul(F, lb, c) for c in A]
        for i, cb in enumerate(B):
            A[delta + i] = psub(F, A[delta + i], pmul(F, la, cb))
        while A and not A[-1]:
            A.pop()
    return A


def pxgcd(field, a, b):
    """Return (g, s, t) with s*a + t*b = g, g monic or zero."""
    r0, r1 = tuple(a), tuple(b)
    s0, s1 = (field.one,), ()
    t0, t1 = (), (field.one,)
    while r1:
        q, r = pdivmod(field, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, psub(field, s0, pmul(field, q, s1))
        t0, t1 = t1, psub(field, t0, pmul(field, q, t1))
    if r0:
        c = field.inv(r0[-1])
        r0, s0, t0 = pscale(field, r0, c), pscale(field, s0, c), pscale(field, t0, c)
    return r0, s0, t0


def pmonic(field, a):
    if not a:
        return a
    return pscale(field, a, field.inv(a[-1]))


def pderiv(field, a):
    return ptrim(field, [field.mul(field.from_int(i), a[i]) for i in range(1, len(a))])


def peval(field, a, x):
    acc = field.zero
    for c in reversed(a):
        acc = field.add(field.mul(acc, x), c)
    return acc


def pconst(field, c):
    return () if field.is_zero(c) else (c,)


def ppow_mod(field, a, n, m):
    r = (field.one,)
    b = pmod(field, a, m)
    while n:
        if n & 1:
            r = pmod(field, pmul(field, r, b), m)
        b = pmod(field, pmul(field, b, b), m)
        n >>= 1
    return r


# ---------------------------------------------------------------------------


class RatFunField(Field):
    """Rational functions ``below(var)``; elements are reduced (num, den)."""

    def __init__(self, below, var):
        if var in below.var_names():
            raise ValueError(f"variable name {var!r} reused in tower")
        self.below = below
        self.var = var
        self.char = below.char
        self.zero = ((), (below.one,))
        self.one = ((below.one,), (below.one,))

    def __eq__(self, other):
        return (
            isinstance(other, RatFunField)
            and other.var == self.var
            and other.below == self.below
        )

    def __hash__(self):
        return hash(("ratfun", self.var, self.below))

    def __repr__(self):
        return f"{self.below!r}({self.var})"

    def make(self, num, den):
        K = self.below
        num, den = ptrim(K, num), ptrim(K, den)
        if not den:
            raise ZeroDivisionInField("zero denominator")
        if not num:
            return self.zero
        if len(den) > 1:
            g = pgcd(K, num, den)
            if len(g) > 1:
                num = pdivmod(K, num, g)[0]
                den = pdivmod(K, den, g)[0]
        c = K.inv(den[-1])
        return (pscale(K, num, c), pscale(K, den, c))

    def _make_coprime(self, num, den):
        # inputs already coprime with monic or near-monic den
        K = self.below
        if not num:
            return self.zero
        if K.is_one(den[-1]):
            return (num, den)
        c = K.inv(den[-1])
        return (pscale(K, num, c), pscale(K, den, c))

    def from_poly(self, coeffs):
        return self.make(coeffs, (self.below.one,))

    def add(self, a, b):
        K = self.below
        n1, d1 = a
        n2, d2 = b
        if not n1:
            return b
        if not n2:
            return a
        g = pgcd(K, d1, d2)
        if len(g) <= 1:
            # denominators coprime: the sum is automatically reduced
            num = padd(K, pmul(K, n1, d2), pmul(K, n2, d1))
            return self._make_coprime(num, pmul(K, d1, d2))
        d1r = pdivmod(K, d1, g)[0]
        d2r = pdivmod(K, d2, g)[0]
        num = padd(K, pmul(K, n1, d2r), pmul(K, n2, d1r))
        gg = pgcd(K, num, g)
        den = pmul(K, d1r, d2)
        if len(gg) > 1:
            num = pdivmod(K, num, gg)[0]
            den = pdivmod(K, den, gg)[0]
        return self._make_coprime(num, den)

    def neg(self, a):
        return (pneg(self.below, a[0]), a[1])

    def mul(self, a, b):
        K = self.below
        n1, d1 = a
        n2, d2 = b
        if not n1 or not n2:
            return self.zero
        g1 = pgcd(K, n1, d2)
        if len(g1) > 1:
            n1 = pdivmod(K, n1, g1)[0]
            d2 = pdivmod(K, d2, g1)[0]
        g2 = pgcd(K, n2, d1)
        if len(g2) > 1:
            n2 = pdivmod(K, n2, g2)[0]
            d1 = pdivmod(K, d1, g2)[0]
        return self._make_coprime(pmul(K, n1, n2), pmul(K, d1, d2))

    def inv(self, a):
        if not a[0]:
            raise ZeroDivisionInField("inverse of 0")
        return self._make_coprime(a[1], a[0])

    def from_int(self, n):
        return self.make(pconst(self.below, self.below.from_int(n)), (self.below.one,))

    def lift(self, a):
        return (pconst(self.below, a), (self.below.one,))

    def in_below_image(self, a):
        if a[1] == (self.below.one,) and len(a[0]) <= 1:
            return a[0][0] if a[0] else self.below.zero
        return None

    def rand(self, rng, size=2):
        K = self.below
        while True:
            num = ptrim(K, [K.rand(rng) for _ in range(rng.randint(1, size + 1))])
            den = ptrim(K, [K.rand(rng) for _ in range(rng.randint(1, size + 1))])
            if den:
                return self.make(num, den)

    def to_str(self, a):
        def pstr(c):
            if not c:
                return "0"
            parts = []
            for i, x in enumerate(c):
                if self.below.is_zero(x):
                    continue
                xs = self.below.to_str(x)
                if "/" in xs or " " in xs or "+" in xs or ("-" in xs[1:]):
                    xs = f"({xs})"
                if i == 0:
                    parts.append(xs)
                else:
                    head = "" if xs == "1" else f"{xs}*"
                    parts.append(f"{head}{self.var}" + (f"^{i}" if i > 1 else ""))
            return " + ".join(parts)

        num, den = a
        if den == (self.below.one,):
            return pstr(num)
        return f"({pstr(num)})/({pstr(den)})"

    def elem_to_json(self, a):
        K = self.below
        return {
            "num": [K.elem_to_json(c) for c in a[0]],
            "den": [K.elem_to_json(c) for c in a[1]],
        }

    def elem_from_json(self, j):
        K = self.below
        return self.make(
            tuple(K.elem_from_json(c) for c in j["num"]),
            tuple(K.elem_from_json(c) for c in j["den"]),
        )

    def pth_root(self, a):
        p = self.char
        if p == 0:
            raise UnsupportedField("p-th roots undefined in characteristic 0")

        def poly_root(c):
            out = []
            for i, x in enumerate(c):
                if self.below.is_zero(x):
                    continue
                if i % p:
                    return None
                r = self.below.pth_root(x)
                if r is None:
                    return None
                while len(out) <= i // p:
                    out.append(self.below.zero)
                out[i // p] = r
            return ptrim(self.below, out)

        num, den = poly_root(a[0]), poly_root(a[1])
        if num is None or den is None:
            return None
        return self.make(num, den)


class ExtField(Field):
    """Simple algebraic extension ``below[var]/(minpoly)``.

    ``minpoly`` is a monic coefficient tuple over ``below``; irreducibility
    is the caller's responsibility (``make_field`` checks it).
    ``inseparable`` marks a degree-p root adjunction x^p = y.
    """

    def __init__(self, below, var, minpoly, inseparable=False):
        if var in below.var_names():
            raise ValueError(f"variable name {var!r} reused in tower")
        minpoly = ptrim(below, minpoly)
        if len(minpoly) < 2 or not below.is_one(minpoly[-1]):
            raise ValueError("minimal polynomial must be monic of degree >= 1")
        self.below = below
        self.var = var
        self.minpoly = minpoly
        self.deg = len(minpoly) - 1
        self.inseparable = inseparable or (
            below.char > 0 and not ptrim(below, pderiv(below, minpoly))
        )
        self.char = below.char
        self.zero = (below.zero,) * self.deg
        self.one = tuple(
            below.one if i == 0 else below.zero for i in range(self.deg)
        )

    def __eq__(self, other):
        return (
            isinstance(other, ExtField)
            and other.var == self.var
            and other.minpoly == self.minpoly
            and other.below == self.below
        )

    def __hash__(self):
        return hash(("ext", self.var, self.minpoly, self.below))

    def __repr__(self):
        return f"{self.below!r}[{self.var}]"

    def make(self, coeffs):
        r = pmod(self.below, ptrim(self.below, coeffs), self.minpoly)
        return tuple(r) + (self.below.zero,) * (self.deg - len(r))

    def gen(self):
        return self.make((self.below.zero, self.below.one))

    def add(self, a, b):
        K = self.below
        return tuple(K.add(x, y) for x, y in zip(a, b))

    def neg(self, a):
        return tuple(self.below.neg(x) for x in a)

    def mul(self, a, b):
        K = self.below
        return self.make(pmul(K, ptrim(K, a), ptrim(K, b)))

    def inv(self, a):
        K = self.below
        ap = ptrim(K, a)
        if not ap:
            raise ZeroDivisionInField("inverse of 0")
        g, s, _ = pxgcd(K, ap, self.minpoly)
        if len(g) != 1:
            raise ZeroDivisionInField("element not invertible (reducible modulus?)")
        return self.make(pscale(K, s, K.inv(g[0])))

    def from_int(self, n):
        return self.make(pconst(self.below, self.below.from_int(n)))

    def lift(self, a):
        return self.make(pconst(self.below, a))

    def in_below_image(self, a):
        if all(self.below.is_zero(x) for x in a[1:]):
            return a[0]
        return None

    def size(self):
        s = self.below.size()
        return None if s is None else s ** self.deg

    def rand(self, rng, size=None):
        return tuple(self.below.rand(rng) for _ in range(self.deg))

    def to_str(self, a):
        parts = []
        for i, x in enumerate(a):
            if self.below.is_zero(x):
                continue
            xs = self.below.to_str(x)
            if any(ch in xs for ch in "+ /") or "-" in xs[1:]:
                xs = f"({xs})"
            if i == 0:
                parts.append(xs)
            else:
                head = "" if xs == "1" else f"{xs}*"
                parts.append(f"{head}{self.var}" + (f"^{i}" if i > 1 else ""))
        return " + ".join(parts) if parts else "0"

    def elem_to_json(self, a):
        return [self.below.elem_to_json(c) for c in a]

    def elem_from_json(self, j):
        return self.make(tuple(self.below.elem_from_json(c) for c in j))

    def pth_root(self, a):
        p = self.char
        if p == 0:
            raise UnsupportedField("p-th roots undefined in characteristic 0")
        q = self.size()
        if q is not None:
            return self.pow(a, q // p)
        if self.inseparable:
            # x = root of t^p - y: a^(1/p) exists iff a is a poly in x^p = y
            raise UnsupportedField("p-th roots in infinite inseparable extensions")
        raise UnsupportedField("p-th roots in infinite extension fields")


# ---------------------------------------------------------------------------
# descriptors
# ---------------------------------------------------------------------------


def make_field(descriptor):
    """Build and validate a tower from a JSON-style descriptor.

    ``{"base": "Q"}`` or ``{"base": "Fp", "p": 5}`` with optional
    ``"steps"``: ``{"ratfun": "t"}``,
    ``{"simple": {"var": "x", "min_poly": [c0, c1, ...]}}`` (monic, low
    degree first, coefficients in the element grammar of the field below),
    ``{"insep_root": {"var": "x", "y": <elem>}}``.
    """
    from .factor import is_irreducible  # deferred: factor imports this module

    base = descriptor.get("base")
    if base == "Q":
        field = QField()
    elif base == "Fp":
        field = FpField(int(descriptor["p"]))
    else:
        raise UnsupportedField(f"unknown base field {base!r}")

    for step in descriptor.get("steps", ()):
        if "ratfun" in step:
            field = RatFunField(field, step["ratfun"])
        elif "simple" in step:
            var = step["simple"]["var"]
            mp = tuple(
                field.elem_from_json(c) if not isinstance(c, int) else field.from_int(c)
                for c in step["simple"]["min_poly"]
            )
            mp = ptrim(field, mp)
            if len(mp) < 2 or not field.is_one(mp[-1]):
                raise ReduciblePolynomial("minimal polynomial must be monic nonconstant")
            if not is_irreducible(field, mp):
                raise ReduciblePolynomial("minimal polynomial is reducible")
            insep = (
                field.char > 0
                and len(mp) - 1 == field.char
                and pderiv(field, mp) == ()
            )
            field = ExtField(field, var, mp, inseparable=insep)
        elif "insep_root" in step:
            var = step["insep_root"]["var"]
            y = step["insep_root"]["y"]
            y = field.elem_from_json(y) if not isinstance(y, int) else field.from_int(y)
            p = field.char
            if p == 0:
                raise NonPrimeCharacteristic("insep_root requires characteristic p")
            if field.pth_root(y) is not None:
                raise PthPowerRoot("y is a p-th power; x^p - y is reducible")
            mp = tuple(
                field.neg(y) if i == 0 else (field.one if i == p else field.zero)
                for i in range(p + 1)
            )
            field = ExtField(field, var, mp, inseparable=True)
        else:
            raise UnsupportedField(f"unknown step {step!r}")
    return field


def field_to_descriptor(field):
    chain = field.chain()
    base = chain[0]
    if isinstance(base, QField):
        desc = {"base": "Q"}
    else:
        desc = {"base": "Fp", "p": base.p}
    steps = []
    for lvl in chain[1:]:
        if isinstance(lvl, RatFunField):
            steps.append({"ratfun": lvl.var})
        else:
            steps.append(
                {
                    "simple": {
                        "var": lvl.var,
                        "min_poly": [lvl.below.elem_to_json(c) for c in lvl.minpoly],
                    }
                }
            )
    if steps:
        desc["steps"] = steps
    return desc


# ---------------------------------------------------------------------------
# trace and norm
# ---------------------------------------------------------------------------


def trace_norm(field, a):
    """Trace and norm of multiplication by ``a`` along the top step.

    ``field`` must be an ExtField; returns a pair in the field below.
    """
    from .errors import NotAlgebraicStep

    if not isinstance(field, ExtField):
        raise NotAlgebraicStep("top step is not algebraic")
    K = field.below
    d = field.deg
    # trace: sum of diagonal entries of the multiplication matrix
    tr = K.zero
    col = field.one
    gen = field.gen()
    for i in range(d):
        prod = field.mul(a, col)
        tr = K.add(tr, prod[i])
        col = field.mul(col, gen)
    # norm: resultant of the minimal polynomial with a representative
    ap = ptrim(K, a)
    if not ap:
        return tr, K.zero
    nm = _resultant(K, field.minpoly, ap)
    # Res(m, a) = prod a(roots of m); sign (-1)^(deg m * deg a) already
    # absorbed since m is monic and we evaluate a at roots of m.
    return tr, nm


def _resultant(field, A, B):
    """Resultant of coefficient-tuple polynomials over a field."""
    if not A or not B:
        return field.zero
    da, db = len(A) - 1, len(B) - 1
    if db == 0:
        return field.pow(B[0], da)
    _, r = pdivmod(field, A, B)
    if not r:
        return field.zero
    dr = len(r) - 1
    sign = field.from_int(-1) if (da * db) % 2 else field.one
    lead = field.pow(B[-1], da - dr)
    return field.mul(sign, field.mul(lead, _resultant(field, B, r)))


def trace_to(top, base, a):
    """Compose traces step by step from ``top`` down to ``base``."""
    f = top
    while f != base:
        a = trace_norm(f, a)[0]
        f = f.below
    return a


def norm_to(top, base, a):
    f = top
    while f != base:
        a = trace_norm(f, a)[1]
        f = f.below
    return a


# ---------------------------------------------------------------------------
# element wrapper
# ---------------------------------------------------------------------------


class Elem:
    """Thin operator-overloading wrapper around (field, raw data)."""

    __slots__ = ("field", "data")

    def __init__(self, field, data):
        self.field = field
        self.data = data

    def _coerce(self, other):
        if isinstance(other, Elem):
            if other.field == self.field:
                return other.data
            if self.field.is_extension_of(other.field):
                return self.field.lift_from(other.field, other.data)
            raise TypeError("elements of incompatible fields")
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        d = self._coerce(other)
        return Elem(self.field, self.field.add(self.data, d))

    __radd__ = __add__

    def __neg__(self):
        return Elem(self.field, self.field.neg(self.data))

    def __sub__(self, other):
        d = self._coerce(other)
        return Elem(self.field, self.field.sub(self.data, d))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        d = self._coerce(other)
        return Elem(self.field, self.field.mul(self.data, d))

    __rmul__ = __mul__

    def __truediv__(self, other):
        d = self._coerce(other)
        return Elem(self.field, self.field.div(self.data, d))

    def __rtruediv__(self, other):
        d = self._coerce(other)
        return Elem(self.field, self.field.div(d, self.data))

    def __pow__(self, n):
        return Elem(self.field, self.field.pow(self.data, n))

    def __eq__(self, other):
        if isinstance(other, int):
            return self.data == self.field.from_int(other)
        return (
            isinstance(other, Elem)
            and other.field == self.field
            and other.data == self.data
        )

    def __hash__(self):
        return hash((self.field, self.data))

    def is_zero(self):
        return self.field.is_zero(self.data)

    def __repr__(self):
        return self.field.to_str(self.data)

"""Exact commutative rings: Q, Z/m, polynomial rings over them, and
quotients of a polynomial ring by one relation with a unit leading coefficient.

Elements are immutable and always stored in canonical form, so payload
equality is ring equality.

Polynomial payloads are dicts ``{monomial: coefficient}`` with nonzero
coefficients. A monomial is a packed int: the exponent of variable ``i``
lives in a 16-bit field, variable 0 in the most significant field, so
comparing packed ints is lexicographic comparison of exponent vectors.
The top bit of every field is a guard bit used for divisibility tests.
"""

from __future__ import annotations

import itertools
import math
import re
from fractions import Fraction
from typing import NamedTuple

from .errors import (
    ElementParseError,
    InfiniteRingError,
    RingMismatchError,
    RingSpecError,
)

FIELD_BITS = 16
MAX_EXPONENT = (1 << (FIELD_BITS - 1)) - 1


def _canon_rational(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class UnitResult(NamedTuple):
    """Three-valued answer of :func:`is_unit`."""

    status: str  # "unit", "non-unit" or "unknown"
    inverse: "RingElement | None" = None

    def __bool__(self):
        return self.status == "unit"


class RingElement:
    __slots__ = ("ring", "value", "_hash")

    def __init__(self, ring, value):
        self.ring = ring
        self.value = value
        self._hash = None

    def _other(self, other):
        if isinstance(other, RingElement) and other.ring is self.ring:
            return other.value
        return self.ring.coerce(other).value

    def __add__(self, other):
        return RingElement(self.ring, self.ring.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return RingElement(self.ring, self.ring.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return RingElement(self.ring, self.ring.sub(self._other(other), self.value))

    def __mul__(self, other):
        return RingElement(self.ring, self.ring.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __neg__(self):
        return RingElement(self.ring, self.ring.neg(self.value))

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, RingElement):
            if other.ring is not self.ring and other.ring != self.ring:
                return False
            return self.ring.eq(self.value, other.value)
        if isinstance(other, (int, Fraction)):
            try:
                return self.ring.eq(self.value, self.ring.coerce(other).value)
            except (RingMismatchError, ZeroDivisionError):
                return False
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, self.ring.hash_value(self.value)))
        return self._hash

    def is_zero(self):
        return self.ring.is_zero(self.value)

    def is_one(self):
        return self.ring.eq(self.value, self.ring.one().value)

    def __str__(self):
        return self.ring.format(self.value)

    def __repr__(self):
        return f"RingElement({self.ring}, {self})"


class Ring:
    """Common interface of the ring descriptors."""

    def key(self):
        raise NotImplementedError

    def __eq__(self, other):
        return isinstance(other, Ring) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"<ring {self}>"

    def element(self, value):
        return RingElement(self, value)

    def zero(self):
        return self.coerce(0)

    def one(self):
        return self.coerce(1)

    def __call__(self, x):
        if isinstance(x, str):
            return parse_element(self, x)
        return self.coerce(x)

    def eq(self, x, y):
        return x == y

    def hash_value(self, x):
        return hash(x)

    def is_zero(self, x):
        return x == 0

    def cardinality(self):
        """Number of elements, or None when infinite."""
        return None

    @property
    def is_finite(self):
        return self.cardinality() is not None


class Rationals(Ring):
    def key(self):
        return ("Q",)

    def __str__(self):
        return "Q"

    def coerce(self, x):
        if isinstance(x, RingElement):
            if x.ring == self:
                return x
            raise RingMismatchError(f"cannot use element of {x.ring} in {self}")
        if isinstance(x, (int, Fraction)):
            return RingElement(self, Fraction(x))
        raise TypeError(f"cannot coerce {x!r} into Q")

    def add(self, x, y):
        return x + y

    def sub(self, x, y):
        return x - y

    def neg(self, x):
        return -x

    def mul(self, x, y):
        return x * y

    def format(self, x):
        return str(x)

    # coefficient-domain hooks used by polynomial rings
    def cnorm(self, c):
        return _canon_rational(c)

    def cinv(self, c):
        if c == 0:
            return None
        return _canon_rational(1 / Fraction(c))

    def cfrom(self, x):
        return _canon_rational(Fraction(x))

    def cformat(self, c):
        return str(c)


class Modular(Ring):
    def __init__(self, m):
        if not isinstance(m, int) or m < 2:
            raise RingSpecError(f"modulus must be an integer >= 2, got {m!r}")
        self.m = m

    def key(self):
        return ("Zmod", self.m)

    def __str__(self):
        return f"Zmod:{self.m}"

    def cardinality(self):
        return self.m

    def coerce(self, x):
        if isinstance(x, RingElement):
            if x.ring == self:
                return x
            raise RingMismatchError(f"cannot use element of {x.ring} in {self}")
        if isinstance(x, int):
            return RingElement(self, x % self.m)
        if isinstance(x, Fraction):
            inv = self.cinv(x.denominator % self.m)
            if inv is None:
                raise ZeroDivisionError(f"{x.denominator} is not invertible mod {self.m}")
            return RingElement(self, x.numerator * inv % self.m)
        raise TypeError(f"cannot coerce {x!r} into {self}")

    def add(self, x, y):
        return (x + y) % self.m

    def sub(self, x, y):
        return (x - y) % self.m

    def neg(self, x):
        return -x % self.m

    def mul(self, x, y):
        return x * y % self.m

    def format(self, x):
        return str(x)

    def cnorm(self, c):
        return c % self.m

    def cinv(self, c):
        c %= self.m
        if math.gcd(c, self.m) != 1:
            return None
        return pow(c, -1, self.m)

    def cfrom(self, x):
        return self.coerce(x).value

    def cformat(self, c):
        return str(c)


class PolynomialRing(Ring):
    """Multivariate polynomials over Q or Z/m, graded-lex order on ``variables``."""

    def __init__(self, base, variables):
        if not isinstance(base, (Rationals, Modular)):
            raise RingSpecError("polynomial coefficients must be Q or Zmod:m")
        variables = tuple(variables)
        if not variables:
            raise RingSpecError("empty variable list")
        if len(set(variables)) != len(variables):
            raise RingSpecError(f"variable names are not distinct: {variables}")
        for name in variables:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", name):
                raise RingSpecError(f"bad variable name {name!r}")
        self.base = base
        self.variables = variables
        self.nvars = len(variables)
        self._shifts = [FIELD_BITS * (self.nvars - 1 - i) for i in range(self.nvars)]
        self._guard = sum(1 << (s + FIELD_BITS - 1) for s in self._shifts)

    @property
    def coeff_ring(self):
        return self.base

    @property
    def poly_ring(self):
        return self

    def key(self):
        return ("poly", self.base.key(), self.variables)

    def __str__(self):
        return f"{self.base}[{','.join(self.variables)}]"

    # monomial helpers

    def exponents(self, mono):
        mask = (1 << FIELD_BITS) - 1
        return tuple((mono >> s) & mask for s in self._shifts)

    def pack(self, exps):
        mono = 0
        for e, s in zip(exps, self._shifts):
            if e > MAX_EXPONENT:
                raise OverflowError("exponent too large")
            mono |= e << s
        return mono

    def degree_of(self, mono):
        return sum(self.exponents(mono))

    def order_key(self, mono):
        return (self.degree_of(mono), mono)

    def divides(self, small, big):
        return ((big | self._guard) - small) & self._guard == self._guard

    def variable(self, name):
        try:
            i = self.variables.index(name)
        except ValueError:
            raise ElementParseError(f"unknown variable {name!r} in {self}") from None
        return self._wrap({1 << self._shifts[i]: 1})

    def gens(self):
        return [self.variable(v) for v in self.variables]

    # payload arithmetic

    def _clean(self, d):
        cn = self.base.cnorm
        out = {}
        for k, c in d.items():
            c = cn(c)
            if c != 0:
                out[k] = c
        return out

    def _wrap(self, d):
        return RingElement(self, self._normal(self._clean(d)))

    def _normal(self, d):
        return d

    def coerce(self, x):
        if isinstance(x, RingElement):
            if x.ring == self:
                return x
            if x.ring == self.base:
                return self._wrap({0: x.value})
            raise RingMismatchError(f"cannot use element of {x.ring} in {self}")
        if isinstance(x, (int, Fraction)):
            return self._wrap({0: self.base.cfrom(x)})
        raise TypeError(f"cannot coerce {x!r} into {self}")

    def add(self, x, y):
        out = dict(x)
        for k, c in y.items():
            out[k] = out.get(k, 0) + c
        return self._clean(out)

    def sub(self, x, y):
        out = dict(x)
        for k, c in y.items():
            out[k] = out.get(k, 0) - c
        return self._clean(out)

    def neg(self, x):
        return self._clean({k: -c for k, c in x.items()})

    def _raw_mul(self, x, y):
        out = {}
        get = out.get
        for m1, c1 in x.items():
            for m2, c2 in y.items():
                k = m1 + m2
                out[k] = get(k, 0) + c1 * c2
        return self._clean(out)

    def mul(self, x, y):
        if not x or not y:
            return {}
        return self._normal(self._raw_mul(x, y))

    def hash_value(self, x):
        return hash(frozenset(x.items()))

    def is_zero(self, x):
        return not x

    def sorted_terms(self, x):
        """Terms in descending graded-lex order."""
        return sorted(x.items(), key=lambda kv: self.order_key(kv[0]), reverse=True)

    def leading(self, x):
        return max(x.items(), key=lambda kv: self.order_key(kv[0]))

    def constant_value(self, x):
        """The coefficient if ``x`` is a constant, else None."""
        if not x:
            return 0
        if len(x) == 1 and 0 in x:
            return x[0]
        return None

    def format(self, x):
        if not x:
            return "0"
        parts = []
        for mono, c in self.sorted_terms(x):
            if isinstance(self.base, Modular):
                sign, mag = "+", c
            else:
                sign, mag = ("-", -c) if c < 0 else ("+", c)
            factors = []
            for name, e in zip(self.variables, self.exponents(mono)):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            parts.append((sign, body))
        text = parts[0][1] if parts[0][0] == "+" else "-" + parts[0][1]
        for sign, body in parts[1:]:
            text += sign + body
        return text

    def evaluate(self, x, point):
        """Substitute base-ring values (ints/Fractions) for the variables."""
        total = 0
        for mono, c in x.items():
            term = c
            for val, e in zip(point, self.exponents(mono)):
                if e:
                    term = term * val**e
            total = total + term
        return self.base.coerce(total)

    def standard_basis(self):
        return None

    def cardinality(self):
        return None


class QuotientRing(PolynomialRing):
    """``base / (relation)`` with one rewrite rule on the leading monomial."""

    def __init__(self, base, relation):
        if not isinstance(base, PolynomialRing) or isinstance(base, QuotientRing):
            raise RingSpecError("quotient base must be a polynomial ring")
        super().__init__(base.base, base.variables)
        if isinstance(relation, str):
            relation = parse_element(base, relation)
        relation = base.coerce(relation)
        if relation.is_zero():
            raise RingSpecError("quotient relation must be nonzero")
        self.poly = base
        self.relation = relation
        lead, lc = base.leading(relation.value)
        inv = base.base.cinv(lc)
        if inv is None:
            raise RingSpecError(
                f"leading coefficient {lc} of relation {relation} is not a unit"
            )
        if lead == 0:
            raise RingSpecError("relation is a unit constant; the quotient is the zero ring")
        self._lead = lead
        # lead -> tail, with tail = lead - relation/lc
        self._tail = base._clean(
            {m: -c * inv for m, c in relation.value.items() if m != lead}
        )
        self._tail_powers = {0: {0: 1}, 1: self._tail}

    @property
    def poly_ring(self):
        return self.poly

    def key(self):
        return ("quot", self.poly.key(), frozenset(self.relation.value.items()))

    def __str__(self):
        return f"{self.poly}/({self.relation})"

    def coerce(self, x):
        if isinstance(x, RingElement) and x.ring == self.poly:
            return self._wrap(dict(x.value))
        return super().coerce(x)

    def _tail_power(self, k):
        # memo of deterministic values; filled monotonically
        if k not in self._tail_powers:
            prev = self._tail_power(k - 1)
            self._tail_powers[k] = self._normal(self._raw_mul(prev, self._tail))
        return self._tail_powers[k]

    def _normal(self, d):
        lead = self._lead
        divides = self.divides
        while True:
            hits = [m for m in d if divides(lead, m)]
            if not hits:
                return d
            out = {m: c for m, c in d.items() if not divides(lead, m)}
            get = out.get
            for m in hits:
                c = d[m]
                k = 0
                while divides(lead, m):
                    m -= lead
                    k += 1
                for tm, tc in self._tail_power(k).items():
                    key = tm + m
                    out[key] = get(key, 0) + c * tc
            d = self._clean(out)

    def standard_basis(self):
        """Monomials not divisible by the leading monomial, when finitely many."""
        if self.nvars != 1:
            return None
        k = self.exponents(self._lead)[0]
        return [self.pack((e,)) for e in range(k)]

    def cardinality(self):
        basis = self.standard_basis()
        if basis is None or not isinstance(self.base, Modular):
            return None
        return self.base.m ** len(basis)


# ---------------------------------------------------------------------------
# parsing

_RING_RE = re.compile(r"^(Q|Zmod:(\d+))(?:\[([^\]]*)\](?:/\((.*)\))?)?$")


def parse_ring(spec):
    """Parse ``Q``, ``Zmod:m``, ``base[x,y]`` or ``base[x,y]/(relation)``."""
    text = spec.replace(" ", "")
    match = _RING_RE.match(text)
    if not match:
        raise RingSpecError(f"cannot parse ring spec {spec!r}")
    head, modulus, varlist, relation = match.groups()
    base = Rationals() if head == "Q" else Modular(int(modulus))
    if varlist is None:
        return base
    names = varlist.split(",")
    if any(not n for n in names):
        raise RingSpecError(f"empty variable name in {spec!r}")
    poly = PolynomialRing(base, names)
    if relation is None:
        return poly
    try:
        rel = parse_element(poly, relation)
    except ElementParseError as exc:
        raise RingSpecError(f"bad relation in {spec!r}: {exc}") from exc
    return QuotientRing(poly, rel)


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def _tokenize(text):
    tokens = []
    for num, name, op in _TOKEN_RE.findall(text):
        if num:
            tokens.append(("num", int(num)))
        elif name:
            tokens.append(("name", name))
        elif op.strip():
            if op not in "+-*/^()":
                raise ElementParseError(f"unexpected character {op!r}")
            tokens.append(("op", op))
    return tokens


class _Parser:
    def __init__(self, ring, text):
        self.ring = ring
        self.tokens = _tokenize(text)
        self.pos = 0
        if not self.tokens:
            raise ElementParseError("empty expression")

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self, op=None):
        tok = self.peek()
        if tok[0] is None:
            raise ElementParseError("unexpected end of expression")
        if op is not None and tok != ("op", op):
            raise ElementParseError(f"expected {op!r}, got {tok[1]!r}")
        self.pos += 1
        return tok

    def parse(self):
        value = self.expr()
        if self.pos != len(self.tokens):
            raise ElementParseError(f"trailing input at token {self.peek()[1]!r}")
        return value

    def expr(self):
        value = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            rhs = self.unary()
            if op == "*":
                value = value * rhs
            else:
                inv = is_unit(self.ring, rhs)
                if inv.status != "unit":
                    raise ElementParseError(f"division by non-unit {rhs}")
                value = value * inv.inverse
        return value

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        value = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, n = self.take()
            if kind != "num":
                raise ElementParseError("exponent must be a nonnegative integer literal")
            value = value**n
        return value

    def atom(self):
        kind, tok = self.take()
        if kind == "num":
            return self.ring.coerce(tok)
        if kind == "name":
            if isinstance(self.ring, PolynomialRing):
                return self.ring.variable(tok)
            raise ElementParseError(f"unknown variable {tok!r} in {self.ring}")
        if tok == "(":
            value = self.expr()
            self.take(")")
            return value
        raise ElementParseError(f"unexpected token {tok!r}")


def parse_element(ring, text):
    """Parse an expression over ``ring``; the result is in normal form."""
    if not isinstance(text, str):
        raise ElementParseError(f"expected a string, got {text!r}")
    return _Parser(ring, text).parse()


def normal_form(ring, e):
    """Canonical representative in ``ring`` of ``e`` (an element of ring or its base)."""
    return ring.coerce(e)


# ---------------------------------------------------------------------------
# units


def _unit_by_powers(ring, e, max_power=4):
    power = e
    for k in range(2, max_power + 1):
        power = power * e
        c = ring.constant_value(power.value)
        if c is not None and c != 0:
            cinv = ring.base.cinv(c)
            if cinv is not None:
                return e ** (k - 1) * ring.coerce(RingElement(ring.base, cinv))
    return None


def is_unit(ring, e):
    """Return a :class:`UnitResult`; an inverse is only ever returned verified."""
    e = ring.coerce(e)
    if e.is_zero():
        return UnitResult("non-unit")
    if isinstance(ring, (Rationals, Modular)):
        inv = ring.cinv(e.value) if isinstance(ring, Modular) else 1 / e.value
        if inv is None:
            return UnitResult("non-unit")
        return UnitResult("unit", ring.coerce(inv))
    if ring.is_finite:
        for cand in enumerate_elements(ring):
            if (e * cand).is_one():
                return UnitResult("unit", cand)
        return UnitResult("non-unit")
    c = ring.constant_value(e.value)
    if c is not None:
        cinv = ring.base.cinv(c)
        if cinv is None:
            return UnitResult("non-unit")
        return UnitResult("unit", ring.coerce(RingElement(ring.base, cinv)))
    inv = _unit_by_powers(ring, e)
    if inv is not None and (inv * e).is_one():
        return UnitResult("unit", inv)
    inv = _unit_by_monomials(ring, e)
    if inv is not None:
        return UnitResult("unit", inv)
    over_domain = isinstance(ring.base, Rationals) or _is_prime(ring.base.m)
    if over_domain and not isinstance(ring, QuotientRing):
        # positive-degree polynomial over a field
        return UnitResult("non-unit")
    return UnitResult("unknown")


def _unit_by_monomials(ring, e, max_degree=3):
    # e * m constant and invertible for some monomial m
    gens = ring.gens()
    for d in range(1, max_degree + 1):
        for combo in itertools.combinations_with_replacement(gens, d):
            m = ring.one()
            for g in combo:
                m = m * g
            c = ring.constant_value((e * m).value)
            if c is None:
                continue
            cinv = ring.base.cinv(c)
            if cinv is not None:
                return m * ring.coerce(RingElement(ring.base, cinv))
    return None


def integer_invertible(ring, n):
    """Inverse of the image of the integer ``n`` in ``ring``, or None."""
    if n < 1:
        raise ValueError("n must be >= 1")
    result = is_unit(ring, ring.coerce(n))
    return result.inverse if result.status == "unit" else None


def _is_prime(m):
    return m >= 2 and all(m % p for p in range(2, math.isqrt(m) + 1))


# ---------------------------------------------------------------------------
# enumeration


def enumerate_elements(ring):
    """All elements of a finite ring, in a deterministic order."""
    if isinstance(ring, Modular):
        return [ring.coerce(i) for i in range(ring.m)]
    if isinstance(ring, QuotientRing) and ring.cardinality() is not None:
        basis = ring.standard_basis()
        m = ring.base.m
        out = []
        # highest basis monomial varies slowest
        for coeffs in itertools.product(range(m), repeat=len(basis)):
            d = {mono: c for mono, c in zip(reversed(basis), coeffs) if c}
            out.append(RingElement(ring, d))
        return out
    raise InfiniteRingError(f"{ring} is not a finite ring")

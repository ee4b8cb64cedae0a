"""Exact arithmetic for the concrete commutative rings everything else acts on.

Supported ring kinds: the integers, the rationals, sparse multivariate
polynomial rings over them, quotients by ideals that are prime by
construction, and fraction fields of domains.  All payloads are immutable
hashable Python values (int, Fraction, tuples), all operations are pure,
and every ring has a canonical element syntax that round-trips through
``parse``.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Optional


class RingMismatchError(TypeError):
    """Raised when an operation mixes elements of different rings."""


class ElementSyntaxError(ValueError):
    """Raised when an element literal does not parse in the given ring."""


# ---------------------------------------------------------------------------
# elements


class RingElement:
    """An exact element of a declared ring.

    Payloads are canonical on construction; arithmetic delegates to the
    ring so quotient reduction and fraction normalization always apply.
    """

    __slots__ = ("ring", "payload")

    def __init__(self, ring: "Ring", payload):
        self.ring = ring
        self.payload = payload

    def _coerce(self, other):
        if isinstance(other, RingElement):
            if other.ring.key != self.ring.key:
                raise RingMismatchError(
                    f"cannot combine element of {other.ring.name} with {self.ring.name}"
                )
            return other
        if isinstance(other, int):
            return self.ring.from_int(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RingElement(self.ring, self.ring.add(self.payload, o.payload))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RingElement(self.ring, self.ring.sub(self.payload, o.payload))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RingElement(self.ring, self.ring.sub(o.payload, self.payload))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RingElement(self.ring, self.ring.mul(self.payload, o.payload))

    __rmul__ = __mul__

    def __neg__(self):
        return RingElement(self.ring, self.ring.neg(self.payload))

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            if isinstance(n, int) and self.ring.is_field:
                return self.ring.inv(self) ** (-n)
            raise ValueError("nonnegative integer exponent required")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.from_int(other)
        if not isinstance(other, RingElement):
            return NotImplemented
        if other.ring.key != self.ring.key:
            return False
        return self.ring.eq(self.payload, other.payload)

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        return hash((self.ring.key, self.ring.hash_payload(self.payload)))

    def is_zero(self) -> bool:
        return self.ring.eq(self.payload, self.ring.zero_payload())

    def __str__(self):
        return self.ring.format(self.payload)

    def __repr__(self):
        return f"<{self.ring.name}: {self}>"


class Ring:
    """Base class: payload-level arithmetic plus element conveniences."""

    kind = "abstract"
    name = "?"
    is_field = False
    is_domain = True
    #: True when equal elements always carry identical payloads.
    canonical_eq = True

    @property
    def key(self) -> str:
        return self.name

    # payload protocol ---------------------------------------------------
    def zero_payload(self):
        raise NotImplementedError

    def one_payload(self):
        raise NotImplementedError

    def int_payload(self, n: int):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def eq(self, a, b) -> bool:
        return a == b

    def canon(self, a):
        return a

    def hash_payload(self, a):
        return a

    def format(self, a) -> str:
        raise NotImplementedError

    def parse_payload(self, text: str):
        raise NotImplementedError

    # element conveniences ----------------------------------------------
    def el(self, payload) -> RingElement:
        return RingElement(self, self.canon(payload))

    def zero(self) -> RingElement:
        return RingElement(self, self.zero_payload())

    def one(self) -> RingElement:
        return RingElement(self, self.one_payload())

    def from_int(self, n: int) -> RingElement:
        return RingElement(self, self.int_payload(n))

    def inv(self, x: RingElement) -> RingElement:
        raise NotImplementedError(f"{self.name} is not a field")

    def parse(self, text: str) -> RingElement:
        return self.el(self.parse_payload(text))

    def __repr__(self):
        return f"Ring({self.name})"


# ---------------------------------------------------------------------------
# the integers and the rationals


class IntegerRing(Ring):
    kind = "integers"
    name = "Z"

    def zero_payload(self):
        return 0

    def one_payload(self):
        return 1

    def int_payload(self, n):
        return int(n)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def format(self, a):
        return str(a)

    def parse_payload(self, text):
        return _parse_int(text, self.name)


class RationalField(Ring):
    kind = "rationals"
    name = "Q"
    is_field = True

    def zero_payload(self):
        return Fraction(0)

    def one_payload(self):
        return Fraction(1)

    def int_payload(self, n):
        return Fraction(n)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, x):
        if x.payload == 0:
            raise ZeroDivisionError("inverse of 0")
        return self.el(1 / x.payload)

    def format(self, a):
        return str(a)

    def parse_payload(self, text):
        return _parse_fraction(text, self.name)


ZZ = IntegerRing()
QQ = RationalField()


def _parse_int(text: str, where: str) -> int:
    t = text.strip()
    if re.fullmatch(r"-?\d+", t):
        return int(t)
    raise ElementSyntaxError(f"bad integer literal {text!r} in {where}")


def _parse_fraction(text: str, where: str) -> Fraction:
    t = text.strip()
    m = re.fullmatch(r"(-?\d+)\s*(?:/\s*(\d+))?", t)
    if not m:
        raise ElementSyntaxError(f"bad rational literal {text!r} in {where}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) else 1
    if den == 0:
        raise ElementSyntaxError(f"zero denominator in {text!r}")
    return Fraction(num, den)


# ---------------------------------------------------------------------------
# sparse multivariate polynomials

# payload: tuple of (exponent-tuple, coefficient-payload), sorted descending
# in graded-lex order, with no zero coefficients.


def _mono_key(exps):
    return (sum(exps), exps)


class PolynomialRing(Ring):
    kind = "polynomial"

    def __init__(self, base: Ring, variables: Iterable[str]):
        variables = tuple(variables)
        if not variables:
            raise ValueError("polynomial ring needs at least one variable")
        if len(set(variables)) != len(variables):
            raise ValueError("duplicate variable names")
        for v in variables:
            if not re.fullmatch(r"[A-Za-z][A-Za-z0-9_]*", v):
                raise ValueError(f"bad variable name {v!r}")
        self.base = base
        self.variables = variables
        self.name = f"{base.name}[{','.join(variables)}]"

    @property
    def nvars(self):
        return len(self.variables)

    def zero_payload(self):
        return ()

    def one_payload(self):
        return self.int_payload(1)

    def int_payload(self, n):
        c = self.base.int_payload(n)
        if self.base.eq(c, self.base.zero_payload()):
            return ()
        return (((0,) * self.nvars, c),)

    def _canon_dict(self, d: dict):
        items = []
        zero = self.base.zero_payload()
        for exps, c in d.items():
            c = self.base.canon(c)
            if not self.base.eq(c, zero):
                items.append((exps, c))
        items.sort(key=lambda t: _mono_key(t[0]), reverse=True)
        return tuple(items)

    def canon(self, a):
        return self._canon_dict(dict(a))

    def add(self, a, b):
        d = dict(a)
        for exps, c in b:
            if exps in d:
                d[exps] = self.base.add(d[exps], c)
            else:
                d[exps] = c
        return self._canon_dict(d)

    def neg(self, a):
        return tuple((exps, self.base.neg(c)) for exps, c in a)

    def mul(self, a, b):
        d: dict = {}
        for e1, c1 in a:
            for e2, c2 in b:
                e = tuple(x + y for x, y in zip(e1, e2))
                prod = self.base.mul(c1, c2)
                if e in d:
                    d[e] = self.base.add(d[e], prod)
                else:
                    d[e] = prod
        return self._canon_dict(d)

    # polynomial-specific helpers ---------------------------------------
    def const_coef(self, a):
        """Coefficient of the all-zero monomial, as a base payload."""
        zero_exps = (0,) * self.nvars
        for exps, c in a:
            if exps == zero_exps:
                return c
        return self.base.zero_payload()

    def degree(self, a) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not a:
            return -1
        return max(sum(exps) for exps, _ in a)

    def degree_in(self, a, var_index: int) -> int:
        if not a:
            return -1
        return max(exps[var_index] for exps, _ in a)

    def leading_coef(self, a):
        """Coefficient of the largest monomial in graded-lex order."""
        if not a:
            return self.base.zero_payload()
        return a[0][1]

    def var(self, name: str) -> RingElement:
        i = self.variables.index(name)
        exps = tuple(1 if j == i else 0 for j in range(self.nvars))
        return self.el(((exps, self.base.one_payload()),))

    def substitute_zero(self, a, var_indices) -> tuple:
        """Drop every monomial involving one of the given variables."""
        keep = [t for t in a if all(t[0][i] == 0 for i in var_indices)]
        return tuple(keep)

    def drop_vars(self, a, var_indices, target: "PolynomialRing"):
        """Rewrite a payload with the given variables removed (exponents 0)."""
        out = {}
        for exps, c in a:
            new = tuple(e for i, e in enumerate(exps) if i not in var_indices)
            out[new] = c
        return target._canon_dict(out)

    # printing / parsing --------------------------------------------------
    def format(self, a):
        if not a:
            return "0"
        parts = []
        for exps, c in a:
            factors = [self.base.format(c)]
            for v, e in zip(self.variables, exps):
                if e == 1:
                    factors.append(v)
                elif e > 1:
                    factors.append(f"{v}^{e}")
            parts.append("*".join(factors))
        return " + ".join(parts)

    def parse_payload(self, text):
        return _parse_poly(self, text)


_POLY_TOKEN = re.compile(r"\s*(\d+|[A-Za-z][A-Za-z0-9_]*|\^|\*|\+|-|/)")


def _parse_poly(ring: PolynomialRing, text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        m = _POLY_TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip() == "":
                break
            raise ElementSyntaxError(f"bad polynomial literal {text!r}")
        tokens.append(m.group(1))
        pos = m.end()
    if not tokens:
        raise ElementSyntaxError("empty polynomial literal")

    i = 0

    def peek():
        return tokens[i] if i < len(tokens) else None

    def take():
        nonlocal i
        t = tokens[i]
        i += 1
        return t

    def parse_number(sign: int):
        t = take()
        if not t.isdigit():
            raise ElementSyntaxError(f"expected number in {text!r}")
        num = sign * int(t)
        if peek() == "/":
            take()
            den = take()
            if not den.isdigit() or int(den) == 0:
                raise ElementSyntaxError(f"bad coefficient in {text!r}")
            return Fraction(num, int(den))
        return num

    def coef_payload(value):
        if isinstance(value, Fraction):
            if isinstance(ring.base, RationalField):
                return value
            if value.denominator != 1:
                raise ElementSyntaxError(
                    f"fractional coefficient in {ring.name}: {text!r}"
                )
            return ring.base.int_payload(value.numerator)
        return ring.base.int_payload(value)

    def parse_term():
        sign = 1
        while peek() in ("+", "-"):
            if take() == "-":
                sign = -sign
        coef = None
        exps = [0] * ring.nvars
        expect_factor = True
        while expect_factor:
            t = peek()
            if t is None:
                break
            if t.isdigit():
                if coef is not None:
                    raise ElementSyntaxError(f"two coefficients in a term: {text!r}")
                coef = parse_number(sign)
                sign = 1
            elif re.fullmatch(r"[A-Za-z][A-Za-z0-9_]*", t):
                take()
                if t not in ring.variables:
                    raise ElementSyntaxError(f"unknown variable {t!r} in {ring.name}")
                e = 1
                if peek() == "^":
                    take()
                    d = take()
                    if not d.isdigit():
                        raise ElementSyntaxError(f"bad exponent in {text!r}")
                    e = int(d)
                exps[ring.variables.index(t)] += e
            else:
                raise ElementSyntaxError(f"unexpected token {t!r} in {text!r}")
            if peek() == "*":
                take()
                expect_factor = True
            else:
                expect_factor = False
        if coef is None:
            coef = sign
        elif sign == -1:
            coef = -coef
        return tuple(exps), coef_payload(coef)

    d: dict = {}
    while i < len(tokens):
        if peek() == "+":
            take()
            continue
        exps, c = parse_term()
        if exps in d:
            d[exps] = ring.base.add(d[exps], c)
        else:
            d[exps] = c
    return ring._canon_dict(d)


# univariate polynomial division/gcd over a field base ----------------------


def _uni_divmod(ring: PolynomialRing, a, b):
    """Univariate division with remainder; base must be a field."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    base = ring.base
    q: dict = {}
    r = dict(a)

    def deg(d):
        return max((e[0] for e in d), default=-1)

    db = b[0][0][0]
    lb = b[0][1]
    while r and deg(r) >= db:
        dr = deg(r)
        lr = r.get((dr,))
        if lr is None or base.eq(lr, base.zero_payload()):
            r.pop((dr,), None)
            continue
        factor = base.mul(lr, _field_inv(base, lb))
        q[(dr - db,)] = base.add(q.get((dr - db,), base.zero_payload()), factor)
        for (eb,), cb in b:
            key = (eb + dr - db,)
            r[key] = base.sub(r.get(key, base.zero_payload()), base.mul(factor, cb))
            if base.eq(r[key], base.zero_payload()):
                del r[key]
    return ring._canon_dict(q), ring._canon_dict(r)


def _field_inv(base: Ring, c):
    return base.inv(base.el(c)).payload


def _uni_gcd(ring: PolynomialRing, a, b):
    """Monic gcd of univariate polynomials over a field base."""
    while b:
        _, r = _uni_divmod(ring, a, b)
        a, b = b, r
    if not a:
        return a
    lc = ring.leading_coef(a)
    inv = _field_inv(ring.base, lc)
    return tuple((e, ring.base.mul(c, inv)) for e, c in a)


def _content(ring: PolynomialRing, a):
    """gcd of integer coefficients, or gcd(numerators)/lcm(denominators)."""
    if isinstance(ring.base, RationalField):
        num = 0
        den = 1
        for _, c in a:
            num = math.gcd(num, abs(c.numerator))
            den = den * c.denominator // math.gcd(den, c.denominator)
        return Fraction(num or 1, den)
    g = 0
    for _, c in a:
        g = math.gcd(g, abs(c))
    return g or 1


# ---------------------------------------------------------------------------
# ideals


class Ideal:
    """Membership test plus, when available, a canonical reduction."""

    ring: Ring
    reducible = True
    is_zero = False

    def contains(self, a) -> bool:
        raise NotImplementedError

    def reduce(self, a):
        """Canonical coset representative payload, or None if unreducible."""
        raise NotImplementedError

    def describe(self) -> str:
        raise NotImplementedError

    def __repr__(self):
        return f"Ideal({self.describe()} in {self.ring.name})"


class ZeroIdeal(Ideal):
    is_zero = True

    def __init__(self, ring: Ring):
        self.ring = ring

    def contains(self, a):
        return self.ring.eq(a, self.ring.zero_payload())

    def reduce(self, a):
        return self.ring.canon(a)

    def describe(self):
        return "{0}"


class PrincipalIdeal(Ideal):
    """n*Z for a prime n; the only principal quotients we form."""

    def __init__(self, ring: Ring, generator: int):
        if not isinstance(ring, IntegerRing):
            raise ValueError("principal ideals are supported over Z only")
        if not _is_prime(generator):
            raise ValueError(f"{generator} is not prime; quotient would not be a domain")
        self.ring = ring
        self.generator = generator

    def contains(self, a):
        return a % self.generator == 0

    def reduce(self, a):
        return a % self.generator

    def describe(self):
        return f"{self.generator}Z"


class VariableIdeal(Ideal):
    """The ideal generated by a subset of the variables of a polynomial ring."""

    def __init__(self, ring: PolynomialRing, variables: Iterable[str]):
        variables = tuple(variables)
        if not isinstance(ring, PolynomialRing):
            raise ValueError("variable ideals live in polynomial rings")
        for v in variables:
            if v not in ring.variables:
                raise ValueError(f"{v!r} is not a variable of {ring.name}")
        if not variables:
            raise ValueError("need at least one generating variable")
        self.ring = ring
        self.variables = variables
        self.indices = tuple(ring.variables.index(v) for v in variables)

    def contains(self, a):
        return all(any(exps[i] > 0 for i in self.indices) for exps, _ in a)

    def reduce(self, a):
        return self.ring.substitute_zero(a, self.indices)

    def describe(self):
        return "<" + ",".join(self.variables) + ">"


class SupportIdeal(Ideal):
    """The support of a valuation, tested through the valuation itself."""

    def __init__(self, valuation):
        self.valuation = valuation
        self.ring = valuation.ring
        base = getattr(valuation, "_support_concrete", None)
        self.concrete = base
        self.reducible = base.reducible if base is not None else False

    def contains(self, a):
        from .groups import INF

        return self.valuation._eval_memo(a) is INF

    def reduce(self, a):
        if self.concrete is not None:
            return self.concrete.reduce(a)
        return None

    def describe(self):
        return f"supp({self.valuation.name})"


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# ---------------------------------------------------------------------------
# quotient rings


class IntegerModRing(Ring):
    kind = "quotient"

    def __init__(self, modulus: int):
        if not _is_prime(modulus):
            raise ValueError(f"{modulus} is not prime")
        self.modulus = modulus
        self.name = f"Z/{modulus}Z"
        self.is_field = True

    def zero_payload(self):
        return 0

    def one_payload(self):
        return 1 % self.modulus

    def int_payload(self, n):
        return n % self.modulus

    def add(self, a, b):
        return (a + b) % self.modulus

    def neg(self, a):
        return (-a) % self.modulus

    def mul(self, a, b):
        return (a * b) % self.modulus

    def inv(self, x):
        if x.payload == 0:
            raise ZeroDivisionError("inverse of 0")
        return self.el(pow(x.payload, -1, self.modulus))

    def format(self, a):
        return str(a)

    def parse_payload(self, text):
        return _parse_int(text, self.name) % self.modulus


class QuotientRing(Ring):
    """Generic quotient by a prime-by-construction ideal.

    Falls back to representative-plus-membership equality when the ideal
    has no canonical reduction; such rings are flagged non-canonical.
    """

    kind = "quotient"

    def __init__(self, base: Ring, ideal: Ideal):
        self.base = base
        self.ideal = ideal
        self.name = f"{base.name}/{ideal.describe()}"
        self.canonical_eq = ideal.reducible

    def _reduce(self, a):
        r = self.ideal.reduce(a)
        return self.base.canon(a) if r is None else r

    def zero_payload(self):
        return self._reduce(self.base.zero_payload())

    def one_payload(self):
        return self._reduce(self.base.one_payload())

    def int_payload(self, n):
        return self._reduce(self.base.int_payload(n))

    def add(self, a, b):
        return self._reduce(self.base.add(a, b))

    def neg(self, a):
        return self._reduce(self.base.neg(a))

    def mul(self, a, b):
        return self._reduce(self.base.mul(a, b))

    def eq(self, a, b):
        if self.canonical_eq:
            return a == b
        return self.ideal.contains(self.base.sub(a, b))

    def canon(self, a):
        return self._reduce(a)

    def hash_payload(self, a):
        if not self.canonical_eq:
            raise TypeError(f"elements of {self.name} are not hashable")
        return a

    def format(self, a):
        return self.base.format(a)

    def parse_payload(self, text):
        return self._reduce(self.base.parse_payload(text))


def quotient_ring(base: Ring, ideal: Ideal):
    """Build base/ideal, normalizing recognizable isomorphisms.

    Returns (ring, project) where project maps base elements onto the
    quotient.  The zero ideal gives back the ring itself; Z/pZ and
    variable quotients of polynomial rings collapse to concrete rings.
    """
    if ideal.is_zero:
        return base, lambda x: x
    if isinstance(ideal, SupportIdeal) and ideal.concrete is not None:
        return quotient_ring(base, ideal.concrete)
    if isinstance(ideal, PrincipalIdeal):
        target = IntegerModRing(ideal.generator)
        return target, lambda x: target.el(x.payload % ideal.generator)
    if isinstance(ideal, VariableIdeal):
        poly: PolynomialRing = ideal.ring
        remaining = tuple(v for v in poly.variables if v not in ideal.variables)
        if remaining:
            target = PolynomialRing(poly.base, remaining)

            def project(x, _t=target, _p=poly, _idx=ideal.indices):
                reduced = _p.substitute_zero(x.payload, _idx)
                return _t.el(_p.drop_vars(reduced, _idx, _t))

            return target, project
        target = poly.base
        return target, lambda x: target.el(poly.const_coef(x.payload))
    generic = QuotientRing(base, ideal)
    return generic, lambda x: generic.el(x.payload)


def quotient_reduce(x: RingElement, ideal: Ideal) -> RingElement:
    """Canonical coset representative of x modulo the ideal."""
    if ideal.ring.key != x.ring.key:
        raise RingMismatchError("ideal and element live in different rings")
    r = ideal.reduce(x.payload)
    if r is None:
        return RingElement(x.ring, x.ring.canon(x.payload))
    return RingElement(x.ring, r)


# ---------------------------------------------------------------------------
# fraction fields


class RationalFunctionField(Ring):
    """Fractions of a polynomial ring over Z or Q.

    Over a rational base the representation is fully canonical (gcd
    removed, monic denominator); over Z only the integer content and the
    denominator sign are normalized, and equality cross-multiplies.
    """

    kind = "fraction-field"
    is_field = True

    def __init__(self, poly: PolynomialRing):
        if not isinstance(poly, PolynomialRing):
            raise ValueError("expected a polynomial ring")
        if not isinstance(poly.base, (IntegerRing, RationalField)):
            raise ValueError(f"unsupported fraction base {poly.base.name}")
        self.poly = poly
        self.name = f"Quot({poly.name})"
        self._full_canonical = (
            isinstance(poly.base, RationalField) and poly.nvars == 1
        )
        self.canonical_eq = self._full_canonical

    def _normalize(self, num, den):
        poly = self.poly
        if not den:
            raise ZeroDivisionError(f"zero denominator in {self.name}")
        if not num:
            return ((), poly.one_payload())
        if self._full_canonical:
            g = _uni_gcd(poly, num, den)
            if poly.degree(g) > 0:
                num, _ = _uni_divmod(poly, num, g)
                den, _ = _uni_divmod(poly, den, g)
            lc = poly.leading_coef(den)
            inv = _field_inv(poly.base, lc)
            num = tuple((e, poly.base.mul(c, inv)) for e, c in num)
            den = tuple((e, poly.base.mul(c, inv)) for e, c in den)
            return (num, den)
        cn, cd = _content(poly, num), _content(poly, den)
        if isinstance(cn, Fraction):
            g = Fraction(
                math.gcd(cn.numerator, cd.numerator),
                cd.denominator * cn.denominator
                // math.gcd(cn.denominator, cd.denominator),
            )
            if den[0][1] < 0:
                g = -g
            num = tuple((e, c / g) for e, c in num)
            den = tuple((e, c / g) for e, c in den)
            return (num, den)
        g = math.gcd(cn, cd)
        if den[0][1] < 0:
            g = -g
        if g != 1:
            num = tuple((e, c // g) for e, c in num)
            den = tuple((e, c // g) for e, c in den)
        return (num, den)

    def zero_payload(self):
        return ((), self.poly.one_payload())

    def one_payload(self):
        return (self.poly.one_payload(), self.poly.one_payload())

    def int_payload(self, n):
        return (self.poly.int_payload(n), self.poly.one_payload())

    def add(self, a, b):
        n = self.poly.add(self.poly.mul(a[0], b[1]), self.poly.mul(b[0], a[1]))
        return self._normalize(n, self.poly.mul(a[1], b[1]))

    def neg(self, a):
        return (self.poly.neg(a[0]), a[1])

    def mul(self, a, b):
        return self._normalize(self.poly.mul(a[0], b[0]), self.poly.mul(a[1], b[1]))

    def eq(self, a, b):
        if self.canonical_eq:
            return a == b
        return self.poly.mul(a[0], b[1]) == self.poly.mul(b[0], a[1])

    def canon(self, a):
        return self._normalize(self.poly.canon(a[0]), self.poly.canon(a[1]))

    def inv(self, x):
        num, den = x.payload
        if not num:
            raise ZeroDivisionError("inverse of 0")
        return self.el((den, num))

    def hash_payload(self, a):
        if not self.canonical_eq:
            raise TypeError(f"elements of {self.name} are not hashable")
        return a

    def frac(self, num: RingElement, den: RingElement) -> RingElement:
        if num.ring.key != self.poly.key or den.ring.key != self.poly.key:
            raise RingMismatchError("numerator/denominator must come from the base ring")
        return self.el((num.payload, den.payload))

    def num_den(self, x: RingElement):
        return (
            RingElement(self.poly, x.payload[0]),
            RingElement(self.poly, x.payload[1]),
        )

    def embed(self, x: RingElement) -> RingElement:
        if x.ring.key != self.poly.key:
            raise RingMismatchError("can only embed base-ring elements")
        return self.el((x.payload, self.poly.one_payload()))

    def format(self, a):
        return f"({self.poly.format(a[0])})/({self.poly.format(a[1])})"

    def parse_payload(self, text):
        t = text.strip()
        m = re.fullmatch(r"\((.*)\)\s*/\s*\((.*)\)", t, flags=re.S)
        if m:
            num = self.poly.parse_payload(m.group(1))
            den = self.poly.parse_payload(m.group(2))
            return self._normalize(num, den)
        return self._normalize(self.poly.parse_payload(t), self.poly.one_payload())


def fraction_field(domain: Ring):
    """Fraction field together with the embedding of the domain.

    Known isomorphisms are normalized: Quot(Z) is Q and the fraction
    field of a field is the field itself.
    """
    if isinstance(domain, IntegerRing):
        return QQ, lambda x: QQ.el(Fraction(x.payload))
    if domain.is_field:
        return domain, lambda x: x
    if isinstance(domain, PolynomialRing):
        field = RationalFunctionField(domain)
        return field, field.embed
    raise ValueError(f"no fraction field construction for {domain.name}")


# ---------------------------------------------------------------------------
# misc shared helpers


def const_term(f: RingElement) -> RingElement:
    """Coefficient of the all-zero monomial, as a base-ring element."""
    ring = f.ring
    if not isinstance(ring, PolynomialRing):
        raise RingMismatchError(f"{ring.name} is not a polynomial ring")
    return RingElement(ring.base, ring.const_coef(f.payload))


def arith(op_tag: str, a: RingElement, b: Optional[RingElement] = None) -> RingElement:
    """Tagged exact ring operation; the functional face of RingElement ops."""
    if op_tag == "neg":
        return -a
    if b is None:
        raise ValueError(f"{op_tag} needs two operands")
    if op_tag == "add":
        return a + b
    if op_tag == "sub":
        return a - b
    if op_tag == "mul":
        return a * b
    raise ValueError(f"unknown operation tag {op_tag!r}")


def poly_ring(base: Ring, *variables: str) -> PolynomialRing:
    return PolynomialRing(base, variables)

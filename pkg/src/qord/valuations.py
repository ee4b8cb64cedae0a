"""Valuations on commutative rings: v(0)=inf, v(1)=0, v(xy)=v(x)+v(y) and
the ultrametric inequality v(x+y) >= min(v(x), v(y)).

Constructors cover p-adic valuations, trivial valuations with a declared
prime support, Gauss extensions to polynomial rings, extensions to
fraction fields, composites along a residue-level valuation, and the
quotient valuation w/v on a residue class domain.  Manis (surjectivity)
and locality are structural flags set by each constructor together with
explicit preimage witnesses; they are never inferred by search.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, List, Optional, Sequence

from .groups import (
    INF,
    TRIVIAL_GROUP,
    Z_GROUP,
    GroupMismatchError,
    ValueGroup,
    format_value,
    lex_product,
    value_add,
    value_cmp,
    value_le,
    value_lt,
    value_neg,
    value_sub,
)
from .report import FAIL, PASS, CheckResult, PreconditionError
from .rings import (
    Ideal,
    IntegerModRing,
    IntegerRing,
    PolynomialRing,
    QuotientRing,
    RationalField,
    RationalFunctionField,
    Ring,
    RingElement,
    RingMismatchError,
    SupportIdeal,
    ZeroIdeal,
    fraction_field,
    quotient_ring,
)

IN_SUPPORT = "in-support"
IN_IV = "in-Iv"
IN_UV = "in-Uv"
OUTSIDE_RV = "outside-Rv"


class Valuation:
    """A valuation descriptor with a pure, memoized evaluation map."""

    def __init__(
        self,
        ring: Ring,
        group: ValueGroup,
        eval_payload: Callable,
        name: str,
        *,
        support: Optional[Ideal] = None,
        manis: bool = False,
        local: bool = False,
        preimage_fn: Optional[Callable] = None,
        provenance: str = "custom",
    ):
        self.ring = ring
        self.group = group
        self._eval_payload = eval_payload
        self.name = name
        self.manis = manis
        self.local = local
        self.provenance = provenance
        self._preimage_fn = preimage_fn
        self._memo: dict = {}
        self._preimage_memo: dict = {}
        # support defaults to the eval-based ideal; concrete ideals are
        # attached by constructors that know them.
        self._support_concrete = None
        if support is not None and not isinstance(support, SupportIdeal):
            self._support_concrete = support
        self.support = support if support is not None else SupportIdeal(self)
        self._residue_ring = None
        self._residue_concrete = None  # (ring, to_concrete, from_concrete)

    # ------------------------------------------------------------------
    def _eval_memo(self, payload):
        try:
            v = self._memo.get(payload)
        except TypeError:  # unhashable payload: evaluate directly
            return self._eval_payload(payload)
        if v is None:
            v = self._eval_payload(payload)
            self._memo[payload] = v
        return v

    def __call__(self, x: RingElement):
        if x.ring.key != self.ring.key:
            raise RingMismatchError(
                f"{self.name} is a valuation on {self.ring.name}, not {x.ring.name}"
            )
        return self._eval_memo(x.payload)

    @property
    def nontrivial(self) -> bool:
        return self.group.rank > 0

    def preimage(self, gamma) -> RingElement:
        """A fixed element with the requested value; Manis witnesses only."""
        if not self.manis or self._preimage_fn is None:
            raise PreconditionError(f"{self.name} is not Manis (no preimage witness)")
        gamma = self.group.check(gamma)
        if gamma not in self._preimage_memo:
            x = self._preimage_fn(gamma)
            got = self(x)
            if got != gamma:
                raise AssertionError(
                    f"preimage witness broken: {self.name}({x}) = "
                    f"{format_value(got)} != {format_value(gamma)}"
                )
            self._preimage_memo[gamma] = x
        return self._preimage_memo[gamma]

    def residue_ring(self) -> "ResidueDomainRing":
        if self._residue_ring is None:
            self._residue_ring = ResidueDomainRing(self)
        return self._residue_ring

    def __repr__(self):
        return f"Valuation({self.name} on {self.ring.name} -> {self.group.name})"


def val_eval(v: Valuation, x: RingElement):
    return v(x)


def classify_position(v: Valuation, x: RingElement) -> str:
    """Partition of the ring by the sign of v: support, Iv, Uv, outside Rv."""
    val = v(x)
    if val is INF:
        return IN_SUPPORT
    c = value_cmp(val, v.group.zero())
    if c > 0:
        return IN_IV
    if c == 0:
        return IN_UV
    return OUTSIDE_RV


def in_rv(v: Valuation, x: RingElement) -> bool:
    return value_le(v.group.zero(), v(x))


def in_iv(v: Valuation, x: RingElement) -> bool:
    return value_lt(v.group.zero(), v(x))


def in_uv(v: Valuation, x: RingElement) -> bool:
    return v(x) == v.group.zero()


# ---------------------------------------------------------------------------
# residue class domain


class ResidueDomainRing(Ring):
    """Rv = R_v/I_v with representatives from R_v.

    Equality is v(a-b) > 0.  When the parent valuation has a recognized
    residue structure (a prime field or the rationals), elements carry a
    canonical representative obtained through that concrete ring.
    """

    kind = "residue-domain"

    def __init__(self, val: Valuation):
        self.val = val
        self.parent = val.ring
        self.name = f"Rv({val.name})"
        concrete = val._residue_concrete
        self.concrete_ring = concrete[0] if concrete else None
        self._to_c = concrete[1] if concrete else None
        self._from_c = concrete[2] if concrete else None
        self.canonical_eq = concrete is not None
        self.is_field = val.local
        self.is_domain = True

    @property
    def key(self):
        return self.name

    def zero_payload(self):
        return self.parent.zero_payload()

    def one_payload(self):
        return self.parent.one_payload()

    def int_payload(self, n):
        return self.canon(self.parent.int_payload(n))

    def add(self, a, b):
        return self.canon(self.parent.add(a, b))

    def neg(self, a):
        return self.canon(self.parent.neg(a))

    def mul(self, a, b):
        return self.canon(self.parent.mul(a, b))

    def eq(self, a, b):
        diff = self.parent.sub(a, b)
        return value_lt(self.val.group.zero(), self.val._eval_memo(diff))

    def canon(self, a):
        if self._to_c is not None:
            return self._from_c(self._to_c(a))
        return self.parent.canon(a)

    def hash_payload(self, a):
        if not self.canonical_eq:
            raise TypeError(f"elements of {self.name} are not hashable")
        return a

    def inv(self, x):
        if not self.is_field:
            raise NotImplementedError(f"{self.name} is not known to be a field")
        if self.eq(x.payload, self.zero_payload()):
            raise ZeroDivisionError("inverse of 0")
        c = self.concrete_ring
        if c is None:
            raise NotImplementedError(f"{self.name} has no concrete inverse map")
        return self.el(self._from_c(c.inv(c.el(self._to_c(x.payload))).payload))

    def format(self, a):
        return self.parent.format(self.canon(a))

    def parse_payload(self, text):
        p = self.parent.parse_payload(text)
        if not value_le(self.val.group.zero(), self.val._eval_memo(p)):
            raise ValueError(f"{text!r} is not in the valuation ring of {self.val.name}")
        return self.canon(p)

    # ------------------------------------------------------------------
    def element(self, x: RingElement) -> RingElement:
        """The residue class of a valuation-ring element."""
        if x.ring.key != self.parent.key:
            raise RingMismatchError(f"{x!r} is not in {self.parent.name}")
        if not value_le(self.val.group.zero(), self.val(x)):
            raise ValueError(f"{x} is outside the valuation ring of {self.val.name}")
        return self.el(x.payload)

    def representative(self, xbar: RingElement) -> RingElement:
        return RingElement(self.parent, xbar.payload)

    def to_concrete(self, xbar: RingElement) -> RingElement:
        if self.concrete_ring is None:
            raise NotImplementedError(f"{self.name} has no concrete residue form")
        return self.concrete_ring.el(self._to_c(xbar.payload))

    def from_concrete(self, c: RingElement) -> RingElement:
        if self.concrete_ring is None:
            raise NotImplementedError(f"{self.name} has no concrete residue form")
        return self.el(self._from_c(c.payload))

    def sample(self, universe, rng):
        if self.concrete_ring is not None:
            inner = universe._draw_in(self.concrete_ring, rng)
            return self.el(self._from_c(inner.payload))
        zero = self.val.group.zero()
        for _ in range(8):
            x = universe._draw_in(self.parent, rng)
            val = self.val._eval_memo(x.payload)
            if value_le(zero, val):
                return self.el(x.payload)
            if self.val.manis and val is not INF:
                fix = self.val.preimage(value_neg(val))
                return self.el(self.parent.mul(x.payload, fix.payload))
        return self.one()


# ---------------------------------------------------------------------------
# constructors


def _vp_int(n: int, p: int) -> object:
    if n == 0:
        return INF
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return (k,)


def padic_valuation(p: int, ring: Ring = None) -> Valuation:
    """The p-adic valuation, on Q (Manis, local) or on Z (neither)."""
    from .rings import QQ, _is_prime

    if ring is None:
        ring = QQ
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    if isinstance(ring, RationalField):

        def ev(x: Fraction):
            if x == 0:
                return INF
            return value_sub(_vp_int(x.numerator, p), _vp_int(x.denominator, p))

        v = Valuation(
            ring,
            Z_GROUP,
            ev,
            f"v_{p}",
            support=ZeroIdeal(ring),
            manis=True,
            local=True,
            preimage_fn=lambda g: ring.el(Fraction(p) ** g[0]),
            provenance="padic",
        )
        v.padic_prime = p

        def to_c(x: Fraction):
            return (x.numerator * pow(x.denominator, -1, p)) % p

        v._residue_concrete = (IntegerModRing(p), to_c, lambda k: Fraction(k))
        return v
    if isinstance(ring, IntegerRing):
        v = Valuation(
            ring,
            Z_GROUP,
            lambda n: _vp_int(n, p),
            f"v_{p}",
            support=ZeroIdeal(ring),
            manis=False,
            local=False,
            provenance="padic",
        )
        v.padic_prime = p
        v._residue_concrete = (IntegerModRing(p), lambda n: n % p, lambda k: k)
        return v
    raise ValueError(f"p-adic valuations live on Z or Q, not {ring.name}")


def trivial_valuation(ring: Ring, support: Optional[Ideal] = None) -> Valuation:
    """Value 0 off the declared prime support, infinity on it."""
    if support is None:
        support = ZeroIdeal(ring)
    if support.ring.key != ring.key:
        raise RingMismatchError("support ideal lives in a different ring")

    def ev(payload):
        return INF if support.contains(payload) else ()

    v = Valuation(
        ring,
        TRIVIAL_GROUP,
        ev,
        f"triv({support.describe()})",
        support=support,
        manis=True,
        local=ring.is_field and support.is_zero,
        preimage_fn=lambda g: ring.one(),
        provenance="trivial",
    )
    if support.reducible:
        target, project, section = _quotient_maps(ring, support)
        if target is not ring:
            v._residue_concrete = (
                target,
                lambda p: project(RingElement(ring, p)).payload,
                lambda c: section(RingElement(target, c)).payload,
            )
    return v


def _quotient_maps(base: Ring, ideal: Ideal):
    """(quotient ring, project, section) for reducible prime ideals."""
    target, project = quotient_ring(base, ideal)
    if target is base:
        ident = lambda x: x
        return target, ident, ident
    if isinstance(target, IntegerModRing):
        return target, project, lambda x: base.from_int(x.payload)
    if isinstance(target, PolynomialRing) and isinstance(base, PolynomialRing):
        idx = ideal.indices  # VariableIdeal quotient

        def section(x, _b=base, _t=target, _idx=idx):
            out = {}
            for exps, c in x.payload:
                it = iter(exps)
                full = tuple(0 if i in _idx else next(it) for i in range(_b.nvars))
                out[full] = c
            return RingElement(_b, _b._canon_dict(out))

        return target, project, section
    if isinstance(base, PolynomialRing) and target is base.base:

        def section(x, _b=base):
            if x.ring.eq(x.payload, x.ring.zero_payload()):
                return _b.zero()
            return RingElement(_b, (((0,) * _b.nvars, x.payload),))

        return target, project, section
    if isinstance(target, QuotientRing):
        return target, project, lambda x: RingElement(base, x.payload)
    raise ValueError(f"no section for quotient {base.name}/{ideal.describe()}")


def gauss_on(u: Valuation, poly: PolynomialRing, gammas: Sequence[int]) -> Valuation:
    """Extend u to a polynomial ring by min over monomials of u(coef)+sum(e_i*g_i).

    The value group is Z; the base group must be trivial or Z.  The Manis
    flag is set only for the recognized witness patterns: a Manis base on
    a field with the same value group (constant witnesses), or a trivial
    base with both a +1 and a -1 twist (variable-power witnesses).
    """
    if poly.base.key != u.ring.key:
        raise RingMismatchError(
            f"{poly.name} is not a polynomial ring over {u.ring.name}"
        )
    if u.group.rank > 1:
        raise GroupMismatchError("gauss extension supports base groups 0 and Z only")
    gammas = tuple(int(g) for g in gammas)
    if len(gammas) != poly.nvars:
        raise ValueError("need one gamma per variable")

    def embed(val):
        if val is INF:
            return INF
        return val if u.group.rank == 1 else (0,)

    def ev(payload):
        best = INF
        for exps, coef in payload:
            c = embed(u._eval_memo(coef))
            if c is INF:
                continue
            term = (c[0] + sum(e * g for e, g in zip(exps, gammas)),)
            if best is INF or term < best:
                best = term
        return best

    manis = False
    preimage = None
    if u.ring.is_field and u.manis and u.group.rank == 1:
        manis = True

        def preimage(g, _p=poly):
            c = u.preimage(g)
            return _p.el((((0,) * _p.nvars, c.payload),))

    elif u.group.rank == 0:
        pos = next((i for i, g in enumerate(gammas) if g == 1), None)
        neg = next((i for i, g in enumerate(gammas) if g == -1), None)
        if pos is not None and neg is not None:
            manis = True

            def preimage(g, _p=poly, _pos=pos, _neg=neg):
                n = g[0]
                var = _p.variables[_pos] if n >= 0 else _p.variables[_neg]
                return _p.var(var) ** abs(n)

    support = ZeroIdeal(poly) if u.support.is_zero else None
    gname = ",".join(str(g) for g in gammas)
    v = Valuation(
        poly,
        Z_GROUP,
        ev,
        f"gauss({u.name};{gname})",
        support=support,
        manis=manis,
        local=False,
        preimage_fn=preimage,
        provenance="gauss",
    )
    v.gauss_base = u
    v.gauss_gammas = gammas
    return v


def gauss_valuation(u: Valuation, gammas: Sequence[int]) -> Valuation:
    """Gauss extension onto a fresh polynomial ring with default variables."""
    defaults = ("X", "Y", "Z", "W")
    k = len(tuple(gammas))
    names = defaults[:k] if k <= len(defaults) else tuple(f"X{i}" for i in range(k))
    return gauss_on(u, PolynomialRing(u.ring, names), gammas)


def degree_valuation(poly: PolynomialRing) -> Valuation:
    """f maps to -deg f: the Gauss extension of the trivial valuation by -1."""
    if poly.nvars != 1:
        raise ValueError("degree valuation wants a univariate polynomial ring")
    return gauss_on(trivial_valuation(poly.base), poly, (-1,))


def frac_extend_val(v: Valuation, uniformizer: Optional[RingElement] = None) -> Valuation:
    """Extend v to the fraction field of v.ring/supp(v) by v(x)-v(y).

    The result is always Manis onto the group generated by the image; a
    preimage witness comes from v itself when v is Manis, otherwise from
    the supplied uniformizer (an element of value +-1 in a rank-1 group).
    """
    base = v.ring
    qring, project, section = _quotient_maps(base, v.support)
    if qring is base:
        vq = v
    else:
        vq = Valuation(
            qring,
            v.group,
            lambda p: v._eval_memo(section(RingElement(qring, p)).payload),
            f"{v.name}'",
            support=ZeroIdeal(qring),
            manis=v.manis,
            local=qring.is_field,
            preimage_fn=(lambda g: project(v.preimage(g))) if v.manis else None,
            provenance="quotient-transport",
        )
        vq._residue_concrete = v._residue_concrete
    K, embed = fraction_field(qring)
    if K is qring:
        return vq

    if isinstance(K, RationalField):

        def ev(x: Fraction):
            if x == 0:
                return INF
            num = vq._eval_memo(x.numerator)
            den = vq._eval_memo(x.denominator)
            return value_sub(num, den)

    else:

        def ev(payload):
            num, den = payload
            if not num:
                return INF
            return value_sub(vq._eval_memo(num), vq._eval_memo(den))

    if uniformizer is None and not vq.manis and getattr(v, "padic_prime", None):
        uniformizer = base.from_int(v.padic_prime)

    preimage_fn = None
    if vq.manis:

        def preimage_fn(g):
            return embed(vq.preimage(g))

    elif uniformizer is not None:
        if v.group.rank != 1:
            raise ValueError("uniformizer witnesses need a rank-1 group")
        t = project(uniformizer) if uniformizer.ring.key == base.key else uniformizer
        tval = vq(t)
        if tval is INF or abs(tval[0]) != 1:
            raise ValueError(f"uniformizer must have value +-1, got {format_value(tval)}")
        sign = tval[0]

        def preimage_fn(g, _t=t, _s=sign):
            k = g[0] * _s
            if k >= 0:
                return embed(_t ** k)
            return K.inv(embed(_t ** (-k)))

    else:
        raise ValueError(
            f"cannot extend {v.name}: no Manis witness and no uniformizer supplied"
        )

    nu = Valuation(
        K,
        v.group,
        ev,
        f"{v.name}~",
        support=ZeroIdeal(K),
        manis=True,
        local=True,
        preimage_fn=preimage_fn,
        provenance="fraction-extension",
    )
    nu.frac_base = v
    _attach_fraction_residue(nu, v, K)
    return nu


def _attach_fraction_residue(nu: Valuation, v: Valuation, K: Ring):
    if isinstance(K, RationalField) and getattr(v, "padic_prime", None):
        p = v.padic_prime

        def to_c(x: Fraction):
            return (x.numerator * pow(x.denominator, -1, p)) % p

        nu._residue_concrete = (IntegerModRing(p), to_c, lambda k: Fraction(k))
        nu.padic_prime = p
        return
    if isinstance(K, RationalFunctionField):
        base_u = getattr(v, "gauss_base", None)
        gammas = getattr(v, "gauss_gammas", None)
        if base_u is not None and base_u.group.rank == 0 and gammas == (-1,):
            poly = K.poly

            def lc_fraction(payload):
                num, den = payload
                dn = poly.degree(num)
                dd = poly.degree(den)
                if dn < dd:
                    return Fraction(0)
                if dn > dd:
                    raise ValueError("element is outside the valuation ring")
                return Fraction(poly.leading_coef(num)) / Fraction(poly.leading_coef(den))

            def from_c(q: Fraction, _p=poly):
                if q == 0:
                    return ((), _p.one_payload())
                if isinstance(_p.base, RationalField):
                    num = (((0,) * _p.nvars, q),)
                    den = _p.one_payload()
                else:
                    num = (((0,) * _p.nvars, q.numerator),)
                    den = (((0,) * _p.nvars, q.denominator),)
                return K._normalize(num, den)

            from .rings import QQ

            nu._residue_concrete = (QQ, lc_fraction, from_c)


def transport_to_residue(u: Valuation, residue: ResidueDomainRing) -> Valuation:
    """Move a valuation on the concrete residue ring up to Rv itself."""
    if residue.concrete_ring is None:
        raise ValueError(f"{residue.name} has no concrete residue form")
    if u.ring.key != residue.concrete_ring.key:
        raise RingMismatchError(
            f"{u.name} lives on {u.ring.name}, expected {residue.concrete_ring.name}"
        )

    def ev(payload):
        return u._eval_memo(residue._to_c(payload))

    pre = None
    if u.manis:

        def pre(g):
            return residue.el(residue._from_c(u.preimage(g).payload))

    w = Valuation(
        residue,
        u.group,
        ev,
        f"{u.name}@{residue.name}",
        support=ZeroIdeal(residue),
        manis=u.manis,
        local=u.local,
        preimage_fn=pre,
        provenance="residue-transport",
    )
    w.transport_base = u
    return w


def composite_valuation(
    v: Valuation, u: Valuation, section_uniformizers: Sequence[RingElement]
) -> Valuation:
    """w(x) = (v(x), u(residue of x*s(-v(x)))) in the lexicographic product.

    s is the multiplicative section generated by one fixed preimage per
    basis generator of v's group; u lives on v's residue domain (or on
    its concrete form, in which case it is transported automatically).
    """
    if not v.manis:
        raise PreconditionError(f"composite needs a Manis base, {v.name} is not")
    if not v.ring.is_field:
        raise ValueError("composite valuations are built over field valuations here")
    residue = v.residue_ring()
    if u.ring.key != residue.key:
        u = transport_to_residue(u, residue)
    sections = list(section_uniformizers)
    if len(sections) != v.group.rank:
        raise ValueError("need one section uniformizer per basis generator")
    for i, s in enumerate(sections):
        if s.ring.key != v.ring.key:
            raise RingMismatchError("section uniformizers live in the base ring")
        want = tuple(1 if j == i else 0 for j in range(v.group.rank))
        if v(s) != want:
            raise ValueError(
                f"section uniformizer {s} has value {format_value(v(s))}, wanted {want}"
            )

    field = v.ring
    section_memo: dict = {}

    def sect(gamma):
        if gamma not in section_memo:
            out = field.one()
            for g, s in zip(gamma, sections):
                if g >= 0:
                    out = out * (s ** g)
                else:
                    out = out * (field.inv(s) ** (-g))
            section_memo[gamma] = out
        return section_memo[gamma]

    group = lex_product(v.group, u.group)

    def ev(payload):
        gamma = v._eval_memo(payload)
        if gamma is INF:
            return INF
        unit = field.mul(payload, sect(value_neg(gamma)).payload)
        delta = u._eval_memo(residue.canon(unit))
        if delta is INF:
            return INF
        return gamma + delta

    pre = None
    if u.manis:

        def pre(g, _vr=v.group.rank):
            gamma, delta = g[:_vr], g[_vr:]
            rep = residue.representative(u.preimage(delta))
            return sect(gamma) * rep

    w = Valuation(
        field,
        group,
        ev,
        f"comp({v.name},{u.name})",
        support=ZeroIdeal(field),
        manis=v.manis and u.manis,
        local=True,
        preimage_fn=pre,
        provenance="composite",
    )
    w.composite_base = v
    w.composite_upper = u
    w.composite_sections = tuple(sections)
    return w


def quotient_val(
    w: Valuation, v: Valuation, universe, samples: int = 200
) -> Valuation:
    """The valuation w/v on Rv: infinity on I_v, else (the u-part of) w(a).

    Precondition, checked on samples: v is Manis and the quasi-order of w
    is v-compatible, i.e. w(z) <= w(y) implies v(z) <= v(y).
    """
    if w.ring.key != v.ring.key:
        raise RingMismatchError("w and v must live on the same ring")
    if not v.manis:
        raise PreconditionError(f"quotient valuation needs Manis v, {v.name} is not")
    for y, z in universe.pairs(samples, f"quotient_val({w.name},{v.name})"):
        if value_le(w(z), w(y)) and not value_le(v(z), v(y)):
            raise PreconditionError(
                f"{v.name} is not compatible with the quasi-order of {w.name}",
                witness=(str(y), str(z)),
            )
    residue = v.residue_ring()
    supports_equal = all(
        (v(x) is INF) == (w(x) is INF)
        for x in universe.singles(samples, f"supports({w.name},{v.name})")
    )
    zero_v = v.group.zero()

    if getattr(w, "composite_base", None) is v:
        upper = w.composite_upper
        group = upper.group
        vr = v.group.rank

        def ev(payload):
            if value_lt(zero_v, v._eval_memo(payload)):
                return INF
            return w._eval_memo(payload)[vr:]

        pre = (lambda g: upper.preimage(g)) if upper.manis else None
        manis = upper.manis
    elif w is v:
        group = TRIVIAL_GROUP

        def ev(payload):
            if value_lt(zero_v, v._eval_memo(payload)):
                return INF
            return ()

        pre = lambda g: residue.one()
        manis = True
    else:
        group = w.group

        def ev(payload):
            if value_lt(zero_v, v._eval_memo(payload)):
                return INF
            return w._eval_memo(payload)

        manis = w.manis and supports_equal
        pre = None
        if manis:

            def pre(g):
                x = w.preimage(g)
                if v(x) != zero_v:
                    raise PreconditionError(
                        f"preimage {x} of {format_value(g)} is not a v-unit"
                    )
                return residue.element(x)

    q = Valuation(
        residue,
        group,
        ev,
        f"{w.name}/{v.name}",
        support=ZeroIdeal(residue),
        manis=manis,
        local=False,
        preimage_fn=pre,
        provenance="quotient",
    )
    q.quotient_of = (w, v)
    return q


def scaled_valuation(v: Valuation, k: int) -> Valuation:
    """v scaled by a positive integer; order-equivalent to v."""
    if k <= 0:
        raise ValueError("scale must be positive")

    def ev(payload):
        val = v._eval_memo(payload)
        if val is INF:
            return INF
        return tuple(k * c for c in val)

    return Valuation(
        v.ring,
        v.group,
        ev,
        f"{k}*{v.name}",
        support=v.support,
        manis=False,
        local=v.local,
        provenance="scaled",
    )


# ---------------------------------------------------------------------------
# checks


def _result(name, ok, witness, n, seed, detail=None):
    return CheckResult(
        name=name,
        status=PASS if ok else FAIL,
        witness=None if ok else witness,
        samples_used=n,
        seed=seed,
        detail=detail,
    )


def check_val_axioms(v: Valuation, universe, samples: int = 500, label: str = None):
    """V1-V4, the min-equality lemma, and primeness of the support."""
    label = label or v.name
    seed = universe.seed
    out: List[CheckResult] = []
    zero = v.group.zero()

    out.append(
        _result(f"{label}.V1", v(v.ring.zero()) is INF, ("0",), 1, seed)
    )
    out.append(
        _result(f"{label}.V2", v(v.ring.one()) == zero, ("1",), 1, seed)
    )

    pairs = universe.pairs(samples, f"val_axioms:{label}")

    def sweep(name, pred):
        witness = None
        for x, y in pairs:
            if not pred(x, y):
                witness = (str(x), str(y))
                break
        out.append(_result(f"{label}.{name}", witness is None, witness, len(pairs), seed))

    sweep("V3", lambda x, y: v(x * y) == value_add(v(x), v(y)))
    sweep(
        "V4",
        lambda x, y: value_le(
            v(x) if value_le(v(x), v(y)) else v(y), v(x + y)
        ),
    )

    def valmin(x, y):
        vx, vy = v(x), v(y)
        if vx == vy:
            return True
        lo = vx if value_le(vx, vy) else vy
        return v(x + y) == lo

    sweep("valmin", valmin)
    sweep(
        "support-prime",
        lambda x, y: (v(x * y) is not INF) or (v(x) is INF) or (v(y) is INF),
    )

    witness = None
    singles = universe.singles(samples, f"support-agree:{label}")
    for x in singles:
        if v.support.contains(x.payload) != (v(x) is INF):
            witness = (str(x),)
            break
    out.append(
        _result(f"{label}.support-agree", witness is None, witness, len(singles), seed)
    )
    return out


def coarsening_check(v: Valuation, w: Valuation, universe, samples: int = 500,
                     label: str = None):
    """Containments R_w in R_v and I_v in I_w, plus the order-transfer laws.

    The verdict entry passes exactly when both containments hold on the
    samples, i.e. when v looks like a coarsening of w.
    """
    if v.ring.key != w.ring.key:
        raise RingMismatchError("coarsening_check wants valuations on one ring")
    label = label or f"coarsening({v.name},{w.name})"
    seed = universe.seed
    out: List[CheckResult] = []
    singles = universe.singles(samples, label)
    pairs = universe.pairs(samples, label)
    zv, zw = v.group.zero(), w.group.zero()

    def sweep_single(name, pred):
        witness = None
        for x in singles:
            if not pred(x):
                witness = (str(x),)
                break
        out.append(_result(f"{label}.{name}", witness is None, witness, len(singles), seed))
        return witness is None

    rw_ok = sweep_single(
        "Rw-in-Rv", lambda x: not value_le(zw, w(x)) or value_le(zv, v(x))
    )
    iv_ok = sweep_single(
        "Iv-in-Iw", lambda x: not value_lt(zv, v(x)) or value_lt(zw, w(x))
    )

    def sweep_pair(name, pred):
        witness = None
        for x, y in pairs:
            if not pred(x, y):
                witness = (str(x), str(y))
                break
        out.append(_result(f"{label}.{name}", witness is None, witness, len(pairs), seed))

    sweep_pair(
        "transfer-1", lambda x, y: not value_le(w(x), w(y)) or value_le(v(x), v(y))
    )
    sweep_pair(
        "transfer-2",
        lambda x, y: not (value_le(w(x), w(y)) and value_le(zv, v(x)))
        or value_le(zv, v(y)),
    )
    sweep_pair(
        "transfer-3",
        lambda x, y: not (value_le(w(x), w(y)) and value_lt(zv, v(x)))
        or value_lt(zv, v(y)),
    )

    if v.manis and w.manis and v.nontrivial and w.nontrivial:
        witness = None
        for x in singles:
            if (v(x) is INF) != (w(x) is INF):
                witness = (str(x),)
                break
        out.append(
            _result(f"{label}.supports-equal", witness is None, witness, len(singles), seed)
        )

    verdict = rw_ok and iv_ok
    out.append(
        CheckResult(
            name=f"{label}.is-coarsening",
            status=PASS if verdict else FAIL,
            witness=None,
            samples_used=len(singles),
            seed=seed,
            detail="v <= w" if verdict else "containment failed",
        )
    )
    return out


def is_coarsening(v: Valuation, w: Valuation, universe, samples: int = 500) -> bool:
    zv, zw = v.group.zero(), w.group.zero()
    for x in universe.singles(samples, f"is_coarsening({v.name},{w.name})"):
        if value_le(zw, w(x)) and not value_le(zv, v(x)):
            return False
        if value_lt(zv, v(x)) and not value_lt(zw, w(x)):
            return False
    return True


def equivalent_check(v: Valuation, w: Valuation, universe, samples: int = 500,
                     label: str = None):
    """Both directions of: v(x) <= v(y) iff w(x) <= w(y), on sampled pairs."""
    if v.ring.key != w.ring.key:
        raise RingMismatchError("equivalent_check wants valuations on one ring")
    label = label or f"equivalent({v.name},{w.name})"
    seed = universe.seed
    pairs = universe.pairs(samples, label)
    out: List[CheckResult] = []
    fwd = next(
        (
            (str(x), str(y))
            for x, y in pairs
            if value_le(v(x), v(y)) and not value_le(w(x), w(y))
        ),
        None,
    )
    bwd = next(
        (
            (str(x), str(y))
            for x, y in pairs
            if value_le(w(x), w(y)) and not value_le(v(x), v(y))
        ),
        None,
    )
    out.append(_result(f"{label}.forward", fwd is None, fwd, len(pairs), seed))
    out.append(_result(f"{label}.backward", bwd is None, bwd, len(pairs), seed))
    out.append(
        CheckResult(
            name=f"{label}.equivalent",
            status=PASS if (fwd is None and bwd is None) else FAIL,
            witness=fwd or bwd,
            samples_used=len(pairs),
            seed=seed,
        )
    )
    return out


def are_equivalent(v: Valuation, w: Valuation, universe, samples: int = 500) -> bool:
    for x, y in universe.pairs(samples, f"are_equivalent({v.name},{w.name})"):
        if value_le(v(x), v(y)) != value_le(w(x), w(y)):
            return False
    return True

"""Quasi-orders on commutative rings.

A quasi-order is a reflexive, transitive, total relation satisfying QR1
through QR5; it is either a ring order or the divisibility relation
x <= y iff v(y) <= v(x) of a valuation.  Quasi-orders are intensional
here: pure comparator functions, never enumerated relations, and two of
them are only ever compared by agreement on a sample universe.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, List, Optional

from .groups import value_le
from .report import FAIL, PASS, CheckResult, PreconditionError
from .rings import (
    Ideal,
    IntegerRing,
    PolynomialRing,
    RationalField,
    RationalFunctionField,
    Ring,
    RingElement,
    RingMismatchError,
    VariableIdeal,
    ZeroIdeal,
    fraction_field,
)
from .valuations import ResidueDomainRing, Valuation

ORDER = "order"
PROPER = "proper-quasi-order"

STRICTLY_LESS = "strictly-less"
EQUIVALENT = "equivalent"
STRICTLY_GREATER = "strictly-greater"


class QuasiOrder:
    """A quasi-order descriptor exposing a pure comparator for x <= y."""

    def __init__(
        self,
        ring: Ring,
        compare_payload: Callable,
        name: str,
        *,
        provenance: str = "custom",
        support_ideal: Optional[Ideal] = None,
        expected_kind: Optional[str] = None,
    ):
        self.ring = ring
        self._compare_payload = compare_payload
        self.name = name
        self.provenance = provenance
        self.support_ideal = support_ideal
        self.expected_kind = expected_kind
        self._memo: dict = {}

    def le(self, x: RingElement, y: RingElement) -> bool:
        if x.ring.key != self.ring.key or y.ring.key != self.ring.key:
            raise RingMismatchError(
                f"{self.name} compares elements of {self.ring.name}"
            )
        key = (x.payload, y.payload)
        try:
            cached = self._memo.get(key)
        except TypeError:
            return bool(self._compare_payload(x.payload, y.payload))
        if cached is None:
            cached = bool(self._compare_payload(x.payload, y.payload))
            self._memo[key] = cached
        return cached

    def sim(self, x, y) -> bool:
        return self.le(x, y) and self.le(y, x)

    def strict(self, x, y) -> bool:
        return self.le(x, y) and not self.le(y, x)

    def __repr__(self):
        return f"QuasiOrder({self.name} on {self.ring.name})"


def qcmp(q: QuasiOrder, x: RingElement, y: RingElement) -> str:
    xy, yx = q.le(x, y), q.le(y, x)
    if xy and yx:
        return EQUIVALENT
    if xy:
        return STRICTLY_LESS
    if yx:
        return STRICTLY_GREATER
    raise PreconditionError(
        f"{q.name} is not total on ({x}, {y})", witness=(str(x), str(y))
    )


def support_member(q: QuasiOrder, x: RingElement) -> bool:
    return q.sim(x, q.ring.zero())


# ---------------------------------------------------------------------------
# constructors


def from_valuation(w: Valuation) -> QuasiOrder:
    """x <= y iff w(y) <= w(x); the proper quasi-order of a valuation."""

    def cmp(px, py):
        return value_le(w._eval_memo(py), w._eval_memo(px))

    return QuasiOrder(
        w.ring,
        cmp,
        f"qo({w.name})",
        provenance="valuation-induced",
        support_ideal=w.support,
        expected_kind=PROPER,
    )


class SignOrder:
    """A ring order given by a pure sign map into {-1, 0, +1}."""

    def __init__(self, ring: Ring, sign_payload: Callable, name: str,
                 support_ideal: Optional[Ideal] = None):
        self.ring = ring
        self.sign_payload = sign_payload
        self.name = name
        self.support_ideal = support_ideal

    def sign(self, x: RingElement) -> int:
        if x.ring.key != self.ring.key:
            raise RingMismatchError(f"{self.name} is a sign map on {self.ring.name}")
        return self.sign_payload(x.payload)


def from_sign_order(s: SignOrder) -> QuasiOrder:
    """x <= y iff sign(y - x) >= 0."""
    ring = s.ring

    def cmp(px, py):
        return s.sign_payload(ring.sub(py, px)) >= 0

    return QuasiOrder(
        ring,
        cmp,
        s.name,
        provenance="sign-order",
        support_ideal=s.support_ideal,
        expected_kind=ORDER,
    )


def _num_sign(x) -> int:
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


def natural_order(ring: Ring) -> QuasiOrder:
    """The unique order of Z or Q."""
    if not isinstance(ring, (IntegerRing, RationalField)):
        raise ValueError(f"no natural order on {ring.name}")
    return from_sign_order(
        SignOrder(ring, _num_sign, f"leq({ring.name})", ZeroIdeal(ring))
    )


def const_term_order(poly: PolynomialRing) -> QuasiOrder:
    """f >= 0 iff the constant term of f is >= 0; support is <variables>."""
    if not isinstance(poly.base, (IntegerRing, RationalField)):
        raise ValueError(f"no constant-term order over {poly.base.name}")

    def sgn(p):
        return _num_sign(poly.const_coef(p))

    return from_sign_order(
        SignOrder(
            poly,
            sgn,
            f"leq0({poly.name})",
            VariableIdeal(poly, poly.variables),
        )
    )


def leading_term_order(field: RationalFunctionField) -> QuasiOrder:
    """Order of a univariate function field by behavior at +infinity."""
    poly = field.poly
    if poly.nvars != 1:
        raise ValueError("leading-term order wants a univariate function field")

    def sgn(p):
        num, den = p
        if not num:
            return 0
        return _num_sign(poly.leading_coef(num)) * _num_sign(poly.leading_coef(den))

    return from_sign_order(
        SignOrder(field, sgn, f"leqinf({field.name})", ZeroIdeal(field))
    )


def at_zero_order(field: RationalFunctionField) -> QuasiOrder:
    """Order of a univariate function field by behavior as the variable -> 0+."""
    poly = field.poly
    if poly.nvars != 1:
        raise ValueError("at-zero order wants a univariate function field")

    def lowest_coef(q):
        best = None
        for (e,), c in q:
            if best is None or e < best[0]:
                best = (e, c)
        return best[1] if best else 0

    def sgn(p):
        num, den = p
        if not num:
            return 0
        return _num_sign(lowest_coef(num)) * _num_sign(lowest_coef(den))

    return from_sign_order(
        SignOrder(field, sgn, f"leq0+({field.name})", ZeroIdeal(field))
    )


def transport_qo(q: QuasiOrder, residue: ResidueDomainRing) -> QuasiOrder:
    """Move a quasi-order on the concrete residue ring up to Rv itself."""
    if residue.concrete_ring is None:
        raise ValueError(f"{residue.name} has no concrete residue form")
    if q.ring.key != residue.concrete_ring.key:
        raise RingMismatchError(
            f"{q.name} lives on {q.ring.name}, expected {residue.concrete_ring.name}"
        )

    def cmp(pa, pb):
        return q._compare_payload(residue._to_c(pa), residue._to_c(pb))

    return QuasiOrder(
        residue,
        cmp,
        f"{q.name}@{residue.name}",
        provenance="residue-transport",
        support_ideal=ZeroIdeal(residue),
        expected_kind=q.expected_kind,
    )


def frac_extend_qo(q: QuasiOrder) -> QuasiOrder:
    """Extend a quasi-order with support {0} on a domain to its fraction field.

    The rule compares cross-multiplied squares: x/y <= a/b iff
    x*y*b^2 <= a*b*y^2 back in the domain.
    """
    domain = q.ring
    K, _ = fraction_field(domain)
    if K is domain:
        return q
    dom = domain

    if isinstance(K, RationalField) and isinstance(domain, IntegerRing):

        def cmp(pa: Fraction, pb: Fraction):
            x, y = pa.numerator, pa.denominator
            a, b = pb.numerator, pb.denominator
            return q._compare_payload(x * y * b * b, a * b * y * y)

    else:

        def cmp(pa, pb):
            x, y = pa
            a, b = pb
            left = dom.mul(dom.mul(x, y), dom.mul(b, b))
            right = dom.mul(dom.mul(a, b), dom.mul(y, y))
            return q._compare_payload(left, right)

    return QuasiOrder(
        K,
        cmp,
        f"{q.name}~",
        provenance="fraction-extended",
        support_ideal=ZeroIdeal(K),
        expected_kind=q.expected_kind,
    )


# ---------------------------------------------------------------------------
# classification


def classify_qo(q: QuasiOrder) -> str:
    """'order' when -1 < 0, 'proper-quasi-order' when 0 < -1.

    Proper quasi-orders put every element above 0, so the sign of -1
    decides the dichotomy.
    """
    zero = q.ring.zero()
    minus_one = -q.ring.one()
    c = qcmp(q, zero, minus_one)
    if c == STRICTLY_LESS:
        return PROPER
    if c == STRICTLY_GREATER:
        return ORDER
    raise PreconditionError(
        f"{q.name} has -1 ~ 0; its support would contain 1", witness=("-1",)
    )


def classify_check(q: QuasiOrder, label: str = None, seed: int = 0) -> CheckResult:
    label = label or q.name
    kind = classify_qo(q)
    mismatch = q.expected_kind is not None and q.expected_kind != kind
    return CheckResult(
        name=f"{label}.classify",
        status=FAIL if mismatch else PASS,
        witness=None if not mismatch else (kind, q.expected_kind),
        samples_used=1,
        seed=seed,
        detail=kind if not mismatch else f"classified {kind}, provenance expected {q.expected_kind}",
    )


# ---------------------------------------------------------------------------
# axiom checker


def _result(name, ok, witness, n, seed, detail=None):
    return CheckResult(
        name=name,
        status=PASS if ok else FAIL,
        witness=None if ok else witness,
        samples_used=n,
        seed=seed,
        detail=detail,
    )


def check_qo_axioms(q: QuasiOrder, universe, samples: int = 500, label: str = None):
    """Reflexivity, totality, transitivity, QR1-QR5, and primeness of E_0."""
    label = label or q.name
    seed = universe.seed
    out: List[CheckResult] = []
    zero = q.ring.zero()
    one = q.ring.one()

    singles = universe.singles(samples, f"qo:{label}:1")
    pairs = universe.pairs(samples, f"qo:{label}:2")
    triples = universe.triples(samples, f"qo:{label}:3")

    w = next(((str(x),) for x in singles if not q.le(x, x)), None)
    out.append(_result(f"{label}.reflexive", w is None, w, len(singles), seed))

    w = next(
        ((str(x), str(y)) for x, y in pairs if not (q.le(x, y) or q.le(y, x))), None
    )
    out.append(_result(f"{label}.total", w is None, w, len(pairs), seed))

    w = next(
        (
            (str(x), str(y), str(z))
            for x, y, z in triples
            if q.le(x, y) and q.le(y, z) and not q.le(x, z)
        ),
        None,
    )
    out.append(_result(f"{label}.transitive", w is None, w, len(triples), seed))

    out.append(_result(f"{label}.QR1", q.strict(zero, one), ("0", "1"), 1, seed))

    w = next(
        (
            (str(x), str(y))
            for x, y in pairs
            if q.le(x * y, zero) and not (q.le(x, zero) or q.le(y, zero))
        ),
        None,
    )
    out.append(_result(f"{label}.QR2", w is None, w, len(pairs), seed))

    w = next(
        (
            (str(x), str(y), str(z))
            for x, y, z in triples
            if q.le(x, y) and q.le(zero, z) and not q.le(x * z, y * z)
        ),
        None,
    )
    out.append(_result(f"{label}.QR3", w is None, w, len(triples), seed))

    w = next(
        (
            (str(x), str(y), str(z))
            for x, y, z in triples
            if q.le(x, y) and not q.sim(z, y) and not q.le(x + z, y + z)
        ),
        None,
    )
    out.append(_result(f"{label}.QR4", w is None, w, len(triples), seed))

    w = next(
        (
            (str(x), str(y), str(z))
            for x, y, z in triples
            if q.strict(zero, z) and q.le(x * z, y * z) and not q.le(x, y)
        ),
        None,
    )
    out.append(_result(f"{label}.QR5", w is None, w, len(triples), seed))

    def support_ok(x, y):
        sx, sy = q.sim(x, zero), q.sim(y, zero)
        if sx and sy and not q.sim(x + y, zero):
            return False
        if sx and not q.sim(x * y, zero):
            return False
        if q.sim(x * y, zero) and not (sx or sy):
            return False
        return True

    w = next(((str(x), str(y)) for x, y in pairs if not support_ok(x, y)), None)
    out.append(_result(f"{label}.support-ideal", w is None, w, len(pairs), seed))
    return out


def passes_qo_axioms(q: QuasiOrder, universe, samples: int = 300) -> bool:
    return all(r.status == PASS for r in check_qo_axioms(q, universe, samples))


# ---------------------------------------------------------------------------
# derived lemma suite


def check_derived_lemmas(q: QuasiOrder, universe, samples: int = 500,
                         label: str = None):
    """The nine consequences of the axioms, each swept with its hypotheses.

    The ultrametric bound x+y <= max(x, y) only holds in the proper case
    and is gated on 0 < -1; for orders it is reported as vacuously true.
    """
    label = label or q.name
    seed = universe.seed
    out: List[CheckResult] = []
    zero = q.ring.zero()

    singles = universe.singles(samples, f"dl:{label}:1")
    pairs = universe.pairs(samples, f"dl:{label}:2")
    triples = universe.triples(samples, f"dl:{label}:3")

    w = next(
        (
            (str(x), str(y), str(z))
            for x, y, z in triples
            if not q.sim(z, zero) and q.sim(x * z, y * z) and not q.sim(x, y)
        ),
        None,
    )
    out.append(_result(f"{label}.cancel-sim", w is None, w, len(triples), seed))

    w = next(
        (
            (str(x), str(y))
            for x, y in pairs
            if q.sim(x, zero) and not q.sim(y, zero) and not q.sim(x + y, y)
        ),
        None,
    )
    out.append(_result(f"{label}.support-translate", w is None, w, len(pairs), seed))

    w = next(
        (
            (str(x),)
            for x in singles
            if q.sim(x, -x) != (q.le(zero, x) and q.le(zero, -x))
        ),
        None,
    )
    out.append(_result(f"{label}.sym-criterion", w is None, w, len(singles), seed))

    w = next(
        (
            (str(a), str(x), str(y))
            for a, x, y in triples
            if q.sim(x, y) and not q.sim(a * x, a * y)
        ),
        None,
    )
    out.append(_result(f"{label}.mul-preserves-sim", w is None, w, len(triples), seed))

    if q.strict(zero, -q.ring.one()):
        def below_max(x, y):
            hi = y if q.le(x, y) else x
            return q.le(x + y, hi)

        w = next(((str(x), str(y)) for x, y in pairs if not below_max(x, y)), None)
        out.append(_result(f"{label}.sum-below-max", w is None, w, len(pairs), seed))
    else:
        out.append(
            CheckResult(
                name=f"{label}.sum-below-max",
                status=PASS,
                samples_used=0,
                seed=seed,
                detail="gated: 0 < -1 fails, bound is vacuous",
            )
        )

    w = next(
        (
            (str(x), str(y), str(z))
            for x, y, z in triples
            if q.le(x, y) and q.le(z, zero) and not q.le(y * z, x * z)
        ),
        None,
    )
    out.append(_result(f"{label}.QR3-neg", w is None, w, len(triples), seed))

    w = next(
        (
            (str(x), str(y), str(z))
            for x, y, z in triples
            if q.le(x * z, y * z) and q.strict(z, zero) and not q.le(y, x)
        ),
        None,
    )
    out.append(_result(f"{label}.QR5-neg", w is None, w, len(triples), seed))

    w = next(
        (
            (str(c), str(x))
            for c, x in pairs
            if q.sim(c, zero) and not q.sim(c + x, x)
        ),
        None,
    )
    out.append(_result(f"{label}.class-translate", w is None, w, len(pairs), seed))

    # symmetric classes: once some y ~ x leaves the translate coset, the
    # whole class of x is closed under negation
    witness = None
    checked = 0
    for x in singles[: max(20, len(singles) // 10)]:
        has_extra = any(
            q.sim(y, x) and not q.sim(y - x, zero) for y in singles
        )
        if not has_extra:
            continue
        checked += 1
        for z in singles:
            if q.sim(z, x) and not q.sim(-z, x):
                witness = (str(x), str(z))
                break
        if witness:
            break
    out.append(
        _result(
            f"{label}.class-symmetric",
            witness is None,
            witness,
            len(singles),
            seed,
            detail=f"{checked} classes with extra members",
        )
    )
    return out

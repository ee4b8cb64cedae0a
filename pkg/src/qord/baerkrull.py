"""Lifting quasi-orders through a Manis valuation.

Fix a Manis valuation v, elements pi_i whose values represent an F2-basis
of the value group mod doubles, a sign vector eta, and a quasi-order with
support {0} on the residue class domain.  The lift compares x and y by
clearing values: gamma = max(-v(x), -v(y)) decomposes as a basis part plus
an even part 2*v(a); multiplying both sides by prod(pi_i)*a^2 lands them
in the valuation ring, where the residue quasi-order decides (with the
roles of x and y swapped when the eta-signs multiply to -1).

The round-trip maps: psi sends a v-compatible quasi-order to its sign
vector and residue quasi-order; the lift inverts psi on the admissible
set (orders with any signs, proper quasi-orders with constant +1).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .groups import (
    INF,
    GammaDecomposition,
    ValueGroup,
    mod2_decompose,
    value_cmp,
    value_lt,
    value_neg,
)
from .quasiorders import ORDER, PROPER, QuasiOrder, classify_qo, transport_qo
from .report import FAIL, PASS, CheckResult, PreconditionError
from .residues import compatible, is_compatible, residue_qo, residue_universe
from .rings import RingElement, RingMismatchError
from .sampling import SampleUniverse
from .valuations import (
    Valuation,
    _quotient_maps,
    frac_extend_val,
    in_rv,
)


def _result(name, ok, witness, n, seed, detail=None):
    return CheckResult(
        name=name,
        status=PASS if ok else FAIL,
        witness=None if ok else witness,
        samples_used=n,
        seed=seed,
        detail=detail,
    )


@dataclass(frozen=True)
class BasisData:
    """pi_i in the ring with v(pi_i) equal to the i-th chosen basis vector.

    basis_signs picks sign_i * e_i as the representative of the i-th
    F2-basis class; a -1 sign lets rings without positively-valued
    elements (like -deg) still carry a basis.
    """

    valuation: Valuation
    pis: Tuple[RingElement, ...]
    group: ValueGroup

    def __init__(self, valuation: Valuation, pis: Sequence[RingElement],
                 basis_signs: Optional[Sequence[int]] = None):
        if not valuation.manis:
            raise PreconditionError(
                f"basis data needs a Manis valuation, {valuation.name} is not"
            )
        pis = tuple(pis)
        if len(pis) != valuation.group.rank:
            raise ValueError("need one pi per basis vector")
        group = ValueGroup(
            valuation.group.rank,
            tuple(basis_signs) if basis_signs is not None else None,
        )
        for i, pi in enumerate(pis):
            got = valuation(pi)
            if got != group.basis[i]:
                raise ValueError(
                    f"pi_{i} = {pi} has value {got}, expected {group.basis[i]}"
                )
        object.__setattr__(self, "valuation", valuation)
        object.__setattr__(self, "pis", pis)
        object.__setattr__(self, "group", group)


@dataclass(frozen=True)
class EtaVector:
    signs: Tuple[int, ...]

    def __post_init__(self):
        if any(s not in (-1, 1) for s in self.signs):
            raise ValueError("eta entries must be -1 or +1")

    def __call__(self, i: int) -> int:
        return self.signs[i]

    def product_over(self, index_set) -> int:
        out = 1
        for i in index_set:
            out *= self.signs[i]
        return out


@dataclass(frozen=True)
class LiftData:
    basis: BasisData
    eta: EtaVector
    residue_qo: QuasiOrder

    def __post_init__(self):
        v = self.basis.valuation
        if len(self.eta.signs) != v.group.rank:
            raise ValueError("eta must be defined on exactly the basis index set")
        if self.residue_qo.ring.key != v.residue_ring().key:
            raise RingMismatchError(
                "residue quasi-order must live on the residue domain of v"
            )
        if classify_qo(self.residue_qo) == PROPER and any(
            s != 1 for s in self.eta.signs
        ):
            raise PreconditionError(
                "a proper residue quasi-order admits only the constant sign +1"
            )


def gamma_data(
    v: Valuation, x: RingElement, y: RingElement, basis: Optional[BasisData] = None
) -> Tuple[GammaDecomposition, RingElement, RingElement]:
    """gamma = max of the negated values (infinite summands dropped),
    its mod-2 decomposition, and the multiplier prod(pi_i) * a^2.

    Returns (decomposition, multiplier, a) with a = preimage(delta).
    """
    if basis is None:
        basis = default_basis(v)
    vx, vy = v(x), v(y)
    finite = [val for val in (vx, vy) if val is not INF]
    if not finite:
        raise PreconditionError("gamma needs an argument outside the support")
    gamma = max((value_neg(val) for val in finite))
    dec = mod2_decompose(basis.group, gamma)
    a = v.preimage(dec.delta)
    m = v.ring.one()
    for i in sorted(dec.index_set):
        m = m * basis.pis[i]
    m = m * a * a
    return dec, m, a


def default_basis(v: Valuation) -> BasisData:
    """Basis from the fixed preimages of the unit vectors."""
    cached = getattr(v, "_default_basis", None)
    if cached is None:
        pis = tuple(v.preimage(b) for b in v.group.basis)
        cached = BasisData(v, pis)
        v._default_basis = cached
    return cached


def lift(data: LiftData) -> QuasiOrder:
    """The quasi-order on the whole ring determined by (eta, residue qo).

    Proper residue quasi-orders lift by the pairwise rule: clear the
    larger value with prod(pi_i)*a^2 and compare residues.  Residue
    orders lift through the positive cone of differences instead: the
    pairwise rule applied verbatim to an order would glue elements whose
    cleared residues collide (x and x + t with v(t) > v(x)) and lose
    translation invariance, while the sign of the cleared difference is
    exactly the classical construction and inverts the residue map on
    the nose.
    """
    v = data.basis.valuation
    ring = v.ring
    rq = data.residue_qo
    group = data.basis.group
    pis = data.basis.pis
    eta = data.eta
    multiplier_cache: dict = {}

    def multiplier(dec: GammaDecomposition):
        key = (tuple(sorted(dec.index_set)), dec.delta)
        got = multiplier_cache.get(key)
        if got is None:
            a = v.preimage(dec.delta)
            m = ring.one()
            for i in key[0]:
                m = m * pis[i]
            m = m * a * a
            multiplier_cache[key] = got = m.payload
        return got

    kind = classify_qo(rq)
    zero = ring.zero_payload()

    if kind == ORDER:

        def cmp(px, py):
            t = ring.sub(py, px)
            tv = v._eval_memo(t)
            if tv is INF:
                return True
            dec = mod2_decompose(group, value_neg(tv))
            tm = ring.mul(t, multiplier(dec))
            if eta.product_over(dec.index_set) == 1:
                return rq._compare_payload(zero, tm)
            return rq._compare_payload(tm, zero)

    else:

        def cmp(px, py):
            vx = v._eval_memo(px)
            vy = v._eval_memo(py)
            if vx is INF and vy is INF:
                return True
            gamma = max(
                (value_neg(val) for val in (vx, vy) if val is not INF)
            )
            dec = mod2_decompose(group, gamma)
            m = multiplier(dec)
            xm = ring.mul(px, m)
            ym = ring.mul(py, m)
            if eta.product_over(dec.index_set) == 1:
                return rq._compare_payload(xm, ym)
            return rq._compare_payload(ym, xm)

    return QuasiOrder(
        ring,
        cmp,
        f"lift({v.name};{','.join('%+d' % s for s in eta.signs)};{rq.name})",
        provenance="lifted",
        support_ideal=v.support,
        expected_kind=kind,
    )


def extract_eta(q: QuasiOrder, basis: BasisData) -> EtaVector:
    """eta(i) = +1 exactly when 0 <= pi_i."""
    zero = q.ring.zero()
    signs = []
    for pi in basis.pis:
        if q.sim(pi, zero):
            raise PreconditionError(
                f"pi = {pi} is equivalent to 0; support violation", witness=(str(pi),)
            )
        signs.append(1 if q.le(zero, pi) else -1)
    return EtaVector(tuple(signs))


def psi(
    q: QuasiOrder,
    basis: BasisData,
    universe: SampleUniverse,
    samples: int = 400,
) -> LiftData:
    """(eta, residue quasi-order) of a v-compatible quasi-order.

    Preconditions swept on samples: compatibility, and agreement of the
    supports of q and v.
    """
    v = basis.valuation
    comp = is_compatible(v, q, universe, samples, label="psi.compat")
    if comp.status != PASS:
        raise PreconditionError(
            f"{q.name} is not {v.name}-compatible", witness=comp.witness
        )
    zero = q.ring.zero()
    for x in universe.singles(samples, "psi.support"):
        if q.sim(x, zero) != (v(x) is INF):
            raise PreconditionError(
                f"supports of {q.name} and {v.name} disagree", witness=(str(x),)
            )
    return LiftData(basis, extract_eta(q, basis), residue_qo(q, v))


def roundtrip_check(
    data: LiftData,
    universe: SampleUniverse,
    samples: int = 500,
    label: str = "roundtrip",
) -> List[CheckResult]:
    """lift then extract: eta must match exactly and the residue
    quasi-order must agree with the input on sampled residue pairs."""
    v = data.basis.valuation
    seed = universe.seed
    out: List[CheckResult] = []
    lifted = lift(data)

    got_eta = extract_eta(lifted, data.basis)
    out.append(
        _result(
            f"{label}.eta",
            got_eta == data.eta,
            (str(got_eta.signs), str(data.eta.signs)),
            len(data.eta.signs),
            seed,
        )
    )

    rq_back = residue_qo(lifted, v)
    runiverse = residue_universe(v, universe)
    witness = None
    pairs = runiverse.pairs(samples, f"{label}.residue")
    for a, b in pairs:
        if rq_back.le(a, b) != data.residue_qo.le(a, b):
            witness = (str(a), str(b))
            break
    out.append(_result(f"{label}.residue-agree", witness is None, witness, len(pairs), seed))
    return out


def reconstruct_check(
    q: QuasiOrder,
    basis: BasisData,
    universe: SampleUniverse,
    samples: int = 500,
    label: str = "reconstruct",
) -> List[CheckResult]:
    """psi then lift: the reconstruction must agree with q on sampled pairs."""
    data = psi(q, basis, universe, samples)
    lifted = lift(data)
    witness = None
    pairs = universe.pairs(samples, label)
    for x, y in pairs:
        if q.le(x, y) != lifted.le(x, y):
            witness = (str(x), str(y))
            break
    return [
        _result(f"{label}.agree", witness is None, witness, len(pairs), universe.seed)
    ]


def lift_properties_check(
    data: LiftData,
    universe: SampleUniverse,
    samples: int = 400,
    label: str = "lift-props",
) -> List[CheckResult]:
    """The structural guarantees of the lift: support, compatibility, and
    residue placement of the cleared products."""
    from .quasiorders import check_qo_axioms

    v = data.basis.valuation
    seed = universe.seed
    lifted = lift(data)
    out = check_qo_axioms(lifted, universe, samples, label=f"{label}.axioms")

    zero = lifted.ring.zero()
    witness = None
    singles = universe.singles(samples, f"{label}.support")
    for x in singles:
        if lifted.sim(x, zero) != (v(x) is INF):
            witness = (str(x),)
            break
    out.append(_result(f"{label}.support", witness is None, witness, len(singles), seed))

    out.append(is_compatible(v, lifted, universe, samples, label=f"{label}.compatible"))

    witness = None
    pairs = universe.pairs(samples, f"{label}.residue-landing")
    zero_v = v.group.zero()
    n = 0
    for x, y in pairs:
        if v(x) is INF and v(y) is INF:
            continue
        n += 1
        _dec, m, _a = gamma_data(v, x, y, data.basis)
        xm, ym = x * m, y * m
        if not (in_rv(v, xm) and in_rv(v, ym)):
            witness = (str(x), str(y))
            break
        # the cleared product vanishes in the residue exactly for the
        # argument of strictly larger value
        if value_lt(zero_v, v(xm)) != (value_cmp(v(x), v(y)) > 0) or value_lt(
            zero_v, v(ym)
        ) != (value_cmp(v(y), v(x)) > 0):
            witness = (str(x), str(y))
            break
    out.append(_result(f"{label}.residue-landing", witness is None, witness, n, seed))
    return out


# ---------------------------------------------------------------------------
# the general-valuation and special* forms


def bk3_lift(
    v: Valuation,
    eta: Sequence[int],
    residue_order: QuasiOrder,
    universe: SampleUniverse,
    samples: int = 400,
    uniformizer: Optional[RingElement] = None,
    label: str = "bk3",
) -> Tuple[QuasiOrder, QuasiOrder, List[CheckResult]]:
    """Lift at the fraction-field level, then restrict to the ring.

    v may be any valuation whose quotient by the support is a domain; the
    lift happens through the extension to Quot(R/supp), and the result is
    the restriction of that field quasi-order along the embedding.
    Returns (restricted, field-level, checks).
    """
    ring = v.ring
    qring, project, _section = _quotient_maps(ring, v.support)
    nu = frac_extend_val(v, uniformizer=uniformizer)
    K, embed = _field_embedding(qring, nu)

    if nu.manis and uniformizer is None:
        basis = default_basis(nu)
    else:
        t = embed(project(uniformizer)) if uniformizer.ring.key == ring.key else uniformizer
        sign = nu(t)[0]
        basis = BasisData(nu, (t,), basis_signs=(sign,))

    rq = residue_order
    if rq.ring.key != nu.residue_ring().key:
        rq = transport_qo(rq, nu.residue_ring())
    data = LiftData(basis, EtaVector(tuple(eta)), rq)
    lifted = lift(data)

    def cmp(px, py):
        a = embed(project(RingElement(ring, px)))
        b = embed(project(RingElement(ring, py)))
        return lifted._compare_payload(a.payload, b.payload)

    restricted = QuasiOrder(
        ring,
        cmp,
        f"{lifted.name}|{ring.name}",
        provenance="lifted-restricted",
        support_ideal=v.support,
        expected_kind=lifted.expected_kind,
    )

    out: List[CheckResult] = []
    ku = SampleUniverse(K, seed=universe.seed, count=universe.count, bounds=universe.bounds)
    verdict_r = compatible(v, restricted, universe, samples)
    verdict_k = compatible(nu, lifted, ku, samples)
    out.append(
        CheckResult(
            name=f"{label}.compat-levels-agree",
            status=PASS if verdict_r == verdict_k else FAIL,
            samples_used=samples,
            seed=universe.seed,
            detail=f"R:{verdict_r} K:{verdict_k}",
        )
    )
    return restricted, lifted, out


def _field_embedding(qring, nu):
    from .rings import fraction_field

    K2, embed = fraction_field(qring)
    if K2.key != nu.ring.key:
        raise RingMismatchError("fraction field mismatch")
    return nu.ring, (lambda x, _e=embed: RingElement(nu.ring, _e(x).payload))


def mu_restrict(
    qo_field_residue: QuasiOrder, v: Valuation,
    uniformizer: Optional[RingElement] = None,
) -> QuasiOrder:
    """Restrict a quasi-order on the residue field of the extension back
    to the residue domain of v along x + Iv -> (x/1) + I_nu."""
    ring = v.ring
    qring, project, _section = _quotient_maps(ring, v.support)
    nu = frac_extend_val(v, uniformizer=uniformizer)
    K, embed = _field_embedding(qring, nu)
    knu = nu.residue_ring()
    q = qo_field_residue
    if q.ring.key == (knu.concrete_ring.key if knu.concrete_ring else None):
        q = transport_qo(q, knu)
    if q.ring.key != knu.key:
        raise RingMismatchError(
            f"{q.name} lives on {q.ring.name}, expected {knu.name}"
        )
    rv = v.residue_ring()

    def cmp(pa, pb):
        ea = embed(project(RingElement(ring, pa)))
        eb = embed(project(RingElement(ring, pb)))
        return q._compare_payload(ea.payload, eb.payload)

    return QuasiOrder(
        rv,
        cmp,
        f"{q.name}|{rv.name}",
        provenance="residue-restricted",
        support_ideal=None,
        expected_kind=q.expected_kind,
    )

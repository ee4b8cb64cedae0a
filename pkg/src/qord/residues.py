"""Compatibility between quasi-orders and valuations.

Home of convexity sweeps, the induced quasi-order on the residue class
domain, the five-condition implication matrix, the local-valuation
criterion I_v < 1, the special* property, rank over a candidate family,
and the passage to the associated quasi-ordered field.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .groups import INF, value_le, value_lt, value_neg
from .quasiorders import (
    QuasiOrder,
    check_qo_axioms,
    classify_qo,
    frac_extend_qo,
)
from .report import FAIL, HARD, INCONCLUSIVE, PASS, CheckResult, PreconditionError
from .rings import (
    RingElement,
    RingMismatchError,
    ZeroIdeal,
    fraction_field,
)
from .sampling import SampleUniverse
from .valuations import (
    Valuation,
    _quotient_maps,
    frac_extend_val,
    in_iv,
    in_rv,
    in_uv,
    is_coarsening,
    are_equivalent,
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


# ---------------------------------------------------------------------------
# convexity and compatibility


def is_convex(
    member: Callable[[RingElement], bool],
    q: QuasiOrder,
    universe: SampleUniverse,
    samples: int = 500,
    label: str = "convex",
    require_symmetric: bool = False,
) -> CheckResult:
    """For symmetric S containing 0: sweep 0 <= y <= z, z in S implies y in S."""
    seed = universe.seed
    if require_symmetric:
        for x in universe.singles(min(samples, 100), f"{label}:sym"):
            if member(x) != member(-x):
                raise PreconditionError(
                    f"{label}: set is not symmetric at {x}", witness=(str(x),)
                )
    zero = q.ring.zero()
    pairs = universe.pairs(samples, label)
    witness = None
    # z-major: each candidate upper bound is tried against all middles, so
    # the first reported witness has the smallest possible bound
    for z, y in pairs:
        if member(z) and q.le(zero, y) and q.le(y, z) and not member(y):
            witness = (str(y), str(z))
            break
    return _result(label, witness is None, witness, len(pairs), seed)


def is_compatible(
    v: Valuation,
    q: QuasiOrder,
    universe: SampleUniverse,
    samples: int = 500,
    label: str = None,
) -> CheckResult:
    """0 <= y <= z forces v(z) <= v(y), swept over sampled pairs."""
    if v.ring.key != q.ring.key:
        raise RingMismatchError("valuation and quasi-order live on different rings")
    label = label or f"compat({v.name},{q.name})"
    zero = q.ring.zero()
    pairs = universe.pairs(samples, label)
    witness = None
    for y, z in pairs:
        if q.le(zero, y) and q.le(y, z) and not value_le(v(z), v(y)):
            witness = (str(y), str(z))
            break
    return _result(label, witness is None, witness, len(pairs), universe.seed)


def compatible(v, q, universe, samples=500) -> bool:
    return is_compatible(v, q, universe, samples).status == PASS


# ---------------------------------------------------------------------------
# the residue quasi-order


def residue_rule(q: QuasiOrder, v: Valuation) -> Callable:
    """Comparator on valuation-ring representatives: v(x-y) > 0 or x <= y.

    This replaces the existential perturbation by I_v elements in the
    definition of the induced relation; sign stability under I_v shifts
    makes the two agree whenever I_v is convex, and the representative
    invariance sweep guards the replacement.
    """
    ring = v.ring
    zero = v.group.zero()

    def rule(px, py):
        diff = ring.sub(px, py)
        if value_lt(zero, v._eval_memo(diff)):
            return True
        return q._compare_payload(px, py)

    return rule


def residue_qo(q: QuasiOrder, v: Valuation) -> QuasiOrder:
    """The induced quasi-order on Rv; meaningful once compatibility holds."""
    rule = residue_rule(q, v)
    residue = v.residue_ring()
    return QuasiOrder(
        residue,
        rule,
        f"{q.name}/{v.name}",
        provenance="residue-induced",
        support_ideal=ZeroIdeal(residue),
        expected_kind=q.expected_kind,
    )


def residue_universe(
    v: Valuation, universe: SampleUniverse, count: Optional[int] = None
) -> SampleUniverse:
    """A sample universe on Rv echoing the parent's distinguished elements."""
    residue = v.residue_ring()
    zero = v.group.zero()
    dist = []
    for x in universe.distinguished:
        if value_le(zero, v(x)):
            dist.append(residue.el(x.payload))
    return SampleUniverse(
        residue,
        seed=universe.seed,
        count=count or universe.count,
        bounds=universe.bounds,
        distinguished=tuple(dist),
    )


def residue_rule_report(
    q: QuasiOrder,
    v: Valuation,
    universe: SampleUniverse,
    samples: int = 500,
    label: str = None,
) -> List[CheckResult]:
    """Does the comparator rule define a quasi-order with support {0} on Rv?

    Three sweeps: representative invariance under sampled I_v shifts,
    support exactly {0}, and the full axiom suite on residue samples.
    """
    label = label or f"residue-rule({q.name},{v.name})"
    seed = universe.seed
    out: List[CheckResult] = []
    rule = residue_rule(q, v)
    ring = v.ring
    zero = v.group.zero()

    elems = universe.elements()
    fsize = universe.forced_size
    rv_forced = [x for x in elems[:fsize] if value_le(zero, v(x))]
    rv_elems = [x for x in elems if value_le(zero, v(x))]
    iv_elems = [c for c in elems if value_lt(zero, v(c))]

    # forced-prefix pairs first so pinned witnesses are met deterministically
    def pair_stream():
        for x in rv_forced:
            for y in rv_forced:
                yield x, y
        rng = random.Random(universe.seed ^ 0x5EED)
        while rv_elems:
            yield (
                rv_elems[rng.randrange(len(rv_elems))],
                rv_elems[rng.randrange(len(rv_elems))],
            )

    witness = None
    budget = samples * 4
    used = 0
    for x, y in pair_stream():
        if budget <= 0 or witness is not None:
            break
        base_xy = rule(x.payload, y.payload)
        base_yx = rule(y.payload, x.payload)
        for c in iv_elems[:8]:
            budget -= 3
            used += 1
            xs = ring.add(x.payload, c.payload)
            ys = ring.add(y.payload, c.payload)
            if (
                rule(xs, y.payload) != base_xy
                or rule(x.payload, ys) != base_xy
                or rule(ys, x.payload) != base_yx
            ):
                witness = (str(x), str(y), str(c))
                break
    out.append(
        _result(
            f"{label}.representative-invariance",
            witness is None,
            witness,
            used,
            seed,
        )
    )

    residue = v.residue_ring()
    rq = residue_qo(q, v)
    witness = None
    n_seen = 0
    for x in rv_elems:
        if in_uv(v, x):
            n_seen += 1
            xbar = residue.el(x.payload)
            if rq.sim(xbar, residue.zero()):
                witness = (str(x),)
                break
    out.append(_result(f"{label}.support-zero", witness is None, witness, n_seen, seed))

    runiverse = residue_universe(v, universe)
    axioms = check_qo_axioms(rq, runiverse, samples=samples, label=f"{label}.axioms")
    out.extend(axioms)
    return out


def residue_rule_holds(q, v, universe, samples=400) -> bool:
    return all(r.status == PASS for r in residue_rule_report(q, v, universe, samples))


# ---------------------------------------------------------------------------
# the compatibility theorem and the implication table


@dataclass
class CompatReport:
    """Flags (1)-(5): compatible, Rv convex, Iv convex, Iv < 1, residue rule."""

    c1: bool
    c2: bool
    c3: bool
    c4: bool
    c5: bool
    witnesses: Dict[str, Tuple[str, ...]] = field(default_factory=dict)
    checks: List[CheckResult] = field(default_factory=list)
    seed: int = 0
    samples: int = 0

    def flag(self, i: int) -> bool:
        return getattr(self, f"c{i}")

    def as_dict(self):
        return {f"c{i}": self.flag(i) for i in range(1, 6)}


def table_conditions(
    v: Valuation,
    q: QuasiOrder,
    universe: SampleUniverse,
    samples: int = 500,
    label: str = None,
) -> CompatReport:
    """Evaluate the five table conditions with recorded witnesses."""
    label = label or f"table({v.name},{q.name})"
    seed = universe.seed
    checks: List[CheckResult] = []
    witnesses: Dict[str, Tuple[str, ...]] = {}

    r1 = is_compatible(v, q, universe, samples, label=f"{label}.compatible")
    checks.append(r1)
    if r1.witness:
        witnesses["c1"] = r1.witness

    r2 = is_convex(lambda x: in_rv(v, x), q, universe, samples, label=f"{label}.Rv-convex")
    checks.append(r2)
    if r2.witness:
        witnesses["c2"] = r2.witness

    r3 = is_convex(lambda x: in_iv(v, x), q, universe, samples, label=f"{label}.Iv-convex")
    checks.append(r3)
    if r3.witness:
        witnesses["c3"] = r3.witness

    one = q.ring.one()
    witness = None
    members = 0
    for x in universe.singles(samples, f"{label}.Iv-below-1"):
        if in_iv(v, x):
            members += 1
            if not q.strict(x, one):
                witness = (str(x),)
                break
    r4 = _result(f"{label}.Iv-below-1", witness is None, witness, members, seed)
    checks.append(r4)
    if witness:
        witnesses["c4"] = witness

    residue_checks = residue_rule_report(q, v, universe, samples, label=f"{label}.residue")
    checks.extend(residue_checks)
    c5 = all(r.status == PASS for r in residue_checks)
    if not c5:
        first_bad = next(r for r in residue_checks if r.status != PASS)
        if first_bad.witness:
            witnesses["c5"] = first_bad.witness

    return CompatReport(
        c1=r1.status == PASS,
        c2=r2.status == PASS,
        c3=r3.status == PASS,
        c4=r4.status == PASS,
        c5=c5,
        witnesses=witnesses,
        checks=checks,
        seed=seed,
        samples=samples,
    )


#: The printed implication matrix: checkmarked cells of "(row) implies (col)".
TABLE_CHECKMARKS = frozenset(
    {(1, 2), (1, 3), (1, 4), (1, 5), (3, 4), (3, 5), (5, 4)}
)


def table_blank_cells():
    return [
        (i, j)
        for i in range(1, 6)
        for j in range(1, 6)
        if i != j and (i, j) not in TABLE_CHECKMARKS
    ]


def implication_table(
    instance_reports: Dict[str, CompatReport]
) -> Tuple[List[CheckResult], Dict[Tuple[int, int], List[str]]]:
    """Validate the matrix against a corpus of condition reports.

    Checkmarked cells must have zero corpus violations; blank cells must
    have at least one named witness with row true and column false.
    """
    checks: List[CheckResult] = []
    witnesses: Dict[Tuple[int, int], List[str]] = {}
    for i in range(1, 6):
        for j in range(1, 6):
            if i == j:
                continue
            offenders = [
                name
                for name, rep in instance_reports.items()
                if rep.flag(i) and not rep.flag(j)
            ]
            if (i, j) in TABLE_CHECKMARKS:
                checks.append(
                    CheckResult(
                        name=f"table.{i}=>{j}",
                        status=PASS if not offenders else HARD,
                        witness=tuple(offenders) or None,
                        samples_used=len(instance_reports),
                        seed=0,
                        detail="checkmark holds" if not offenders else "checkmark violated",
                    )
                )
            else:
                witnesses[(i, j)] = offenders
                checks.append(
                    CheckResult(
                        name=f"table.{i}-x->{j}",
                        status=PASS if offenders else FAIL,
                        witness=tuple(offenders) or None,
                        samples_used=len(instance_reports),
                        seed=0,
                        detail=(
                            "blank cell witnessed"
                            if offenders
                            else "no corpus witness for blank cell"
                        ),
                    )
                )
    return checks, witnesses


def theorem_compat_report(
    v: Valuation,
    q: QuasiOrder,
    universe: SampleUniverse,
    samples: int = 500,
    label: str = None,
) -> List[CheckResult]:
    """For Manis v: conditions compat, Iv convex and residue rule must agree,
    and Rv convexity joins them when v is nontrivial.

    Any divergence among the sampled truth values is a hard inconsistency.
    Also records that compatibility forces I_v < 1, and that the residue
    quasi-order classifies like the original.
    """
    if not v.manis:
        raise PreconditionError(f"theorem report needs a Manis valuation, {v.name} is not")
    label = label or f"compat_equivalence({v.name},{q.name})"
    rep = table_conditions(v, q, universe, samples, label=label)
    out = list(rep.checks)
    seed = universe.seed

    t1, t2, t3, t4 = rep.c1, rep.c3, rep.c5, rep.c2
    agree = t1 == t2 == t3
    if v.nontrivial:
        agree = agree and (t4 == t1)
    out.append(
        CheckResult(
            name=f"{label}.equivalence",
            status=PASS if agree else HARD,
            witness=None if agree else (
                f"compat={t1}", f"Iv-convex={t2}", f"residue={t3}", f"Rv-convex={t4}",
            ),
            samples_used=rep.samples,
            seed=seed,
            detail="nontrivial" if v.nontrivial else "trivial valuation: Rv convexity exempt",
        )
    )
    if t1:
        out.append(
            _result(
                f"{label}.compat-implies-Iv-below-1",
                rep.c4,
                rep.witnesses.get("c4"),
                rep.samples,
                seed,
            )
        )
        rq = residue_qo(q, v)
        same = classify_qo(rq) == classify_qo(q)
        out.append(
            _result(
                f"{label}.residue-class-matches",
                same,
                (classify_qo(rq), classify_qo(q)) if not same else None,
                1,
                seed,
            )
        )
    return out


# ---------------------------------------------------------------------------
# the local-valuation criterion


def iv_prec_one(
    v: Valuation,
    q: QuasiOrder,
    universe: SampleUniverse,
    samples: int = 500,
    label: str = None,
) -> List[CheckResult]:
    """For local Manis v: I_v < 1 on samples iff v is compatible with q."""
    if not (v.local and v.manis):
        raise PreconditionError(
            f"iv_prec_one needs a local Manis valuation, {v.name} is not"
        )
    label = label or f"iv1({v.name},{q.name})"
    seed = universe.seed
    one = q.ring.one()
    below = None
    members = 0
    for x in universe.singles(samples, label):
        if in_iv(v, x):
            members += 1
            if not q.strict(x, one):
                below = (str(x),)
                break
    compat = is_compatible(v, q, universe, samples, label=f"{label}.compatible")
    out = [
        _result(f"{label}.Iv-below-1", below is None, below, members, seed),
        compat,
    ]
    sides_agree = (below is None) == (compat.status == PASS)
    out.append(
        CheckResult(
            name=f"{label}.equivalence",
            status=PASS if sides_agree else HARD,
            witness=None if sides_agree else (str(below), compat.status),
            samples_used=samples,
            seed=seed,
        )
    )
    return out


# ---------------------------------------------------------------------------
# special* valuations


def special_star_check(
    v: Valuation,
    universe: SampleUniverse,
    samples: int = 300,
    label: str = None,
) -> List[CheckResult]:
    """Quot(Rv) reaches every residue of the fraction-field extension.

    For each sampled field element of nonnegative extended value we hunt a
    fraction of valuation-ring elements with unit denominator in the same
    residue class: through the Manis preimage when available, otherwise by
    a bounded search over sampled multipliers.  Exhausted searches are
    inconclusive, not failures.
    """
    label = label or f"special*({v.name})"
    seed = universe.seed
    uniformizer = None
    if not v.manis:
        # bounded search for value witnesses happens below; the extension
        # still needs its own Manis witness element
        for t in universe.elements():
            val = v(t)
            if val is not INF and val != v.group.zero() and abs(val[0]) == 1:
                uniformizer = t
                break
    nu = frac_extend_val(v, uniformizer=uniformizer)
    K = nu.ring
    zero_v = v.group.zero()
    qring, project, _section = _quotient_maps(v.ring, v.support)
    K2, embed = fraction_field(qring)
    assert K2.key == K.key

    field_universe = SampleUniverse(
        K, seed=universe.seed, count=universe.count, bounds=universe.bounds
    )
    multipliers = [x for x in universe.elements() if v(x) is not INF]

    checked = 0
    witness = None
    inconclusive = None
    for xi in field_universe.singles(samples, label):
        if nu(xi) is INF or not value_le(zero_v, nu(xi)):
            continue
        checked += 1
        num, den = _num_den_in(v.ring, qring, K, xi)
        if den is None or v(den) is INF:
            inconclusive = (str(xi),)
            continue

        def verify(a, b):
            if not (value_le(zero_v, v(a)) and v(b) == zero_v):
                return False
            frac = embed(project(a)) * K.inv(embed(project(b)))
            dv = nu._eval_memo(K.sub(xi.payload, frac.payload))
            return dv is INF or value_lt(zero_v, dv)

        found = False
        bad_pair = None
        for a, b in _representation_candidates(v, num, den, multipliers):
            if verify(a, b):
                found = True
                break
            if v.manis:
                # a Manis witness pair must already agree; record the breakage
                bad_pair = (a, b)
                break
        if not found:
            if v.manis and bad_pair is not None:
                witness = (str(xi), str(bad_pair[0]), str(bad_pair[1]))
                break
            inconclusive = (str(xi),)
    status = PASS
    if witness is not None:
        status = FAIL
    elif inconclusive is not None:
        status = INCONCLUSIVE
    return [
        CheckResult(
            name=label,
            status=status,
            witness=witness or inconclusive,
            samples_used=checked,
            seed=seed,
            detail=None if status == PASS else (
                "no representation found within the sampled multipliers"
                if status == INCONCLUSIVE
                else "residue mismatch"
            ),
        )
    ]


def _num_den_in(base_ring, qring, K, xi: RingElement):
    """Split a fraction-field element into base-ring numerator/denominator."""
    from .rings import QQ, RationalFunctionField

    if K.key == base_ring.key:
        return xi, base_ring.one()
    if K is QQ:
        return base_ring.from_int(xi.payload.numerator), base_ring.from_int(
            xi.payload.denominator
        )
    if isinstance(K, RationalFunctionField) and qring is base_ring:
        num, den = K.num_den(xi)
        return num, den
    return None, None


def _representation_candidates(v: Valuation, num, den, multipliers):
    """Pairs (a, b) that might represent num/den with a unit denominator."""
    from .rings import PolynomialRing

    zero_v = v.group.zero()
    dval = v(den)
    if v.manis and dval is not INF:
        m = v.preimage(value_neg(dval))
        yield num * m, den * m
        return
    for m in multipliers[:60]:
        if v(m) != value_neg(dval):
            continue
        nval = v(num * m)
        if nval is INF or value_le(zero_v, nval):
            yield num * m, den * m
    ring = v.ring
    if isinstance(ring, PolynomialRing):
        # constant pairs built from the top coefficients
        ncoefs = [c for _, c in num.payload[:4]]
        dcoefs = [c for _, c in den.payload[:4]]
        for cn in ncoefs:
            for cd in dcoefs:
                a = RingElement(ring, ring._canon_dict({(0,) * ring.nvars: cn}))
                b = RingElement(ring, ring._canon_dict({(0,) * ring.nvars: cd}))
                if v(b) == zero_v:
                    yield a, b
    yield ring.zero(), ring.one()


# ---------------------------------------------------------------------------
# rank


def rank_check(
    q: QuasiOrder,
    candidates: Sequence[Valuation],
    universe: SampleUniverse,
    samples: int = 500,
    label: str = "rank",
    expect: Optional[int] = None,
) -> Tuple[int, List[Valuation], List[CheckResult]]:
    """Filter nontrivial candidates by compatibility, dedupe, verify a chain.

    The survivors must be totally ordered by coarsening; a violation
    contradicts a guaranteed invariant and is reported as a hard
    inconsistency.  Returns (chain length, coarsest-first chain, checks).
    """
    out: List[CheckResult] = []
    seed = universe.seed
    if not q.ring.is_field:
        raise PreconditionError(f"rank wants a quasi-ordered field, got {q.ring.name}")
    for v in candidates:
        if not v.nontrivial:
            raise PreconditionError(f"rank candidates must be nontrivial: {v.name}")

    survivors: List[Valuation] = []
    for v in candidates:
        res = is_compatible(v, q, universe, samples, label=f"{label}.compat({v.name})")
        ok = res.status == PASS
        # candidate filtering is information, not a failure of the rank check
        out.append(
            CheckResult(
                name=res.name,
                status=PASS,
                witness=res.witness,
                samples_used=res.samples_used,
                seed=seed,
                detail="compatible" if ok else "incompatible",
            )
        )
        if ok:
            survivors.append(v)

    deduped: List[Valuation] = []
    for v in survivors:
        if not any(are_equivalent(v, w, universe, samples) for w in deduped):
            deduped.append(v)

    chain_ok = True
    witness = None
    for i in range(len(deduped)):
        for j in range(i + 1, len(deduped)):
            a, b = deduped[i], deduped[j]
            if not (
                is_coarsening(a, b, universe, samples)
                or is_coarsening(b, a, universe, samples)
            ):
                chain_ok = False
                witness = (a.name, b.name)
    out.append(
        CheckResult(
            name=f"{label}.chain",
            status=PASS if chain_ok else HARD,
            witness=witness,
            samples_used=samples,
            seed=seed,
            detail=None if chain_ok else "survivors are not totally ordered by coarsening",
        )
    )

    def coarseness(v):
        return sum(
            1 for w in deduped if w is not v and is_coarsening(v, w, universe, samples)
        )

    chain = sorted(deduped, key=lambda v: -coarseness(v))
    ok = expect is None or expect == len(chain)
    out.append(
        CheckResult(
            name=f"{label}.length",
            status=PASS if ok else FAIL,
            witness=None if ok else (str(len(chain)), f"expected {expect}"),
            samples_used=samples,
            seed=seed,
            detail=f"rank {len(chain)}: " + (" < ".join(v.name for v in chain) or "empty"),
        )
    )
    return len(chain), chain, out


# ---------------------------------------------------------------------------
# associated quasi-ordered field


def associated_qofield(
    q: QuasiOrder,
    universe: SampleUniverse,
    samples: int = 400,
    v: Optional[Valuation] = None,
    label: str = "qofield",
):
    """Quotient by the support, extend to the fraction field.

    When a valuation with the same support is supplied, compatibility
    verdicts are compared at all three levels.
    """
    ring = q.ring
    support = q.support_ideal
    if support is None:
        raise PreconditionError(f"{q.name} has no declared support ideal")
    out: List[CheckResult] = []
    seed = universe.seed

    witness = None
    n = 0
    for x in universe.singles(samples, f"{label}.support-agree"):
        n += 1
        if q.sim(x, ring.zero()) != support.contains(x.payload):
            witness = (str(x),)
            break
    out.append(_result(f"{label}.support-agree", witness is None, witness, n, seed))
    if witness is not None:
        raise PreconditionError(
            f"{q.name}: support ideal disagrees with the relation", witness=witness
        )

    qring, project, section = _quotient_maps(ring, support)
    if qring is ring:
        q_mid = q
    else:

        def cmp(pa, pb, _s=section, _q=q, _r=qring):
            a = _s(RingElement(_r, pa))
            b = _s(RingElement(_r, pb))
            return _q._compare_payload(a.payload, b.payload)

        q_mid = QuasiOrder(
            qring,
            cmp,
            f"{q.name}/supp",
            provenance="residue-induced",
            support_ideal=ZeroIdeal(qring),
            expected_kind=q.expected_kind,
        )
    ext = frac_extend_qo(q_mid)

    if v is not None:
        if not v.support.is_zero:
            same_supp = all(
                v.support.contains(x.payload) == support.contains(x.payload)
                for x in universe.singles(min(samples, 100), f"{label}.samesupp")
            )
            if not same_supp:
                raise PreconditionError("valuation support differs from the q.o. support")
        v_mid = v if qring is ring else _transport_val(v, qring, section)
        nu = frac_extend_val(v_mid) if v_mid.manis else None
        verdict_r = compatible(v, q, universe, samples)
        mid_universe = SampleUniverse(
            qring, seed=universe.seed, count=universe.count, bounds=universe.bounds
        )
        verdict_mid = compatible(v_mid, q_mid, mid_universe, samples)
        agree = verdict_r == verdict_mid
        detail = f"R:{verdict_r} R/E0:{verdict_mid}"
        if nu is not None:
            ext_universe = SampleUniverse(
                nu.ring, seed=universe.seed, count=universe.count, bounds=universe.bounds
            )
            verdict_k = compatible(nu, ext, ext_universe, samples)
            agree = agree and verdict_k == verdict_r
            detail += f" K:{verdict_k}"
        out.append(
            CheckResult(
                name=f"{label}.compat-levels-agree",
                status=PASS if agree else HARD,
                samples_used=samples,
                seed=seed,
                detail=detail,
            )
        )

    return ext.ring, ext, out


def _transport_val(v: Valuation, qring, section) -> Valuation:
    def ev(p):
        return v._eval_memo(section(RingElement(qring, p)).payload)

    return Valuation(
        qring,
        v.group,
        ev,
        f"{v.name}'",
        support=ZeroIdeal(qring),
        manis=v.manis,
        local=qring.is_field,
        preimage_fn=None,
        provenance="quotient-transport",
    )

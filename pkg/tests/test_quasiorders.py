from fractions import Fraction

import pytest

from qord.quasiorders import (
    EQUIVALENT,
    ORDER,
    PROPER,
    STRICTLY_GREATER,
    STRICTLY_LESS,
    QuasiOrder,
    SignOrder,
    at_zero_order,
    check_derived_lemmas,
    check_qo_axioms,
    classify_qo,
    const_term_order,
    frac_extend_qo,
    from_sign_order,
    from_valuation,
    leading_term_order,
    natural_order,
    qcmp,
    support_member,
    transport_qo,
)
from qord.report import PASS, PreconditionError
from qord.rings import QQ, ZZ, ZeroIdeal, fraction_field, poly_ring
from qord.sampling import SampleUniverse
from qord.valuations import (
    degree_valuation,
    frac_extend_val,
    gauss_on,
    padic_valuation,
)

QX = poly_ring(QQ, "X")
ZX = poly_ring(ZZ, "X")

v2 = padic_valuation(2, QQ)
qv2 = from_valuation(v2)
leq_q = natural_order(QQ)
leq_z = natural_order(ZZ)
f0_zx = const_term_order(ZX)


def U(ring, seed=42, count=250, distinguished=()):
    return SampleUniverse(ring, seed=seed, count=count, distinguished=distinguished)


# ---------------------------------------------------------------------------
# comparators


def test_qcmp_valuation_example():
    # v2(4) = 2, v2(2) = 1: larger value sits lower, so 4 is below 2
    assert qcmp(qv2, QQ.from_int(4), QQ.from_int(2)) == STRICTLY_LESS
    assert qcmp(qv2, QQ.from_int(7), QQ.from_int(7)) == EQUIVALENT


def test_qcmp_const_term_order():
    X = ZX.var("X")
    assert qcmp(f0_zx, X, ZX.zero()) == EQUIVALENT
    assert qcmp(f0_zx, X + 1, ZX.zero()) == STRICTLY_GREATER


def test_from_valuation_basics():
    zero = QQ.zero()
    for x in U(QQ).elements()[:50]:
        assert qv2.le(zero, x)
    assert qv2.sim(QQ.from_int(3), QQ.from_int(5))
    # coefficient-minimum order: w(p) = 1 > 0 = w(X^2), and larger values
    # sit lower, so 0 <= p <= X^2 with p strictly below
    vp = padic_valuation(2, QQ)
    w = gauss_on(vp, QX, (0,))
    qw = from_valuation(w)
    X = QX.var("X")
    p = QX.from_int(2)
    assert qcmp(qw, p, X * X) == STRICTLY_LESS
    assert qw.le(QX.zero(), p) and qw.le(p, X * X)
    assert not qw.le(X * X, p)


def test_sign_orders():
    assert leq_z.strict(-ZZ.one(), ZZ.zero())
    assert leq_z.strict(ZZ.zero(), ZZ.one())
    X = ZX.var("X")
    assert f0_zx.le(ZX.zero(), X + 1)
    K, _ = fraction_field(QX)
    qinf = leading_term_order(K)
    Xf = K.frac(QX.var("X"), QX.one())
    for n in range(-5, 6):
        assert qinf.strict(K.from_int(n), Xf)


def test_support_membership():
    assert support_member(qv2, QQ.zero())
    assert not support_member(qv2, QQ.from_int(6))
    X = ZX.var("X")
    assert support_member(f0_zx, X)
    assert not support_member(f0_zx, ZX.one())


def test_classification():
    assert classify_qo(qv2) == PROPER
    assert classify_qo(leq_q) == ORDER
    broken = QuasiOrder(QQ, lambda a, b: True, "indiscrete")
    with pytest.raises(PreconditionError):
        classify_qo(broken)


# ---------------------------------------------------------------------------
# axioms


@pytest.mark.parametrize(
    "make,ring,dist",
    [
        (lambda: qv2, QQ, ()),
        (lambda: leq_q, QQ, ()),
        (lambda: leq_z, ZZ, ()),
        (lambda: f0_zx, ZX, ()),
        (lambda: from_valuation(gauss_on(padic_valuation(2, QQ), QX, (0,))), QX, ()),
        (lambda: const_term_order(poly_ring(ZZ, "X", "Y")), None, ()),
    ],
)
def test_axiom_suites_pass(make, ring, dist):
    q = make()
    universe = U(q.ring, distinguished=dist)
    results = check_qo_axioms(q, universe, samples=250)
    bad = [r for r in results if r.status != PASS]
    assert not bad, bad


def test_planted_sign_fault_detected():
    bad_sign = SignOrder(ZZ, lambda n: -_sgn(n), "flipped", ZeroIdeal(ZZ))
    q = from_sign_order(bad_sign)
    results = check_qo_axioms(q, U(ZZ), samples=100)
    qr1 = [r for r in results if r.name.endswith(".QR1")][0]
    assert qr1.status == "fail"


def _sgn(n):
    return (n > 0) - (n < 0)


def test_derived_lemmas():
    results = check_derived_lemmas(qv2, U(QQ), samples=250)
    assert all(r.status == PASS for r in results), [
        r for r in results if r.status != PASS
    ]
    bm = [r for r in results if r.name.endswith(".sum-below-max")][0]
    assert bm.samples_used > 0  # proper case: the bound is actually swept

    results = check_derived_lemmas(leq_q, U(QQ), samples=250)
    assert all(r.status == PASS for r in results)
    bm = [r for r in results if r.name.endswith(".sum-below-max")][0]
    assert bm.samples_used == 0 and "gated" in bm.detail

    results = check_derived_lemmas(f0_zx, U(ZX), samples=200)
    assert all(r.status == PASS for r in results)


# ---------------------------------------------------------------------------
# fraction extension


def test_frac_extend_example():
    ext = frac_extend_qo(leq_z)
    assert ext.ring is QQ
    # 1/2 against 2/3 cross-multiplies to 18 <= 24
    assert ext.le(QQ.el(Fraction(1, 2)), QQ.el(Fraction(2, 3)))
    assert not ext.le(QQ.el(Fraction(2, 3)), QQ.el(Fraction(1, 2)))
    for n in range(-6, 7):
        for m in range(-6, 7):
            assert ext.le(QQ.from_int(n), QQ.from_int(m)) == (n <= m)


def test_frac_extend_matches_valuation_extension():
    v2z = padic_valuation(2, ZZ)
    ext_qo = frac_extend_qo(from_valuation(v2z))
    nu = frac_extend_val(v2z)
    direct = from_valuation(nu)
    for x, y in U(QQ, seed=9, count=150).pairs(400, "cmp"):
        assert ext_qo.le(x, y) == direct.le(x, y)


def test_frac_extend_classification_invariant():
    assert classify_qo(frac_extend_qo(leq_z)) == ORDER
    assert classify_qo(frac_extend_qo(from_valuation(padic_valuation(2, ZZ)))) == PROPER


def test_frac_extended_order_passes_axioms():
    K, _ = fraction_field(QX)
    q = leading_term_order(K)
    results = check_qo_axioms(q, U(K, count=150), samples=200)
    assert all(r.status == PASS for r in results)
    q0 = at_zero_order(K)
    results = check_qo_axioms(q0, U(K, count=150), samples=200)
    assert all(r.status == PASS for r in results)


def test_transport_to_residue():
    nu = frac_extend_val(degree_valuation(QX), uniformizer=QX.var("X"))
    R = nu.residue_ring()
    q = transport_qo(natural_order(QQ), R)
    two = R.element(nu.ring.from_int(2))
    three = R.element(nu.ring.from_int(3))
    assert q.strict(two, three)
    results = check_qo_axioms(q, U(R, count=150), samples=200)
    assert all(r.status == PASS for r in results)


def test_valuation_preimage_reverses_order():
    # for Manis w and gamma <= delta, preimage(delta) <= preimage(gamma)
    for g in range(-4, 5):
        for d in range(g, 5):
            assert qv2.le(v2.preimage((d,)), v2.preimage((g,)))


def test_sim_iff_equal_values():
    universe = U(QQ, seed=3, count=200)
    for x, y in universe.pairs(300, "simvals"):
        assert qv2.sim(x, y) == (v2(x) == v2(y))

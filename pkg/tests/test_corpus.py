from qord.corpus import (
    CORPUS,
    corpus_exit_code,
    corpus_instances,
    diff_golden,
    get_instance,
    golden_fragment,
    implication_matrix,
    render_matrix,
    run_corpus,
    run_instance,
    shipped_objects,
)
from qord.report import PASS
from qord.residues import table_blank_cells


EXPECTED_NAMES = {
    "nomanis-1",
    "nomanis-2",
    "exp1",
    "exp1-swapped",
    "exp2",
    "remark-391-order",
    "remark-391-pqo",
    "interp-table",
    "compat-v2",
    "special-star-1",
    "special-star-2",
    "roundtrip-q-v2",
    "roundtrip-deg-plus",
    "roundtrip-deg-minus",
    "roundtrip-deg-v2",
    "quotient-consistency",
    "rank-q-order",
    "rank-q-v2",
    "rank-qx",
    "archimedean-demo",
}


def test_every_example_appears_exactly_once():
    names = [inst.name for inst in corpus_instances()]
    assert len(names) == len(set(names))
    assert set(names) == EXPECTED_NAMES


def test_every_instance_has_a_golden():
    for inst in CORPUS:
        golden = golden_fragment(inst)
        assert golden is not None, inst.name
        assert golden["version"] == 1
        assert golden["checks"]


def test_interpretation_marks():
    assert golden_fragment(get_instance("interp-table")).get("interpretation")
    assert golden_fragment(get_instance("exp1-swapped")).get("interpretation")
    assert not golden_fragment(get_instance("exp1")).get("interpretation")


def test_nomanis_1_golden_content():
    golden = golden_fragment(get_instance("nomanis-1"))["checks"]
    assert golden["compat(v,q)"]["witness"] == ["1*X + 1", "1"]
    assert golden['convex(v,q,set="iv")']["status"] == "fail"
    assert golden['convex(v,q,set="rv")']["status"] == "fail"
    assert golden["table_conditions(v,q).flags"]["detail"] == "c1=F c2=F c3=F c4=T c5=T"


def test_exp2_golden_content():
    golden = golden_fragment(get_instance("exp2"))["checks"]
    assert golden['val_value(v,"1*Y","-1")']["status"] == "pass"
    assert golden['convex(v,q,set="iv")']["witness"] == ["1*Y", "0"]
    assert golden["table_conditions(v,q).Iv-below-1"]["status"] == "pass"


def test_remark_391_order_golden_content():
    golden = golden_fragment(get_instance("remark-391-order"))["checks"]
    assert golden['convex(v,q,set="rv")']["status"] == "pass"
    assert golden['convex(v,q,set="iv")']["status"] == "fail"


def test_run_single_instance_matches_golden():
    inst = get_instance("nomanis-2")
    report = run_instance(inst)
    assert diff_golden(report, inst) == []


def test_exp1_run_has_pinned_witness():
    report = run_instance(get_instance("exp1"))
    entry = report["exp1::compat(v,qw)"]
    assert entry.status == "fail" and entry.witness == ("2", "1*X^2")


def test_run_corpus_all_matches_goldens():
    report = run_corpus()
    mismatches = [
        c
        for c in report.checks
        if c.name.endswith("::golden-match") and c.status != PASS
    ]
    assert mismatches == []
    assert corpus_exit_code(report) == 0


def test_table_blank_cells_all_witnessed():
    checks, witnesses, reports = implication_matrix(samples=400)
    assert all(c.status == PASS for c in checks), [
        c for c in checks if c.status != PASS
    ]
    for cell in table_blank_cells():
        assert witnesses[cell], f"blank cell {cell} lacks a corpus witness"
    text = render_matrix(checks, witnesses, reports)
    assert "MISSING" not in text and "!!" not in text


def test_table_flags_are_seed_stable():
    # the flags are mathematical facts; forced distinguished elements make
    # their detection independent of the random tail
    from qord.corpus import table_reports

    base = {n: r.as_dict() for n, r in table_reports(seed=42, samples=300).items()}
    other = {n: r.as_dict() for n, r in table_reports(seed=7, samples=300).items()}
    assert base == other


def test_shipped_objects_shape():
    valuations, quasiorders = shipped_objects()
    assert len(valuations) >= 12 and len(quasiorders) >= 12
    for name, v, U in valuations:
        assert v.ring.key == U.ring.key, name
    for name, q, U in quasiorders:
        assert q.ring.key == U.ring.key, name

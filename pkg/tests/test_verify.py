from spined import core, families as F
from spined.construction import extract_star
from spined.report import all_passed
from spined.transversal import analyze_transversal
from spined.verify import ANCHORS, run_verification_suite, verify_star_map


def test_rectangular_band_singleton_all_pass():
    rep = run_verification_suite(F.rectangular_band(3, 3), {4}, "rb")
    assert rep.ok and rep.passed > 50
    assert "regular-spined-product" in rep.anchors()


def test_chain_all_pass_with_left_adequate_equivalences():
    S = F.semilattice_chain(4)
    rep = run_verification_suite(S, S)
    assert rep.ok
    assert set(rep.anchors()) == set(ANCHORS)
    rows = [r for r in rep.rows if r.anchor == "left-adequate-equivalences"]
    assert {r.check for r in rows} >= {"left adequate conditions agree",
                                       "left adequate: f_x = f_xbar and x = e_x xbar"}


def test_non_transversal_names_the_error():
    rep = run_verification_suite(F.semilattice_chain(3), {0})
    failing = [r for r in rep.rows if not r.passed]
    assert len(failing) == 1 and failing[0].witness["error"] == "NoDecomposition"


def test_non_quasi_ideal_skips_construction():
    M = core.adjoin_identity(F.left_zero(2))
    rep = run_verification_suite(M, {0, 2})
    assert rep.ok and "spined-product" not in rep.anchors()


def test_corrupted_star_map_rows_fail_with_witness():
    B = F.brandt_b2()
    sm = extract_star(B, analyze_transversal(B, B))
    assert all_passed(verify_star_map(sm))
    rows = verify_star_map(sm.with_value(1, 2, 0))
    failing = [r for r in rows if not r.passed]
    assert failing and all(r.witness is not None for r in failing)
    assert {r.anchor for r in failing} == {"star-map-axioms"}


def test_report_json_schema():
    rep = run_verification_suite(F.rectangular_band(2, 2), {0})
    rows = rep.to_json()["rows"]
    assert rows and set(rows[0]) == {"check", "anchor", "pass", "witness"}

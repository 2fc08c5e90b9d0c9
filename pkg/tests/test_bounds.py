import json
from fractions import Fraction

import pytest

from knotgap.algebra import NullPairWitness, build_stable_witness, direct_sum, signature
from knotgap.bounds import (
    Fails,
    ObstructionHolds,
    Unknown,
    analyze,
    analyze_matrix,
    double_sum_taylor,
    render_text,
    taylor_verdict,
)
from knotgap.dagger import Anisotropic
from knotgap.diagram import mirror

from builders import twist_knot
from conftest import corpus, fixture_named


def rule(rep, name, which="t"):
    rules = rep.stable_t_rules if which == "t" else rep.stable_s_rules
    return next(r for r in rules if r["rule"] == name)


def test_figure_eight_report(figure_eight):
    rep = analyze(figure_eight)
    assert (rep.genus, rep.signature, rep.maxdeg, rep.determinant) == (1, 0, 1, 5)
    assert rep.gt_lower == 0 and rep.gt_upper["value"] == 1
    assert rule(rep, "clasp")["value"] == Fraction(2, 3)
    assert rule(rep, "framings_pm1")["value"] == Fraction(1, 2)
    assert rep.stable_t_upper == Fraction(1, 2)
    assert rule(rep, "signed_curves", "s")["value"] == Fraction(1, 2)


def test_trefoil_report(trefoil):
    rep = analyze(trefoil)
    assert rep.signature == 2 and rep.gt_lower == rep.gt_upper["value"] == 1
    t1 = rule(rep, "clasp")
    assert not t1["applicable"] and "both signs" in t1["reason"]
    assert rep.stable_t_upper == 1


def test_k5_report():
    rep = analyze(twist_knot(5))
    assert rule(rep, "clasp")["value"] == Fraction(2, 3)
    assert rule(rep, "clasp")["witness"]["pattern"] == [[1, 1], [0, -5]]
    assert rule(rep, "signed_curves", "s")["value"] == Fraction(5, 6)
    dbl = rep.taylor["double"]
    assert dbl["verdict"] == "ObstructionHolds"
    assert dbl["certificate"]["kind"] == "Anisotropic" and dbl["certificate"]["q"] == 3
    assert "conditional on Taylor" in dbl["consequence"] and "conjectural" in dbl["consequence"]


def test_clasp_witness_reverifies():
    for d in corpus():
        rep = analyze(d)
        t1 = rule(rep, "clasp")
        if not t1["applicable"]:
            continue
        (p, _), (_, mn) = t1["witness"]["pattern"]
        sol = t1["witness"]["dagger_solution"]
        sw = build_stable_witness(p, -mn, (sol["x1"], sol["y1"], sol["x2"], sol["y2"]))
        assert [list(r) for r in sw.matrix] == t1["witness"]["restricted_matrix"] == [[0, 1], [0, mn]]


def test_framings_pm1_witness_reverifies(figure_eight):
    rep = analyze(figure_eight)
    w = rule(rep, "framings_pm1")["witness"]
    V = [list(r) for r in rep.seifert_matrix]
    wit = NullPairWitness(tuple(w["a"]), tuple(w["b"]), tuple(map(tuple, w["matrix"])), w["matrix"][1][1])
    assert wit.verify(direct_sum(V, V))


def test_mirror_coherence(figure_eight):
    for d in (figure_eight, twist_knot(3)):
        a, b = analyze(d), analyze(mirror(d))
        assert b.signature == -a.signature and a.genus == b.genus
        assert rule(a, "clasp")["applicable"] == rule(b, "clasp")["applicable"]
    a, b = analyze(figure_eight), analyze(mirror(figure_eight))
    assert a.stable_t_upper == b.stable_t_upper and a.stable_s_upper == b.stable_s_upper


def test_report_invariants_on_corpus():
    for d in corpus():
        rep = analyze(d)
        assert rep.gt_lower <= rep.gt_upper["value"]
        assert rep.stable_t_lower <= rep.stable_t_upper <= rep.gt_upper["value"]
        assert rep.stable_t_lower == rep.gt_lower
        V = [list(r) for r in rep.seifert_matrix]
        assert signature(direct_sum(V, V)) == 2 * rep.signature
        for r in rep.stable_t_rules + rep.stable_s_rules:
            assert r["applicable"] == (r["value"] is not None)


def test_nonhomogeneous_is_flagged():
    d = fixture_named("trefoil_r2")
    rep = analyze(d)
    assert rep.flags["genus_minimal"] == "unknown"
    assert not rule(rep, "framings_pm1")["applicable"] and rep.conditionality
    rep = analyze(d, assume_genus_minimal=True)
    assert rep.flags["genus_minimal"] == "assumed"
    assert any("assumed" in c for c in rep.conditionality)


def test_reducible_diagram_still_reports():
    rep = analyze(fixture_named("trefoil_kink"))
    assert not rep.flags["reduced"] and rep.genus == 1
    assert "reduced" in rule(rep, "clasp")["reason"]


def test_outer_face_override(figure_eight):
    for f in range(len(figure_eight.faces)):
        assert analyze(figure_eight, outer_face=f).stable_t_upper == Fraction(1, 2)


def test_json_shape(figure_eight):
    data = analyze(figure_eight).to_json()
    assert json.loads(json.dumps(data)) == data
    assert data["bounds"]["stable_t_upper"] == {"num": 1, "den": 2}
    assert set(data) >= {"flags", "invariants", "bounds", "taylor", "conditionality"}
    assert data["invariants"]["alexander"] == "t - 3 + t^-1"


def test_text_rendering(figure_eight):
    text = render_text(analyze(figure_eight))
    assert "stable g_t in [0, 1/2]" in text and "clasp: 2/3" in text


def test_matrix_examples():
    rep = analyze_matrix([[1, 1], [0, -5]])
    assert rep.signature == 0 and rule(rep, "framing_one")["value"] == Fraction(2, 3)
    rep = analyze_matrix([[1, 0], [0, 1]])
    assert rep.taylor["single"]["verdict"] == "ObstructionHolds"
    assert rep.taylor["single"]["certificate"]["reason"] == "definite"


def test_matrix_genus_two_pattern():
    B = [[1, 1], [0, -5]]
    V = [list(r) for r in direct_sum(B, B).rows]
    rep = analyze_matrix(V, assume_genus_minimal=True)
    assert rule(rep, "clasp_pattern")["value"] == Fraction(5, 3)
    assert rep.taylor["single"]["verdict"] == "ObstructionHolds"
    rep = analyze_matrix(V)
    assert not rule(rep, "clasp_pattern")["applicable"]


def test_matrix_null_pair():
    rep = analyze_matrix([[0, 1], [0, 7]], assume_genus_minimal=True)
    assert rep.gt_upper_lemma3["value"] == 0
    assert rep.stable_t_upper == 0


def test_double_sum_taylor():
    v = double_sum_taylor(1, 5)
    assert isinstance(v, ObstructionHolds) and v.certificate.verdict == Anisotropic(3, 1)
    for p, n in [(1, 1), (1, 2), (2, 3), (3, 3)]:
        v = double_sum_taylor(p, n)
        assert isinstance(v, Fails)
        B = [[p, 1], [0, -n]]
        R = [list(r) for r in direct_sum(B, B).rows]
        w = v.witness
        assert any(w) and sum(w[i] * R[i][j] * w[j] for i in range(4) for j in range(4)) == 0


def test_taylor_verdict_kinds():
    assert isinstance(taylor_verdict([[1, 1], [0, -5]]), ObstructionHolds)
    assert isinstance(taylor_verdict([[1, 1], [0, -2]]), Fails)
    assert isinstance(taylor_verdict([]), ObstructionHolds)
    assert isinstance(taylor_verdict([[1, 1], [0, -2]], height_bound=0), Unknown)

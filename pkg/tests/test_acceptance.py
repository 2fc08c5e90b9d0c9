"""Acceptance checks, one per criterion.  Each prints a PASS/FAIL line
(bypassing pytest's capture) and then asserts."""

import itertools
import random
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from knotgap.algebra import (
    CertifiedAbsent,
    LaurentPoly,
    NullPairWitness,
    alexander,
    alexander_fox,
    build_stable_witness,
    determinant,
    direct_sum,
    find_null_pair,
    prop1_reduce,
)
from knotgap.bounds import analyze
from knotgap.dagger import Anisotropic, Isotropic, certify_isotropy, dagger_value, local_solvable, solve_dagger
from knotgap.diagram import mirror

from conftest import FIXTURES, corpus, fixture_named


@pytest.fixture
def report(capsys):
    def emit(num, ok, detail):
        with capsys.disabled():
            print(f"\nAC{num} {'PASS' if ok else 'FAIL'}: {detail}")
        assert ok, detail

    return emit


def _rule(rep, name):
    return next(r for r in rep.stable_t_rules if r["rule"] == name)


def test_ac1_dagger_solver(report):
    t0 = time.perf_counter()
    bad = []
    for p in range(1, 51):
        for n in range(1, 51):
            sol = solve_dagger(p, n)
            if dagger_value(p, n, sol.tuple) != -p:
                bad.append((p, n))
    dt = time.perf_counter() - t0
    report(1, not bad and dt < 10, f"2500 (p,n) pairs solved, {len(bad)} failures, {dt:.2f}s (limit 10s)")


def test_ac2_lifting(report):
    bad = []
    count = 0
    ms = sorted({1 + 4 * k for k in range(1, 21)})
    for q in (2, 3, 5, 7, 11, 13):
        for m in ms:
            for k in range(1, (8 if q == 2 else 6) + 1):
                mod = q**k
                if mod < 2:
                    continue
                a, b, c, d = local_solvable(m, mod)
                count += 1
                if (a * a + b * b - m * (c * c + d * d) + 1) % mod:
                    bad.append((q, m, k))
    base_ok = all(local_solvable(m, 8) == (1, 0, 1, 1) for m in ms)
    report(2, not bad and base_ok, f"{count} lifted solutions verified, {len(bad)} failures; mod-8 base (1,0,1,1): {base_ok}")


def test_ac3_k5_chain(report):
    d = fixture_named("K5")
    rep = analyze(d)
    red = prop1_reduce([list(r) for r in rep.seifert_matrix])
    v, w = red["v"], red["w"]
    congruent = red["matrix"] == ((1, 1), (0, -5)) and abs(v[0] * w[1] - v[1] * w[0]) == 1
    t1 = _rule(rep, "clasp")
    thm = t1["applicable"] and t1["value"] == Fraction(2, 3) and t1["witness"]["pattern"] == [[1, 1], [0, -5]]
    dbl = rep.taylor["double"]
    cert = dbl["verdict"] == "ObstructionHolds" and dbl["certificate"]["kind"] == "Anisotropic" and dbl["certificate"]["q"] == 3
    report(
        3,
        congruent and thm and cert and "no framing-0 class" in dbl["consequence"],
        f"V ~ [[1,1],[0,-5]]: {congruent}; clasp bound {t1['value']}; doubled form Anisotropic(3,{dbl['certificate'].get('e')}): {cert}",
    )


def test_ac4_figure_eight(report):
    d = fixture_named("figure_eight")
    rep = analyze(d)
    delta = LaurentPoly({1: 1, 0: -3, -1: 1})
    fox = alexander_fox(d)
    t1, p2 = _rule(rep, "clasp"), _rule(rep, "framings_pm1")
    sw = t1["witness"]
    sol = sw["dagger_solution"]
    t1_ok = build_stable_witness(1, 1, (sol["x1"], sol["y1"], sol["x2"], sol["y2"])).matrix == ((0, 1), (0, -1))
    V = [list(r) for r in rep.seifert_matrix]
    pw = p2["witness"]
    p2_ok = NullPairWitness(tuple(pw["a"]), tuple(pw["b"]), tuple(map(tuple, pw["matrix"])), pw["matrix"][1][1]).verify(
        direct_sum(V, V)
    )
    ok = (
        rep.flags["homogeneous"]
        and rep.genus == 1
        and rep.signature == 0
        and rep.alexander.equivalent(delta)
        and fox.equivalent(delta)
        and t1["value"] == Fraction(2, 3)
        and p2["value"] == Fraction(1, 2)
        and t1_ok
        and p2_ok
    )
    report(
        4,
        ok,
        f"homogeneous={rep.flags['homogeneous']} g={rep.genus} sigma={rep.signature} Delta={rep.alexander} "
        f"(Fox {fox.normalized()}); clasp bound {t1['value']}, framings +-1 bound {p2['value']}, witnesses verified {t1_ok and p2_ok}",
    )


def test_ac5_oracle_equivalence(report):
    bad = []
    diagrams = corpus()
    for d in diagrams:
        rep = analyze(d)
        V = [list(r) for r in rep.seifert_matrix]
        fox = alexander_fox(d)
        if not (alexander(V).equivalent(fox) and abs(determinant(V)) == abs(fox(-1))):
            bad.append(d.name)
    report(5, not bad, f"{len(diagrams)} fixture diagrams, mismatches: {bad or 'none'}")


def _isotropic_brute(R, h):
    n = len(R)
    for v in itertools.product(range(-h, h + 1), repeat=n):
        if any(v) and sum(v[i] * R[i][j] * v[j] for i in range(n) for j in range(n)) == 0:
            return v
    return None


def test_ac6_witness_soundness(report):
    rng = random.Random(20240601)
    stats = {"witness": 0, "absent": 0, "notfound": 0, "stable": 0}
    bad = []
    for trial in range(10_000):
        n = rng.randint(2, 6)
        R = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
        res = find_null_pair(R, height_bound=4)
        if isinstance(res, NullPairWitness):
            stats["witness"] += 1
            if not res.verify(R):
                bad.append(("witness", R))
        elif isinstance(res, CertifiedAbsent):
            stats["absent"] += 1
            if _isotropic_brute(R, 4) is not None:
                bad.append(("absent", R))
        else:
            stats["notfound"] += 1
        p, m = rng.randint(1, 3), rng.randint(1, 3)
        if build_stable_witness(p, m, solve_dagger(p, m)).matrix != ((0, 1), (0, -m)):
            bad.append(("stable", p, m))
        stats["stable"] += 1
    report(6, not bad, f"10000 matrices: {stats}, discrepancies: {len(bad)}")


def test_ac7_isotropy(report):
    H = 40
    sums = {a * a + b * b for a in range(H + 1) for b in range(H + 1)}
    ys = sorted(s for s in sums if s)
    bad = []
    for m in range(1, 201):
        cert = certify_isotropy(m)
        brute = any(m * t in sums for t in ys)
        iso = isinstance(cert.verdict, Isotropic)
        if not cert.verify() or iso != brute:
            bad.append(m)
    c21, c5, c9 = certify_isotropy(21), certify_isotropy(5), certify_isotropy(9)
    named = (
        isinstance(c21.verdict, Anisotropic)
        and isinstance(c5.verdict, Isotropic)
        and isinstance(c9.verdict, Isotropic)
        and c5.verify()
        and c9.verify()
    )
    report(7, not bad and named, f"m <= 200 agree with brute force (|coords| <= 40): {not bad}; 21 -> {c21.verdict}, 5 -> {c5.verdict}, 9 -> {c9.verdict}")


def test_ac8_stable_identity(report):
    bad = [
        (p, n)
        for p in range(1, 21)
        for n in range(1, 21)
        if build_stable_witness(p, n, solve_dagger(p, n)).matrix != ((0, 1), (0, -n))
    ]
    report(8, not bad, f"400 (p,n) pairs give exactly [[0,1],[0,-n]], failures: {len(bad)}")


def test_ac9_calibration(report):
    tre = analyze(fixture_named("trefoil"))
    t1 = _rule(tre, "clasp")
    tre_ok = tre.signature == 2 and tre.genus == 1 and tre.gt_lower == tre.gt_upper["value"] == 1 and not t1["applicable"]
    fig = fixture_named("figure_eight")
    a, b = analyze(fig), analyze(mirror(fig))
    mir_ok = (
        b.signature == -a.signature
        and a.genus == b.genus
        and a.stable_t_upper == b.stable_t_upper
        and a.stable_s_upper == b.stable_s_upper
        and a.gt_upper["value"] == b.gt_upper["value"]
        and _rule(a, "clasp")["applicable"] == _rule(b, "clasp")["applicable"]
    )
    report(
        9,
        tre_ok and mir_ok,
        f"trefoil sigma={tre.signature} g={tre.genus} g_t in [{tre.gt_lower},{tre.gt_upper['value']}] "
        f"clasp bound applicable={t1['applicable']}; figure-eight mirror coherent: {mir_ok}",
    )


def test_ac10_determinism(report):
    outs = []
    for jobs in ("1", "8"):
        proc = subprocess.run(
            [sys.executable, "-m", "knotgap.cli", "batch", str(FIXTURES / "corpus.pd"), "--jobs", jobs],
            capture_output=True,
        )
        assert proc.returncode == 0, proc.stderr
        outs.append(proc.stdout)
    report(10, outs[0] == outs[1], f"--jobs 1 vs --jobs 8: byte-identical={outs[0] == outs[1]} ({len(outs[0])} bytes)")

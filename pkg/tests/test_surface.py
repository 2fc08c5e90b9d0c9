import pytest

from knotgap.algebra import alexander, alexander_fox, determinant, signature
from knotgap.diagram import is_reduced, mirror, parse_pd, relabel, rotate_crossings
from knotgap.errors import MissingSign, NoMixedCircle, NotHomogeneous, NotReduced
from knotgap.surface import (
    build_surface,
    face_curve_framings,
    find_clasp_pair,
    find_signed_curves,
    is_homogeneous,
    seifert_pairing,
    surface_dump,
)

from builders import random_knots, twist_knot
from conftest import corpus, fixture_named


def _congruent_2x2(V, W):
    # small search over GL2(Z) with entries in [-2, 2]
    import itertools

    rng = range(-2, 3)
    for a, b, c, d in itertools.product(rng, repeat=4):
        if abs(a * d - b * c) != 1:
            continue
        P = [[a, b], [c, d]]
        M = [[sum(P[k][i] * V[k][l] * P[l][j] for k in range(2) for l in range(2)) for j in range(2)] for i in range(2)]
        if M == W:
            return True
    return False


def test_figure_eight_surface(figure_eight):
    s = build_surface(figure_eight)
    assert s.genus == 1 and len(s.basis) == 2
    V = s.seifert_matrix.as_lists()
    assert _congruent_2x2(V, [[1, 1], [0, -1]]) or _congruent_2x2(V, [[1, 0], [1, -1]])
    assert determinant(V) == -5
    assert all(a["origin"] == "face-curve" and a["unknotted"] for a in s.seifert_matrix.annotations)


def test_positive_trefoil_calibration(trefoil):
    s = build_surface(trefoil)
    assert s.genus == 1
    assert [s.seifert_matrix[i, i] for i in range(2)] == [1, 1]
    assert signature(s.seifert_matrix) == 2


def test_unknot_surface():
    s = build_surface(parse_pd(""))
    assert s.genus == 0 and s.seifert_matrix.n == 0


def test_nonreduced_rejected():
    with pytest.raises(NotReduced):
        build_surface(fixture_named("trefoil_kink"))
    s = build_surface(fixture_named("trefoil_kink"), allow_nonreduced=True)
    assert s.genus == 1


def test_homogeneity(figure_eight, trefoil):
    assert is_homogeneous(figure_eight)
    assert is_homogeneous(trefoil)
    d = fixture_named("trefoil_r2")
    ok, (circle, side, pos, neg) = is_homogeneous(d, with_witness=True)
    assert not ok and side in ("inside", "outside")
    assert d.signs[pos] == 1 and d.signs[neg] == -1


def test_face_curve_framings(figure_eight, trefoil):
    rows = face_curve_framings(build_surface(figure_eight))
    twists = sorted(t for _, t, _ in rows if t)
    assert twists == [-2, -2, 2, 2]
    for cv, t, fr in rows:
        if not cv.crossing_set:
            assert t == 0 and fr == 0 and not any(cv.homology_class)
    bigons = [t for cv, t, _ in face_curve_framings(build_surface(trefoil)) if len(cv.crossing_set) == 2]
    assert bigons and all(t == 2 for t in bigons)


def test_signed_curves(figure_eight, trefoil):
    sc = find_signed_curves(build_surface(figure_eight))
    assert (sc["gamma_plus"].framing, sc["gamma_minus"].framing) == (1, -1)
    sc = find_signed_curves(build_surface(twist_knot(5)))
    assert (sc["gamma_plus"].framing, sc["gamma_minus"].framing) == (1, -5)
    with pytest.raises(MissingSign):
        find_signed_curves(build_surface(trefoil))
    with pytest.raises(NotHomogeneous):
        find_signed_curves(build_surface(fixture_named("trefoil_r2")))


def test_clasp_pair(figure_eight, trefoil):
    assert find_clasp_pair(build_surface(figure_eight))["matrix"] == ((1, 1), (0, -1))
    for n in range(1, 6):
        assert find_clasp_pair(build_surface(twist_knot(n)))["matrix"] == ((1, 1), (0, -n))
    with pytest.raises(NoMixedCircle):
        find_clasp_pair(build_surface(trefoil))


def test_clasp_pattern_on_mirrors():
    for n in range(1, 6):
        (p, one), (zero, m) = find_clasp_pair(build_surface(mirror(twist_knot(n))))["matrix"]
        assert one == 1 and zero == 0 and p >= 1 and m <= -1


def test_pairing_basics(figure_eight):
    s = build_surface(figure_eight)
    a, b = s.basis
    assert {seifert_pairing(s, a, b), seifert_pairing(s, b, a)} == {0, 1} or {
        seifert_pairing(s, a, b),
        seifert_pairing(s, b, a),
    } == {0, -1}
    empty = next(cv for cv in s.curves if not cv.crossing_set and not cv.face == s.outer_face)
    assert seifert_pairing(s, empty, empty) == 0
    assert seifert_pairing(s, empty, a) == 0


@pytest.mark.parametrize("d", corpus() + random_knots(25, seed=7), ids=lambda d: d.name)
def test_matrix_matches_fox_oracle(d):
    s = build_surface(d, allow_nonreduced=True)
    V = s.seifert_matrix
    fox = alexander_fox(d)
    assert alexander(V).equivalent(fox)
    assert abs(determinant(V)) == abs(fox(-1))
    assert abs(alexander(V)(1)) == 1
    assert signature(V) % 2 == 0 and abs(signature(V)) <= 2 * s.genus


@pytest.mark.parametrize("d", corpus() + random_knots(15, seed=11), ids=lambda d: d.name)
def test_monochromatic_faces_have_matching_framing_sign(d):
    if not is_reduced(d):
        return
    s = build_surface(d)
    for cv, _, fr in face_curve_framings(s):
        signs = {d.signs[i] for i in cv.crossing_set}
        if len(signs) == 1 and any(cv.homology_class):
            assert fr * signs.pop() > 0


@pytest.mark.parametrize("name", ["figure_eight", "K3", "granny", "trefoil_r2"])
def test_outer_face_independence(name):
    d = fixture_named(name)
    ref = build_surface(d)
    for f in range(len(d.faces)):
        s = build_surface(d, outer_face=f)
        assert s.genus == ref.genus
        assert signature(s.seifert_matrix) == signature(ref.seifert_matrix)
        assert alexander(s.seifert_matrix) == alexander(ref.seifert_matrix)
        for a in range(len(d.faces)):
            for b in range(len(d.faces)):
                assert s.pair_faces(a, b) == ref.pair_faces(a, b)


def test_relabel_and_rotation_invariance():
    d = fixture_named("K3")
    ref = build_surface(d).seifert_matrix
    for e in (relabel(d, 3), rotate_crossings(d, 2)):
        V = build_surface(e).seifert_matrix
        assert signature(V) == signature(ref)
        assert alexander(V) == alexander(ref)


def test_dump_is_stable(figure_eight):
    text = surface_dump(build_surface(figure_eight))
    assert text == surface_dump(build_surface(figure_eight))
    assert "circle 1: edges 2 8 6 4" in text and "genus 1" in text

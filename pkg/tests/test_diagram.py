import pytest

from knotgap.diagram import (
    crossing_sign,
    format_pd,
    is_prime_diagram,
    is_reduced,
    mirror,
    nugatory_crossings,
    parse_pd,
    parse_pd_file,
    relabel,
    rotate_crossings,
    seifert_circles,
    writhe,
)
from knotgap.errors import PDSyntaxError, UserInputError, ValidationError

from conftest import FIGURE_EIGHT, TREFOIL, corpus, fixture_named


def test_figure_eight_signs(figure_eight):
    assert crossing_sign(figure_eight, 0) == -1
    assert crossing_sign(figure_eight, 2) == 1
    assert writhe(figure_eight) == 0


def test_mirror_flips_signs(figure_eight, trefoil):
    for d in (figure_eight, trefoil):
        m = mirror(d)
        assert m.signs == tuple(-s for s in d.signs)
        assert mirror(m).crossings == d.crossings
        assert writhe(m) == -writhe(d)
    assert set(mirror(trefoil).signs) == {-1}


def test_seifert_circles(figure_eight, trefoil):
    circles = {frozenset(c) for c in seifert_circles(figure_eight).circles}
    assert circles == {frozenset({1, 5}), frozenset({2, 8, 6, 4}), frozenset({3, 7})}
    assert len(seifert_circles(trefoil).circles) == 2
    assert len(seifert_circles(parse_pd("")).circles) == 1


def test_face_counts(figure_eight, trefoil):
    assert len(trefoil.faces) == 5
    assert len(figure_eight.faces) == 6
    kink = parse_pd("X(1,1,2,2)")
    assert len(kink.faces) == 3
    assert sum(f.is_outer for f in figure_eight.faces) == 1


def test_reduced(trefoil):
    assert is_reduced(trefoil)
    assert not is_reduced(fixture_named("trefoil_kink"))
    assert nugatory_crossings(fixture_named("trefoil_kink")) == [3]
    assert is_reduced(parse_pd(""))
    assert not is_reduced(parse_pd("X(1,1,2,2)"))


def test_prime(trefoil):
    assert is_prime_diagram(trefoil)
    assert not is_prime_diagram(fixture_named("granny"))
    assert is_prime_diagram(parse_pd("X(1,1,2,2)"))


def test_round_trip():
    for d in corpus():
        again = parse_pd(format_pd(d))
        assert again.crossings == d.crossings and again.name == d.name
        assert format_pd(again) == format_pd(d)


def test_sparse_labels_renumbered():
    with pytest.warns(UserWarning):
        d = parse_pd("X(2,8,4,10) X(6,12,8,2) X(10,4,12,6)")
    assert format_pd(d) == TREFOIL


@pytest.mark.parametrize(
    "text, exc",
    [
        ("X(1,2,3,4)", ValidationError),
        ("X(1,3,2,4) X(3,1,4,2)", ValidationError),  # Hopf link
        ("X(1,4,2,5) X(3,6,4,1) X(7,x)", PDSyntaxError),
        ("X(1,4,2,5) X(3,6,4,1)", ValidationError),
    ],
)
def test_rejects_bad_codes(text, exc):
    with pytest.raises(exc):
        parse_pd(text)


def test_file_errors_name_line():
    text = f"a: {TREFOIL}\n\n# comment\nb: X(1,2"
    with pytest.raises(UserInputError) as info:
        parse_pd_file(text)
    assert info.value.line == 4 and "line 4" in str(info.value)


def test_file_reads_names():
    got = parse_pd_file(f"t: {TREFOIL}\n# skip\n{FIGURE_EIGHT}  # trailing\n")
    assert [(k, d.name) for k, d in got] == [(1, "t"), (3, None)]


def test_structural_invariants():
    for d in corpus():
        c = len(d.crossings)
        assert len(d.faces) == c + 2
        assert sum(len(f.corners) for f in d.faces) == 4 * c
        s = len(seifert_circles(d).circles)
        assert (c - s + 1) % 2 == 0


def test_predicates_survive_relabel():
    for d in corpus():
        for k in range(1, len(d.crossings) * 2, 3):
            e = relabel(d, k)
            assert is_reduced(e) == is_reduced(d)
            assert is_prime_diagram(e) == is_prime_diagram(d)
            assert e.signs == d.signs
        r = rotate_crossings(d, 1)
        assert is_prime_diagram(r) == is_prime_diagram(d)

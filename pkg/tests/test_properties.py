from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from knotgap.algebra import (
    LaurentPoly,
    NullPairWitness,
    alexander,
    build_stable_witness,
    direct_sum,
    find_null_pair,
    signature,
    smith_normal_form,
)
from knotgap.dagger import certify_isotropy, dagger_value, local_solvable, solve_dagger
from knotgap.diagram import format_pd, mirror, parse_pd, writhe

from builders import braid_closure

small = st.integers(-3, 3)


def square(n):
    return st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)


@st.composite
def braid_knots(draw):
    k = draw(st.integers(2, 4))
    word = draw(st.lists(st.integers(1, k - 1).flatmap(lambda i: st.sampled_from([i, -i])), min_size=k, max_size=8))
    d = braid_closure(k, word)
    assume(d is not None)
    return d


@settings(max_examples=60, suppress_health_check=[HealthCheck.filter_too_much])
@given(braid_knots())
def test_pd_round_trip(d):
    again = parse_pd(format_pd(d))
    assert again.crossings == d.crossings
    assert writhe(mirror(again)) == -writhe(d)


@given(st.integers(1, 3).flatmap(square))
def test_smith_reconstructs(M):
    U, S, W = smith_normal_form(M)
    n = len(M)
    US = [[sum(U[i][k] * S[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    assert [[sum(US[i][k] * W[k][j] for k in range(n)) for j in range(n)] for i in range(n)] == M


@given(st.integers(1, 3).flatmap(square), st.integers(1, 3).flatmap(square))
def test_signature_additive_alexander_multiplicative(A, B):
    S = direct_sum(A, B)
    assert signature(S) == signature(A) + signature(B)
    assert alexander(S).equivalent(alexander(A) * alexander(B))


@given(st.dictionaries(st.integers(-4, 4), st.integers(-5, 5)))
def test_normalization_idempotent(c):
    p = LaurentPoly(c)
    assert p.normalized().normalized() == p.normalized()
    assert p.equivalent(p * LaurentPoly({3: -1}))


@settings(max_examples=150)
@given(st.integers(2, 4).flatmap(square))
def test_null_pair_witnesses_verify(R):
    res = find_null_pair(R, height_bound=3)
    if isinstance(res, NullPairWitness):
        assert res.verify(R)


@given(st.integers(1, 30), st.integers(1, 30))
def test_dagger_round_trip(p, n):
    sol = solve_dagger(p, n)
    assert dagger_value(p, n, sol.tuple) == -p
    assert build_stable_witness(p, n, sol).matrix == ((0, 1), (0, -n))


@given(st.integers(1, 10), st.integers(1, 10), st.integers(2, 3000))
def test_local_solutions_verify(p, n, modulus):
    m = 1 + 4 * n * p
    a, b, c, d = local_solvable(m, modulus)
    assert (a * a + b * b - m * (c * c + d * d) + 1) % modulus == 0


@given(st.integers(1, 10**6))
def test_isotropy_certificates_verify(m):
    assert certify_isotropy(m).verify()

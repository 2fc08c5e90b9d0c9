"""Exact integer linear algebra on Seifert forms.

Invariants (signature, Alexander polynomial, determinant), block sums,
Smith normal form, and the subgroup searches: null pairs, the stable
witness on a triple sum, and the genus-one reductions.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import HypothesisViolated, NotApplicable, VerificationFailed
from .surface import SeifertMatrix

__all__ = [
    "LaurentPoly",
    "signature",
    "alexander",
    "maxdeg",
    "determinant",
    "alexander_fox",
    "direct_sum",
    "smith_normal_form",
    "solve_linear",
    "NullPairWitness",
    "NotFound",
    "CertifiedAbsent",
    "find_null_pair",
    "StableWitness",
    "build_stable_witness",
    "prop1_reduce",
    "prop2_construct",
    "is_definite",
]

# enumeration cap for the isotropic-vector search (vectors tested)
SEARCH_BUDGET = 400_000


def _rows(V):
    if isinstance(V, SeifertMatrix):
        return [list(r) for r in V.rows]
    return [list(map(int, r)) for r in V]


def _as_matrix(V):
    return V if isinstance(V, SeifertMatrix) else SeifertMatrix(tuple(tuple(r) for r in V))


def _pair(V, u, v):
    n = len(V)
    return sum(u[i] * V[i][j] * v[j] for i in range(n) if u[i] for j in range(n) if v[j])


# -- Laurent polynomials ---------------------------------------------------


class LaurentPoly:
    """Integer Laurent polynomial in t."""

    def __init__(self, coeffs=None):
        self.coeffs = {int(k): int(v) for k, v in (coeffs or {}).items() if v}

    @classmethod
    def from_list(cls, coeffs, low=0):
        return cls({low + k: c for k, c in enumerate(coeffs)})

    def __eq__(self, other):
        return isinstance(other, LaurentPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items())))

    def __mul__(self, other):
        out = {}
        for a, x in self.coeffs.items():
            for b, y in other.coeffs.items():
                out[a + b] = out.get(a + b, 0) + x * y
        return LaurentPoly(out)

    def __neg__(self):
        return LaurentPoly({k: -v for k, v in self.coeffs.items()})

    def is_zero(self):
        return not self.coeffs

    def __call__(self, t):
        return sum(c * Fraction(t) ** k for k, c in self.coeffs.items())

    def normalized(self):
        """Symmetric representative with positive leading coefficient.

        Strips a unit ±t^k; the span of exponents is centered at 0.
        """
        if not self.coeffs:
            return self
        lo, hi = min(self.coeffs), max(self.coeffs)
        shift = -((lo + hi) // 2) if (lo + hi) % 2 == 0 else -((lo + hi + 1) // 2)
        sign = 1 if self.coeffs[hi] > 0 else -1
        return LaurentPoly({k + shift: sign * c for k, c in self.coeffs.items()})

    def equivalent(self, other):
        """Equal up to multiplication by ±t^k."""
        return self.normalized() == other.normalized()

    @property
    def maxdeg(self):
        return max(self.normalized().coeffs, default=0)

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in sorted(self.coeffs, reverse=True):
            c = self.coeffs[k]
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                mono = "t" if k == 1 else f"t^{k}"
                body = mono if mag == 1 else f"{mag}{mono}"
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def to_json(self):
        return {str(k): v for k, v in sorted(self.coeffs.items())}


def _bareiss(M):
    """Exact determinant of an integer matrix."""
    n = len(M)
    if n == 0:
        return 1
    A = [list(r) for r in M]
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            sw = next((i for i in range(k + 1, n) if A[i][k]), None)
            if sw is None:
                return 0
            A[k], A[sw] = A[sw], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def _det_poly(mat_at, degree):
    """Polynomial det(M(t)) of known degree bound, by exact interpolation."""
    xs = list(range(degree + 1))
    ys = [_bareiss(mat_at(x)) for x in xs]
    # Newton divided differences, then expand
    coef = [Fraction(y) for y in ys]
    for j in range(1, len(xs)):
        for i in range(len(xs) - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = [Fraction(0)]
    for i in range(len(xs) - 1, -1, -1):
        # poly = poly*(t - xs[i]) + coef[i]
        new = [Fraction(0)] * (len(poly) + 1)
        for k, c in enumerate(poly):
            new[k + 1] += c
            new[k] -= c * xs[i]
        new[0] += coef[i]
        poly = new
    if any(c.denominator != 1 for c in poly):
        raise AssertionError("non-integral determinant polynomial")
    return [int(c) for c in poly]


def alexander(V) -> LaurentPoly:
    """det(V − tVᵀ), normalized."""
    R = _rows(V)
    n = len(R)
    if n == 0:
        return LaurentPoly({0: 1})

    def at(t):
        return [[R[i][j] - t * R[j][i] for j in range(n)] for i in range(n)]

    return LaurentPoly.from_list(_det_poly(at, n)).normalized()


def maxdeg(delta: LaurentPoly) -> int:
    return delta.maxdeg


def determinant(V) -> int:
    """det(V + Vᵀ)."""
    R = _rows(V)
    n = len(R)
    return _bareiss([[R[i][j] + R[j][i] for j in range(n)] for i in range(n)])


def signature(V) -> int:
    """Signature of V + Vᵀ by rational congruence diagonalization."""
    R = _rows(V)
    n = len(R)
    A = [[Fraction(R[i][j] + R[j][i]) for j in range(n)] for i in range(n)]
    sig = 0
    size = n
    idx = list(range(n))
    while idx:
        k = next((i for i in idx if A[i][i] != 0), None)
        if k is None:
            # all diagonals vanish: use a hyperbolic pair
            pair = next(((i, j) for i in idx for j in idx if i < j and A[i][j] != 0), None)
            if pair is None:
                break  # the rest is the radical
            i, j = pair
            # replace e_i by e_i + e_j to create a nonzero diagonal
            for m in range(size):
                A[i][m] += A[j][m]
            for m in range(size):
                A[m][i] += A[m][j]
            k = i
        piv = A[k][k]
        sig += 1 if piv > 0 else -1
        idx.remove(k)
        for i in idx:
            if A[i][k]:
                f = A[i][k] / piv
                for m in range(size):
                    A[i][m] -= f * A[k][m]
                for m in range(size):
                    A[m][i] -= f * A[m][k]
    return sig


def is_definite(V):
    """+1 / -1 when V + Vᵀ is positive / negative definite, else 0."""
    R = _rows(V)
    n = len(R)
    if n == 0:
        return 0
    if _bareiss([[R[i][j] + R[j][i] for j in range(n)] for i in range(n)]) == 0:
        return 0
    s = signature(R)
    return 1 if s == n else (-1 if s == -n else 0)


def alexander_fox(d) -> LaurentPoly:
    """Alexander polynomial from the Wirtinger presentation (Fox calculus)."""
    n = len(d.crossings)
    if n == 0:
        return LaurentPoly({0: 1})
    parent = list(range(d.edge_count + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b, c, dd in d.crossings:
        parent[find(b)] = find(dd)
    arcs = sorted({find(e) for e in range(1, d.edge_count + 1)})
    col = {r: k for k, r in enumerate(arcs)}
    assert len(arcs) == n

    # entry = (constant, t-coefficient)
    rows = []
    for (a, b, c, dd), s in zip(d.crossings, d.signs):
        row = [[0, 0] for _ in range(n)]
        ia, io, ic = col[find(a)], col[find(b)], col[find(c)]
        if s == 1:
            parts = ((ia, (0, 1)), (io, (1, -1)), (ic, (-1, 0)))
        else:
            parts = ((ia, (1, 0)), (io, (-1, 1)), (ic, (0, -1)))
        for j, (k0, k1) in parts:
            row[j][0] += k0
            row[j][1] += k1
        rows.append(row)
    minor = [r[1:] for r in rows[1:]]

    def at(t):
        return [[e[0] + e[1] * t for e in r] for r in minor]

    return LaurentPoly.from_list(_det_poly(at, n - 1)).normalized()


def direct_sum(*Vs) -> SeifertMatrix:
    mats = [_as_matrix(V) for V in Vs]
    N = sum(m.n for m in mats)
    rows = [[0] * N for _ in range(N)]
    ann = []
    off = 0
    for m in mats:
        for i in range(m.n):
            for j in range(m.n):
                rows[off + i][off + j] = m[i, j]
        ann.extend(m.annotations)
        off += m.n
    return SeifertMatrix(tuple(tuple(r) for r in rows), tuple(ann))


# -- Smith normal form -----------------------------------------------------


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _matmul(A, B):
    if not A or not B:
        return [[0] * (len(B[0]) if B else 0) for _ in A]
    return [[sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0]))] for i in range(len(A))]


def smith_normal_form(M):
    """Return (U, S, W) with M = U·S·W, U and W unimodular, S in Smith form."""
    S = [list(map(int, r)) for r in M]
    m = len(S)
    n = len(S[0]) if m else 0
    U = _identity(m)  # M = U S W maintained throughout
    W = _identity(n)

    def row_add(i, j, k):
        # S_i += k S_j ; compensate U by column op U_j -= k U_i
        S[i] = [a + k * b for a, b in zip(S[i], S[j])]
        for r in U:
            r[j] -= k * r[i]

    def row_swap(i, j):
        S[i], S[j] = S[j], S[i]
        for r in U:
            r[i], r[j] = r[j], r[i]

    def row_neg(i):
        S[i] = [-a for a in S[i]]
        for r in U:
            r[i] = -r[i]

    def col_add(i, j, k):
        # col_i += k col_j ; compensate W by row op W_j -= k W_i
        for r in S:
            r[i] += k * r[j]
        W[j] = [a - k * b for a, b in zip(W[j], W[i])]

    def col_swap(i, j):
        for r in S:
            r[i], r[j] = r[j], r[i]
        W[i], W[j] = W[j], W[i]

    t = 0
    while t < min(m, n):
        nz = [(abs(S[i][j]), i, j) for i in range(t, m) for j in range(t, n) if S[i][j]]
        if not nz:
            break
        _, pi, pj = min(nz)
        row_swap(t, pi)
        col_swap(t, pj)
        while True:
            done = True
            for i in range(t + 1, m):
                if S[i][t]:
                    q = S[i][t] // S[t][t]
                    row_add(i, t, -q)
                    if S[i][t]:
                        row_swap(t, i)
                        done = False
            for j in range(t + 1, n):
                if S[t][j]:
                    q = S[t][j] // S[t][t]
                    col_add(j, t, -q)
                    if S[t][j]:
                        col_swap(t, j)
                        done = False
            if not done:
                continue
            # divisibility: pull in any entry not divisible by the pivot
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if S[i][j] % S[t][t]),
                None,
            )
            if bad is None:
                break
            row_add(t, bad[0], 1)
        if S[t][t] < 0:
            row_neg(t)
        t += 1
    return U, S, W


def solve_linear(M, target):
    """Integer solution of M·w = target, or None (Smith normal form)."""
    m = len(M)
    n = len(M[0])
    U, S, W = smith_normal_form(M)
    Uinv = _inverse_unimodular(U)
    rhs = [sum(Uinv[i][k] * target[k] for k in range(m)) for i in range(m)]
    z = [0] * n
    for i in range(m):
        dii = S[i][i] if i < n else 0
        if dii == 0:
            if rhs[i] != 0:
                return None
        else:
            if rhs[i] % dii:
                return None
            z[i] = rhs[i] // dii
    Winv = _inverse_unimodular(W)
    return [sum(Winv[i][k] * z[k] for k in range(n)) for i in range(n)]


def _inverse_unimodular(A):
    n = len(A)
    aug = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(A)]
    for c in range(n):
        p = next(i for i in range(c, n) if aug[i][c])
        aug[c], aug[p] = aug[p], aug[c]
        pv = aug[c][c]
        aug[c] = [x / pv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c]:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[c])]
    out = [[int(x) for x in r[n:]] for r in aug]
    assert all(x.denominator == 1 for r in aug for x in r[n:])
    return out


# -- null pairs ----------------------------------------------------------


@dataclass(frozen=True)
class NullPairWitness:
    v: tuple
    w: tuple
    matrix: tuple
    x: int
    # True when the pattern needed the orientation of Σ reversed (Vᵀ)
    transposed: bool = False

    def verify(self, V):
        R = _rows(V)
        if self.transposed:
            R = [list(c) for c in zip(*R)]
        got = ((_pair(R, self.v, self.v), _pair(R, self.v, self.w)), (_pair(R, self.w, self.v), _pair(R, self.w, self.w)))
        return got == self.matrix == ((0, 1), (0, self.x)) and math.gcd(*self.v) == 1


@dataclass(frozen=True)
class NotFound:
    height: int
    note: str = ""


@dataclass(frozen=True)
class CertifiedAbsent:
    reason: str
    certificate: object = None


def _is_square(k):
    return k >= 0 and math.isqrt(k) ** 2 == k


def _primitive_isotropic_rank2(R):
    """All primitive isotropic vectors of a 2×2 form, up to sign."""
    a, b, c = R[0][0], R[0][1] + R[1][0], R[1][1]
    D = b * b - 4 * a * c
    if not _is_square(D):
        return []
    if a == 0 and c == 0 and b == 0:
        return None  # every vector is isotropic
    r = math.isqrt(D)
    out = set()
    if a != 0:
        # a x² + b x y + c y² = 0 → x/y = (-b ± r) / 2a
        for sg in (1, -1):
            num, den = -b + sg * r, 2 * a
            g = math.gcd(num, den)
            x, y = num // g, den // g
            out.add(_canon((x, y)))
    else:
        out.add((1, 0))
        if b != 0 or c != 0:
            # y (b x + c y) = 0
            g = math.gcd(c, b)
            out.add(_canon((-c // g, b // g)))
    return sorted(out)


def _canon(v):
    g = math.gcd(*v)
    v = tuple(x // g for x in v)
    first = next(x for x in v if x)
    return v if first > 0 else tuple(-x for x in v)


def _complete(R, v):
    """Integer w making (v, w) a null pair, or None."""
    n = len(R)
    a = [sum(v[i] * R[i][j] for i in range(n)) for j in range(n)]  # V(v, ·)
    b = [sum(R[j][i] * v[i] for i in range(n)) for j in range(n)]  # V(·, v)
    for target, tr in (((1, 0), False), ((0, 1), True)):
        w = solve_linear([a, b], list(target))
        if w is not None:
            w = tuple(w)
            M = [list(c) for c in zip(*R)] if tr else R
            vv, vw = _pair(M, v, v), _pair(M, v, w)
            wv, ww = _pair(M, w, v), _pair(M, w, w)
            assert (vv, vw, wv) == (0, 1, 0)
            return NullPairWitness(tuple(v), w, ((0, 1), (0, ww)), ww, tr)
    return None


def _fermat_block_certificate(R):
    """Anisotropy certificate for a doubled binary form B ⊕ B."""
    if len(R) != 4:
        return None
    if any(R[i][j] for i in range(2) for j in range(2, 4)) or any(R[i][j] for i in range(2, 4) for j in range(2)):
        return None
    if [R[0][:2], R[1][:2]] != [R[2][2:], R[3][2:]]:
        return None
    a, b, c = R[0][0], R[0][1] + R[1][0], R[1][1]
    D = b * b - 4 * a * c
    if D <= 0 or a == 0:
        return None
    from .dagger import Anisotropic, certify_isotropy

    cert = certify_isotropy(D)
    if isinstance(cert.verdict, Anisotropic):
        return cert
    return None


def _vectors_of_height(n, h):
    """Primitive vectors with max-norm h, first nonzero positive, lexicographic."""
    rng = range(-h, h + 1)
    for v in itertools.product(rng, repeat=n):
        if max(abs(x) for x in v) != h:
            continue
        first = next(x for x in v if x)
        if first < 0:
            continue
        if math.gcd(*v) != 1:
            continue
        yield v


def _isotropic_at_height(R, h):
    """Isotropic primitive vectors of max-norm h in deterministic order."""
    n = len(R)
    if n == 1:
        return [(1,)] if R[0][0] == 0 and h == 1 else []
    S = [[R[i][j] + R[j][i] for j in range(n)] for i in range(n)]
    c = R[n - 1][n - 1]
    found = []
    # enumerate the first n-1 coordinates, solve the quadratic for the last
    for head in itertools.product(range(-h, h + 1), repeat=n - 1):
        hmax = max(abs(x) for x in head) if head else 0
        if hmax > h:
            continue
        hv = list(head)
        q0 = sum(R[i][j] * hv[i] * hv[j] for i in range(n - 1) for j in range(n - 1))
        L = sum(S[i][n - 1] * hv[i] for i in range(n - 1))
        cands = []
        if c == 0:
            if L == 0:
                if q0 == 0:
                    cands = range(-h, h + 1)
            elif -q0 % L == 0:
                cands = [-q0 // L]
        else:
            D = L * L - 4 * c * q0
            if _is_square(D):
                r = math.isqrt(D)
                for num in {-L + r, -L - r}:
                    if num % (2 * c) == 0:
                        cands.append(num // (2 * c))
        for t in sorted(set(cands)):
            if abs(t) > h:
                continue
            v = tuple(hv + [t])
            if max(abs(x) for x in v) != h:
                continue
            first = next((x for x in v if x), 0)
            if first <= 0 or math.gcd(*v) != 1:
                continue
            found.append(v)
    return sorted(found)


def find_null_pair(V, height_bound=64, budget=None):
    """Search for primitive v, w with Seifert matrix [[0,1],[0,x]] on ⟨v, w⟩.

    Returns NullPairWitness, CertifiedAbsent, or NotFound(height reached).
    """
    R = _rows(V)
    n = len(R)
    budget = SEARCH_BUDGET if budget is None else budget
    if n == 0:
        return CertifiedAbsent("trivial form")
    if is_definite(R):
        return CertifiedAbsent("definite", {"signature": signature(R)})
    if n == 2:
        a, b, c = R[0][0], R[0][1] + R[1][0], R[1][1]
        D = b * b - 4 * a * c
        if not _is_square(D):
            return CertifiedAbsent("non-square discriminant", {"discriminant": D})
        lines = _primitive_isotropic_rank2(R)
        if lines is None:
            lines = [v for h in range(1, height_bound + 1) for v in _isotropic_at_height(R, h)]
        for v in sorted(lines, key=lambda v: (max(map(abs, v)), v)):
            wit = _complete(R, v)
            if wit is not None:
                return wit
        return NotFound(height_bound, "isotropic lines exist but none extends to a unimodular pair")
    cert = _fermat_block_certificate(R)
    if cert is not None:
        return CertifiedAbsent("fermat", cert)
    spent = 0
    for h in range(1, height_bound + 1):
        cost = (2 * h + 1) ** (n - 1)
        if spent + cost > budget:
            return NotFound(h - 1, "enumeration budget reached")
        spent += cost
        for v in _isotropic_at_height(R, h):
            wit = _complete(R, v)
            if wit is not None:
                return wit
    return NotFound(height_bound)


# -- stable witness --------------------------------------------------------


@dataclass(frozen=True)
class StableWitness:
    blocks: int
    solution: tuple
    v: tuple
    w: tuple
    matrix: tuple
    form: tuple = field(default=())


def build_stable_witness(p, n, sol):
    from .dagger import dagger_value

    if hasattr(sol, "x1"):
        xs = (sol.x1, sol.y1, sol.x2, sol.y2)
    else:
        xs = tuple(sol)
    x1, y1, x2, y2 = xs
    if dagger_value(p, n, xs) != -p:
        raise VerificationFailed(f"({x1},{y1},{x2},{y2}) does not satisfy the equation for p={p}, n={n}")
    B = ((p, 1), (0, -n))
    V3 = direct_sum(B, B, B)
    R = _rows(V3)
    v = (1, 0, x1, y1, x2, y2)
    w = (0, 1, 0, 0, 0, 0)
    M = ((_pair(R, v, v), _pair(R, v, w)), (_pair(R, w, v), _pair(R, w, w)))
    if M != ((0, 1), (0, -n)):
        raise VerificationFailed(f"restricted form {M} is not [[0,1],[0,{-n}]]")
    return StableWitness(3, xs, v, w, M, B)


# -- genus-one reductions --------------------------------------------------


def _ext_gcd(a, b):
    if b == 0:
        return (a, 1, 0) if a >= 0 else (-a, -1, 0)
    g, x, y = _ext_gcd(b, a % b)
    return g, y, x - (a // b) * y


def _represents_one_locally(R, moduli=(3, 4, 5, 7, 8, 9, 11, 13, 16)):
    """Modulus at which q(v) = 1 has no solution, or None."""
    for N in moduli:
        if not any(
            (R[0][0] * x * x + (R[0][1] + R[1][0]) * x * y + R[1][1] * y * y - 1) % N == 0
            for x in range(N)
            for y in range(N)
        ):
            return N
    return None


def prop1_reduce(V, height_bound=64):
    """Reduce a genus-one form to [[1,1],[0,-n]] via a framing-1 class.

    Returns dict(n, v, w, matrix).  Raises NotApplicable when no framing-1
    class exists (certified) or none was found within the bound.
    """
    R = _rows(V)
    if len(R) != 2:
        raise NotApplicable("genus-one matrix required", certified=True)
    q = lambda x, y: R[0][0] * x * x + (R[0][1] + R[1][0]) * x * y + R[1][1] * y * y  # noqa: E731
    definite = is_definite(R)
    if definite < 0:
        raise NotApplicable("form is negative definite: no framing-1 class", certified=True)
    bound = height_bound
    if definite > 0:
        # q(v) ≥ λ|v|²: every solution of q = 1 is inside a computable box
        a, b, c = R[0][0], R[0][1] + R[1][0], R[1][1]
        D = 4 * a * c - b * b
        # completing the square: y² ≤ 4a/D and x² ≤ 4c/D when q = 1
        bound = max(math.isqrt(4 * a // D), math.isqrt(4 * c // D)) + 1
    else:
        N = _represents_one_locally(R)
        if N is not None:
            raise NotApplicable(f"framing 1 is not represented modulo {N}", certified=True)
    v = None
    for h in range(1, bound + 1):
        for x, y in _vectors_of_height(2, h):
            if q(x, y) == 1:
                v = (x, y)
                break
        if v:
            break
    if v is None:
        raise NotApplicable("no framing-1 class found", certified=definite > 0)
    g, s, t = _ext_gcd(v[0], v[1])
    w = (-t, s)  # det [v w] = v0*s + v1*t = 1
    inter = _pair(R, v, w) - _pair(R, w, v)
    if inter == -1:
        w = (-w[0], -w[1])
    elif inter != 1:
        raise AssertionError("intersection form is not unimodular")
    x = _pair(R, w, v)
    w2 = (w[0] - x * v[0], w[1] - x * v[1])
    M = ((_pair(R, v, v), _pair(R, v, w2)), (_pair(R, w2, v), _pair(R, w2, w2)))
    assert M[0] == (1, 1) and M[1][0] == 0
    return {"n": -M[1][1], "v": v, "w": w2, "matrix": M}


def prop2_construct(V, v_plus, zeta, v_minus):
    """Null pair on V ⊕ V from framing ±1 classes and a dual curve ζ."""
    R = _rows(V)
    n = len(R)
    if _pair(R, v_plus, v_plus) != 1:
        raise HypothesisViolated("v_plus must have framing 1")
    if _pair(R, v_minus, v_minus) != -1:
        raise HypothesisViolated("v_minus must have framing -1")
    inter = _pair(R, v_plus, zeta) - _pair(R, zeta, v_plus)
    if inter not in (1, -1):
        raise HypothesisViolated("zeta must meet v_plus once")
    if inter == -1:
        zeta = tuple(-z for z in zeta)
    y = _pair(R, zeta, v_plus)
    a = tuple(v_plus) + tuple(v_minus)
    b = tuple(z - y * u for z, u in zip(zeta, v_plus)) + (0,) * n
    R2 = _rows(direct_sum(R, R))
    M = ((_pair(R2, a, a), _pair(R2, a, b)), (_pair(R2, b, a), _pair(R2, b, b)))
    if M[0] != (0, 1) or M[1][0] != 0:
        raise VerificationFailed(f"constructed form {M} lost the null pattern")
    wit = NullPairWitness(a, b, M, M[1][1], False)
    return wit


def dual_class(V, v):
    """Some ζ with intersection number ι(v, ζ) = 1 (v primitive)."""
    R = _rows(V)
    n = len(R)
    r = [sum(v[i] * (R[i][j] - R[j][i]) for i in range(n)) for j in range(n)]
    z = solve_linear([r], [1])
    return None if z is None else tuple(z)

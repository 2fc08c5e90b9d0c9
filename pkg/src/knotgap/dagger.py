"""Integer solutions of Σ p·xᵢ² + xᵢyᵢ − n·yᵢ² = −p (i = 1, 2).

Substituting xᵢ = x̄ᵢ − ȳᵢ, yᵢ = 2p·ȳᵢ turns the equation into
x̄₁² + x̄₂² − m(ȳ₁² + ȳ₂²) = −1 with m = 1 + 4np (multiplied through by p).
The global search runs over s = ȳ₁² + ȳ₂² and asks whether m·s − 1 is a sum
of two squares.  The local machinery (odd-prime and 2-adic lifting glued by
CRT) is kept as an independent check of the local solvability the existence
argument relies on.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

from sympy import factorint
from sympy.ntheory import sqrt_mod
from sympy.ntheory.modular import crt

from .errors import FactorizationTooLarge, NoUnitCoordinate, SearchExhausted

__all__ = [
    "DaggerSolution",
    "DDaggerSolution",
    "IsotropyCertificate",
    "Isotropic",
    "Anisotropic",
    "dagger_value",
    "solve_dagger",
    "local_solvable",
    "hensel_lift_odd",
    "hensel_lift_two",
    "certify_isotropy",
    "sum_two_squares",
]

DEFAULT_CEILING = 10**6
# integers above this are not factored (certificates withheld)
FACTOR_LIMIT = 10**60


def search_ceiling():
    raw = os.environ.get("KNOTGAP_SEARCH_CEILING")
    if not raw:
        return DEFAULT_CEILING
    val = int(raw)
    if val <= 0:
        raise ValueError("KNOTGAP_SEARCH_CEILING must be positive")
    return val


@dataclass(frozen=True)
class DDaggerSolution:
    m: int
    xb1: int
    xb2: int
    yb1: int
    yb2: int

    def value(self):
        return self.xb1**2 + self.xb2**2 - self.m * (self.yb1**2 + self.yb2**2)


@dataclass(frozen=True)
class DaggerSolution:
    p: int
    n: int
    x1: int
    y1: int
    x2: int
    y2: int
    verified: bool = False
    transformed: DDaggerSolution | None = None

    @property
    def tuple(self):
        return (self.x1, self.y1, self.x2, self.y2)

    def to_json(self):
        return {
            "p": self.p,
            "n": self.n,
            "x1": self.x1,
            "y1": self.y1,
            "x2": self.x2,
            "y2": self.y2,
            "verified": self.verified,
        }


def dagger_value(p, n, xs):
    x1, y1, x2, y2 = xs
    return sum(p * x * x + x * y - n * y * y for x, y in ((x1, y1), (x2, y2)))


def _factor(k):
    if k > FACTOR_LIMIT:
        raise FactorizationTooLarge(f"{k} exceeds the factoring budget")
    return factorint(k)


def _two_squares_prime(q):
    """a² + b² = q for a prime q ≡ 1 (mod 4), a > b > 0 (Hermite-Serret)."""
    x = sqrt_mod(-1, q)
    if x > q // 2:
        x = q - x
    a, b = q, x
    r = math.isqrt(q)
    while b > r:
        a, b = b, a % b
    c = math.isqrt(q - b * b)
    return max(b, c), min(b, c)


def sum_two_squares(T):
    """(a, b) with a² + b² = T and a ≥ b ≥ 0, or None."""
    if T < 0:
        return None
    if T == 0:
        return (0, 0)
    fac = _factor(T)
    if any(q % 4 == 3 and e % 2 for q, e in fac.items()):
        return None
    # multiply Gaussian integers prime by prime
    re, im = 1, 0
    for q in sorted(fac):
        e = fac[q]
        if q == 2:
            g = (1, 1)
        elif q % 4 == 3:
            re, im = re * q ** (e // 2), im * q ** (e // 2)
            continue
        else:
            g = _two_squares_prime(q)
        for _ in range(e):
            re, im = re * g[0] - im * g[1], re * g[1] + im * g[0]
    a, b = abs(re), abs(im)
    assert a * a + b * b == T
    return (max(a, b), min(a, b))


def solve_dagger(p, n, ceiling=None) -> DaggerSolution:
    """Smallest-s solution of the transformed equation, back-substituted."""
    if p < 1 or n < 1:
        raise ValueError("p and n must be positive")
    ceiling = search_ceiling() if ceiling is None else ceiling
    m = 1 + 4 * n * p
    for s in range(1, ceiling + 1):
        for yb2 in range(math.isqrt(s // 2) + 1):
            r = s - yb2 * yb2
            yb1 = math.isqrt(r)
            if yb1 * yb1 != r or yb1 < yb2:
                continue
            rep = sum_two_squares(m * s - 1)
            if rep is None:
                break  # depends only on s
            xb1, xb2 = rep
            dd = DDaggerSolution(m, xb1, xb2, yb1, yb2)
            assert dd.value() == -1
            xs = (xb1 - yb1, 2 * p * yb1, xb2 - yb2, 2 * p * yb2)
            if dagger_value(p, n, xs) != -p:
                raise AssertionError("back-substitution failed")
            return DaggerSolution(p, n, *xs, verified=True, transformed=dd)
    raise SearchExhausted(f"no solution with s ≤ {ceiling} for p={p}, n={n}")


# -- local solvability ------------------------------------------------------


def _residue(m, sol, mod):
    xb1, xb2, yb1, yb2 = sol
    return (xb1 * xb1 + xb2 * xb2 - m * (yb1 * yb1 + yb2 * yb2) + 1) % mod


def _base_odd(q, m):
    # x̄₁² + x̄₂² ≡ −1 (mod q) with a unit x̄₂
    for xb1 in range(q):
        roots = sqrt_mod((-1 - xb1 * xb1) % q, q, all_roots=True) or []
        roots = sorted(r for r in roots if r % q)
        if roots:
            return (xb1, roots[0], 0, 0)
    raise AssertionError(f"no base solution modulo {q}")


def hensel_lift_odd(q, k, base, m):
    """Lift a solution mod q^(k-1) to one mod q^k, adjusting x̄₂ by β·q^(k-1)."""
    if k < 2:
        raise ValueError("k must be at least 2")
    lo, hi = q ** (k - 1), q**k
    if _residue(m, base, lo):
        raise ValueError("base is not a solution")
    xb1, xb2, yb1, yb2 = base
    if xb2 % q == 0:
        if xb1 % q == 0:
            raise NoUnitCoordinate(f"no unit x̄ coordinate modulo {q}")
        xb1, xb2 = xb2, xb1
    F = xb1 * xb1 + xb2 * xb2 - m * (yb1 * yb1 + yb2 * yb2) + 1
    alpha = (F // lo) % q
    beta = (-alpha * pow(2 * xb2, -1, q)) % q
    out = (xb1 % hi, (xb2 + beta * lo) % hi, yb1 % hi, yb2 % hi)
    assert _residue(m, out, hi) == 0
    return out


def _base_two(m):
    if m % 4 == 1:
        return (1, 0, 1, 1)
    for sol in _all_tuples(8):
        if sol[0] % 2 and _residue(m, sol, 8) == 0:
            return sol
    raise ValueError(f"no 2-adic base with odd x̄₁ for m={m}")


def _all_tuples(mod):
    for a in range(mod):
        for b in range(mod):
            for c in range(mod):
                for d in range(mod):
                    yield (a, b, c, d)


def hensel_lift_two(k, base, m):
    """Lift mod 2^(k-1) → mod 2^k by x̄₁ ↦ x̄₁ + 2^(k-2) when needed."""
    if k < 4:
        raise ValueError("k must be at least 4")
    lo, hi = 2 ** (k - 1), 2**k
    if _residue(m, base, lo) or base[0] % 2 == 0:
        raise ValueError("base must solve mod 2^(k-1) with odd x̄₁")
    xb1, xb2, yb1, yb2 = base
    if _residue(m, base, hi):
        xb1 += 2 ** (k - 2)
    out = (xb1 % hi, xb2 % hi, yb1 % hi, yb2 % hi)
    assert _residue(m, out, hi) == 0 and out[0] % 2 == 1
    return out


def _prime_power(q, k, m):
    if q == 2:
        sol = _base_two(m)
        if k <= 3:
            return tuple(x % 2**k for x in sol)
        for j in range(4, k + 1):
            sol = hensel_lift_two(j, sol, m)
        return sol
    sol = _base_odd(q, m)
    for j in range(2, k + 1):
        sol = hensel_lift_odd(q, j, sol, m)
    return sol


def local_solvable(m, modulus):
    """A solution of x̄₁² + x̄₂² − m(ȳ₁² + ȳ₂²) ≡ −1 (mod modulus)."""
    if modulus < 2:
        raise ValueError("modulus must be at least 2")
    fac = _factor(modulus)
    mods, parts = [], []
    for q in sorted(fac):
        k = fac[q]
        mods.append(q**k)
        parts.append(_prime_power(q, k, m))
    out = []
    for c in range(4):
        r, _ = crt(mods, [s[c] for s in parts])
        out.append(int(r) % modulus)
    out = tuple(out)
    if _residue(m, out, modulus):
        raise AssertionError(f"CRT assembly failed modulo {modulus}")
    return out


# -- isotropy certificates ---------------------------------------------------


@dataclass(frozen=True)
class Isotropic:
    witness: tuple

    def to_json(self):
        return {"kind": "Isotropic", "witness": list(self.witness)}


@dataclass(frozen=True)
class Anisotropic:
    q: int
    e: int

    def to_json(self):
        return {"kind": "Anisotropic", "q": self.q, "e": self.e}


@dataclass(frozen=True)
class IsotropyCertificate:
    """Decides X₁² + X₂² = m(Y₁² + Y₂²) for a nontrivial integer tuple."""

    m: int
    verdict: Isotropic | Anisotropic

    def verify(self):
        v = self.verdict
        if isinstance(v, Isotropic):
            X1, X2, Y1, Y2 = v.witness
            return any(v.witness) and X1 * X1 + X2 * X2 == self.m * (Y1 * Y1 + Y2 * Y2)
        qe = v.q**v.e
        return v.q % 4 == 3 and v.e % 2 == 1 and self.m % qe == 0 and (self.m // qe) % v.q != 0

    def to_json(self):
        return {"m": self.m, **self.verdict.to_json()}


def certify_isotropy(m) -> IsotropyCertificate:
    if m < 1:
        raise ValueError("m must be positive")
    fac = _factor(m)
    bad = sorted(q for q, e in fac.items() if q % 4 == 3 and e % 2)
    if bad:
        q = bad[0]
        return IsotropyCertificate(m, Anisotropic(q, fac[q]))
    a, b = sum_two_squares(m)
    return IsotropyCertificate(m, Isotropic((a, b, 1, 0)))

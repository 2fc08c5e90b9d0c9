"""Genus bounds for a knot diagram or a bare Seifert matrix.

Every bound is stored as a rule record carrying its value, whether its
hypotheses hold, and a witness that was re-verified when the report was
assembled.  Rationals are kept as Fractions and exported as {num, den}.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import algebra
from .algebra import (
    CertifiedAbsent,
    NotFound,
    NullPairWitness,
    alexander,
    alexander_fox,
    build_stable_witness,
    determinant,
    direct_sum,
    find_null_pair,
    is_definite,
    prop1_reduce,
    prop2_construct,
    signature,
)
from .dagger import Anisotropic, FactorizationTooLarge, certify_isotropy, solve_dagger
from .diagram import Diagram, is_prime_diagram, is_reduced, writhe
from .errors import KnotgapError, NotApplicable, OuterFaceDependence
from .surface import (
    SeifertMatrix,
    build_surface,
    find_clasp_pair,
    find_signed_curves,
    is_homogeneous,
)

__all__ = [
    "GenusReport",
    "ObstructionHolds",
    "Fails",
    "Unknown",
    "analyze",
    "analyze_matrix",
    "double_sum_taylor",
    "taylor_verdict",
    "render_text",
]


@dataclass(frozen=True)
class ObstructionHolds:
    certificate: object

    kind = "ObstructionHolds"


@dataclass(frozen=True)
class Fails:
    witness: tuple

    kind = "Fails"


@dataclass(frozen=True)
class Unknown:
    reason: str

    kind = "Unknown"


@dataclass
class GenusReport:
    name: str | None = None
    crossings: int | None = None
    circles: int | None = None
    writhe: int | None = None
    flags: dict = field(default_factory=dict)
    genus: int = 0
    signature: int = 0
    alexander: object = None
    maxdeg: int = 0
    determinant: int = 1
    seifert_matrix: tuple = ()
    gt_lower: Fraction = Fraction(0)
    gt_upper: dict = field(default_factory=dict)
    gt_upper_lemma3: dict | None = None
    stable_t_lower: Fraction = Fraction(0)
    stable_t_rules: list = field(default_factory=list)
    stable_s_rules: list = field(default_factory=list)
    taylor: dict = field(default_factory=dict)
    conditionality: list = field(default_factory=list)
    source: str = "diagram"

    @property
    def stable_t_upper(self):
        vals = [r["value"] for r in self.stable_t_rules if r["applicable"]]
        return min(vals) if vals else None

    @property
    def stable_s_upper(self):
        vals = [r["value"] for r in self.stable_s_rules if r["applicable"]]
        return min(vals) if vals else None

    def to_json(self):
        return _jsonable(
            {
                "name": self.name,
                "source": self.source,
                "crossings": self.crossings,
                "circles": self.circles,
                "writhe": self.writhe,
                "flags": self.flags,
                "invariants": {
                    "genus": self.genus,
                    "signature": self.signature,
                    "alexander": str(self.alexander),
                    "alexander_coefficients": self.alexander.to_json(),
                    "maxdeg": self.maxdeg,
                    "determinant": self.determinant,
                    "seifert_matrix": [list(r) for r in self.seifert_matrix],
                },
                "bounds": {
                    "gt_lower": self.gt_lower,
                    "gt_upper": self.gt_upper,
                    "gt_upper_lemma3": self.gt_upper_lemma3,
                    "stable_t_lower": self.stable_t_lower,
                    "stable_t_upper": self.stable_t_upper,
                    "stable_t_rules": self.stable_t_rules,
                    "stable_s_upper": self.stable_s_upper,
                    "stable_s_rules": self.stable_s_rules,
                },
                "taylor": self.taylor,
                "conditionality": self.conditionality,
            }
        )


def _jsonable(x):
    if isinstance(x, Fraction):
        return {"num": x.numerator, "den": x.denominator}
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if hasattr(x, "to_json"):
        return _jsonable(x.to_json())
    if hasattr(x, "__dataclass_fields__"):
        out = {"kind": type(x).__name__}
        out.update({k: _jsonable(getattr(x, k)) for k in x.__dataclass_fields__})
        return out
    return x


def _rule(name, value, applicable, reason="", witness=None, statement=""):
    return {
        "rule": name,
        "value": Fraction(value) if value is not None else None,
        "applicable": bool(applicable),
        "reason": reason,
        "statement": statement,
        "witness": witness,
    }


def _pair(R, u, v):
    n = len(R)
    return sum(u[i] * R[i][j] * v[j] for i in range(n) for j in range(n))


# -- Taylor obstruction ---------------------------------------------------


def taylor_verdict(V, height_bound=64):
    """Is there a nonzero class of self-pairing 0?  (The algebraic shadow of
    a framing-0 curve.)"""
    R = [list(r) for r in (V.rows if isinstance(V, SeifertMatrix) else V)]
    n = len(R)
    if n == 0:
        return ObstructionHolds({"reason": "trivial form"})
    if is_definite(R):
        return ObstructionHolds({"reason": "definite", "signature": signature(R)})
    if n == 2:
        a, b, c = R[0][0], R[0][1] + R[1][0], R[1][1]
        D = b * b - 4 * a * c
        if not (D >= 0 and math.isqrt(D) ** 2 == D):
            return ObstructionHolds({"reason": "non-square discriminant", "discriminant": D})
    try:
        cert = algebra._fermat_block_certificate(R)
    except FactorizationTooLarge as exc:
        return Unknown(str(exc))
    if cert is not None:
        return ObstructionHolds(cert)
    spent = 0
    for h in range(1, height_bound + 1):
        cost = (2 * h + 1) ** (n - 1)
        if spent + cost > algebra.SEARCH_BUDGET:
            return Unknown(f"no framing-0 class with max-norm ≤ {h - 1}")
        spent += cost
        found = algebra._isotropic_at_height(R, h)
        if found:
            v = found[0]
            assert _pair(R, v, v) == 0
            return Fails(tuple(v))
    return Unknown(f"no framing-0 class with max-norm ≤ {height_bound}")


def double_sum_taylor(p, n):
    """Taylor verdict for the doubled form [[p,1],[0,-n]] ⊕ [[p,1],[0,-n]].

    With X = 2p·x + y and Y = y the isotropy equation times 4p reads
    X₁² + X₂² = (1 + 4np)(Y₁² + Y₂²).
    """
    m = 1 + 4 * n * p
    try:
        cert = certify_isotropy(m)
    except FactorizationTooLarge as exc:
        return Unknown(str(exc))
    if isinstance(cert.verdict, Anisotropic):
        return ObstructionHolds(cert)
    X1, X2, Y1, Y2 = cert.verdict.witness
    B = [[p, 1], [0, -n]]
    R = [list(r) for r in direct_sum(B, B).rows]
    # x = (X - y)/2p needs X ≡ y (mod 2p); scaling (X, Y) by 2p always works
    for scale in range(1, 2 * p + 1):
        if (2 * p) % scale:
            continue
        Xs, Ys = (scale * X1, scale * X2), (scale * Y1, scale * Y2)
        if all((X - Y) % (2 * p) == 0 for X, Y in zip(Xs, Ys)):
            w = ((Xs[0] - Ys[0]) // (2 * p), Ys[0], (Xs[1] - Ys[1]) // (2 * p), Ys[1])
            if any(w) and _pair(R, w, w) == 0:
                return Fails(w)
    raise AssertionError("isotropic witness did not translate back")


# -- report assembly --------------------------------------------------------


def _stable_from_pattern(p, n):
    """Witness for ĝ_t ≤ g − 1/3 from a [[p,1],[0,-n]] subgroup, p, n > 0."""
    sol = solve_dagger(p, n)
    sw = build_stable_witness(p, n, sol)
    return {
        "pattern": [[p, 1], [0, -n]],
        "dagger_solution": sol.to_json(),
        "v": list(sw.v),
        "w": list(sw.w),
        "restricted_matrix": [list(r) for r in sw.matrix],
    }


def _invariants(rep: GenusReport, V, height_bound):
    R = [list(r) for r in V.rows]
    rep.seifert_matrix = tuple(tuple(r) for r in R)
    rep.genus = len(R) // 2
    rep.signature = signature(R)
    rep.alexander = alexander(R)
    rep.maxdeg = rep.alexander.maxdeg
    rep.determinant = abs(determinant(R))
    rep.gt_lower = Fraction(abs(rep.signature), 2)
    rep.stable_t_lower = rep.gt_lower
    g = rep.genus
    rep.gt_upper = _rule(
        "feller",
        min(g, rep.maxdeg),
        True,
        statement="g_t(K) ≤ min(g(Σ), maxdeg Δ_K)",
    )
    rep.stable_t_rules.append(_rule("surface_genus", g, True, statement="ĝ_t(K) ≤ g(Σ)"))
    rep.stable_t_rules.append(
        _rule("feller", min(g, rep.maxdeg), True, statement="ĝ_t(K) ≤ g_t(K) ≤ maxdeg Δ_K")
    )
    rep.stable_s_rules.append(_rule("surface_genus", g, True, statement="ĝ_s(K) ≤ g(Σ)"))


def _null_pair_rules(rep, V, minimal, height_bound):
    g = rep.genus
    R = [list(r) for r in V.rows]
    if not minimal:
        rep.gt_upper_lemma3 = _rule("null_pair", None, False, "genus-minimality not established")
        return
    res = find_null_pair(R, height_bound)
    if isinstance(res, NullPairWitness):
        assert res.verify(R)
        wit = {
            "v": list(res.v),
            "w": list(res.w),
            "matrix": [list(r) for r in res.matrix],
            "transposed": res.transposed,
        }
        rep.gt_upper_lemma3 = _rule(
            "null_pair", g - 1, True, witness=wit, statement="g_t(K) ≤ g(K) − 1"
        )
        rep.stable_t_rules.append(
            _rule("null_pair", g - 1, True, witness=wit, statement="ĝ_t(K) ≤ g_t(K) ≤ g(K) − 1")
        )
    else:
        reason = (
            f"certified absent: {res.reason}" if isinstance(res, CertifiedAbsent) else f"not found up to height {res.height}"
        )
        rep.gt_upper_lemma3 = _rule("null_pair", None, False, reason)


def _framing_one_rule(rep, V, height_bound):
    if rep.genus != 1:
        return _rule("framing_one", None, False, "genus is not one")
    if rep.signature != 0:
        return _rule("framing_one", None, False, "signature does not vanish")
    try:
        red = prop1_reduce(V, height_bound)
    except NotApplicable as exc:
        return _rule("framing_one", None, False, str(exc))
    n = red["n"]
    wit = {"v": list(red["v"]), "w": list(red["w"]), "matrix": [list(r) for r in red["matrix"]], "n": n}
    if n > 0:
        wit["stable"] = _stable_from_pattern(1, n)
    return _rule("framing_one", Fraction(2, 3), True, witness=wit, statement="ĝ_t(K) ≤ 2/3")


def _framings_pm1_rule(rep, V, classes, minimal):
    """Framing ±1 classes (face curves first) give ĝ_t ≤ g − 1/2."""
    if not minimal:
        return _rule("framings_pm1", None, False, "genus-minimality not established")
    R = [list(r) for r in V.rows]
    plus = [c for c in classes if _pair(R, c, c) == 1 and math.gcd(*c) == 1]
    minus = [c for c in classes if _pair(R, c, c) == -1 and math.gcd(*c) == 1]
    if not plus or not minus:
        return _rule("framings_pm1", None, False, "no classes of framing 1 and −1 found")
    vp, vm = plus[0], minus[0]
    zeta = algebra.dual_class(R, vp)
    if zeta is None:
        return _rule("framings_pm1", None, False, "framing-1 class has no dual curve")
    wit = prop2_construct(R, vp, zeta, vm)
    R2 = [list(r) for r in direct_sum(R, R).rows]
    assert wit.verify(R2)
    w = {
        "v_plus": list(vp),
        "zeta": list(zeta),
        "v_minus": list(vm),
        "a": list(wit.v),
        "b": list(wit.w),
        "matrix": [list(r) for r in wit.matrix],
    }
    return _rule("framings_pm1", rep.genus - Fraction(1, 2), True, witness=w, statement="ĝ_t(K) ≤ g(K) − 1/2")


def _small_classes(n, bound=1):
    out = []
    for v in itertools.product(range(-bound, bound + 1), repeat=n):
        if any(v) and next(x for x in v if x) > 0:
            out.append(v)
    out.sort(key=lambda v: (sum(map(abs, v)), [-x for x in v]))
    return out


def _taylor_block(rep, V, clasp, minimal, height_bound):
    single = taylor_verdict(V, height_bound)
    out = {"single": _verdict_json(single), "double": None, "minimality": minimal}
    g = rep.genus
    if isinstance(single, ObstructionHolds):
        out["single"]["consequence"] = (
            f"no framing-0 class: g_s(K) = g(K) = {g}"
            + ("" if minimal else " if Σ is genus-minimal")
            + " (conditional on Taylor's theorem; topological analogue conjectural)"
        )
    if clasp is not None and g == 1:
        dbl = double_sum_taylor(*clasp)
    else:
        dbl = taylor_verdict(direct_sum(V, V), height_bound)
    out["double"] = _verdict_json(dbl)
    if isinstance(dbl, ObstructionHolds):
        out["double"]["consequence"] = (
            f"no framing-0 class on Σ#Σ: g_s(K#K) = {2 * g}"
            + ("" if minimal else " if Σ is genus-minimal")
            + " (conditional on Taylor's theorem; topological analogue conjectural)"
        )
    return out


def _verdict_json(v):
    if isinstance(v, ObstructionHolds):
        return {"verdict": "ObstructionHolds", "certificate": _jsonable(v.certificate)}
    if isinstance(v, Fails):
        return {"verdict": "Fails", "witness": list(v.witness)}
    return {"verdict": "Unknown", "reason": v.reason}


def analyze(d: Diagram, outer_face=None, height_bound=64, assume_genus_minimal=False) -> GenusReport:
    rep = GenusReport(name=d.name, crossings=len(d.crossings), writhe=writhe(d))
    reduced = is_reduced(d)
    prime = is_prime_diagram(d)
    homog, hw = is_homogeneous(d, with_witness=True)
    signs = set(d.signs)
    rep.flags = {
        "reduced": reduced,
        "prime_diagram": prime,
        "homogeneous": homog,
        "homogeneity_witness": None
        if homog
        else {"circle": hw[0], "side": hw[1], "positive": hw[2], "negative": hw[3]},
        "signs_present": {"+": 1 in signs, "-": -1 in signs},
        "positive_or_negative_diagram": len(signs) <= 1,
    }
    s = build_surface(d, outer_face=outer_face, allow_nonreduced=True)
    rep.circles = len(s.circles)
    V = s.seifert_matrix
    _invariants(rep, V, height_bound)

    fox = alexander_fox(d)
    if not fox.equivalent(rep.alexander) or abs(fox(-1)) != rep.determinant:
        raise AssertionError(f"Seifert matrix disagrees with the Fox oracle: {rep.alexander} vs {fox}")
    if outer_face is not None and outer_face != d.outer_face:
        ref = build_surface(d, allow_nonreduced=True).seifert_matrix
        if not alexander(ref).equivalent(rep.alexander) or signature(ref) != rep.signature:
            raise OuterFaceDependence("invariants changed with the outer face")

    minimal = homog or assume_genus_minimal
    rep.flags["genus_minimal"] = "certified" if homog else ("assumed" if assume_genus_minimal else "unknown")
    if homog:
        pass
    elif assume_genus_minimal:
        rep.conditionality.append("genus-minimality of the canonical surface is assumed, not certified")
    else:
        rep.conditionality.append(
            "diagram is not homogeneous: genus-minimality unknown; rules needing it are withheld"
        )
    both = signs == {1, -1}
    g = rep.genus

    # clasp pair, dagger solution, triple sum: g − 1/3 (diagram-certified)
    clasp = None
    if reduced and prime and homog and both:
        cp = find_clasp_pair(s)
        (p, _), (_, mn) = cp["matrix"]
        clasp = (p, -mn)
        wit = {
            "faces": [cp["gamma_plus"].face, cp["gamma_minus"].face],
            "crossings": list(cp["crossings"]),
            **_stable_from_pattern(p, -mn),
        }
        rep.stable_t_rules.append(
            _rule("clasp", g - Fraction(1, 3), True, witness=wit, statement="ĝ_t(K) ≤ g(K) − 1/3 (diagram-certified)")
        )
    else:
        missing = [
            k
            for k, ok in (("reduced", reduced), ("prime diagram", prime), ("homogeneous", homog), ("both signs", both))
            if not ok
        ]
        rep.stable_t_rules.append(_rule("clasp", None, False, "missing: " + ", ".join(missing)))

    rep.stable_t_rules.append(_framing_one_rule(rep, V, height_bound))

    face_classes = []
    if reduced:
        for cv in s.curves:
            if any(cv.homology_class):
                face_classes.append(s.coordinates(cv.homology_class))
    rep.stable_t_rules.append(_framings_pm1_rule(rep, V, face_classes + _small_classes(V.n), minimal))
    _null_pair_rules(rep, V, minimal, height_bound)

    # smooth bound from signed face curves
    if homog and both and reduced:
        sc = find_signed_curves(s)
        p, n = sc["gamma_plus"].framing, -sc["gamma_minus"].framing
        wit = {"faces": [sc["gamma_plus"].face, sc["gamma_minus"].face], "framings": [p, -n]}
        rep.stable_s_rules.append(
            _rule("signed_curves", g - Fraction(1, n + p), True, witness=wit, statement="ĝ_s(K) ≤ g(K) − 1/(n+p)")
        )
    else:
        rep.stable_s_rules.append(_rule("signed_curves", None, False, "needs a reduced homogeneous diagram with both signs"))
    if minimal and reduced:
        zero = [cv for cv in s.with_framings() if cv.framing == 0 and any(cv.homology_class)]
        if zero:
            cv = zero[0]
            rep.stable_s_rules.append(
                _rule(
                    "framing_zero_curve",
                    g - 1,
                    True,
                    witness={"face": cv.face},
                    statement="g_s(K) ≤ g(K) − 1 (unknotted non-separating framing-0 curve)",
                )
            )

    rep.taylor = _taylor_block(rep, V, clasp, minimal, height_bound)
    _check(rep)
    return rep


def analyze_matrix(V, assume_genus_minimal=False, height_bound=64, clasp=None, name=None) -> GenusReport:
    """Matrix-only report.  ``clasp`` optionally names a basis pair (i, j)
    spanning a [[p,1],[0,-n]] block; otherwise basis pairs are scanned."""
    V = V if isinstance(V, SeifertMatrix) else SeifertMatrix(tuple(tuple(r) for r in V))
    R = [list(r) for r in V.rows]
    n = len(R)
    rep = GenusReport(source="matrix", name=name)
    S = [[R[i][j] - R[j][i] for j in range(n)] for i in range(n)]
    knotlike = n % 2 == 0 and abs(algebra._bareiss(S)) == 1
    rep.flags = {"diagram_rules": "unavailable (matrix input)", "knot_seifert_form": knotlike}
    if not knotlike:
        rep.conditionality.append("V − Vᵀ is not unimodular: not the Seifert form of a knot; values are formal")
    _invariants(rep, V, height_bound)
    minimal = assume_genus_minimal
    rep.flags["genus_minimal"] = "assumed" if minimal else "unknown"
    if not minimal:
        rep.conditionality.append("matrix input: genus-minimality not assumed; rules needing it are withheld")
    else:
        rep.conditionality.append("genus-minimality of the surface is assumed")
    g = rep.genus

    # g − 1/3 from a [[p,1],[0,-n]] block spanned by basis vectors
    clasp = _basis_clasp(R, clasp)
    if clasp is not None and minimal:
        (i, j), (p, nn) = clasp
        wit = {"basis_pair": [i, j], **_stable_from_pattern(p, nn)}
        rep.stable_t_rules.append(
            _rule("clasp_pattern", g - Fraction(1, 3), True, witness=wit, statement="ĝ_t(K) ≤ g(K) − 1/3")
        )
    else:
        rep.stable_t_rules.append(
            _rule(
                "clasp_pattern",
                None,
                False,
                "genus-minimality not assumed" if clasp is not None else "no [[p,1],[0,-n]] pair among basis vectors",
            )
        )
    rep.stable_t_rules.append(_framing_one_rule(rep, V, height_bound))
    rep.stable_t_rules.append(_framings_pm1_rule(rep, V, _small_classes(n), minimal))
    _null_pair_rules(rep, V, minimal, height_bound)
    rep.taylor = _taylor_block(rep, V, clasp[1] if clasp and g == 1 else None, minimal, height_bound)
    _check(rep)
    return rep


def _basis_clasp(R, only=None):
    n = len(R)
    pairs = [tuple(only)] if only else itertools.permutations(range(n), 2)
    for i, j in pairs:
        # a pair (v, ±w) in either order, with the unit entry above the diagonal
        for a, b in ((R[i][j], R[j][i]), (R[j][i], R[i][j])):
            p, m = R[i][i], R[j][j]
            if abs(a) == 1 and b == 0 and p > 0 and m < 0:
                return (i, j), (p, -m)
    return None


def _check(rep: GenusReport):
    up = rep.stable_t_upper
    if up is not None and rep.stable_t_lower > up:
        raise AssertionError(f"stable lower bound {rep.stable_t_lower} exceeds upper bound {up}")
    if rep.gt_lower > rep.gt_upper["value"]:
        raise AssertionError("signature bound exceeds upper bound")
    if up is not None and up > rep.gt_upper["value"]:
        raise AssertionError("stable upper bound exceeds g_t upper bound")


def _fmt(x):
    if x is None:
        return "-"
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def render_text(rep: GenusReport) -> str:
    lines = []
    title = rep.name or "(unnamed)"
    if rep.source == "diagram":
        lines.append(f"{title}: {rep.crossings} crossings, {rep.circles} Seifert circles, writhe {rep.writhe}")
        f = rep.flags
        lines.append(
            "  reduced={} prime={} homogeneous={} signs={}".format(
                f["reduced"],
                f["prime_diagram"],
                f["homogeneous"],
                "".join(k for k, v in f["signs_present"].items() if v) or "none",
            )
        )
    else:
        lines.append(f"{title}: Seifert matrix of size {len(rep.seifert_matrix)}")
    lines.append(
        f"  g={rep.genus} sigma={rep.signature} det={rep.determinant} maxdeg={rep.maxdeg} Delta={rep.alexander}"
    )
    lines.append(f"  g_t in [{_fmt(rep.gt_lower)}, {_fmt(rep.gt_upper['value'])}]")
    lines.append(f"  stable g_t in [{_fmt(rep.stable_t_lower)}, {_fmt(rep.stable_t_upper)}]")
    for r in rep.stable_t_rules:
        state = _fmt(r["value"]) if r["applicable"] else f"n/a ({r['reason']})"
        lines.append(f"    {r['rule']}: {state}")
    lines.append(f"  stable g_s <= {_fmt(rep.stable_s_upper)}")
    for r in rep.stable_s_rules:
        state = _fmt(r["value"]) if r["applicable"] else f"n/a ({r['reason']})"
        lines.append(f"    {r['rule']}: {state}")
    if rep.gt_upper_lemma3 and rep.gt_upper_lemma3["applicable"]:
        lines.append(f"  null pair: g_t <= {_fmt(rep.gt_upper_lemma3['value'])}")
    for key in ("single", "double"):
        t = rep.taylor.get(key)
        if t:
            extra = t.get("consequence", "")
            lines.append(f"  taylor[{key}]: {t['verdict']}" + (f" - {extra}" if extra else ""))
    for note in rep.conditionality:
        lines.append(f"  note: {note}")
    return "\n".join(lines) + "\n"

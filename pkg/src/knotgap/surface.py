"""Canonical Seifert surface of a diagram.

Γ is the union of the Seifert circles and the band cores.  Its plane
projection π(Γ) has exactly one face per diagram face: a diagram face is
cut by the smoothing along band quadrants, and the band core reconnects it.
Each face U gives an unknotted curve γ_U on the surface.  Its class in
H₁(Σ) is recorded as a signed band-traversal vector (one coordinate per
crossing, +1 for crossing from the under-side vertex to the over-side one);
those vectors span the cycle space of the Seifert graph, which is H₁(Σ).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from . import _realize
from .diagram import Diagram, is_prime_diagram, is_reduced, nugatory_crossings, seifert_circles
from .errors import Disconnected, MissingSign, NoMixedCircle, NotHomogeneous, NotReduced, PatternMismatch

__all__ = [
    "SeifertGraph",
    "FaceCurve",
    "SeifertMatrix",
    "CanonicalSurface",
    "build_surface",
    "is_homogeneous",
    "face_curve_framings",
    "find_signed_curves",
    "find_clasp_pair",
    "seifert_pairing",
    "surface_dump",
]


@dataclass(frozen=True)
class SeifertGraph:
    vertices: tuple
    # (crossing, circle of under-side vertex, circle of over-side vertex, sign)
    edges: tuple
    # circle -> crossings in the order met along the circle, with the side
    # ("L"/"R" of the circle's direction) the band leaves from
    rotation: dict = field(compare=False)
    # circle -> True when the left side of the circle faces the outer face
    left_is_outside: dict = field(compare=False)

    def side(self, circle, crossing):
        for i, sd in self.rotation[circle]:
            if i == crossing:
                return sd
        raise KeyError((circle, crossing))

    def inside_outside(self, circle):
        """Split adjacent crossings into (inside, outside) lists."""
        ins, outs = [], []
        left_out = self.left_is_outside[circle]
        for i, sd in self.rotation[circle]:
            (outs if (sd == "L") == left_out else ins).append(i)
        return ins, outs


@dataclass(frozen=True)
class FaceCurve:
    face: int
    crossing_set: tuple
    twist_sum: int
    homology_class: tuple
    framing: int | None = None
    unknotted: bool = True


@dataclass(frozen=True)
class SeifertMatrix:
    rows: tuple
    annotations: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(tuple(int(v) for v in r) for r in self.rows))
        n = len(self.rows)
        if any(len(r) != n for r in self.rows):
            raise ValueError("Seifert matrix must be square")
        if not self.annotations:
            ann = tuple({"framing": self.rows[k][k], "unknotted": False, "origin": "abstract"} for k in range(n))
            object.__setattr__(self, "annotations", ann)

    @property
    def n(self):
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def as_lists(self):
        return [list(r) for r in self.rows]

    def transpose(self):
        return SeifertMatrix(tuple(zip(*self.rows)) if self.rows else ())

    def pair(self, u, v):
        return sum(u[i] * self.rows[i][j] * v[j] for i in range(self.n) for j in range(self.n) if u[i] and v[j])


def _vertex_side(vertex_kind, sign):
    # side of the circle's direction from which the band leaves this vertex
    return "R" if (vertex_kind == "u") == (sign == 1) else "L"


def _seifert_graph(d: Diagram, circles, outer):
    ends = _realize.arc_ends(d)
    vertex_circle = {h: circles.circle_of_edge[e] for e, (_, h) in ends.items()}
    edges = []
    for i, s in enumerate(d.signs):
        edges.append((i, vertex_circle[(i, "u")], vertex_circle[(i, "o")], s))
    rotation = {}
    for k, orbit in enumerate(circles.circles):
        seq = []
        for e in orbit:
            i, kind = ends[e][1]
            seq.append((i, _vertex_side(kind, d.signs[i])))
        rotation[k] = seq

    # faces reachable from the left of a circle without crossing that circle
    adj_band = []
    for i, s in enumerate(d.signs):
        q0, q1 = _realize.BAND_QUADRANTS[s]
        adj_band.append((d.face_of_corner[(i, q0)], d.face_of_corner[(i, q1)]))
    left_out = {}
    for k, orbit in enumerate(circles.circles):
        on = set(orbit)
        nbrs = {}
        for e in range(1, d.edge_count + 1):
            if e in on:
                continue
            a, b = d.face_of_side[(e, "L")], d.face_of_side[(e, "R")]
            nbrs.setdefault(a, set()).add(b)
            nbrs.setdefault(b, set()).add(a)
        for a, b in adj_band:
            nbrs.setdefault(a, set()).add(b)
            nbrs.setdefault(b, set()).add(a)
        start = d.face_of_side[(orbit[0], "L")]
        seen, stack = {start}, [start]
        while stack:
            f = stack.pop()
            for g in nbrs.get(f, ()):
                if g not in seen:
                    seen.add(g)
                    stack.append(g)
        left_out[k] = outer in seen
    return SeifertGraph(tuple(range(len(circles))), tuple(edges), rotation, left_out)


def is_homogeneous(d: Diagram, with_witness=False):
    """Every circle sees one sign inside and one sign outside.

    With ``with_witness`` returns ``(ok, witness)`` where the witness is
    ``(circle, "inside"|"outside", crossing_a, crossing_b)`` on failure.
    """
    if not d.crossings:
        return (True, None) if with_witness else True
    circles = seifert_circles(d)
    g = _seifert_graph(d, circles, d.outer_face)
    for k in g.vertices:
        for label, part in zip(("inside", "outside"), g.inside_outside(k)):
            pos = [i for i in part if d.signs[i] == 1]
            neg = [i for i in part if d.signs[i] == -1]
            if pos and neg:
                w = (k, label, min(pos), min(neg))
                return (False, w) if with_witness else False
    return (True, None) if with_witness else True


def _face_curve(d: Diagram, face):
    c = len(d.crossings)
    vec = [0] * c
    crossings = []
    for i, q in face.corners:
        s = d.signs[i]
        if q in _realize.BAND_QUADRANTS[s]:
            frm = _realize.vertex_of_slot(s, i, q)[1]
            vec[i] += 1 if frm == "u" else -1
            crossings.append(i)
    tw = sum(d.signs[i] for i in crossings)
    return FaceCurve(face.id, tuple(sorted(crossings)), tw, tuple(vec))


def _rank_select(vectors):
    """Greedy maximal independent subset (exact rational elimination)."""
    basis_rows = []  # echelon rows as (pivot, row)
    chosen = []
    for idx, v in enumerate(vectors):
        row = [Fraction(x) for x in v]
        for piv, br in basis_rows:
            if row[piv]:
                f = row[piv] / br[piv]
                row = [a - f * b for a, b in zip(row, br)]
        nz = next((j for j, x in enumerate(row) if x), None)
        if nz is not None:
            basis_rows.append((nz, row))
            chosen.append(idx)
    return chosen


def _solve_integral(columns, target):
    """Integer coefficients expressing ``target`` in the given columns."""
    n = len(columns)
    m = len(target)
    # least-squares free: columns are independent, so solve by elimination
    A = [[Fraction(columns[j][i]) for j in range(n)] + [Fraction(target[i])] for i in range(m)]
    r = 0
    piv_cols = []
    for col in range(n):
        p = next((i for i in range(r, m) if A[i][col]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        pv = A[r][col]
        A[r] = [x / pv for x in A[r]]
        for i in range(m):
            if i != r and A[i][col]:
                f = A[i][col]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        piv_cols.append(col)
        r += 1
    if any(A[i][n] for i in range(r, m)):
        raise ValueError("class not in span")
    coeffs = [Fraction(0)] * n
    for i, col in enumerate(piv_cols):
        coeffs[col] = A[i][n]
    if any(x.denominator != 1 for x in coeffs):
        raise ValueError("class not an integral combination of the basis")
    return tuple(int(x) for x in coeffs)


class CanonicalSurface:
    """Seifert surface from Seifert's algorithm, with a face-curve basis."""

    def __init__(self, d: Diagram, outer_face=None, allow_nonreduced=False):
        self.diagram = d
        self.allow_nonreduced = allow_nonreduced
        self.circles = seifert_circles(d)
        c, s = len(d.crossings), len(self.circles)
        if c == 0:
            self.outer_face = None
            self.graph = SeifertGraph((0,), (), {0: []}, {0: True})
            self.curves = ()
            self.basis = ()
            self.genus = 0
            self.seifert_matrix = SeifertMatrix(())
            return
        self.outer_face = d.outer_face if outer_face is None else outer_face
        if not 0 <= self.outer_face < len(d.faces):
            raise ValueError(f"outer face {self.outer_face} out of range")
        self.graph = _seifert_graph(d, self.circles, self.outer_face)
        if not _connected(self.graph):
            raise Disconnected("Seifert graph is disconnected")
        self.curves = tuple(_face_curve(d, f) for f in d.faces)
        rank = c - s + 1
        # the outer face goes last so the basis prefers bounded faces
        order = sorted(range(len(self.curves)), key=lambda k: (k == self.outer_face, k))
        picked = _rank_select([self.curves[k].homology_class for k in order])
        basis_ids = [order[k] for k in picked]
        if len(basis_ids) != rank:
            raise AssertionError(f"face classes span rank {len(basis_ids)}, expected {rank}")
        self.genus = rank // 2
        self._basis_ids = basis_ids
        self._lk_cache = {}
        V = [[self.pair_faces(a, b) for b in basis_ids] for a in basis_ids]
        self.basis = tuple(
            FaceCurve(cv.face, cv.crossing_set, cv.twist_sum, cv.homology_class, V[k][k])
            for k, cv in enumerate(self.curves[f] for f in basis_ids)
        )
        ann = tuple(
            {"framing": V[k][k], "unknotted": True, "origin": "face-curve", "face": f}
            for k, f in enumerate(basis_ids)
        )
        self.seifert_matrix = SeifertMatrix(tuple(tuple(r) for r in V), ann)
        _check_unimodular(self.seifert_matrix)

    @cached_property
    def realization(self):
        return _realize.Realization(self.diagram, self.circles, self.outer_face)

    def stations(self, face_id):
        return self.realization.face_stations(self.diagram.faces[face_id])

    def pair_faces(self, a, b):
        """lk(γ_a⁺, γ_b) from the explicit realization."""
        key = (a, b)
        if key not in self._lk_cache:
            R = self.realization
            if not any(self.curves[a].homology_class) or not any(self.curves[b].homology_class):
                val = 0
            else:
                val = _realize.linking_number(self.stations(a), self.stations(b), R.eps)
            self._lk_cache[key] = val
        return self._lk_cache[key]

    def coordinates(self, homology_class):
        cols = [self.curves[f].homology_class for f in self._basis_ids]
        return _solve_integral(cols, homology_class)

    def framing(self, face_id):
        return self.pair_faces(face_id, face_id)

    def with_framings(self):
        out = []
        for cv in self.curves:
            out.append(FaceCurve(cv.face, cv.crossing_set, cv.twist_sum, cv.homology_class, self.framing(cv.face)))
        return out


def _connected(g: SeifertGraph):
    if len(g.vertices) <= 1:
        return True
    adj = {v: set() for v in g.vertices}
    for _, a, b, _ in g.edges:
        adj[a].add(b)
        adj[b].add(a)
    seen, stack = {0}, [0]
    while stack:
        v = stack.pop()
        for w in adj[v] - seen:
            seen.add(w)
            stack.append(w)
    return len(seen) == len(g.vertices)


def _check_unimodular(V: SeifertMatrix):
    import sympy

    n = V.n
    if n == 0:
        return
    S = sympy.Matrix([[V[i, j] - V[j, i] for j in range(n)] for i in range(n)])
    if abs(S.det()) != 1:
        raise AssertionError(f"intersection form has determinant {S.det()}, expected ±1")


def build_surface(d: Diagram, outer_face=None, allow_nonreduced=False) -> CanonicalSurface:
    """Build Σ for a reduced knot diagram.

    ``allow_nonreduced`` skips the reducedness gate; the surface is still a
    valid Seifert surface, but face curves of nugatory faces may be degenerate.
    """
    if not allow_nonreduced and not is_reduced(d):
        raise NotReduced(f"nugatory crossings at {nugatory_crossings(d)}")
    return CanonicalSurface(d, outer_face, allow_nonreduced)


def face_curve_framings(s: CanonicalSurface):
    """(curve, twist_sum, framing) for every bounded face."""
    out = []
    for cv in s.with_framings():
        if cv.face == s.outer_face:
            continue
        out.append((cv, cv.twist_sum, cv.framing))
    return out


def _require_mixed(s: CanonicalSurface):
    signs = set(s.diagram.signs)
    if signs != {1, -1}:
        raise MissingSign("diagram has crossings of only one sign")
    if not is_homogeneous(s.diagram):
        raise NotHomogeneous("diagram is not homogeneous")


def find_signed_curves(s: CanonicalSurface) -> dict:
    """Face curves of positive and negative framing.

    Prefers the framing closest to zero on each side (that minimises p+n in
    the smooth bound), then the lowest face id.
    """
    _require_mixed(s)
    rows = face_curve_framings(s)
    plus = [cv for cv, _, fr in rows if fr > 0]
    minus = [cv for cv, _, fr in rows if fr < 0]
    if not plus or not minus:
        raise AssertionError("homogeneous diagram with both signs lacks signed face curves")
    plus.sort(key=lambda c: (c.framing, c.face))
    minus.sort(key=lambda c: (-c.framing, c.face))
    return {"gamma_plus": plus[0], "gamma_minus": minus[0]}


def find_clasp_pair(s: CanonicalSurface) -> dict:
    """Two face curves whose Seifert form is [[p,1],[0,-n]], p,n > 0.

    Follows the cyclic walk around a circle with mixed adjacent signs:
    c1 positive with negative successor, c2 the first crossing after it
    whose successor c3 is positive, c4 the first negative after c3.  The
    face beside c2 across the circle and the face beside c3 give the pair.
    """
    d = s.diagram
    if len(set(d.signs)) < 2:
        raise NoMixedCircle("one crossing sign only: no circle can carry both")
    _require_mixed(s)
    g = s.graph
    for k in g.vertices:
        seq = [i for i, _ in g.rotation[k]]
        if len({d.signs[i] for i in seq}) < 2:
            continue
        L = len(seq)
        j1 = next(j for j in range(L) if d.signs[seq[j]] == 1 and d.signs[seq[(j + 1) % L]] == -1)
        j2 = next(
            (j1 + t) % L for t in range(1, L + 1) if d.signs[seq[(j1 + t + 1) % L]] == 1
        )
        j3 = (j2 + 1) % L
        c2, c3 = seq[j2], seq[j3]
        U_plus = _face_beside(s, k, c2)
        U_minus = _face_beside(s, k, c3)
        return _normalize_clasp(s, U_plus, U_minus, (seq[j1], c2, c3))
    raise NoMixedCircle("no Seifert circle carries both crossing signs")


def _face_beside(s: CanonicalSurface, circle, crossing):
    """Face across ``circle`` from where the band of ``crossing`` attaches.

    Both circle arcs at the attachment point border that face on the side
    away from the band, so the arc arriving at the attachment suffices.
    """
    d = s.diagram
    side = s.graph.side(circle, crossing)
    opp = "L" if side == "R" else "R"
    ends = _realize.arc_ends(d)
    for e in s.circles.circles[circle]:
        if ends[e][1][0] == crossing:
            return d.face_of_side[(e, opp)]
    raise AssertionError("crossing does not attach to circle")


def _normalize_clasp(s, fa, fb, crossings):
    pa = s.pair_faces
    M = [[pa(fa, fa), pa(fa, fb)], [pa(fb, fa), pa(fb, fb)]]
    # orientation switches: negate one curve (sign of off-diagonals), or
    # reverse Σ's orientation (transpose)
    for tr in (False, True):
        A = [[M[j][i] for j in range(2)] for i in range(2)] if tr else M
        for sa in (1, -1):
            B = [[A[0][0], sa * A[0][1]], [sa * A[1][0], A[1][1]]]
            if B[0][1] == 1 and B[1][0] == 0 and B[0][0] > 0 and B[1][1] < 0:
                return {
                    "gamma_plus": s.curves[fa],
                    "gamma_minus": s.curves[fb],
                    "matrix": ((B[0][0], 1), (0, B[1][1])),
                    "signs": (sa, 1),
                    "transposed": tr,
                    "crossings": crossings,
                }
    raise PatternMismatch(f"clasp pair on faces {fa},{fb} has matrix {M}")


def seifert_pairing(s: CanonicalSurface, u: FaceCurve, v: FaceCurve) -> int:
    return s.pair_faces(u.face, v.face)


def surface_dump(s: CanonicalSurface) -> str:
    """Plain-text listing of the Seifert graph and face incidence."""
    d = s.diagram
    lines = [f"circles {len(s.circles)}"]
    for k, orbit in enumerate(s.circles.circles):
        lines.append(f"circle {k}: edges {' '.join(map(str, orbit))}")
    lines.append(f"bands {len(d.crossings)}")
    for i, a, b, sg in s.graph.edges:
        lines.append(f"band {i}: {a} -> {b} sign {'+' if sg > 0 else '-'}")
    for k in s.graph.vertices:
        if not d.crossings:
            break
        ins, outs = s.graph.inside_outside(k)
        lines.append(f"circle {k}: inside {sorted(ins)} outside {sorted(outs)}")
    for cv in s.curves:
        tag = " outer" if cv.face == s.outer_face else ""
        lines.append(
            f"face {cv.face}{tag}: crossings {list(cv.crossing_set)} twist {cv.twist_sum:+d} "
            f"class {list(cv.homology_class)}"
        )
    lines.append(f"genus {s.genus}")
    for r in s.seifert_matrix.rows:
        lines.append("V " + " ".join(str(x) for x in r))
    return "\n".join(lines) + "\n"

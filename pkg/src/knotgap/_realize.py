"""Piecewise-linear realization of the canonical Seifert surface.

The plane graph formed by the Seifert circles and the band cores is drawn
with straight lines (networkx, Chrobak-Payne) using the rotation system the
PD code prescribes.  Each Seifert disc is a flat polygon at height equal to
its nesting depth.  A band between two circles of equal depth is a flat
half-twisted strip; a band from an inner circle to its enclosing circle
twists at the inner height, descends, and folds around the edge of the
outer disc.  Curves on the surface run along circle arcs and band cores and
carry the positive surface normal at every vertex, so the pushoff is an
explicit polyline.  Linking numbers are signed over-crossing counts in an
oblique projection, evaluated in exact rational arithmetic.
"""

from __future__ import annotations

import math
from fractions import Fraction as Q

import networkx as nx

from .errors import DegenerateProjection

# slot -> smoothing vertex ("u" carries the incoming under-strand)
_VERTEX_OF_SLOT = {
    1: ("u", "o", "o", "u"),
    -1: ("u", "u", "o", "o"),
}
# quadrants separated by the band (quadrant q sits between slots q, q+1)
BAND_QUADRANTS = {1: (0, 2), -1: (1, 3)}

# projection directions tried in order; any generic one gives the same answer
_DIRECTIONS = [
    (Q(3, 11), Q(5, 17)),
    (Q(-7, 23), Q(2, 13)),
    (Q(11, 31), Q(-9, 29)),
    (Q(-5, 37), Q(-13, 41)),
    (Q(17, 43), Q(19, 47)),
]


def vertex_of_slot(sign, i, p):
    return (i, _VERTEX_OF_SLOT[sign][p])


def arc_ends(d):
    """Map edge label -> (tail vertex, head vertex) in the smoothing graph."""
    tail, head = {}, {}
    for i, x in enumerate(d.crossings):
        s = d.signs[i]
        for p, e in enumerate(x):
            v = vertex_of_slot(s, i, p)
            if d.is_outgoing(i, p):
                tail[e] = v
            else:
                head[e] = v
    return {e: (tail[e], head[e]) for e in tail}


def rotation(d):
    """Counterclockwise half-edge order at every smoothing vertex.

    Half-edges are ("arc", e, "tail"|"head") or ("band", i).
    """
    rot = {}
    for i, (a, b, c, dd) in enumerate(d.crossings):
        band = ("band", i)
        if d.signs[i] == 1:
            rot[(i, "u")] = [("arc", a, "head"), band, ("arc", dd, "tail")]
            rot[(i, "o")] = [("arc", b, "head"), ("arc", c, "tail"), band]
        else:
            rot[(i, "u")] = [("arc", b, "tail"), band, ("arc", a, "head")]
            rot[(i, "o")] = [("arc", c, "tail"), ("arc", dd, "head"), band]
    return rot


def _cross2(ax, ay, bx, by):
    return ax * by - ay * bx


def _signed_area2(poly):
    s = 0
    n = len(poly)
    for k in range(n):
        x0, y0 = poly[k]
        x1, y1 = poly[(k + 1) % n]
        s += x0 * y1 - x1 * y0
    return s


def _inside(pt, poly):
    """Exact even-odd test; ``pt`` must not lie on the boundary."""
    x, y = pt
    inside = False
    n = len(poly)
    for k in range(n):
        x0, y0 = poly[k]
        x1, y1 = poly[(k + 1) % n]
        if (y0 > y) != (y1 > y):
            # x-coordinate of the edge at height y, compared without division
            lhs = (x - x0) * (y1 - y0)
            rhs = (x1 - x0) * (y - y0)
            if (lhs < rhs) == (y1 > y0):
                inside = not inside
    return inside


def _seg_dist2(p, a, b):
    """Squared distance from integer point ``p`` to segment ``ab``."""
    ax, ay = b[0] - a[0], b[1] - a[1]
    px, py = p[0] - a[0], p[1] - a[1]
    L = ax * ax + ay * ay
    dot = px * ax + py * ay
    if dot <= 0:
        return Q(px * px + py * py)
    if dot >= L:
        qx, qy = p[0] - b[0], p[1] - b[1]
        return Q(qx * qx + qy * qy)
    cr = px * ay - py * ax
    return Q(cr * cr, L)


class Realization:
    """Explicit 3D model of the canonical surface of a diagram."""

    def __init__(self, d, circles, outer_face=None):
        self.d = d
        self.circles = circles
        self.outer_face = d.outer_face if outer_face is None else outer_face
        self.ends = arc_ends(d)
        self._draw()
        self._classify()

    # -- planar drawing -------------------------------------------------

    def _node(self, half, v):
        kind = half[0]
        if kind == "band":
            i = half[1]
            return ("v", i, "o" if v[1] == "u" else "u")
        _, e, end = half
        return ("s", e, 1) if end == "tail" else ("s", e, 2)

    def _draw(self):
        d = self.d
        rot = rotation(d)
        emb = nx.PlanarEmbedding()
        for v, halves in rot.items():
            node = ("v",) + v
            prev = None
            for h in halves:
                nb = self._node(h, v)
                if prev is None:
                    emb.add_half_edge(node, nb)
                else:
                    emb.add_half_edge(node, nb, cw=prev)
                prev = nb
        for e, (t, h) in self.ends.items():
            s1, s2 = ("s", e, 1), ("s", e, 2)
            emb.add_half_edge(s1, ("v",) + t)
            emb.add_half_edge(s1, s2, cw=("v",) + t)
            emb.add_half_edge(s2, s1)
            emb.add_half_edge(s2, ("v",) + h, cw=s1)

        # a pendant ring inside the chosen face makes it the largest face,
        # which is the face networkx leaves untriangulated as the outer one
        face = d.faces[self.outer_face]
        e, side = face.boundary[0]
        s1, s2 = ("s", e, 1), ("s", e, 2)
        tail = ("v",) + self.ends[e][0]
        k = emb.number_of_nodes() + 2
        ring = [("ring", j) for j in range(k)]
        emb.add_half_edge(s1, ring[0], cw=s2 if side == "L" else tail)
        emb.add_half_edge(ring[0], s1)
        emb.add_half_edge(ring[0], ring[1], cw=s1)
        emb.add_half_edge(ring[0], ring[-1], cw=ring[1])
        for j in range(1, k):
            nxt = ring[(j + 1) % k]
            prv = ring[j - 1]
            emb.add_half_edge(ring[j], prv)
            emb.add_half_edge(ring[j], nxt, cw=prv)
        emb.check_structure()
        pos = nx.combinatorial_embedding_to_pos(emb, fully_triangulate=False)
        pos = {v: (int(p[0]), int(p[1])) for v, p in pos.items() if v[0] != "ring"}

        # networkx may return the mirror drawing; compare rotation at a vertex
        v0 = next(iter(rot))
        node = ("v",) + v0
        nbs = [self._node(h, v0) for h in rot[v0]]
        cx, cy = pos[node]
        ang = [math.atan2(pos[n][1] - cy, pos[n][0] - cx) for n in nbs]
        order = sorted(range(3), key=lambda j: ang[j])
        ccw = order in ([0, 1, 2], [1, 2, 0], [2, 0, 1])
        if not ccw:
            pos = {v: (-x, y) for v, (x, y) in pos.items()}
        self.pos = pos

    # -- geometry --------------------------------------------------------

    def arc_points(self, e):
        t, h = self.ends[e]
        return [self.pos[("v",) + t], self.pos[("s", e, 1)], self.pos[("s", e, 2)], self.pos[("v",) + h]]

    def _classify(self):
        circles = self.circles.circles
        self.polys = []
        for orbit in circles:
            poly = []
            for e in orbit:
                poly.extend(self.arc_points(e)[:3])
            self.polys.append(poly)
        self.normal = [1 if _signed_area2(p) > 0 else -1 for p in self.polys]
        n = len(circles)
        self.contains = [[False] * n for _ in range(n)]
        for a in range(n):
            for b in range(n):
                if a != b:
                    self.contains[b][a] = _inside(self.polys[a][0], self.polys[b])
        self.depth = [sum(self.contains[b][a] for b in range(n)) for a in range(n)]

        # clearance: smallest distance from a vertex to a non-incident segment
        segs = []
        for e in self.ends:
            pts = self.arc_points(e)
            segs.extend(zip(pts, pts[1:]))
        for i in range(len(self.d.crossings)):
            segs.append((self.pos[("v", i, "u")], self.pos[("v", i, "o")]))
        best = None
        for p in set(self.pos.values()):
            for a, b in segs:
                if p == a or p == b:
                    continue
                dist2 = _seg_dist2(p, a, b)
                if best is None or dist2 < best:
                    best = dist2
        r = Q(1, 16)
        while best is not None and r * r * 256 > best:
            r /= 2
        self.r = r
        self.eps = r / 8

        coe = self.circles.circle_of_edge
        self.vertex_circle = {}
        for e, (t, h) in self.ends.items():
            self.vertex_circle[h] = coe[e]
        self.bands = {}
        for i in range(len(self.d.crossings)):
            self.bands[i] = self._band(i)
        self._check_faces()

    def _check_faces(self):
        # walking a face with the face on the right is clockwise unless the
        # face is the unbounded one
        positive = []
        for f in self.d.faces:
            pts = [p[:2] for p, _ in self.face_stations(f, with_heights=False)]
            if _signed_area2(pts) > 0:
                positive.append(f.id)
        if positive != [self.outer_face]:
            raise AssertionError(f"outer face mismatch: {positive} vs {self.outer_face}")

    def _outward(self, circ, vtx):
        poly = self.polys[circ]
        P = self.pos[("v",) + vtx]
        k = poly.index(P)
        prev, nxt = poly[k - 1], poly[(k + 1) % len(poly)]
        u1 = (prev[0] - P[0], prev[1] - P[1])
        u2 = (nxt[0] - P[0], nxt[1] - P[1])
        h1, h2 = math.hypot(*u1), math.hypot(*u2)
        bis = (u1[0] / h1 + u2[0] / h2, u1[1] / h1 + u2[1] / h2)
        cands = [(-bis[0], -bis[1]), bis]
        sgn = self.normal[circ]
        for t in ((nxt[0] - prev[0], nxt[1] - prev[1]), (P[0] - prev[0], P[1] - prev[1]), (nxt[0] - P[0], nxt[1] - P[1])):
            cands.append((t[1], -t[0]) if sgn > 0 else (-t[1], t[0]))
        for o in cands:
            o = (Q(o[0]).limit_denominator(1000), Q(o[1]).limit_denominator(1000))
            m = max(abs(o[0]), abs(o[1]))
            if m == 0:
                continue
            o = (o[0] / m, o[1] / m)
            probes = [(P[0] + f * self.r * o[0], P[1] + f * self.r * o[1]) for f in (Q(1, 4), Q(1, 2), Q(1))]
            if not any(_inside(pt, poly) for pt in probes):
                return o
        raise DegenerateProjection("no outward direction at band attachment")

    def _band(self, i):
        """Stations (point, normal) from one end of band ``i`` to the other.

        Returns (start vertex, stations).
        """
        s = self.d.signs[i]
        vu, vo = (i, "u"), (i, "o")
        cu, co = self.vertex_circle[vu], self.vertex_circle[vo]
        if cu == co:
            raise AssertionError("band joins a Seifert circle to itself")
        du, do = self.depth[cu], self.depth[co]
        if du == do:
            start, end, ca, cb = vu, vo, cu, co
            if self.contains[ca][cb] or self.contains[cb][ca]:
                raise AssertionError("nested circles at equal depth")
            nested = False
        else:
            if du > do:
                start, end, ca, cb = vu, vo, cu, co
            else:
                start, end, ca, cb = vo, vu, co, cu
            if not self.contains[cb][ca] or self.depth[ca] != self.depth[cb] + 1:
                raise AssertionError("band between non-adjacent nesting levels")
            nested = True
        Pa = self.pos[("v",) + start]
        Pb = self.pos[("v",) + end]
        na, nb = self.normal[ca], self.normal[cb]
        h = Q(self.depth[ca])
        c = (Pb[0] - Pa[0], Pb[1] - Pa[1])
        m = max(abs(c[0]), abs(c[1]))
        # quarter turn of the start normal about the travel direction
        mid_n = (Q(s * c[1] * na, m), Q(-s * c[0] * na, m), Q(0))
        up = (Q(0), Q(0), Q(1))
        down = (Q(0), Q(0), Q(-1))
        n_a = up if na > 0 else down
        n_flip = down if na > 0 else up
        if not nested:
            if na != -nb:
                raise AssertionError("side-by-side circles with equal orientation")
            half = (Q(Pa[0] + Pb[0], 2), Q(Pa[1] + Pb[1], 2))
            st = [
                ((Q(Pa[0]), Q(Pa[1]), h), n_a),
                ((half[0], half[1], h), mid_n),
                ((Q(Pb[0]), Q(Pb[1]), h), n_flip),
            ]
            return start, st
        if na != nb:
            raise AssertionError("nested circles joined by a band with opposite orientation")
        q1 = (Pa[0] + Q(c[0], 4), Pa[1] + Q(c[1], 4))
        q2 = (Pa[0] + Q(c[0], 2), Pa[1] + Q(c[1], 2))
        hb = Q(self.depth[cb])
        r = self.r
        o = self._outward(cb, end)
        apex_n = (-o[0], -o[1], Q(0)) if nb > 0 else (o[0], o[1], Q(0))
        st = [
            ((Q(Pa[0]), Q(Pa[1]), h), n_a),
            ((q1[0], q1[1], h), mid_n),
            ((q2[0], q2[1], h), n_flip),
            ((Q(Pb[0]), Q(Pb[1]), hb + 2 * r), n_flip),
            ((Pb[0] + r * o[0], Pb[1] + r * o[1], hb + r), apex_n),
            ((Q(Pb[0]), Q(Pb[1]), hb), up if nb > 0 else down),
        ]
        return start, st

    def band_stations(self, i, frm):
        start, st = self.bands[i]
        return st if frm == start else st[::-1]

    def arc_stations(self, e, forward, with_heights=True):
        circ = self.circles.circle_of_edge[e]
        z = Q(self.depth[circ]) if with_heights else Q(0)
        n = (Q(0), Q(0), Q(self.normal[circ]))
        pts = self.arc_points(e)
        if not forward:
            pts = pts[::-1]
        return [((Q(x), Q(y), z), n) for x, y in pts]

    def face_stations(self, face, with_heights=True):
        """Closed polyline of γ_U for a diagram face, as (point, normal) stations."""
        d = self.d
        corners = face.corners
        out = []
        k = len(corners)
        for j in range(k):
            i0, q0 = corners[j]
            i1, q1 = corners[(j + 1) % k]
            e = d.crossings[i0][(q0 + 1) % 4]
            forward = d.is_outgoing(i0, (q0 + 1) % 4)
            out.extend(self.arc_stations(e, forward, with_heights))
            s1 = d.signs[i1]
            if q1 in BAND_QUADRANTS[s1]:
                frm = vertex_of_slot(s1, i1, q1)
                st = self.band_stations(i1, frm)
                if not with_heights:
                    st = [((p[0], p[1], Q(0)), nn) for p, nn in st]
                out.extend(st)
        # drop repeated consecutive points
        clean = []
        for p, nn in out:
            if clean and clean[-1][0] == p:
                continue
            clean.append((p, nn))
        if len(clean) > 1 and clean[0][0] == clean[-1][0]:
            clean.pop()
        return clean


def linking_number(u_stations, v_stations, eps):
    """lk(u⁺, v) where u⁺ pushes ``u`` by ``eps`` along the stored normals."""
    up = [tuple(p[k] + eps * n[k] for k in range(3)) for p, n in u_stations]
    vp = [p for p, _ in v_stations]
    last = None
    for w in _DIRECTIONS:
        try:
            return _lk_projected(up, vp, w)
        except DegenerateProjection as exc:
            last = exc
    raise last


def _lk_projected(a3, b3, w):
    wx, wy = w

    def proj(p):
        return (p[0] - wx * p[2], p[1] - wy * p[2])

    A = [proj(p) for p in a3]
    B = [proj(p) for p in b3]
    na, nb = len(A), len(B)
    Bbox = []
    for j in range(nb):
        p, q = B[j], B[(j + 1) % nb]
        Bbox.append((float(min(p[0], q[0])), float(max(p[0], q[0])), float(min(p[1], q[1])), float(max(p[1], q[1]))))
    over_a = over_b = 0
    for i in range(na):
        p0, p1 = A[i], A[(i + 1) % na]
        ax0, ax1 = float(min(p0[0], p1[0])), float(max(p0[0], p1[0]))
        ay0, ay1 = float(min(p0[1], p1[1])), float(max(p0[1], p1[1]))
        dax, day = p1[0] - p0[0], p1[1] - p0[1]
        for j in range(nb):
            bx0, bx1, by0, by1 = Bbox[j]
            if bx1 < ax0 - 1e-9 or bx0 > ax1 + 1e-9 or by1 < ay0 - 1e-9 or by0 > ay1 + 1e-9:
                continue
            q0, q1 = B[j], B[(j + 1) % nb]
            dbx, dby = q1[0] - q0[0], q1[1] - q0[1]
            o1 = _cross2(dax, day, q0[0] - p0[0], q0[1] - p0[1])
            o2 = _cross2(dax, day, q1[0] - p0[0], q1[1] - p0[1])
            o3 = _cross2(dbx, dby, p0[0] - q0[0], p0[1] - q0[1])
            o4 = _cross2(dbx, dby, p1[0] - q0[0], p1[1] - q0[1])
            if o1 == 0 or o2 == 0 or o3 == 0 or o4 == 0:
                if (o1 == 0 and o2 == 0) or _touch(o1, o2, o3, o4):
                    raise DegenerateProjection("projection not generic")
                continue
            if (o1 > 0) == (o2 > 0) or (o3 > 0) == (o4 > 0):
                continue
            den = _cross2(dax, day, dbx, dby)
            s = _cross2(q0[0] - p0[0], q0[1] - p0[1], dbx, dby) / den
            t = _cross2(q0[0] - p0[0], q0[1] - p0[1], dax, day) / den
            za = a3[i][2] + s * (a3[(i + 1) % na][2] - a3[i][2])
            zb = b3[j][2] + t * (b3[(j + 1) % nb][2] - b3[j][2])
            if za == zb:
                raise DegenerateProjection("curves meet in space")
            if za > zb:
                over_a += 1 if _cross2(dax, day, dbx, dby) > 0 else -1
            else:
                over_b += 1 if _cross2(dbx, dby, dax, day) > 0 else -1
    if over_a != over_b:
        raise AssertionError(f"linking count mismatch {over_a} != {over_b}")
    return over_a


def _touch(o1, o2, o3, o4):
    # a zero orientation means an endpoint lies on the other segment's line;
    # it only matters when the segments actually meet
    def opp_or_zero(x, y):
        return x == 0 or y == 0 or (x > 0) != (y > 0)

    return opp_or_zero(o1, o2) and opp_or_zero(o3, o4)

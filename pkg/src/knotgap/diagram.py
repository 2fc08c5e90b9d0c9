"""Oriented knot diagrams given as planar diagram (PD) codes.

Convention: ``X(a, b, c, d)`` lists the four edge labels around a crossing
counterclockwise, starting with the incoming under-strand ``a``; the under
strand leaves along ``c = a + 1``.  Edge labels run ``1..2n`` along the
orientation of the knot and wrap at ``2n``.  A crossing has sign ``+1``
when the over-strand runs ``b -> d`` and ``-1`` when it runs ``d -> b``.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple

from .errors import PDSyntaxError, ValidationError

__all__ = [
    "Diagram",
    "Face",
    "SeifertCircleSet",
    "parse_pd",
    "parse_pd_file",
    "format_pd",
    "crossing_sign",
    "writhe",
    "seifert_circles",
    "faces",
    "is_reduced",
    "is_prime_diagram",
    "mirror",
    "relabel",
]

_X_TOKEN = re.compile(r"^X\(\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\)$")


class Face(NamedTuple):
    id: int
    # (edge label, "L" or "R"): the face lies on that side of the oriented edge
    boundary: tuple
    # (crossing index, quadrant) pairs; quadrant q sits between slots q and q+1
    corners: tuple
    is_outer: bool


@dataclass(frozen=True)
class SeifertCircleSet:
    circles: tuple
    circle_of_edge: dict = field(compare=False)

    def __len__(self):
        return len(self.circles)


@dataclass(frozen=True)
class Diagram:
    crossings: tuple
    name: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "crossings", tuple(tuple(int(v) for v in x) for x in self.crossings))

    @property
    def edge_count(self) -> int:
        return 2 * len(self.crossings)

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    def succ(self, e: int) -> int:
        return e % self.edge_count + 1

    def pred(self, e: int) -> int:
        return (e - 2) % self.edge_count + 1

    @cached_property
    def signs(self) -> tuple:
        return tuple(_sign_of(x, self.edge_count) for x in self.crossings)

    @cached_property
    def slots(self) -> dict:
        """Map edge label -> list of (crossing, slot) where it appears."""
        where = {}
        for i, x in enumerate(self.crossings):
            for p, e in enumerate(x):
                where.setdefault(e, []).append((i, p))
        return where

    def is_outgoing(self, i: int, p: int) -> bool:
        """True when the edge at slot ``p`` of crossing ``i`` leaves the crossing."""
        if p == 0:
            return False
        if p == 2:
            return True
        over_out = 3 if self.signs[i] == 1 else 1
        return p == over_out

    def other_end(self, i: int, p: int) -> tuple:
        a, b = self.slots[self.crossings[i][p]]
        return b if a == (i, p) else a

    @cached_property
    def faces(self) -> tuple:
        return _trace_faces(self)

    @cached_property
    def face_of_corner(self) -> dict:
        out = {}
        for f in self.faces:
            for corner in f.corners:
                out[corner] = f.id
        return out

    @cached_property
    def face_of_side(self) -> dict:
        """Map (edge, "L"/"R") -> face id."""
        out = {}
        for f in self.faces:
            for inc in f.boundary:
                out[inc] = f.id
        return out

    @cached_property
    def outer_face(self) -> int | None:
        if not self.crossings:
            return None
        return self.face_of_side[(1, "L")]

    def __str__(self):
        return format_pd(self)


def _sign_of(x, m):
    a, b, c, d = x
    fwd, bwd = d == b % m + 1, b == d % m + 1
    if fwd and bwd:
        # only possible with two edge labels: the over-strand must enter on
        # the label that is not already the incoming under-strand
        return 1 if b != a else -1
    return 1 if fwd else -1


def _validate(crossings, line=None):
    n = len(crossings)
    if n == 0:
        return
    m = 2 * n
    counts = {}
    for x in crossings:
        for e in x:
            counts[e] = counts.get(e, 0) + 1
    bad = sorted(e for e, k in counts.items() if k != 2)
    if bad:
        raise ValidationError(f"edge label {bad[0]} appears {counts[bad[0]]} times (expected 2)", line)
    if sorted(counts) != list(range(1, m + 1)):
        raise ValidationError(f"edge labels are not exactly 1..{m}", line)

    def succ(e):
        return e % m + 1

    incoming, outgoing = {}, {}
    for i, (a, b, c, d) in enumerate(crossings):
        if c != succ(a):
            raise ValidationError(f"crossing {i + 1}: under-strand {a} must continue as {succ(a)}, got {c}", line)
        if d != succ(b) and b != succ(d):
            raise ValidationError(f"crossing {i + 1}: over-strand labels {b},{d} are not consecutive", line)
        over_in, over_out = (b, d) if _sign_of((a, b, c, d), m) == 1 else (d, b)
        for e in (a, over_in):
            if e in incoming:
                raise ValidationError(f"edge {e} enters two crossings (not a single knot component)", line)
            incoming[e] = i
        for e in (c, over_out):
            if e in outgoing:
                raise ValidationError(f"edge {e} leaves two crossings (not a single knot component)", line)
            outgoing[e] = i


def _normalize_labels(crossings, line=None):
    labels = sorted({e for x in crossings for e in x})
    expected = list(range(1, 2 * len(crossings) + 1))
    if labels == expected or len(labels) != len(expected):
        return crossings
    warnings.warn(
        f"PD labels {labels[0]}..{labels[-1]} renumbered to 1..{len(expected)}",
        stacklevel=3,
    )
    rank = {e: k + 1 for k, e in enumerate(labels)}
    return tuple(tuple(rank[e] for e in x) for x in crossings)


def _parse_body(body, line=None):
    crossings = []
    for tok in re.findall(r"X\([^)]*\)|\S+", body):
        m = _X_TOKEN.match(tok.replace(" ", ""))
        if not m:
            raise PDSyntaxError(f"malformed token {tok!r}", line)
        crossings.append(tuple(int(g) for g in m.groups()))
    return tuple(crossings)


def _split_line(text):
    text = text.split("#", 1)[0].strip()
    if not text:
        return None, None
    name = None
    head, sep, rest = text.partition(":")
    if sep and "X(" not in head:
        name, text = head.strip() or None, rest.strip()
    return name, text


def parse_pd(text: str, name: str | None = None, line: int | None = None) -> Diagram:
    """Parse and validate one PD code.

    Accepts ``"name: X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"`` or the bare
    crossing list.  The empty string is the crossingless unknot.
    """
    parsed_name, body = _split_line(text)
    if body is None:
        return Diagram((), name)
    crossings = _parse_body(body, line)
    crossings = _normalize_labels(crossings, line)
    _validate(crossings, line)
    d = Diagram(crossings, name if name is not None else parsed_name)
    if crossings and len(d.faces) != len(crossings) + 2:
        raise ValidationError("crossing rotations do not describe a planar diagram", line)
    return d


def parse_pd_file(text: str) -> list:
    """Parse a multi-line PD file; one diagram per non-blank line.

    Returns a list of ``(line_number, Diagram)``.  Errors carry the line
    number.
    """
    out = []
    for k, raw in enumerate(text.splitlines(), start=1):
        name, body = _split_line(raw)
        if body is None and name is None:
            continue
        out.append((k, parse_pd(raw, line=k)))
    return out


def format_pd(d: Diagram) -> str:
    body = " ".join("X(%d,%d,%d,%d)" % x for x in d.crossings)
    if d.name:
        return f"{d.name}: {body}" if body else f"{d.name}:"
    return body


def crossing_sign(d: Diagram, i: int) -> int:
    return d.signs[i]


def writhe(d: Diagram) -> int:
    return sum(d.signs)


def seifert_circles(d: Diagram) -> SeifertCircleSet:
    """Orbits of the oriented smoothing.

    Incoming under-strand continues as the outgoing over-strand and vice
    versa; each orbit is listed in the order the knot orientation visits it.
    """
    if not d.crossings:
        return SeifertCircleSet(((),), {})
    nxt = {}
    for (a, b, c, dd), s in zip(d.crossings, d.signs):
        over_in, over_out = (b, dd) if s == 1 else (dd, b)
        nxt[a] = over_out
        nxt[over_in] = c
    seen = set()
    circles = []
    for e in range(1, d.edge_count + 1):
        if e in seen:
            continue
        orbit = [e]
        seen.add(e)
        f = nxt[e]
        while f != e:
            orbit.append(f)
            seen.add(f)
            f = nxt[f]
        circles.append(tuple(orbit))
    circle_of_edge = {e: k for k, orbit in enumerate(circles) for e in orbit}
    return SeifertCircleSet(tuple(circles), circle_of_edge)


def _trace_faces(d: Diagram):
    # corner (i, q) lies between slots q and q+1 (counterclockwise); walking
    # away from i along slot q+1 keeps that corner's face on the right
    visited = set()
    out = []
    outer_inc = None
    if d.crossings:
        e1_head = next((i, p) for i, p in d.slots[1] if not d.is_outgoing(i, p))
        outer_corner = (e1_head[0], (e1_head[1] - 1) % 4)
    for i in range(len(d.crossings)):
        for q in range(4):
            if (i, q) in visited:
                continue
            corners, boundary = [], []
            cur = (i, q)
            while cur not in visited:
                visited.add(cur)
                corners.append(cur)
                ci, cq = cur
                p = (cq + 1) % 4
                e = d.crossings[ci][p]
                boundary.append((e, "R" if d.is_outgoing(ci, p) else "L"))
                cur = d.other_end(ci, p)
            out.append((tuple(boundary), tuple(corners)))
    faces_ = []
    for k, (boundary, corners) in enumerate(out):
        faces_.append(Face(k, boundary, corners, outer_corner in corners))
    return tuple(faces_)


def faces(d: Diagram) -> tuple:
    return d.faces


def nugatory_crossings(d: Diagram) -> list:
    fc = d.face_of_corner
    return [
        i
        for i in range(len(d.crossings))
        if fc[(i, 0)] == fc[(i, 2)] or fc[(i, 1)] == fc[(i, 3)]
    ]


def is_reduced(d: Diagram) -> bool:
    return not nugatory_crossings(d)


def is_prime_diagram(d: Diagram) -> bool:
    """False iff two edges cut the knot into arcs with disjoint, nonempty crossing sets."""
    m = d.edge_count
    if m == 0:
        return True
    # crossing passed when moving from edge e to edge e+1
    head = {}
    for i, x in enumerate(d.crossings):
        for p, e in enumerate(x):
            if not d.is_outgoing(i, p):
                head[e] = i
    seq = [head[e] for e in range(1, m + 1)]
    for e in range(m):
        for f in range(e + 1, m):
            first = set(seq[e:f])
            second = set(seq[f:] + seq[:e])
            if first and second and not first & second:
                return False
    return True


def mirror(d: Diagram) -> Diagram:
    """Switch every crossing; the planar projection is unchanged."""
    out = []
    for (a, b, c, dd), s in zip(d.crossings, d.signs):
        out.append((b, c, dd, a) if s == 1 else (dd, a, b, c))
    return Diagram(tuple(out), d.name)


def relabel(d: Diagram, shift: int) -> Diagram:
    """Rotate the starting edge: label e becomes e + shift (mod 2n)."""
    m = d.edge_count
    if m == 0:
        return d

    def r(e):
        return (e - 1 + shift) % m + 1

    return Diagram(tuple(tuple(r(e) for e in x) for x in d.crossings), d.name)


def rotate_crossings(d: Diagram, k: int) -> Diagram:
    """Cyclically rotate the order in which crossings are listed."""
    n = len(d.crossings)
    if n == 0:
        return d
    k %= n
    return Diagram(d.crossings[k:] + d.crossings[:k], d.name)

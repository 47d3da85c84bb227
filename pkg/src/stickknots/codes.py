"""Diagram codes and small-knot classification.

Given a diagram and an over/under choice at every crossing, this module
extracts Gauss and planar-diagram (PD) codes, computes the Kauffman bracket
state sum and the writhe-normalized Jones polynomial, and classifies the
knot among the small types (unknot, 3_1, 4_1, 5_1, 5_2) that the stick
constructions can produce.  Reference polynomials are computed in-process
from standard minimal PD fixtures and validated by determinants.
"""

from __future__ import annotations

import cmath
import functools
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .geometry import (
    Crossing,
    DegenerateDiagramError,
    Diagram,
    InvalidParameterError,
    SizeError,
    Vec2,
)

__all__ = [
    "CrossingAssignment",
    "GaussEntry",
    "GaussCode",
    "PDCode",
    "LaurentPoly",
    "KnotClass",
    "extract_gauss_code",
    "gauss_to_pd",
    "pd_writhe",
    "kauffman_bracket",
    "jones",
    "determinant",
    "tricolorable",
    "classify",
    "classify_jones",
    "merge_crossingless_runs",
    "stick_filter",
    "alternating_assignment",
    "diagram_writhe",
    "BracketTable",
    "UNKNOT",
    "TREFOIL_PD",
    "FIGURE_EIGHT_PD",
    "CINQUEFOIL_PD",
    "THREE_TWIST_PD",
]

MAX_STATE_SUM_CROSSINGS = 16


# ---------------------------------------------------------------------------
# Crossing assignments and Gauss codes


@dataclass(frozen=True)
class CrossingAssignment:
    """Which strand passes over at each crossing of a target diagram.

    ``over_a[k]`` is True when ``edge_a`` of crossing ``k`` is the over
    strand.
    """

    over_a: tuple[bool, ...]

    @property
    def bits(self) -> int:
        """Bit k set <=> edge_a of crossing k passes over."""
        return sum(1 << k for k, o in enumerate(self.over_a) if o)

    @classmethod
    def from_bits(cls, n_crossings: int, bits: int) -> "CrossingAssignment":
        return cls(tuple(bool(bits >> k & 1) for k in range(n_crossings)))

    def flipped(self) -> "CrossingAssignment":
        return CrossingAssignment(tuple(not o for o in self.over_a))

    def __len__(self) -> int:
        return len(self.over_a)


@dataclass(frozen=True)
class GaussEntry:
    crossing: int
    over: bool
    sign: int


@dataclass(frozen=True)
class GaussCode:
    """Cyclic sequence of crossing visits along the walk traversal."""

    entries: tuple[GaussEntry, ...]

    def __post_init__(self) -> None:
        seen: dict[int, list[bool]] = {}
        for e in self.entries:
            seen.setdefault(e.crossing, []).append(e.over)
        for cid, overs in seen.items():
            if sorted(overs) != [False, True]:
                raise InvalidParameterError(
                    f"crossing {cid} must appear exactly once over and once under")

    def __len__(self) -> int:
        return len(self.entries)

    def to_json(self) -> list:
        return [[e.crossing, "O" if e.over else "U", e.sign]
                for e in self.entries]


PDCode = tuple[tuple[int, int, int, int], ...]


def _visit_order(d: Diagram) -> list[tuple[int, float, int, str]]:
    """Crossing visits (edge, parameter, crossing index, side) in walk order."""
    visits = []
    for k, c in enumerate(d.crossings):
        visits.append((c.edge_a, c.t_a, k, "a"))
        visits.append((c.edge_b, c.t_b, k, "b"))
    visits.sort(key=lambda v: (v[0], v[1], v[2]))
    return visits


def _check_assignment(d: Diagram, a: CrossingAssignment) -> None:
    if len(a) != d.n_crossings:
        raise InvalidParameterError(
            f"assignment covers {len(a)} crossings, diagram has {d.n_crossings}")


def extract_gauss_code(d: Diagram, a: CrossingAssignment) -> GaussCode:
    """Linearize the diagram: crossings in traversal order with over/under."""
    d.require_clean()
    _check_assignment(d, a)
    entries = []
    for edge, t, k, side in _visit_order(d):
        over = a.over_a[k] if side == "a" else not a.over_a[k]
        entries.append(GaussEntry(crossing=k, over=over, sign=d.crossings[k].sign))
    return GaussCode(tuple(entries))


def _visit_directions(d: Diagram, edge: int, t: float) -> tuple[Vec2, Vec2]:
    """Unit directions entering and leaving a crossing visit.

    A parameter of 1.0 means the strand turns the walk corner exactly at the
    crossing, so the outgoing direction is the next edge's.
    """
    m = d.walk.n_edges
    d_in = d.walk.edge_vec(edge).normalized()
    if t >= 1.0 - 1e-12:
        d_out = d.walk.edge_vec((edge + 1) % m).normalized()
    else:
        d_out = d_in
    return d_in, d_out


def gauss_to_pd(g: GaussCode, d: Diagram) -> PDCode:
    """Convert a Gauss code to a PD code using the diagram's geometry.

    Arcs are labeled 1..2c in traversal order.  Each crossing's 4-tuple
    lists the incident arcs counterclockwise starting from the incoming
    under-strand, which is the standard planar-diagram convention.
    """
    tuples, _ = _pd_with_meta(g, d)
    return tuples


def _pd_with_meta(g: GaussCode, d: Diagram) -> tuple[PDCode, list[int]]:
    """PD tuples plus the per-crossing signs in crossing-index order."""
    d.require_clean()
    visits = _visit_order(d)
    if len(visits) != len(g.entries):
        raise InvalidParameterError("Gauss code does not match diagram")
    n = len(visits)
    if n == 0:
        return (), []
    c = n // 2

    # Arc i+1 enters visit i; the arc leaving visit i enters the next visit.
    def in_arc(i: int) -> int:
        return i + 1

    def out_arc(i: int) -> int:
        return (i + 1) % n + 1

    by_crossing: dict[int, dict[bool, int]] = {}
    for i, entry in enumerate(g.entries):
        by_crossing.setdefault(entry.crossing, {})[entry.over] = i

    tuples: list[tuple[int, int, int, int]] = []
    signs: list[int] = []
    for k in range(c):
        roles = by_crossing[k]
        u = roles[False]
        o = roles[True]
        u_in, u_out = _visit_directions(d, visits[u][0], visits[u][1])
        o_in, o_out = _visit_directions(d, visits[o][0], visits[o][1])
        ports = [
            ((-u_in).angle(), in_arc(u)),
            (u_out.angle(), out_arc(u)),
            ((-o_in).angle(), in_arc(o)),
            (o_out.angle(), out_arc(o)),
        ]
        base = ports[0][0]
        ordered = sorted(
            ports[1:], key=lambda pa: (pa[0] - base) % (2.0 * math.pi))
        tuples.append((ports[0][1],) + tuple(arc for _, arc in ordered))
        tan_u = (u_in + u_out)
        tan_o = (o_in + o_out)
        signs.append(1 if tan_u.cross(tan_o) > 0.0 else -1)
    return tuple(tuples), signs


def diagram_writhe(d: Diagram, a: CrossingAssignment) -> int:
    """Sum of crossing signs with the under/over roles from the assignment."""
    d.require_clean()
    _check_assignment(d, a)
    w = 0
    for k, c in enumerate(d.crossings):
        # c.sign is cross(dir_a, dir_b); the writhe sign is cross(under, over).
        w += c.sign if not a.over_a[k] else -c.sign
    return w


def pd_writhe(pd: PDCode) -> int:
    """Writhe read combinatorially off a PD code with 1..2c arc labeling."""
    n = 2 * len(pd)
    w = 0
    for a, b, c, d in pd:
        pos = (d - b) % n == 1
        neg = (b - d) % n == 1
        if pos == neg:
            raise InvalidParameterError(f"ambiguous crossing orientation {a,b,c,d}")
        w += 1 if (d - b) % n == 1 else -1
    return w


# ---------------------------------------------------------------------------
# Laurent polynomials in A


class LaurentPoly:
    """Integer Laurent polynomial in the bracket variable A."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Optional[dict[int, int]] = None) -> None:
        self.coeffs = {e: c for e, c in (coeffs or {}).items() if c != 0}

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1})

    @classmethod
    def monomial(cls, coeff: int, exp: int) -> "LaurentPoly":
        return cls({exp: coeff})

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        out: dict[int, int] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly(out)

    def scale(self, k: int) -> "LaurentPoly":
        return LaurentPoly({e: k * c for e, c in self.coeffs.items()})

    def __eq__(self, other: object) -> bool:
        return isinstance(other, LaurentPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.key())

    def key(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(self.coeffs.items()))

    def mirror(self) -> "LaurentPoly":
        """Substitute A -> A^-1 (the mirror image's polynomial)."""
        return LaurentPoly({-e: c for e, c in self.coeffs.items()})

    def evaluate(self, a: complex) -> complex:
        return sum(c * a ** e for e, c in self.coeffs.items())

    def is_one(self) -> bool:
        return self.coeffs == {0: 1}

    def to_json(self) -> dict[str, int]:
        return {str(e): c for e, c in sorted(self.coeffs.items())}

    @classmethod
    def from_json(cls, obj: dict) -> "LaurentPoly":
        return cls({int(e): int(c) for e, c in obj.items()})

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e, c in sorted(self.coeffs.items(), reverse=True):
            if e == 0:
                parts.append(f"{c:+d}")
            else:
                parts.append(f"{c:+d}*A^{e}")
        return " ".join(parts)


#: Value of a disjoint unknotted loop in the bracket state sum.
LOOP_FACTOR = LaurentPoly({2: -1, -2: -1})

#: Smoothing pairings in port positions 0..3 (counterclockwise from the
#: incoming under-strand).  The A-smoothing joins the incoming under-strand
#: to the outgoing over-strand; calibrated so that a geometric kink of
#: writhe w contributes the factor -A^{3w}, which the writhe normalization
#: of the Jones polynomial cancels.
_PAIR_A = ((1, 2), (3, 0))
_PAIR_B = ((0, 1), (2, 3))


class _UnionFind:
    __slots__ = ("parent",)

    def __init__(self, n: int) -> None:
        self.parent = list(range(n))

    def find(self, i: int) -> int:
        p = self.parent
        while p[i] != i:
            p[i] = p[p[i]]
            i = p[i]
        return i

    def union(self, i: int, j: int) -> None:
        ri, rj = self.find(i), self.find(j)
        if ri != rj:
            self.parent[ri] = rj


def _arc_slot_pairs(pd: PDCode) -> list[tuple[int, int]]:
    """Slot pairs (4k + port) connected by a shared arc label."""
    where: dict[int, list[int]] = {}
    for k, tup in enumerate(pd):
        for i, arc in enumerate(tup):
            where.setdefault(arc, []).append(4 * k + i)
    pairs = []
    for arc, slots in sorted(where.items()):
        if len(slots) != 2:
            raise InvalidParameterError(
                f"arc label {arc} appears {len(slots)} times (expected 2)")
        pairs.append((slots[0], slots[1]))
    return pairs


def _state_loops(pd: PDCode, arc_pairs: Sequence[tuple[int, int]],
                 state: int) -> int:
    """Closed loops after smoothing every crossing per the state bits.

    Bit k set chooses the B-pairing at crossing k.
    """
    c = len(pd)
    uf = _UnionFind(4 * c)
    for i, j in arc_pairs:
        uf.union(i, j)
    for k in range(c):
        pairing = _PAIR_B if state >> k & 1 else _PAIR_A
        for i, j in pairing:
            uf.union(4 * k + i, 4 * k + j)
    return sum(1 for i in range(4 * c) if uf.find(i) == i)


def kauffman_bracket(pd: PDCode) -> LaurentPoly:
    """Full state-sum Kauffman bracket (2^c states)."""
    c = len(pd)
    if c == 0:
        return LaurentPoly.one()
    if c > MAX_STATE_SUM_CROSSINGS:
        raise SizeError(f"state sum over {c} crossings exceeds the 2^16 cap")
    arc_pairs = _arc_slot_pairs(pd)
    loop_pow = [LaurentPoly.one()]
    for _ in range(c):
        loop_pow.append(loop_pow[-1] * LOOP_FACTOR)
    total = LaurentPoly.zero()
    for state in range(1 << c):
        b = bin(state).count("1")
        loops = _state_loops(pd, arc_pairs, state)
        total = total + loop_pow[loops - 1].scale(1) * LaurentPoly.monomial(
            1, c - 2 * b)
    return total


def jones(pd: PDCode, writhe: int) -> LaurentPoly:
    """Writhe-normalized bracket: (-A^3)^(-writhe) * <pd>, in variable A."""
    br = kauffman_bracket(pd)
    norm = LaurentPoly.monomial((-1) ** (writhe % 2), -3 * writhe)
    return norm * br


_DET_POINT = cmath.exp(1j * math.pi / 4.0)


def determinant(pd: PDCode) -> int:
    """|Jones at t = -1| (i.e. |bracket at A = e^{i pi/4}|; the writhe
    normalization has modulus 1 there and cannot change the value)."""
    val = abs(kauffman_bracket(pd).evaluate(_DET_POINT))
    out = round(val)
    if abs(val - out) > 1e-6:
        raise ArithmeticError(f"determinant {val} is not near an integer")
    return out


# ---------------------------------------------------------------------------
# Tricolorability


def tricolorable(g: GaussCode) -> bool:
    """Whether the arcs admit a non-constant 3-coloring.

    Arcs run between consecutive under-passes; each crossing imposes
    2*(over arc) = (incoming under arc) + (outgoing under arc) mod 3.
    """
    n = len(g.entries)
    c = n // 2
    if c == 0:
        return False
    unders = [i for i, e in enumerate(g.entries) if not e.over]

    def arc_of(pos: int) -> int:
        """Index of the arc a visit lies on (arcs delimited by under-passes)."""
        cnt = sum(1 for u in unders if u <= pos)
        return cnt % c

    rows = []
    for k in range(c):
        upos = next(i for i, e in enumerate(g.entries)
                    if e.crossing == k and not e.over)
        opos = next(i for i, e in enumerate(g.entries)
                    if e.crossing == k and e.over)
        out_arc = arc_of(upos)
        in_arc = (out_arc - 1) % c
        over_arc = arc_of(opos)
        row = [0] * c
        row[over_arc] = (row[over_arc] + 2) % 3
        row[in_arc] = (row[in_arc] - 1) % 3
        row[out_arc] = (row[out_arc] - 1) % 3
        rows.append(row)
    rank = _gf3_rank(rows)
    return c - rank >= 2


def _gf3_rank(rows: list[list[int]]) -> int:
    mat = [row[:] for row in rows]
    n_rows = len(mat)
    n_cols = len(mat[0]) if mat else 0
    rank = 0
    col = 0
    for col in range(n_cols):
        pivot = next((r for r in range(rank, n_rows) if mat[r][col] % 3), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        inv = 1 if mat[rank][col] % 3 == 1 else 2
        mat[rank] = [(x * inv) % 3 for x in mat[rank]]
        for r in range(n_rows):
            if r != rank and mat[r][col] % 3:
                f = mat[r][col] % 3
                mat[r] = [(x - f * y) % 3 for x, y in zip(mat[r], mat[rank])]
        rank += 1
        if rank == n_rows:
            break
    return rank


# ---------------------------------------------------------------------------
# Knot classes and classification


@dataclass(frozen=True)
class KnotClass:
    """A small knot type with its reference invariants.

    ``crossing_number``, ``stick_number`` and ``bridge_index`` are the
    standard table values; they are None for unrecognized types, which carry
    their Jones polynomial instead.
    """

    kind: str  # unknot | trefoil | figure_eight | cinquefoil | three_twist | other
    chirality: Optional[str] = None  # left | right | None
    crossing_number: Optional[int] = None
    stick_number: Optional[int] = None
    bridge_index: Optional[int] = None
    jones_poly: Optional[LaurentPoly] = None

    @property
    def label(self) -> str:
        if self.chirality:
            return f"{self.kind}_{self.chirality}"
        return self.kind

    def base_kind(self) -> str:
        return self.kind


_TABLE = {
    "unknot": (0, 3, 1),
    "trefoil": (3, 6, 2),
    "figure_eight": (4, 7, 2),
    "cinquefoil": (5, 8, 2),
    "three_twist": (5, 8, 2),
}


def make_knot_class(kind: str, chirality: Optional[str] = None,
                    jones_poly: Optional[LaurentPoly] = None) -> KnotClass:
    if kind == "other":
        return KnotClass(kind="other", jones_poly=jones_poly)
    c, s, br = _TABLE[kind]
    return KnotClass(kind=kind, chirality=chirality, crossing_number=c,
                     stick_number=s, bridge_index=br)


UNKNOT = make_knot_class("unknot")

# Standard minimal planar diagrams of the reference knots; only used to
# compute the reference Jones polynomials in-process (validated by the
# determinant and tricolorability tests).
TREFOIL_PD: PDCode = ((1, 4, 2, 5), (3, 6, 4, 1), (5, 2, 6, 3))
FIGURE_EIGHT_PD: PDCode = ((4, 2, 5, 1), (8, 6, 1, 5), (6, 3, 7, 4), (2, 7, 3, 8))
CINQUEFOIL_PD: PDCode = ((1, 6, 2, 7), (3, 8, 4, 9), (5, 10, 6, 1),
                         (7, 2, 8, 3), (9, 4, 10, 5))
THREE_TWIST_PD: PDCode = ((1, 4, 2, 5), (3, 8, 4, 9), (5, 10, 6, 1),
                          (9, 6, 10, 7), (7, 2, 8, 3))


@functools.lru_cache(maxsize=1)
def _reference_jones() -> tuple[tuple[KnotClass, LaurentPoly], ...]:
    """Reference (class, Jones) pairs for all recognized small knots.

    Chirality labels follow the sign of the minimal diagram's writhe: the
    variant whose alternating minimal diagram has positive writhe is called
    right-handed; its mirror (A -> A^-1) is left-handed.
    """
    out: list[tuple[KnotClass, LaurentPoly]] = [
        (UNKNOT, LaurentPoly.one()),
    ]
    for kind, pd in (("trefoil", TREFOIL_PD),
                     ("figure_eight", FIGURE_EIGHT_PD),
                     ("cinquefoil", CINQUEFOIL_PD),
                     ("three_twist", THREE_TWIST_PD)):
        w = pd_writhe(pd)
        j = jones(pd, w)
        jm = j.mirror()
        if j == jm:
            out.append((make_knot_class(kind), j))
            continue
        first = "right" if w > 0 else "left"
        second = "left" if w > 0 else "right"
        out.append((make_knot_class(kind, first), j))
        out.append((make_knot_class(kind, second), jm))
    return tuple(out)


def classify_jones(j: LaurentPoly) -> KnotClass:
    """Match a Jones polynomial against the small-knot reference table."""
    for kc, ref in _reference_jones():
        if j == ref:
            return kc
    return make_knot_class("other", jones_poly=j)


def classify(d: Diagram, a: CrossingAssignment) -> KnotClass:
    """Classify the knot formed by a diagram and a crossing assignment.

    Diagrams with fewer than 3 crossings are unknots outright; otherwise the
    Jones polynomial decides (it separates all knots of up to 5 crossings,
    up to chirality, from each other and from the unknot).
    """
    d.require_clean()
    _check_assignment(d, a)
    c = d.n_crossings
    if c > MAX_STATE_SUM_CROSSINGS:
        raise SizeError(f"{c} crossings exceed the classification cap")
    if c < 3:
        return UNKNOT
    g = extract_gauss_code(d, a)
    pd, signs = _pd_with_meta(g, d)
    w = sum(signs)
    return classify_jones(jones(pd, w))


# ---------------------------------------------------------------------------
# Stick counting


def merge_crossingless_runs(d: Diagram, eps: float = 1e-9) -> int:
    """Effective stick count after merging runs of crossing-free edges.

    Two cyclically consecutive edges merge when neither is incident to any
    crossing and the straight chord replacing them intersects nothing else
    in the diagram (so the merged polygon realizes the same knot with one
    stick fewer); merging repeats until blocked.  A closed polygon never
    drops below 3 edges.  Edges carrying a crossing at their far vertex
    (parameter 1.0) block both edges at that corner.
    """
    from .geometry import DegenerateContact, segment_intersection

    m = d.walk.n_edges
    blocked = set()
    for c in d.crossings:
        for e, t in ((c.edge_a, c.t_a), (c.edge_b, c.t_b)):
            blocked.add(e % m)
            if t >= 1.0 - 1e-12:
                blocked.add((e + 1) % m)
    verts = [d.walk.vertex(i) for i in range(m)]
    flags = [e in blocked for e in range(m)]

    def chord_is_clear(i: int) -> bool:
        mm = len(verts)
        p = verts[i]
        q = verts[(i + 2) % mm]
        if (q - p).norm() <= eps:
            return False
        for j in range(mm):
            if j in (i % mm, (i + 1) % mm):
                continue
            a = verts[j]
            b = verts[(j + 1) % mm]
            res = segment_intersection(p, q, a, b, eps)
            if res is None:
                continue
            if isinstance(res, DegenerateContact) and res.point is not None:
                # Contact exactly at a shared endpoint of a neighboring edge
                # is the polygon closing up, not a new intersection.
                if min((res.point - p).norm(), (res.point - q).norm()) <= eps \
                        and j in ((i - 1) % mm, (i + 2) % mm):
                    continue
            return False
        return True

    changed = True
    while changed and len(verts) > 3:
        changed = False
        mm = len(verts)
        for i in range(mm):
            if not flags[i] and not flags[(i + 1) % mm] and chord_is_clear(i):
                del verts[(i + 1) % mm]
                del flags[(i + 1) % mm]
                changed = True
                break
    # No closed curve uses fewer than 3 sticks; walks that retrace-collapsed
    # below that are unknots, and the unknot needs 3.
    return max(3, len(verts))


def stick_filter(effective_sticks: int, k: KnotClass) -> bool:
    """False iff the class's stick number exceeds the available sticks."""
    if k.stick_number is None:
        return True
    return effective_sticks >= k.stick_number


# ---------------------------------------------------------------------------
# Assignments


def alternating_assignment(d: Diagram) -> Optional[CrossingAssignment]:
    """The assignment whose over/under strictly alternates along the walk.

    Returns None when no consistent alternation exists.  The complementary
    alternation is the total flip of the returned one.
    """
    d.require_clean()
    visits = _visit_order(d)
    want_over = True
    over_a: dict[int, bool] = {}
    for edge, t, k, side in visits:
        this_over_a = want_over if side == "a" else not want_over
        if k in over_a:
            if over_a[k] != this_over_a:
                return None
        else:
            over_a[k] = this_over_a
        want_over = not want_over
    if not visits:
        return CrossingAssignment(())
    return CrossingAssignment(tuple(over_a[k] for k in range(d.n_crossings)))


# ---------------------------------------------------------------------------
# Shared state table: classify many assignments of one projection


class BracketTable:
    """Kauffman state data of one projection, shared across assignments.

    The loop count of a smoothing state does not depend on over/under
    choices; only the A/B labeling of the two smoothings at each crossing
    does, and flipping a crossing swaps them.  Precomputing every state's
    loop count therefore lets the bracket of each of the 2^c assignments be
    assembled by a cheap reweighting instead of a fresh state sum.
    """

    def __init__(self, d: Diagram) -> None:
        d.require_clean()
        c = d.n_crossings
        if c > MAX_STATE_SUM_CROSSINGS:
            raise SizeError(f"{c} crossings exceed the 2^16 state-table cap")
        self.n_crossings = c
        self.base = CrossingAssignment((True,) * c)
        g = extract_gauss_code(d, self.base)
        pd, signs = _pd_with_meta(g, d)
        self.base_signs = tuple(signs)
        arc_pairs = _arc_slot_pairs(pd)
        n_states = 1 << c
        loops = np.empty(n_states, dtype=np.uint8)
        for state in range(n_states):
            loops[state] = _state_loops(pd, arc_pairs, state)
        self._loops = loops
        idx = np.arange(n_states, dtype=np.uint32)
        self._idx = idx
        pop = np.zeros(n_states, dtype=np.uint8)
        for bit in range(c):
            pop += ((idx >> bit) & 1).astype(np.uint8)
        self._pop = pop
        self._loop_pow = [LaurentPoly.one()]
        for _ in range(c + 1):
            self._loop_pow.append(self._loop_pow[-1] * LOOP_FACTOR)
        self._jones_cache: dict[bytes, LaurentPoly] = {}

    def writhe(self, a: CrossingAssignment) -> int:
        w = 0
        for k, s in enumerate(self.base_signs):
            w += s if a.over_a[k] else -s
        return w

    def bracket(self, a: CrossingAssignment) -> LaurentPoly:
        c = self.n_crossings
        if c == 0:
            return LaurentPoly.one()
        flip = self.base.bits ^ a.bits
        width = c + 2
        key = (self._pop[self._idx ^ np.uint32(flip)].astype(np.int32) * width
               + self._loops.astype(np.int32))
        counts = np.bincount(key, minlength=width * (c + 1))
        total = LaurentPoly.zero()
        for flat in np.nonzero(counts)[0]:
            b = int(flat) // width
            loops = int(flat) % width
            cnt = int(counts[flat])
            term = self._loop_pow[loops - 1] * LaurentPoly.monomial(
                cnt, c - 2 * b)
            total = total + term
        return total

    def jones(self, a: CrossingAssignment) -> LaurentPoly:
        br = self.bracket(a)
        w = self.writhe(a)
        return LaurentPoly.monomial((-1) ** (w % 2), -3 * w) * br

    def classify(self, a: CrossingAssignment) -> KnotClass:
        if self.n_crossings < 3:
            return UNKNOT
        return classify_jones(self.jones(a))

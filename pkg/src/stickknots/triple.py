"""Triple crossings: resolution and exhaustive small-diagram classification.

A triple crossing is a point where three strands meet.  Fixing the heights
of the three strands (top / middle / bottom) turns it into three ordinary
pairwise crossings.  This module resolves a labeled triple crossing into
such a fragment, enumerates every planar way to close up one triple
crossing together with one ordinary crossing into a knot diagram, and
classifies all resulting 4-crossing knots.

The work is combinatorial: diagrams are assembled as 4-valent maps with a
rotation system (counterclockwise port order at each crossing) and checked
for planarity by face tracing (genus zero iff V - E + F = 2).  A small
fixed geometric model of three pairwise-crossing chords supplies the
rotation system inside the triple-crossing disk.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional

from .geometry import InvalidParameterError, Vec2
from .codes import KnotClass, classify_jones, jones

__all__ = [
    "TripleLabeling",
    "FragmentCrossing",
    "ClosureScheme",
    "all_labelings",
    "resolve_triple",
    "enumerate_closures",
    "classify_triple_plus_one",
    "assemble_pd",
    "triple_report",
    "WORKED_SCHEME",
]

#: Strand ends of the triple crossing, in counterclockwise order around its
#: disk.  Strand s runs from end s to end s + 3, so the three strands are
#: 1-4, 2-5 and 3-6 and every pair crosses once.
TRIPLE_ENDS = (1, 2, 3, 4, 5, 6)

#: Strand ends of the ordinary ("traditional") crossing, counterclockwise
#: around its disk; its strands are a-d and b-c (opposite ends).
TRAD_ENDS = ("a", "b", "d", "c")

_HEIGHTS = ("T", "M", "B")


def _strand_of_end(end: int) -> int:
    return end if end <= 3 else end - 3


@dataclass(frozen=True)
class TripleLabeling:
    """A bijection of the three strands to heights top / middle / bottom.

    ``heights[i]`` is the label of strand ``i + 1``; "T" is highest.
    """

    heights: tuple[str, str, str]

    def __post_init__(self) -> None:
        if sorted(self.heights) != sorted(_HEIGHTS):
            raise InvalidParameterError(
                f"labeling must be a bijection onto {_HEIGHTS}, got {self.heights}")

    def rank(self, strand: int) -> int:
        """0 for the top strand, 1 for middle, 2 for bottom."""
        return _HEIGHTS.index(self.heights[strand - 1])

    def over_strand(self, s: int, t: int) -> int:
        """Which of two strands passes over where they cross."""
        return s if self.rank(s) < self.rank(t) else t


def all_labelings() -> tuple[TripleLabeling, ...]:
    """All six strand labelings."""
    return tuple(TripleLabeling(p) for p in itertools.permutations(_HEIGHTS))


@dataclass(frozen=True)
class FragmentCrossing:
    """One pairwise crossing inside a resolved triple crossing.

    ``ports`` lists, counterclockwise, the four strand pieces meeting at the
    crossing; each entry is ``(strand, piece)`` where ``piece`` counts the
    segments of that strand from its low-numbered end (0, 1 or 2).
    """

    strands: tuple[int, int]
    over: int
    ports: tuple[tuple[int, int], tuple[int, int], tuple[int, int], tuple[int, int]]


# ---------------------------------------------------------------------------
# Fixed combinatorial model of the two crossing disks.
#
# Three chords with ends at 60-degree spacing, each offset slightly off
# center so the three pairwise crossings are distinct, determine the
# rotation system and the order of crossings along each strand.  The
# combinatorial outcome is the unique arrangement of three pairwise
# crossing chords with this end pattern.


@lru_cache(maxsize=1)
def _triple_disk() -> dict:
    ends = {k: Vec2(math.cos((k - 1) * math.pi / 3),
                    math.sin((k - 1) * math.pi / 3)) for k in TRIPLE_ENDS}
    delta = 0.12
    start: dict[int, Vec2] = {}
    direction: dict[int, Vec2] = {}
    for s in (1, 2, 3):
        p, q = ends[s], ends[s + 3]
        d = (q - p).normalized()
        off = Vec2(-d.y, d.x).scaled(delta * (s - 2))
        start[s] = p + off
        direction[s] = d

    def intersect(s: int, t: int) -> tuple[Vec2, float, float]:
        p, r = start[s], direction[s]
        q, u = start[t], direction[t]
        den = r.cross(u)
        qp = q - p
        return (p + r.scaled(qp.cross(u) / den),
                qp.cross(u) / den, qp.cross(r) / den)

    pairs = ((1, 2), (1, 3), (2, 3))
    along: dict[int, list[tuple[float, tuple[int, int]]]] = {1: [], 2: [], 3: []}
    for s, t in pairs:
        _, ts, tt = intersect(s, t)
        along[s].append((ts, (s, t)))
        along[t].append((tt, (s, t)))
    for s in (1, 2, 3):
        along[s].sort()

    # Pieces of strand s, from end s to end s + 3: piece 0 before the first
    # crossing, piece 1 between, piece 2 after the second.
    piece_between: dict[tuple[int, int], tuple[tuple[int, int], tuple[int, int]]] = {}
    for s in (1, 2, 3):
        first, second = along[s][0][1], along[s][1][1]
        piece_between[(s, 0)] = (("end", s), first)          # type: ignore[assignment]
        piece_between[(s, 1)] = (first, second)
        piece_between[(s, 2)] = (second, ("end", s + 3))     # type: ignore[assignment]

    # Rotation system: at the crossing of strands s and t, the four pieces
    # in counterclockwise order of their outgoing directions.
    rotation: dict[tuple[int, int], tuple[tuple[int, int], ...]] = {}
    for s, t in pairs:
        incident = []
        for strand in (s, t):
            order = [pair for _, pair in along[strand]]
            idx = order.index((s, t))
            d = direction[strand]
            incident.append(((-d).angle(), (strand, idx)))      # piece before
            incident.append((d.angle(), (strand, idx + 1)))     # piece after
        incident.sort()
        rotation[(s, t)] = tuple(piece for _, piece in incident)
    return {"rotation": rotation, "pieces": piece_between, "pairs": pairs}


def resolve_triple(label: TripleLabeling) -> tuple[FragmentCrossing, ...]:
    """The three pairwise crossings a labeled triple crossing resolves into."""
    disk = _triple_disk()
    out = []
    for s, t in disk["pairs"]:
        out.append(FragmentCrossing(
            strands=(s, t),
            over=label.over_strand(s, t),
            ports=disk["rotation"][(s, t)],
        ))
    return tuple(out)


# ---------------------------------------------------------------------------
# Closure schemes


@dataclass(frozen=True)
class ClosureScheme:
    """A planar closure of the triple and traditional crossing into a knot.

    ``internal_pair`` joins two ends of distinct triple-crossing strands;
    ``matching`` sends the remaining four triple ends to the four ordinary
    crossing ends.  ``faces`` is the planarity witness: the assembled
    4-valent map traces exactly 6 faces, so V - E + F = 4 - 8 + 6 = 2.
    """

    internal_pair: tuple[int, int]
    matching: tuple[tuple[int, str], ...]
    faces: int

    def arc_partner(self, end: int) -> object:
        if end in self.internal_pair:
            a, b = self.internal_pair
            return b if end == a else a
        for e, trad in self.matching:
            if e == end:
                return trad
        raise InvalidParameterError(f"end {end} not closed by this scheme")


#: The worked closure: join ends 5 and 6 inside the triple crossing, then
#: 1-a, and each next clockwise triple end to the next counterclockwise
#: ordinary end: 2-c, 3-d, 4-b.
WORKED_SCHEME_PAIRING = ((5, 6), (1, "a"), (2, "c"), (3, "d"), (4, "b"))


def _node_of_port(piece_ends, piece):
    """Both (node, rotation position) attachments keyed by piece id."""
    return piece_ends[piece]


def _build_map(internal_pair: tuple[int, int],
               matching: tuple[tuple[int, str], ...]):
    """Assemble the 4-valent map; return (twin, None) or (None, reason).

    Nodes are the three resolved triple crossings plus the ordinary
    crossing, each with a counterclockwise rotation of 4 ports.  ``twin``
    maps a port (node, position) to the port at the far end of its strand
    segment, splicing through boundary ends and closure arcs.
    """
    disk = _triple_disk()
    rotation: dict[object, tuple] = dict(disk["rotation"])
    # Ordinary crossing: boundary order per TRAD_ENDS, strands a-d and b-c.
    rotation["trad"] = tuple(("tpiece", e) for e in TRAD_ENDS)

    # Where each piece attaches: piece id -> list of (node, position).
    attach: dict[object, list[tuple[object, int]]] = {}
    for node, ports in rotation.items():
        for pos, piece in enumerate(ports):
            attach.setdefault(piece, []).append((node, pos))
    # Boundary attachments.
    end_piece: dict[object, object] = {}
    for (s, i), (lo, hi) in disk["pieces"].items():
        for side in (lo, hi):
            if isinstance(side, tuple) and side[0] == "end":
                end_piece[side[1]] = (s, i)
    for e in TRAD_ENDS:
        end_piece[e] = ("tpiece", e)

    # Closure arcs splice two boundary ends together.
    partner: dict[object, object] = {}
    a, b = internal_pair
    partner[a], partner[b] = b, a
    for e, trad in matching:
        partner[e], partner[trad] = trad, e

    # twin: follow a port's piece out; if it reaches a boundary end, jump
    # across the closure arc and continue on the partner end's piece.
    def far_port(node: object, pos: int) -> tuple[object, int]:
        piece = rotation[node][pos]
        at = attach[piece]
        if len(at) == 2:
            other = at[0] if at[1] == (node, pos) else at[1]
            return other
        # piece touches a boundary end; cross the closure arc
        end = None
        if piece[0] == "tpiece":
            end = piece[1]
        else:
            for side in disk["pieces"][piece]:
                if isinstance(side, tuple) and side[0] == "end":
                    end = side[1]
        nxt = end_piece[partner[end]]
        at2 = attach[nxt]
        return at2[0]

    twin = {}
    for node, ports in rotation.items():
        for pos in range(4):
            twin[(node, pos)] = far_port(node, pos)
    # sanity: twin is an involution without fixed points
    for h, k in twin.items():
        if twin[k] != h or k == h:
            return None, "closure arcs do not splice into an involution"
    return (rotation, twin), None


def _count_faces(rotation, twin) -> int:
    """Faces of the rotation system, traced as orbits of rotate-after-twin."""
    seen = set()
    faces = 0
    for h in twin:
        if h in seen:
            continue
        faces += 1
        cur = h
        while cur not in seen:
            seen.add(cur)
            node, pos = twin[cur]
            cur = (node, (pos + 1) % 4)
    return faces


def _single_component(twin) -> bool:
    """True if following strands straight through visits every edge once."""
    start = next(iter(twin))
    cur = start
    steps = 0
    while True:
        node, pos = twin[cur]
        cur = (node, (pos + 2) % 4)
        steps += 1
        if cur == start:
            break
        if steps > len(twin):
            return False
    return steps == len(twin) // 2


def _candidate_pairings() -> Iterator[tuple[tuple[int, int], tuple[tuple[int, str], ...]]]:
    for a, b in itertools.combinations(TRIPLE_ENDS, 2):
        if _strand_of_end(a) == _strand_of_end(b):
            continue  # closing a strand onto itself splits off a component
        rest = [e for e in TRIPLE_ENDS if e not in (a, b)]
        for perm in itertools.permutations(TRAD_ENDS):
            yield (a, b), tuple(zip(rest, perm))


def _scheme_key(internal_pair, matching) -> tuple:
    return (internal_pair, matching)


def _rotate_scheme(internal_pair, matching, r6: int, r4: int):
    """Image of a scheme under rotating the two disks (60 and 90 degrees)."""
    def rot_end(e: int) -> int:
        return (e - 1 + r6) % 6 + 1

    def rot_trad(e: str) -> str:
        return TRAD_ENDS[(TRAD_ENDS.index(e) + r4) % 4]

    a, b = sorted((rot_end(internal_pair[0]), rot_end(internal_pair[1])))
    pairs = sorted((rot_end(e), rot_trad(t)) for e, t in matching)
    return (a, b), tuple(pairs)


def enumerate_closures(up_to_symmetry: bool = False) -> tuple[ClosureScheme, ...]:
    """All planar single-component closures of the two crossing disks.

    A scheme joins one pair of ends of distinct triple-crossing strands and
    matches the remaining four triple ends to the ordinary crossing's ends
    (ordinary ends never pair with each other: that would make a link or an
    immediately removable kink).  A scheme survives iff the assembled
    4-valent map is planar (6 traced faces) and a single closed curve.

    With ``up_to_symmetry`` the list is reduced by rotations of the two
    disks, which is the symmetry that lets one fix the internal pair.
    """
    out = []
    seen_canonical = set()
    for internal_pair, matching in _candidate_pairings():
        built, _reason = _build_map(internal_pair, matching)
        if built is None:
            continue
        rotation, twin = built
        faces = _count_faces(rotation, twin)
        if faces != 6 or not _single_component(twin):
            continue
        if up_to_symmetry:
            canon = min(_rotate_scheme(internal_pair, matching, r6, r4)
                        for r6 in range(6) for r4 in range(4))
            if canon in seen_canonical:
                continue
            seen_canonical.add(canon)
        out.append(ClosureScheme(internal_pair=internal_pair,
                                 matching=matching, faces=faces))
    return tuple(out)


def _worked_scheme_from(schemes: tuple[ClosureScheme, ...]) -> Optional[ClosureScheme]:
    want_internal = (5, 6)
    want_matching = tuple(sorted((e, t) for e, t in WORKED_SCHEME_PAIRING
                                 if isinstance(t, str)))
    for s in schemes:
        if (tuple(sorted(s.internal_pair)) == want_internal
                and tuple(sorted(s.matching)) == want_matching):
            return s
    return None


def WORKED_SCHEME() -> ClosureScheme:
    """The worked closure scheme; raises if enumeration ever drops it."""
    s = _worked_scheme_from(enumerate_closures())
    if s is None:
        raise RuntimeError("worked closure scheme missing from enumeration")
    return s


# ---------------------------------------------------------------------------
# Assembly into PD codes and classification


def assemble_pd(scheme: ClosureScheme, label: TripleLabeling,
                trad_over_ad: bool) -> tuple[tuple[tuple[int, int, int, int], ...], int]:
    """PD code and writhe of one closed-up diagram.

    ``trad_over_ad`` picks which strand of the ordinary crossing goes over
    (the a-d strand if true).  Arcs are labeled 1..8 in traversal order and
    each crossing's tuple lists its arcs counterclockwise from the incoming
    under-strand, matching the convention used throughout.
    """
    built, reason = _build_map(scheme.internal_pair, scheme.matching)
    if built is None:
        raise InvalidParameterError(reason)
    rotation, twin = built
    if _count_faces(rotation, twin) != 6 or not _single_component(twin):
        raise InvalidParameterError("scheme does not close into a planar knot")

    # Traverse the knot: record each crossing visit as (node, in-position).
    start = next(iter(twin))
    visits = []
    cur = start
    while True:
        node, pos = twin[cur]
        visits.append((node, pos))
        cur = (node, (pos + 2) % 4)
        if cur == start:
            break
    n = len(visits)  # 8: two visits per crossing

    def strand_at(node, pos) -> object:
        if node == "trad":
            return "ad" if pos % 2 == 0 else "bc"
        piece = rotation[node][pos]
        return piece[0]  # strand number

    def under_strand(node) -> object:
        if node == "trad":
            return "bc" if trad_over_ad else "ad"
        s, t = node
        return t if label.over_strand(s, t) == s else s

    # Arc i+1 enters visit i; the arc leaving enters the next visit.
    port_arc: dict[tuple[object, int], int] = {}
    for i, (node, pos) in enumerate(visits):
        port_arc[(node, pos)] = i + 1                      # incoming arc
        port_arc[(node, (pos + 2) % 4)] = (i + 1) % n + 1  # outgoing arc

    tuples = []
    writhe = 0
    for node in sorted({v[0] for v in visits}, key=str):
        ins = [pos for v, pos in visits if v == node]
        u_in = next(p for p in ins if strand_at(node, p) == under_strand(node))
        o_in = next(p for p in ins if p != u_in)
        tuples.append(tuple(port_arc[(node, (u_in + k) % 4)] for k in range(4)))
        # With counterclockwise ports, the crossing is positive exactly when
        # the over strand enters one step counterclockwise of the under-in.
        writhe += 1 if o_in == (u_in + 1) % 4 else -1
    return tuple(tuples), writhe


def classify_closure(scheme: ClosureScheme, label: TripleLabeling,
                     trad_over_ad: bool) -> KnotClass:
    """Knot type of one closed-up, height-labeled diagram."""
    pd, w = assemble_pd(scheme, label, trad_over_ad)
    return classify_jones(jones(pd, w))


def classify_triple_plus_one() -> frozenset[KnotClass]:
    """Knot classes over every planar closure, labeling and crossing choice.

    Exhausts all single-component planar closures (a superset of the
    clockwise/counterclockwise recipe), all 6 height labelings of the triple
    crossing and both choices at the ordinary crossing.
    """
    out = set()
    for scheme in enumerate_closures():
        for label in all_labelings():
            for trad_over_ad in (False, True):
                out.add(classify_closure(scheme, label, trad_over_ad))
    return frozenset(out)


def triple_report() -> dict:
    """JSON-ready report: every scheme, labeling, choice and its class."""
    rows = []
    kinds = set()
    for scheme in enumerate_closures():
        for label in all_labelings():
            for trad_over_ad in (False, True):
                k = classify_closure(scheme, label, trad_over_ad)
                kinds.add(k.kind)
                rows.append({
                    "internal_pair": list(scheme.internal_pair),
                    "matching": [[e, t] for e, t in scheme.matching],
                    "labeling": list(label.heights),
                    "ordinary_over_ad": trad_over_ad,
                    "class": k.label,
                })
    return {
        "schemes": len(enumerate_closures()),
        "cases": len(rows),
        "kinds": sorted(kinds),
        "rows": rows,
    }

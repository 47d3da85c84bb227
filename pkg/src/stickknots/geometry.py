"""Planar vector sets, closed polygonal walks, and crossing detection.

A collection of planar vectors summing to zero can be placed tip-to-tail in
any order to form a closed polygonal walk.  This module builds those walks,
finds all transversal self-intersections of non-adjacent edges, and resolves
the degenerate contacts (retraced edges, coincident vertices, vertices lying
on other edges, collinear overlaps) that symmetric vector sets produce in
abundance.

All computations use double precision with an explicit tolerance ``eps``
(default 1e-9).  Regular polygon coordinates are irrational, so exact
arithmetic is not attempted; every degenerate contact within ``eps`` is
instead classified and either resolved or flagged.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Union

__all__ = [
    "EPS_DEFAULT",
    "CLOSURE_FACTOR",
    "InvalidParameterError",
    "NonGenericDirectionError",
    "DegenerateDiagramError",
    "SizeError",
    "Vec2",
    "VectorSet",
    "Ordering",
    "Walk",
    "Transversal",
    "DegenerateContact",
    "Crossing",
    "Degeneracy",
    "Diagram",
    "regular_ngon",
    "build_walk",
    "segment_intersection",
    "detect_crossings",
    "resolve_degeneracies",
    "diagram_from_ordering",
    "polar_sort",
    "sign_components_ok",
    "unique_sign_component",
    "local_maxima_count",
]

EPS_DEFAULT = 1e-9
#: Closure tolerance is a small multiple of eps: prefix-sum accumulation error
#: stays far below it while genuine non-closure stays far above.
CLOSURE_FACTOR = 10.0


class InvalidParameterError(ValueError):
    """An argument violates a documented precondition."""


class NonGenericDirectionError(RuntimeError):
    """A height direction puts two vertices at equal height; retry perturbed."""


class DegenerateDiagramError(RuntimeError):
    """A diagram with unresolved degeneracies was passed to a consumer that
    requires a clean diagram."""


class SizeError(ValueError):
    """An enumeration would exceed the supported problem size."""


# ---------------------------------------------------------------------------
# Basic planar types


@dataclass(frozen=True)
class Vec2:
    """A planar vector (or point) with finite components."""

    x: float
    y: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise InvalidParameterError(f"non-finite components: ({self.x}, {self.y})")

    def __add__(self, other: "Vec2") -> "Vec2":
        return Vec2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Vec2") -> "Vec2":
        return Vec2(self.x - other.x, self.y - other.y)

    def __neg__(self) -> "Vec2":
        return Vec2(-self.x, -self.y)

    def scaled(self, k: float) -> "Vec2":
        return Vec2(k * self.x, k * self.y)

    def dot(self, other: "Vec2") -> float:
        return self.x * other.x + self.y * other.y

    def cross(self, other: "Vec2") -> float:
        return self.x * other.y - self.y * other.x

    def norm(self) -> float:
        return math.hypot(self.x, self.y)

    def normalized(self) -> "Vec2":
        n = self.norm()
        if n == 0.0:
            raise InvalidParameterError("cannot normalize the zero vector")
        return Vec2(self.x / n, self.y / n)

    def angle(self) -> float:
        """Polar angle in [0, 2*pi)."""
        a = math.atan2(self.y, self.x)
        if a < 0.0:
            a += 2.0 * math.pi
        return a % (2.0 * math.pi)

    def as_tuple(self) -> tuple[float, float]:
        return (self.x, self.y)


@dataclass(frozen=True)
class VectorSet:
    """An ordered collection of planar vectors summing to zero.

    ``vertical_extras`` counts additional vectors that project to zero in the
    plane and carry only vertical extent in 3-space; they contribute sticks
    but no planar edges.
    """

    vectors: tuple[Vec2, ...]
    vertical_extras: int = 0

    def __post_init__(self) -> None:
        if self.vertical_extras < 0:
            raise InvalidParameterError("vertical_extras must be >= 0")

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[float, float]],
                   vertical_extras: int = 0) -> "VectorSet":
        return cls(tuple(Vec2(x, y) for x, y in pairs), vertical_extras)

    def __len__(self) -> int:
        return len(self.vectors)

    def __getitem__(self, i: int) -> Vec2:
        return self.vectors[i]

    def total(self) -> Vec2:
        s = Vec2(0.0, 0.0)
        for v in self.vectors:
            s = s + v
        return s

    def is_zero_sum(self, eps: float = EPS_DEFAULT) -> bool:
        return self.total().norm() <= CLOSURE_FACTOR * eps


@dataclass(frozen=True)
class Ordering:
    """A permutation of vector indices, applied tip-to-tail."""

    perm: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.perm)
        if sorted(self.perm) != list(range(n)):
            raise InvalidParameterError(f"not a permutation of 0..{n - 1}: {self.perm}")

    def __len__(self) -> int:
        return len(self.perm)

    def __getitem__(self, i: int) -> int:
        return self.perm[i]

    def rotated(self, k: int) -> "Ordering":
        n = len(self.perm)
        k %= n
        return Ordering(self.perm[k:] + self.perm[:k])

    def reversed_(self) -> "Ordering":
        return Ordering(tuple(reversed(self.perm)))


@dataclass(frozen=True)
class Walk:
    """A closed polygonal walk: n+1 vertices with last = first within tolerance.

    Edge ``i`` runs from ``vertices[i]`` to ``vertices[i + 1]``.
    """

    vertices: tuple[Vec2, ...]

    @property
    def n_edges(self) -> int:
        return len(self.vertices) - 1

    def vertex(self, i: int) -> Vec2:
        return self.vertices[i % self.n_edges]

    def edge(self, i: int) -> tuple[Vec2, Vec2]:
        i %= self.n_edges
        return self.vertices[i], self.vertices[i + 1]

    def edge_vec(self, i: int) -> Vec2:
        p, q = self.edge(i)
        return q - p

    def point_on_edge(self, i: int, t: float) -> Vec2:
        p, q = self.edge(i)
        return Vec2(p.x + t * (q.x - p.x), p.y + t * (q.y - p.y))


def regular_ngon(n: int, length: float = 1.0, phase: float = 0.0) -> VectorSet:
    """The n vectors of equal length at angles ``phase + 2*pi*k/n``."""
    if n < 3:
        raise InvalidParameterError(f"regular_ngon requires n >= 3, got {n}")
    if length <= 0.0:
        raise InvalidParameterError("length must be positive")
    vecs = tuple(
        Vec2(length * math.cos(phase + 2.0 * math.pi * k / n),
             length * math.sin(phase + 2.0 * math.pi * k / n))
        for k in range(n)
    )
    return VectorSet(vecs)


def build_walk(vs: VectorSet, ordering: Ordering, eps: float = EPS_DEFAULT) -> Walk:
    """Place the vectors tip-to-tail in the given order, starting at the origin."""
    if len(ordering) != len(vs):
        raise InvalidParameterError(
            f"ordering length {len(ordering)} != vector count {len(vs)}")
    verts = [Vec2(0.0, 0.0)]
    for idx in ordering.perm:
        verts.append(verts[-1] + vs[idx])
    gap = verts[-1].norm()
    if gap > CLOSURE_FACTOR * eps:
        raise InvalidParameterError(
            f"walk does not close: endpoint gap {gap:.3e} exceeds tolerance")
    verts[-1] = verts[0]
    return Walk(tuple(verts))


# ---------------------------------------------------------------------------
# Segment intersection


@dataclass(frozen=True)
class Transversal:
    """A clean interior intersection of two segments."""

    t: float
    s: float
    point: Vec2


@dataclass(frozen=True)
class DegenerateContact:
    """A contact within tolerance of an endpoint or a collinear overlap.

    ``kind`` is ``vertex_contact`` (the intersection point lies within eps of
    an endpoint of either segment) or ``collinear_overlap``.
    """

    kind: str
    t: Optional[float] = None
    s: Optional[float] = None
    point: Optional[Vec2] = None


IntersectionResult = Union[None, Transversal, DegenerateContact]


def segment_intersection(p0: Vec2, p1: Vec2, q0: Vec2, q1: Vec2,
                         eps: float = EPS_DEFAULT) -> IntersectionResult:
    """Intersect segments p0-p1 and q0-q1 with tolerance eps.

    Returns ``None`` when the segments miss, a :class:`Transversal` for a
    clean interior crossing, or a :class:`DegenerateContact` when the
    intersection falls within ``eps`` of an endpoint or the segments overlap
    collinearly.
    """
    d1 = p1 - p0
    d2 = q1 - q0
    len1 = d1.norm()
    len2 = d2.norm()
    if len1 <= eps or len2 <= eps:
        raise InvalidParameterError("segment shorter than tolerance")

    den = d1.cross(d2)
    if abs(den) <= eps * len1 * len2:
        return _parallel_case(p0, p1, q0, q1, d1, d2, len1, len2, eps)

    w = q0 - p0
    t = w.cross(d2) / den
    s = w.cross(d1) / den
    # Reject when the meeting point of the supporting lines lies beyond
    # either segment by more than eps (measured as a distance).
    if t * len1 < -eps or (t - 1.0) * len1 > eps:
        return None
    if s * len2 < -eps or (s - 1.0) * len2 > eps:
        return None
    point = Vec2(p0.x + t * d1.x, p0.y + t * d1.y)
    near_end = min(
        (point - p0).norm(), (point - p1).norm(),
        (point - q0).norm(), (point - q1).norm(),
    )
    if near_end <= eps:
        return DegenerateContact("vertex_contact", t=t, s=s, point=point)
    return Transversal(t=t, s=s, point=point)


def _parallel_case(p0: Vec2, p1: Vec2, q0: Vec2, q1: Vec2,
                   d1: Vec2, d2: Vec2, len1: float, len2: float,
                   eps: float) -> IntersectionResult:
    """Handle (near-)parallel segments: collinear overlap, endpoint touch, or miss."""
    off0 = abs((q0 - p0).cross(d1)) / len1
    off1 = abs((q1 - p0).cross(d1)) / len1
    if off0 > eps or off1 > eps:
        return None
    # Collinear within tolerance: compare 1-d projections along d1.
    u = Vec2(d1.x / len1, d1.y / len1)
    a0, a1 = 0.0, len1
    b0 = (q0 - p0).dot(u)
    b1 = (q1 - p0).dot(u)
    lo = max(min(a0, a1), min(b0, b1))
    hi = min(max(a0, a1), max(b0, b1))
    if hi - lo > eps:
        return DegenerateContact("collinear_overlap")
    if hi - lo >= -eps:
        # Touching only at endpoints.
        point = p0 + u.scaled(0.5 * (lo + hi))
        return DegenerateContact("vertex_contact", point=point)
    return None


# ---------------------------------------------------------------------------
# Diagram types


@dataclass(frozen=True)
class Crossing:
    """A transversal double point between two edges of a walk.

    Parameters lie in (0, 1]; a parameter of exactly 1.0 marks a crossing at
    a walk vertex (the strand turns the corner exactly at the double point,
    represented on the incoming edge of that corner).  ``sign`` is the sign
    of the cross product of the two strand directions, edge_a first.
    """

    edge_a: int
    edge_b: int
    t_a: float
    t_b: float
    point: Vec2
    sign: int

    def __post_init__(self) -> None:
        if self.edge_a >= self.edge_b:
            raise InvalidParameterError("crossing edges must satisfy edge_a < edge_b")
        if self.sign not in (-1, 1):
            raise InvalidParameterError("crossing sign must be +1 or -1")

    def to_json(self) -> dict:
        return {
            "edge_a": self.edge_a,
            "edge_b": self.edge_b,
            "t_a": self.t_a,
            "t_b": self.t_b,
            "point": [self.point.x, self.point.y],
            "sign": self.sign,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Crossing":
        return cls(
            edge_a=int(obj["edge_a"]), edge_b=int(obj["edge_b"]),
            t_a=float(obj["t_a"]), t_b=float(obj["t_b"]),
            point=Vec2(float(obj["point"][0]), float(obj["point"][1])),
            sign=int(obj["sign"]),
        )


@dataclass(frozen=True)
class Degeneracy:
    """A non-transversal contact and how it was resolved.

    kind: one of retrace_pair, vertex_coincidence, vertex_on_edge,
        collinear_overlap.
    involved: indices of the participating features; vertex indices for
        coincidences, (vertex, edge) for vertex_on_edge, edge indices for
        retraces and collinear overlaps (all relative to the collapsed walk,
        except retrace pairs which refer to the walk before their removal).
    resolution: collapsed | crossing | no_crossing | unresolved.
    crossing: the resulting Crossing when resolution == "crossing".
    """

    kind: str
    involved: tuple[int, ...]
    resolution: str
    crossing: Optional[Crossing] = None

    def to_json(self) -> dict:
        obj = {
            "kind": self.kind,
            "involved": list(self.involved),
            "resolution": self.resolution,
        }
        if self.crossing is not None:
            obj["crossing"] = self.crossing.to_json()
        return obj

    @classmethod
    def from_json(cls, obj: dict) -> "Degeneracy":
        cr = obj.get("crossing")
        return cls(
            kind=str(obj["kind"]),
            involved=tuple(int(i) for i in obj["involved"]),
            resolution=str(obj["resolution"]),
            crossing=Crossing.from_json(cr) if cr is not None else None,
        )


@dataclass(frozen=True)
class Diagram:
    """A closed walk with its detected crossings and degeneracy records.

    ``walk`` is the collapsed walk (retraced edge pairs removed); edge
    indices in crossings and degeneracies refer to it.  ``vectors`` and
    ``ordering`` record the provenance when the diagram was built from a
    vector set.
    """

    walk: Walk
    crossings: tuple[Crossing, ...]
    degeneracies: tuple[Degeneracy, ...] = ()
    vectors: Optional[VectorSet] = None
    ordering: Optional[Ordering] = None

    @property
    def is_degenerate(self) -> bool:
        return any(d.resolution == "unresolved" for d in self.degeneracies)

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    def require_clean(self) -> None:
        if self.is_degenerate:
            raise DegenerateDiagramError(
                "diagram has unresolved degeneracies; refusing to code it")

    def to_json(self) -> dict:
        return {
            "vectors": (None if self.vectors is None else
                        [[v.x, v.y] for v in self.vectors.vectors]),
            "ordering": (None if self.ordering is None else
                         list(self.ordering.perm)),
            "vertices": [[v.x, v.y] for v in self.walk.vertices],
            "crossings": [c.to_json() for c in self.crossings],
            "degeneracies": [d.to_json() for d in self.degeneracies],
        }

    def to_json_str(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, obj: dict) -> "Diagram":
        vectors = None
        if obj.get("vectors") is not None:
            vectors = VectorSet.from_pairs((float(x), float(y))
                                           for x, y in obj["vectors"])
        ordering = None
        if obj.get("ordering") is not None:
            ordering = Ordering(tuple(int(i) for i in obj["ordering"]))
        walk = Walk(tuple(Vec2(float(x), float(y)) for x, y in obj["vertices"]))
        return cls(
            walk=walk,
            crossings=tuple(Crossing.from_json(c) for c in obj["crossings"]),
            degeneracies=tuple(Degeneracy.from_json(d)
                               for d in obj.get("degeneracies", [])),
            vectors=vectors,
            ordering=ordering,
        )


# ---------------------------------------------------------------------------
# Degeneracy resolution helpers


def _collapse_retraces(walk: Walk, eps: float) -> tuple[Walk, list[Degeneracy]]:
    """Remove cyclically consecutive edge pairs that retrace each other.

    A pair of consecutive edges v, -v contributes nothing to the curve: the
    walk goes out and comes straight back.  Removal is iterated (cyclically)
    until no retraced pair remains; cascades can shorten the walk a lot.
    """
    verts = list(walk.vertices[:-1])
    degs: list[Degeneracy] = []
    changed = True
    while changed and len(verts) >= 2:
        changed = False
        m = len(verts)
        for i in range(m):
            a = verts[i]
            b = verts[(i + 1) % m]
            c = verts[(i + 2) % m]
            if (a - c).norm() <= eps and (a - b).norm() > eps:
                degs.append(Degeneracy(
                    kind="retrace_pair",
                    involved=(i, (i + 1) % m),
                    resolution="collapsed",
                ))
                # Drop the middle vertex and the duplicate return vertex.
                drop = sorted(((i + 1) % m, (i + 2) % m), reverse=True)
                for j in drop:
                    del verts[j]
                changed = True
                break
    if verts:
        collapsed = Walk(tuple(verts) + (verts[0],))
    else:
        collapsed = Walk((Vec2(0.0, 0.0), Vec2(0.0, 0.0)))
    return collapsed, degs


def _ray_directions_at(walk: Walk, vertex: int) -> tuple[Vec2, Vec2]:
    """The two rays leaving a walk vertex: backwards along the incoming edge
    and forwards along the outgoing edge."""
    m = walk.n_edges
    d_in = walk.edge_vec((vertex - 1) % m)
    d_out = walk.edge_vec(vertex % m)
    return (-d_in), d_out


def _interleaved(rays_a: tuple[Vec2, Vec2], rays_b: tuple[Vec2, Vec2],
                 eps_angle: float = 1e-9) -> Optional[bool]:
    """Whether strand b's rays separate strand a's rays angularly.

    Four rays leave a shared point.  The two strands cross there exactly when
    their rays alternate around the circle.  Returns None when two rays are
    angularly indistinguishable (unresolvable contact).
    """
    labeled = [(r.angle(), 0) for r in rays_a] + [(r.angle(), 1) for r in rays_b]
    labeled.sort()
    for i in range(4):
        a0 = labeled[i][0]
        a1 = labeled[(i + 1) % 4][0]
        gap = (a1 - a0) % (2.0 * math.pi)
        if gap <= eps_angle or gap >= 2.0 * math.pi - eps_angle:
            if labeled[i][1] != labeled[(i + 1) % 4][1]:
                return None
    pattern = [lab for _, lab in labeled]
    return pattern[0] != pattern[1] and pattern[1] != pattern[2]


def _strand_tangent(rays: tuple[Vec2, Vec2]) -> Vec2:
    """Direction of travel through a vertex contact: the mean of the incoming
    and outgoing unit directions (equal to both for a straight pass)."""
    back, fwd = rays
    d_in = (-back).normalized()
    d_out = fwd.normalized()
    t = d_in + d_out
    if t.norm() <= 1e-12:
        # Perfect retrace should have been collapsed; fall back to incoming.
        return d_in
    return t.normalized()


def _sign_from_tangents(t_a: Vec2, t_b: Vec2) -> int:
    return 1 if t_a.cross(t_b) > 0.0 else -1


def _crossing_from_vertex_pair(walk: Walk, va: int, vb: int) -> Optional[Crossing]:
    """Resolve two coincident walk vertices into a crossing or a touch."""
    m = walk.n_edges
    rays_a = _ray_directions_at(walk, va)
    rays_b = _ray_directions_at(walk, vb)
    inter = _interleaved(rays_a, rays_b)
    if inter is None or not inter:
        return None if inter is None else _NO_CROSSING
    ea = (va - 1) % m
    eb = (vb - 1) % m
    point = walk.vertex(va)
    sign = _sign_from_tangents(_strand_tangent(rays_a), _strand_tangent(rays_b))
    if ea > eb:
        # Swapping the strand roles flips the cross product.
        ea, eb = eb, ea
        sign = -sign
    return Crossing(edge_a=ea, edge_b=eb, t_a=1.0, t_b=1.0, point=point, sign=sign)


def _crossing_from_vertex_on_edge(walk: Walk, v: int, e: int,
                                  s: float) -> Optional[Crossing]:
    """Resolve a walk vertex lying on the interior of a non-incident edge."""
    m = walk.n_edges
    rays_v = _ray_directions_at(walk, v)
    d_e = walk.edge_vec(e)
    rays_e = (-d_e, d_e)
    inter = _interleaved(rays_v, rays_e)
    if inter is None:
        return None
    if not inter:
        return _NO_CROSSING
    point = walk.vertex(v)
    corner_edge = (v - 1) % m
    tan_v = _strand_tangent(rays_v)
    tan_e = d_e.normalized()
    if corner_edge < e:
        sign = _sign_from_tangents(tan_v, tan_e)
        return Crossing(edge_a=corner_edge, edge_b=e, t_a=1.0, t_b=s,
                        point=point, sign=sign)
    sign = _sign_from_tangents(tan_e, tan_v)
    return Crossing(edge_a=e, edge_b=corner_edge, t_a=s, t_b=1.0,
                    point=point, sign=sign)


#: Sentinel distinguishing "resolved, no crossing" from "unresolved" (None).
_NO_CROSSING = "no_crossing"


def resolve_degeneracies(walk: Walk, contacts: Sequence[Degeneracy],
                         eps: float = EPS_DEFAULT) -> list[Degeneracy]:
    """Apply the resolution rules to detected contacts.

    vertex_coincidence and vertex_on_edge are resolved by angular
    interleaving of the four rays leaving the shared point: the strands
    cross there exactly when one strand's rays separate the other's.
    collinear_overlap stays unresolved (the diagram is flagged); retrace
    pairs arrive already collapsed.
    """
    resolved: list[Degeneracy] = []
    for deg in contacts:
        if deg.resolution != "pending":
            resolved.append(deg)
            continue
        if deg.kind == "vertex_coincidence":
            va, vb = deg.involved
            out = _crossing_from_vertex_pair(walk, va, vb)
        elif deg.kind == "vertex_on_edge":
            v, e = deg.involved
            s = _vertex_on_edge_param(walk, v, e)
            out = _crossing_from_vertex_on_edge(walk, v, e, s)
        else:
            out = None
        if out is None:
            resolved.append(Degeneracy(deg.kind, deg.involved, "unresolved"))
        elif out == _NO_CROSSING:
            resolved.append(Degeneracy(deg.kind, deg.involved, "no_crossing"))
        else:
            resolved.append(Degeneracy(deg.kind, deg.involved, "crossing", out))
    return resolved


def _vertex_on_edge_param(walk: Walk, v: int, e: int) -> float:
    p, q = walk.edge(e)
    d = q - p
    return (walk.vertex(v) - p).dot(d) / d.dot(d)


def _find_vertex_contacts(walk: Walk, eps: float) -> list[Degeneracy]:
    """Locate coincident vertex pairs and vertices lying on non-incident edges.

    A vertex involved in more than one contact (a triple point) is left for
    the caller to mark unresolved.
    """
    m = walk.n_edges
    contacts: list[Degeneracy] = []
    touch_count: dict[int, int] = {}
    for i in range(m):
        for j in range(i + 1, m):
            if (walk.vertex(i) - walk.vertex(j)).norm() <= eps:
                contacts.append(Degeneracy("vertex_coincidence", (i, j), "pending"))
                touch_count[i] = touch_count.get(i, 0) + 1
                touch_count[j] = touch_count.get(j, 0) + 1
    for v in range(m):
        for e in range(m):
            if e == v or e == (v - 1) % m:
                continue
            p, q = walk.edge(e)
            d = q - p
            ln = d.norm()
            if ln <= eps:
                continue
            s = (walk.vertex(v) - p).dot(d) / (ln * ln)
            proj = Vec2(p.x + s * d.x, p.y + s * d.y)
            if (walk.vertex(v) - proj).norm() > eps:
                continue
            if s * ln <= eps or (1.0 - s) * ln <= eps:
                continue  # endpoint contact: covered as a vertex coincidence
            contacts.append(Degeneracy("vertex_on_edge", (v, e), "pending"))
            touch_count[v] = touch_count.get(v, 0) + 1
    out: list[Degeneracy] = []
    for deg in contacts:
        v = deg.involved[0]
        multi = touch_count.get(v, 0) > 1
        if deg.kind == "vertex_coincidence":
            multi = multi or touch_count.get(deg.involved[1], 0) > 1
        if multi:
            out.append(Degeneracy(deg.kind, deg.involved, "unresolved"))
        else:
            out.append(deg)
    return out


def detect_crossings(walk: Walk, eps: float = EPS_DEFAULT) -> Diagram:
    """Find all crossings of a closed walk, resolving degenerate contacts.

    Pipeline: collapse retraced edge pairs, resolve vertex contacts by
    angular interleaving, then scan all non-adjacent edge pairs for
    transversal intersections.  Crossings are sorted by (edge_a, t_a).
    Collinear overlaps and unresolvable contacts flag the diagram.
    """
    collapsed, degs = _collapse_retraces(walk, eps)
    m = collapsed.n_edges
    if m < 3:
        return Diagram(walk=collapsed, crossings=(), degeneracies=tuple(degs))

    contacts = _find_vertex_contacts(collapsed, eps)
    contacts = resolve_degeneracies(collapsed, contacts, eps)
    degs.extend(contacts)
    crossings = [d.crossing for d in contacts if d.crossing is not None]
    contact_points = [d.crossing.point for d in contacts if d.crossing is not None]
    contact_points += [collapsed.vertex(d.involved[0]) for d in contacts
                       if d.crossing is None and d.kind != "collinear_overlap"]

    for i in range(m):
        for j in range(i + 1, m):
            if j == i + 1 or (i == 0 and j == m - 1):
                continue  # cyclically adjacent: shared vertex is never a crossing
            p0, p1 = collapsed.edge(i)
            q0, q1 = collapsed.edge(j)
            res = segment_intersection(p0, p1, q0, q1, eps)
            if res is None:
                continue
            if isinstance(res, Transversal):
                sign = _sign_from_tangents(collapsed.edge_vec(i),
                                           collapsed.edge_vec(j))
                crossings.append(Crossing(edge_a=i, edge_b=j, t_a=res.t,
                                          t_b=res.s, point=res.point, sign=sign))
            elif res.kind == "collinear_overlap":
                degs.append(Degeneracy("collinear_overlap", (i, j), "unresolved"))
            else:
                # Vertex contact: already handled by the vertex scan unless the
                # contact point matches no known contact (numerical surprise).
                pt = res.point
                known = pt is not None and any(
                    (pt - cp).norm() <= 10.0 * eps for cp in contact_points)
                if not known:
                    degs.append(Degeneracy("vertex_on_edge", (i, j), "unresolved"))

    crossings.sort(key=lambda c: (c.edge_a, c.t_a, c.edge_b, c.t_b))
    return Diagram(walk=collapsed, crossings=tuple(crossings),
                   degeneracies=tuple(degs))


def diagram_from_ordering(vs: VectorSet, ordering: Ordering,
                          eps: float = EPS_DEFAULT) -> Diagram:
    """Build the walk for an ordering and detect its crossings."""
    walk = build_walk(vs, ordering, eps)
    d = detect_crossings(walk, eps)
    return Diagram(walk=d.walk, crossings=d.crossings,
                   degeneracies=d.degeneracies, vectors=vs, ordering=ordering)


# ---------------------------------------------------------------------------
# Ordering and component predicates


def polar_sort(vs: VectorSet) -> Ordering:
    """Order the vectors by ascending polar angle in [0, 2*pi).

    Ties are broken by ascending length, then by original index.  A convex
    walk (hence an unknot projection) results for any zero-sum set.
    """
    for v in vs.vectors:
        if v.norm() == 0.0:
            raise InvalidParameterError("polar_sort requires nonzero vectors")
    keyed = sorted(range(len(vs)),
                   key=lambda i: (vs[i].angle(), vs[i].norm(), i))
    return Ordering(tuple(keyed))


def sign_components_ok(vs: VectorSet) -> bool:
    """True iff the x-components take both signs and so do the y-components.

    Both are necessary for the tip-to-tail walk to have any crossing at all.
    """
    tol = 1e-12
    xs = [v.x for v in vs.vectors]
    ys = [v.y for v in vs.vectors]
    return (any(x > tol for x in xs) and any(x < -tol for x in xs)
            and any(y > tol for y in ys) and any(y < -tol for y in ys))


def unique_sign_component(vs: VectorSet) -> Optional[tuple[str, int]]:
    """Find a vector that alone carries one sign of one axis component.

    Returns ``(axis, index)`` when exactly one vector has a positive (or
    negative) component on that axis and every other vector's component is
    non-positive (resp. non-negative); otherwise None.  Such a configuration
    can only produce trivially undoable twists.
    """
    tol = 1e-12
    for axis, comp in (("x", lambda v: v.x), ("y", lambda v: v.y)):
        for sgn in (1.0, -1.0):
            hits = [i for i, v in enumerate(vs.vectors) if sgn * comp(v) > tol]
            if len(hits) == 1:
                return (axis, hits[0])
    return None


def local_maxima_count(walk: Walk, direction: Vec2,
                       eps: float = EPS_DEFAULT) -> int:
    """Count strict cyclic local maxima of vertex heights along a direction.

    Raises :class:`NonGenericDirectionError` when two vertices are at equal
    height within tolerance; callers should retry with a perturbed direction.
    """
    if direction.norm() <= eps:
        raise InvalidParameterError("direction must be nonzero")
    u = direction.normalized()
    m = walk.n_edges
    heights = [walk.vertex(i).dot(u) for i in range(m)]
    scale = max(1.0, max(abs(h) for h in heights))
    for i in range(m):
        for j in range(i + 1, m):
            if abs(heights[i] - heights[j]) <= eps * scale:
                raise NonGenericDirectionError(
                    f"vertices {i} and {j} at equal height along direction")
    count = 0
    for i in range(m):
        if heights[i] > heights[(i - 1) % m] and heights[i] > heights[(i + 1) % m]:
            count += 1
    return count

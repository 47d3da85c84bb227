"""Height feasibility of crossing assignments.

An over/under choice at every crossing of a planar diagram is realizable by
straight sticks in 3-space exactly when the strict linear system on vertex
heights is feasible: at each crossing, the over edge's interpolated height
must exceed the under edge's.  The system is homogeneous, so feasibility is
scale invariant and "all slacks > 0" can be normalized to "all slacks >= 1";
that reformulation is solved as a linear program.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy.optimize import linprog

from .geometry import Diagram, InvalidParameterError, SizeError
from .codes import CrossingAssignment

__all__ = [
    "HeightConstraint",
    "HeightSystem",
    "HeightCertificate",
    "VerifyResult",
    "constraints_from_assignment",
    "solve_feasibility",
    "verify_certificate",
    "feasible_assignments",
    "vertical_stick_augmentation",
    "height_variable_map",
]

MAX_CONSTRAINTS = 64
MAX_VARIABLES = 64

#: Certificates needing heights beyond this scale (for the normalized
#: slack-1 system) indicate a system that is feasible only within rounding
#: error of an exactly degenerate boundary; such systems are reported
#: infeasible, since the exact strict system has no solution there.
MAX_CERTIFICATE_SCALE = 1e9


@dataclass(frozen=True)
class HeightConstraint:
    """One strict inequality sum(coeff * z_var) > 0, tagged by crossing."""

    coeffs: tuple[tuple[int, float], ...]
    crossing: int

    def slack(self, z: Sequence[float]) -> float:
        return sum(c * z[i] for i, c in self.coeffs)


@dataclass(frozen=True)
class HeightSystem:
    """A homogeneous system of strict inequalities over height variables."""

    constraints: tuple[HeightConstraint, ...]
    n_vars: int
    var_names: Optional[tuple[str, ...]] = None

    def slacks(self, z: Sequence[float]) -> tuple[float, ...]:
        if len(z) < self.n_vars:
            raise InvalidParameterError(
                f"certificate covers {len(z)} variables, system has {self.n_vars}")
        return tuple(c.slack(z) for c in self.constraints)


@dataclass(frozen=True)
class HeightCertificate:
    """Heights satisfying every constraint with slack >= margin > 0."""

    z: tuple[float, ...]
    margin: float

    def to_json(self, assignment: Optional[CrossingAssignment] = None) -> dict:
        obj = {"z": list(self.z), "margin": self.margin}
        if assignment is not None:
            obj["assignment"] = assignment.bits
        return obj

    @classmethod
    def from_json(cls, obj: dict) -> "HeightCertificate":
        return cls(z=tuple(float(v) for v in obj["z"]),
                   margin=float(obj["margin"]))


@dataclass(frozen=True)
class VerifyResult:
    ok: bool
    min_slack: float


def height_variable_map(d: Diagram,
                        split_vertices: frozenset[int] = frozenset()
                        ) -> dict[tuple[int, str], int]:
    """Map (vertex, "in"|"out") to a height-variable index.

    Unsplit vertices use one shared variable; a split vertex (one carrying a
    vertical stick) gets independent variables for the strand entering and
    the strand leaving, since the stick can bridge any height difference.
    """
    m = d.walk.n_edges
    mapping: dict[tuple[int, str], int] = {}
    next_var = 0
    for v in range(m):
        if v in split_vertices:
            mapping[(v, "in")] = next_var
            mapping[(v, "out")] = next_var + 1
            next_var += 2
        else:
            mapping[(v, "in")] = next_var
            mapping[(v, "out")] = next_var
            next_var += 1
    return mapping


def _edge_point_coeffs(d: Diagram, edge: int, t: float,
                       var_of: dict[tuple[int, str], int]) -> list[tuple[int, float]]:
    """Interpolation weights of the strand height at parameter t on an edge.

    The edge runs from vertex e (its "out" side) to vertex e+1 (its "in"
    side); a parameter of 1.0 (a crossing at the corner itself) puts all
    weight on the corner vertex.
    """
    m = d.walk.n_edges
    v0 = var_of[(edge % m, "out")]
    v1 = var_of[((edge + 1) % m, "in")]
    out: list[tuple[int, float]] = []
    if 1.0 - t > 0.0:
        out.append((v0, 1.0 - t))
    if t > 0.0:
        out.append((v1, t))
    return out


def constraints_from_assignment(d: Diagram, a: CrossingAssignment,
                                split_vertices: frozenset[int] = frozenset()
                                ) -> HeightSystem:
    """One strict inequality per crossing: over height minus under height > 0."""
    d.require_clean()
    if len(a) != d.n_crossings:
        raise InvalidParameterError("assignment does not cover the diagram")
    var_of = height_variable_map(d, split_vertices)
    n_vars = 1 + max(var_of.values()) if var_of else 0
    constraints = []
    for k, c in enumerate(d.crossings):
        if a.over_a[k]:
            over, t_over = c.edge_a, c.t_a
            under, t_under = c.edge_b, c.t_b
        else:
            over, t_over = c.edge_b, c.t_b
            under, t_under = c.edge_a, c.t_a
        acc: dict[int, float] = {}
        for i, w in _edge_point_coeffs(d, over, t_over, var_of):
            acc[i] = acc.get(i, 0.0) + w
        for i, w in _edge_point_coeffs(d, under, t_under, var_of):
            acc[i] = acc.get(i, 0.0) - w
        coeffs = tuple(sorted((i, w) for i, w in acc.items() if w != 0.0))
        constraints.append(HeightConstraint(coeffs=coeffs, crossing=k))
    return HeightSystem(constraints=tuple(constraints), n_vars=n_vars)


def solve_feasibility(sys: HeightSystem) -> Optional[HeightCertificate]:
    """Find heights satisfying every strict inequality, or None.

    Homogeneity makes strictness exact: the system has a solution with all
    slacks > 0 iff it has one with all slacks >= 1.  The latter is solved
    with the HiGHS simplex through an unrestricted-variable split
    z = p - q, minimizing sum(p + q) for a deterministic, small certificate.
    """
    if len(sys.constraints) > MAX_CONSTRAINTS:
        raise SizeError(f"{len(sys.constraints)} constraints exceed the cap")
    if not sys.constraints:
        return HeightCertificate(z=(0.0,) * sys.n_vars, margin=math.inf)
    # Variables that appear in no constraint are free; solve over the active
    # ones only and report zero heights for the rest.
    active = sorted({i for c in sys.constraints for i, _ in c.coeffs})
    if len(active) > MAX_VARIABLES:
        raise SizeError(f"{len(active)} active variables exceed the cap")
    col = {i: j for j, i in enumerate(active)}
    n = len(active)
    rows = len(sys.constraints)
    A = np.zeros((rows, n))
    for r, c in enumerate(sys.constraints):
        for i, w in c.coeffs:
            A[r, col[i]] = w
    # A (p - q) >= 1  <=>  -A p + A q <= -1, with p, q >= 0.
    A_ub = np.hstack([-A, A])
    b_ub = -np.ones(rows)
    cost = np.ones(2 * n)
    res = linprog(cost, A_ub=A_ub, b_ub=b_ub, bounds=[(0, None)] * (2 * n),
                  method="highs")
    if res.status == 2:
        return None
    if res.status != 0:
        raise RuntimeError(f"linear program did not converge: {res.message}")
    z_active = res.x[:n] - res.x[n:]
    if float(np.max(np.abs(z_active), initial=0.0)) > MAX_CERTIFICATE_SCALE:
        return None
    slacks = A @ z_active
    margin = float(np.min(slacks))
    if margin <= 0.0:
        # Numerical safety net; HiGHS guarantees >= 1 - tiny here.
        return None
    z = [0.0] * sys.n_vars
    for i, j in col.items():
        z[i] = float(z_active[j])
    return HeightCertificate(z=tuple(z), margin=margin)


def verify_certificate(sys: HeightSystem,
                       cert: HeightCertificate) -> VerifyResult:
    """Recompute every slack; valid iff all are strictly positive."""
    slacks = sys.slacks(cert.z)
    if not slacks:
        return VerifyResult(ok=True, min_slack=math.inf)
    return VerifyResult(ok=all(s > 0.0 for s in slacks),
                        min_slack=min(slacks))


def feasible_assignments(d: Diagram,
                         split_vertices: frozenset[int] = frozenset()
                         ) -> list[tuple[CrossingAssignment, HeightCertificate]]:
    """All over/under assignments realizable by heights, with certificates.

    Flipping every crossing negates the system, so an assignment and its
    total flip are feasible together; the flip's certificate is the
    negated heights.  The enumeration exploits that to halve the solves.
    """
    d.require_clean()
    c = d.n_crossings
    if c > 16:
        raise SizeError(f"2^{c} assignments exceed the enumeration cap")
    solved: dict[int, Optional[HeightCertificate]] = {}
    out = []
    for bits in range(1 << c):
        comp = ((1 << c) - 1) ^ bits
        if comp in solved:
            prev = solved[comp]
            cert = None if prev is None else HeightCertificate(
                z=tuple(-v for v in prev.z), margin=prev.margin)
        else:
            a = CrossingAssignment.from_bits(c, bits)
            cert = solve_feasibility(
                constraints_from_assignment(d, a, split_vertices))
        solved[bits] = cert
        if cert is not None:
            out.append((CrossingAssignment.from_bits(c, bits), cert))
    return out


def vertical_stick_augmentation(d: Diagram, vertices: frozenset[int]) -> int:
    """Stick count in 3-space after adding a vertical stick at each vertex.

    A vertical stick occupies a single planar point, contributes one stick,
    and decouples the heights of the strands meeting at that vertex (the
    split handled by :func:`height_variable_map`).
    """
    m = d.walk.n_edges
    for v in vertices:
        if not 0 <= v < m:
            raise InvalidParameterError(f"vertex {v} outside walk of {m} vertices")
    return m + len(vertices)

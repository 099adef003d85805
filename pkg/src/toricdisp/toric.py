"""Moment polytopes of open symplectic toric orbifolds.

A polytope is given by inequalities ``<lambda, v_i> >= eps_i`` (closed
facets, integral ``v_i`` whose lattice length is the orbifold multiplicity)
and ``<lambda, v_i> > eps_i`` (removed, open facets).  :func:`validate`
turns raw :class:`ToricData` into a :class:`ToricModel` carrying the derived
combinatorics: which constraints define facets, the face lattice of the
closure, and the spurious candidates coming from redundant constraints.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import prod
from typing import Iterable, Optional, Sequence

from .errors import (EmptyInterior, Inadmissible, InputError, NonIntegralNormal,
                     NotCompact, NotSimple, SemipositivityViolation)
from .linalg import as_fraction, dot, fmt, rank, smith_divisors, vec
from .polyhedra import (EQ, GE, GT, Constraint, Polyhedron, feasible,
                        minimize_linear)
from . import lp

DEFAULT_NORM_BOUND = 3


@dataclass(frozen=True)
class FacetSpec:
    normal: tuple[Fraction, ...]
    offset: Fraction
    strict: bool = False

    def __post_init__(self):
        object.__setattr__(self, "normal", vec(self.normal))
        object.__setattr__(self, "offset", as_fraction(self.offset))

    @property
    def integral(self) -> bool:
        return all(c.denominator == 1 for c in self.normal)

    @property
    def int_normal(self) -> tuple[int, ...]:
        return tuple(int(c) for c in self.normal)

    def constraint(self) -> Constraint:
        return Constraint(self.normal, self.offset, GT if self.strict else GE)

    def to_json(self) -> dict:
        return {"normal": [int(c) if c.denominator == 1 else fmt(c) for c in self.normal],
                "offset": fmt(self.offset), "strict": self.strict}


@dataclass(frozen=True)
class ToricData:
    name: str
    dim: int
    facets: tuple[FacetSpec, ...]

    def __post_init__(self):
        object.__setattr__(self, "facets", tuple(self.facets))

    @classmethod
    def build(cls, name: str, facets: Iterable) -> "ToricData":
        """Shorthand: ``facets`` are ``(normal, offset)`` or ``(normal, offset, strict)``."""
        specs = [f if isinstance(f, FacetSpec) else FacetSpec(*f) for f in facets]
        return cls(name, len(specs[0].normal), tuple(specs))

    def to_json(self) -> dict:
        return {"name": self.name, "dimension": self.dim,
                "facets": [f.to_json() for f in self.facets]}

    @classmethod
    def from_json(cls, d: dict) -> "ToricData":
        try:
            dim = int(d["dimension"])
            facets = tuple(FacetSpec(tuple(f["normal"]), f["offset"], bool(f.get("strict", False)))
                           for f in d["facets"])
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise InputError(f"malformed scenario data: {exc}") from exc
        for f in facets:
            if len(f.normal) != dim:
                raise InputError(f"normal {f.normal} does not have dimension {dim}")
        return cls(str(d.get("name", "unnamed")), dim, facets)


@dataclass(frozen=True)
class FaceDescriptor:
    """A face of the closure: its active constraint set and a relative-interior point."""

    active: frozenset[int]
    sample: tuple[Fraction, ...]
    dimension: int
    meets_phi: bool


@dataclass(frozen=True)
class SpuriousCandidate:
    direction: tuple[int, ...]
    bound: Fraction
    equality_allowed: bool
    source: str = "lattice"

    def lower_bound(self, point) -> Fraction:
        """Smallest admissible exponent ``<v, lambda> - eps_max`` at ``point``."""
        return dot(self.direction, point) - self.bound

    def to_json(self) -> dict:
        return {"direction": list(self.direction), "bound": fmt(self.bound),
                "equality_allowed": self.equality_allowed, "source": self.source}


class ToricModel:
    """Validated toric data with derived face structure (immutable by convention)."""

    def __init__(self, data: ToricData):
        self.data = data
        self.dim = data.dim
        self.facets = data.facets
        self.constraints = tuple(f.constraint() for f in data.facets)
        self.facet_defining = tuple(self._facet_defining(i) for i in range(len(self.facets)))
        self.facet_indices = tuple(i for i, f in enumerate(self.facets)
                                   if not f.strict and self.facet_defining[i])

    def __repr__(self):
        return f"ToricModel({self.data.name!r}, dim={self.dim}, facets={len(self.facets)})"

    @property
    def name(self) -> str:
        return self.data.name

    @cached_property
    def phi(self) -> Polyhedron:
        return Polyhedron(self.dim, self.constraints)

    @cached_property
    def closure(self) -> Polyhedron:
        return self.phi.closure()

    @cached_property
    def interior(self) -> Polyhedron:
        return Polyhedron(self.dim, tuple(c.strictified() for c in self.constraints))

    def is_interior(self, point) -> bool:
        return self.interior.contains(point)

    def _facet_defining(self, i: int) -> bool:
        c = self.constraints[i]
        face = Polyhedron(self.dim, tuple(x.closure() for x in self.constraints)
                          + (Constraint(c.coeffs, c.const, EQ),))
        return face.affine_dimension() == self.dim - 1

    @cached_property
    def facet_normals(self) -> tuple[tuple[int, ...], ...]:
        return tuple(self.facets[i].int_normal for i in self.facet_indices)

    @cached_property
    def faces(self) -> tuple[FaceDescriptor, ...]:
        """All faces of the closure, by exact active constraint set."""
        k = len(self.constraints)
        closed = [c.closure() for c in self.constraints]
        dead: list[frozenset] = []
        out = []
        for size in range(k + 1):
            for subset in itertools.combinations(range(k), size):
                s = frozenset(subset)
                if any(d <= s for d in dead):
                    continue
                tight = [Constraint(closed[i].coeffs, closed[i].const, EQ) if i in s else closed[i]
                         for i in range(k)]
                if not feasible(tight, self.dim):
                    dead.append(s)
                    continue
                exact = [Constraint(closed[i].coeffs, closed[i].const, EQ) if i in s
                         else closed[i].strictified() for i in range(k)]
                res = feasible(exact, self.dim)
                if not res:
                    continue
                eq_rows = [closed[i].coeffs for i in s]
                dim = self.dim - (rank(eq_rows) if eq_rows else 0)
                meets = not any(self.facets[i].strict for i in s)
                out.append(FaceDescriptor(s, res.witness, dim, meets))
        return tuple(out)

    def vertices(self) -> list[FaceDescriptor]:
        return [f for f in self.faces if f.dimension == 0]

    def active_facets(self, face: FaceDescriptor) -> list[int]:
        return [i for i in sorted(face.active) if i in self.facet_indices]

    @cached_property
    def redundant_candidates(self) -> tuple[SpuriousCandidate, ...]:
        """Non-strict constraints that define no facet, as spurious candidates."""
        out = []
        normals = set(self.facet_normals)
        for i, f in enumerate(self.facets):
            if f.strict or self.facet_defining[i] or f.int_normal in normals:
                continue
            cand = epsilon_max(self, f.int_normal)
            ok = f.offset < cand.bound or (f.offset == cand.bound and cand.equality_allowed)
            if not ok:
                # only possible when the hyperplane touches a smooth face
                face = next((g for g in self.faces if g.meets_phi and i in g.active
                             and aut_order(self, g) == 1), None)
                raise SemipositivityViolation(
                    f"redundant constraint {i} ({f.int_normal}, offset {fmt(f.offset)}) "
                    f"is not semipositive: too many normals active at a smooth face", face=face)
            # eps is pinned to the stated offset, which the check above admits
            out.append(SpuriousCandidate(cand.direction, f.offset, True,
                                         source=f"constraint {i}"))
        return tuple(out)

    def is_compact(self) -> bool:
        if any(f.strict for f in self.facets):
            return False
        for j in range(self.dim):
            for s in (1, -1):
                obj = [0] * self.dim
                obj[j] = s
                if minimize_linear(obj, self.constraints, self.dim).status != lp.OPTIMAL:
                    return False
        return True


def validate(data: ToricData) -> ToricModel:
    """Check the polytope conditions and return the derived model."""
    seen = []
    for f in data.facets:
        if len(f.normal) != data.dim:
            raise InputError(f"normal {f.normal} has wrong length for dimension {data.dim}")
        if all(c == 0 for c in f.normal):
            raise InputError("facet normal must be nonzero")
        if not f.strict and not f.integral:
            raise NonIntegralNormal(f"non-strict normal {f.normal} is not integral")
        if f not in seen:
            seen.append(f)
    if len(seen) != len(data.facets):
        data = ToricData(data.name, data.dim, tuple(seen))
    interior = Polyhedron(data.dim, tuple(f.constraint().strictified() for f in data.facets))
    if not feasible(interior.constraints, data.dim):
        raise EmptyInterior(f"{data.name}: the polytope has empty interior")
    model = ToricModel(data)
    for face in model.faces:
        if not face.meets_phi:
            continue
        normals = [model.facets[i].normal for i in model.active_facets(face)]
        if normals and rank(normals) < len(normals):
            raise NotSimple(f"{data.name}: dependent facet normals at face "
                            f"{sorted(face.active)} (sample {[fmt(x) for x in face.sample]})",
                            face=face)
    model.redundant_candidates  # raises on semipositivity violations
    return model


def facet_defining(model: ToricModel, i: int) -> bool:
    return model.facet_defining[i]


def aut_order(model: ToricModel, face: FaceDescriptor) -> int:
    """Order of the automorphism group of points over the face's relative interior."""
    normals = [model.facets[i].int_normal for i in model.active_facets(face)]
    if not normals:
        return 1
    if rank(normals) < len(normals):
        raise ValueError("active normals are dependent; the automorphism group is infinite")
    columns = [list(col) for col in zip(*normals)]
    return prod(smith_divisors(columns))


def epsilon_max(model: ToricModel, v: Sequence[int]) -> SpuriousCandidate:
    """Largest admissible offset for direction ``v`` and whether it may be attained.

    Raises :class:`Inadmissible` when ``<v, .>`` is unbounded below.
    """
    v = tuple(int(x) for x in v)
    if v in model.facet_normals:
        raise InputError(f"{v} is a facet normal; its offset is pinned to the facet")
    res = minimize_linear(v, model.constraints, model.dim)
    if res.status != lp.OPTIMAL:
        raise Inadmissible(f"<{v}, .> is unbounded below on {model.name}")
    m = res.value
    allowed = True
    for face in model.faces:
        if face.meets_phi and dot(v, face.sample) == m and aut_order(model, face) == 1:
            allowed = False
            break
    return SpuriousCandidate(v, m, allowed)


def enumerate_spurious(model: ToricModel, norm_bound: int = DEFAULT_NORM_BOUND) -> list[SpuriousCandidate]:
    """All admissible lattice directions with sup-norm at most ``norm_bound``."""
    found: dict[tuple[int, ...], SpuriousCandidate] = {}
    normals = set(model.facet_normals)
    rng = range(-norm_bound, norm_bound + 1)
    for v in itertools.product(rng, repeat=model.dim):
        if not any(v) or v in normals:
            continue
        try:
            found[v] = epsilon_max(model, v)
        except Inadmissible:
            continue
    for c in model.redundant_candidates:
        found.setdefault(c.direction, c)
    return sorted(found.values(), key=candidate_key)


def candidate_key(c: SpuriousCandidate):
    return (max(abs(x) for x in c.direction), c.direction)


def candidates_for(model: ToricModel, directions: Iterable[Sequence[int]]) -> list[SpuriousCandidate]:
    """Candidates for the given directions plus redundant-constraint candidates.

    Inadmissible directions are dropped.
    """
    out: dict[tuple[int, ...], SpuriousCandidate] = {}
    for d in directions:
        d = tuple(int(x) for x in d)
        if d in out:
            continue
        try:
            out[d] = epsilon_max(model, d)
        except Inadmissible:
            continue
    for c in model.redundant_candidates:
        out.setdefault(c.direction, c)
    return list(out.values())


def bounding_box(model: ToricModel) -> tuple[tuple[Optional[Fraction], Optional[Fraction]], ...]:
    """Per-axis extent of the polytope; ``None`` marks an unbounded side."""
    box = []
    for j in range(model.dim):
        e = [0] * model.dim
        e[j] = 1
        lo = minimize_linear(e, model.constraints, model.dim)
        hi = minimize_linear([-x for x in e], model.constraints, model.dim)
        box.append((lo.value if lo.status == lp.OPTIMAL else None,
                    -hi.value if hi.status == lp.OPTIMAL else None))
    return tuple(box)


def canonical_cover(model: ToricModel) -> list[ToricData]:
    """One chart per vertex: facets through the vertex kept, all others opened."""
    if not model.is_compact():
        raise NotCompact(f"{model.name} is not compact")
    charts = []
    for vert in model.vertices():
        facets = tuple(FacetSpec(f.normal, f.offset, i not in vert.active)
                       for i, f in enumerate(model.facets))
        label = ",".join(fmt(x) for x in vert.sample)
        charts.append(ToricData(f"{model.name}@({label})", model.dim, facets))
    return charts


def load_scenario_file(path) -> dict:
    with open(path) as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: invalid JSON ({exc})") from exc

"""Displaceability by probes.

A probe starts at a point ``lambda_0`` of an open smooth facet ``F`` and runs
in an integral direction ``w`` with ``<v_F, w> = 1``.  Fibers over points
less than half-way along the probe are displaceable.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .errors import ExteriorPoint, InputError, OrbifoldFacet
from .linalg import dot, fmt, is_primitive, vec
from .novikov import Check
from .polyhedra import GT, Constraint, Polyhedron
from .regions import RegionSet, canonical_region
from .toric import ToricModel

DEFAULT_SEARCH_BOUND = 2


@dataclass(frozen=True)
class ProbeCertificate:
    """``point = entry + t * direction`` with ``2t < length``; ``length`` ``None`` means infinite."""

    facet: int
    direction: tuple[int, ...]
    entry: tuple[Fraction, ...]
    length: Optional[Fraction]
    t: Fraction
    point: tuple[Fraction, ...]
    kind: str = field(default="displaceable", init=False)

    def validate(self, model: ToricModel) -> Check:
        """Re-derive every defining clause from the toric data alone."""
        if not 0 <= self.facet < len(model.facets):
            return Check(False, "facet index out of range")
        f = model.facets[self.facet]
        if f.strict or not model.facet_defining[self.facet]:
            return Check(False, f"constraint {self.facet} is not a closed facet")
        if not is_primitive(f.int_normal):
            return Check(False, f"facet {self.facet} has imprimitive normal {f.int_normal}")
        if dot(f.int_normal, self.direction) != 1:
            return Check(False, "direction is not integrally transverse to the facet")
        if dot(f.normal, self.entry) != f.offset:
            return Check(False, "entry point is not on the facet hyperplane")
        for k, c in enumerate(model.constraints):
            if k != self.facet and not c.strictified().holds(self.entry):
                return Check(False, f"entry point is not in the open facet (constraint {k})")
        if self.t <= 0:
            return Check(False, "probe parameter must be positive")
        if tuple(e + self.t * d for e, d in zip(self.entry, self.direction)) != self.point:
            return Check(False, "entry + t * direction is not the query point")
        T = exit_length(model, self.entry, self.direction)
        if T != self.length:
            return Check(False, "recorded probe length is wrong")
        if T is not None and not 2 * self.t < T:
            return Check(False, "point is not less than half-way along the probe")
        return Check(True)

    def to_json(self) -> dict:
        return {"kind": self.kind, "facet": self.facet, "direction": list(self.direction),
                "entry": [fmt(x) for x in self.entry],
                "length": "inf" if self.length is None else fmt(self.length),
                "t": fmt(self.t), "point": [fmt(x) for x in self.point]}


@dataclass(frozen=True)
class NotFound:
    point: tuple[Fraction, ...]
    search_bound: int
    kind: str = field(default="notfound", init=False)

    def __bool__(self):
        return False

    def to_json(self) -> dict:
        return {"kind": self.kind, "point": [fmt(x) for x in self.point],
                "search_bound": self.search_bound}


def _closed_facet(model: ToricModel, i: int):
    if not 0 <= i < len(model.facets):
        raise InputError(f"no constraint with index {i}")
    if i not in model.facet_indices:
        raise InputError(f"constraint {i} is not a closed facet of {model.name}")
    return model.facets[i]


def integrally_transverse(model: ToricModel, facet: int, w: Sequence[int]) -> bool:
    f = _closed_facet(model, facet)
    if not is_primitive(f.int_normal):
        raise OrbifoldFacet(f"facet {facet} of {model.name} has imprimitive normal {f.int_normal}")
    return dot(f.int_normal, w) == 1


def eligible_facets(model: ToricModel) -> list[int]:
    return [i for i in model.facet_indices if is_primitive(model.facets[i].int_normal)]


def directions(model: ToricModel, facet: int, bound: int) -> list[tuple[int, ...]]:
    """Transverse directions of sup-norm at most ``bound``, in canonical order."""
    v = model.facets[facet].int_normal
    rng = range(-bound, bound + 1)
    ws = [w for w in itertools.product(rng, repeat=model.dim) if dot(v, w) == 1]
    return sorted(ws, key=lambda w: (max(abs(x) for x in w), w))


def exit_length(model: ToricModel, entry, w) -> Optional[Fraction]:
    """``sup{s : entry + s w in the polytope}``; ``None`` when the ray never leaves."""
    T = None
    for c in model.constraints:
        a = dot(c.coeffs, w)
        if a < 0:
            s = (dot(c.coeffs, entry) - c.const) / -a
            T = s if T is None or s < T else T
    return T


def probe_at(model: ToricModel, point, facet: int, w) -> Optional[ProbeCertificate]:
    f = model.facets[facet]
    t = dot(f.normal, point) - f.offset
    if t <= 0:
        return None
    entry = tuple(x - t * d for x, d in zip(point, w))
    for k, c in enumerate(model.constraints):
        if k != facet and not c.strictified().holds(entry):
            return None
    T = exit_length(model, entry, w)
    if T is not None and not 2 * t < T:
        return None
    return ProbeCertificate(facet, tuple(w), entry, T, t, tuple(point))


def probe_displaces(model: ToricModel, point, search_bound: int = DEFAULT_SEARCH_BOUND):
    """First probe certificate in (facet, direction) order, or :class:`NotFound`."""
    point = vec(point)
    if not model.is_interior(point):
        raise ExteriorPoint(f"{[fmt(x) for x in point]} is not interior to {model.name}")
    for i in eligible_facets(model):
        for w in directions(model, i, search_bound):
            cert = probe_at(model, point, i, w)
            if cert is not None:
                return cert
    return NotFound(point, search_bound)


def probe_polyhedron(model: ToricModel, facet: int, w) -> Polyhedron:
    """Points less than half-way along some probe from ``facet`` in direction ``w``."""
    n = model.dim
    f = model.facets[facet]
    vF = f.normal
    cons = [Constraint(vF, f.offset, GT)]  # t > 0
    for k, c in enumerate(model.constraints):
        a = dot(c.coeffs, w)
        if k != facet:
            # <v_k, lambda - t w> > eps_k : the entry point is in the open facet
            coeffs = tuple(c.coeffs[j] - a * vF[j] for j in range(n))
            cons.append(Constraint(coeffs, c.const - a * f.offset, GT))
        if a < 0:
            # <v_k, lambda + t w> > eps_k : 2t is below the exit length
            coeffs = tuple(c.coeffs[j] + a * vF[j] for j in range(n))
            cons.append(Constraint(coeffs, c.const + a * f.offset, GT))
    cons.extend(model.interior.constraints)
    return Polyhedron(n, tuple(cons))


def probe_region(model: ToricModel, search_bound: int = DEFAULT_SEARCH_BOUND) -> RegionSet:
    polys, prov = [], []
    for i in eligible_facets(model):
        for w in directions(model, i, search_bound):
            P = probe_polyhedron(model, i, w)
            if P.is_empty():
                continue
            polys.append(P)
            prov.append((f"facet={i};w=(" + ",".join(str(x) for x in w) + ")",))
    return canonical_region(RegionSet(model.dim, tuple(polys), tuple(prov)))

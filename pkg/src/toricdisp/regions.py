"""Finite unions of polyhedra."""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from .polyhedra import (EQ, GE, Constraint, Polyhedron, canonical, contains_polyhedron,
                        difference_pieces, subset_of_union)


@dataclass(frozen=True)
class RegionSet:
    """A union of polyhedra in a common ambient dimension.

    ``provenance[i]`` lists free-form labels (supports, probe data) that
    produced ``polyhedra[i]``.
    """

    dim: int
    polyhedra: tuple[Polyhedron, ...] = ()
    provenance: tuple[tuple[str, ...], ...] = ()

    def __post_init__(self):
        polys = tuple(self.polyhedra)
        prov = tuple(tuple(p) for p in self.provenance) or tuple(() for _ in polys)
        if len(prov) != len(polys):
            raise ValueError("provenance must match polyhedra")
        object.__setattr__(self, "polyhedra", polys)
        object.__setattr__(self, "provenance", prov)

    def __len__(self):
        return len(self.polyhedra)

    def __iter__(self):
        return iter(self.polyhedra)

    def is_empty(self) -> bool:
        return all(p.is_empty() for p in self.polyhedra)

    def contains(self, point) -> bool:
        return any(p.contains(point) for p in self.polyhedra)

    def issubset(self, other: "RegionSet") -> bool:
        return all(subset_of_union(p, other.polyhedra) for p in self.polyhedra)

    def same_set(self, other: "RegionSet") -> bool:
        return self.issubset(other) and other.issubset(self)

    def union(self, other: "RegionSet") -> "RegionSet":
        return RegionSet(self.dim, self.polyhedra + other.polyhedra,
                         self.provenance + other.provenance)

    def intersect(self, P: Polyhedron) -> "RegionSet":
        return RegionSet(self.dim, tuple(q.intersect(P) for q in self.polyhedra), self.provenance)

    def canonical(self) -> "RegionSet":
        return canonical_region(self)

    def constraint_sets(self) -> list[tuple[Constraint, ...]]:
        return [p.constraints for p in self.polyhedra]

    def area(self) -> Fraction:
        """Exact 2-dimensional measure of the union (closures of pieces)."""
        if self.dim != 2:
            raise ValueError("area is defined for planar regions only")
        total = Fraction(0)
        for piece in disjoint_pieces(self.polyhedra):
            total += polygon_area(piece)
        return total

    def render(self, names=None) -> str:
        if not self.polyhedra:
            return "(empty)"
        return " U ".join(p.render(names) for p in self.polyhedra)

    def to_json(self) -> dict:
        return {"dim": self.dim,
                "polyhedra": [dict(p.to_json(), provenance=list(pr))
                              for p, pr in zip(self.polyhedra, self.provenance)]}

    @classmethod
    def from_json(cls, d) -> "RegionSet":
        polys = tuple(Polyhedron.from_json(p) for p in d["polyhedra"])
        prov = tuple(tuple(p.get("provenance", ())) for p in d["polyhedra"])
        return cls(d["dim"], polys, prov)


def _key(P: Polyhedron):
    return tuple(c.sort_key() for c in P.constraints)


def _valid_on(c: Constraint, Q: Polyhedron) -> bool:
    return contains_polyhedron(Polyhedron(Q.dim, (c,)), Q)


def _as_inequalities(P: Polyhedron) -> list[Constraint]:
    out = []
    for c in P.constraints:
        if c.rel == EQ:
            out.append(Constraint(c.coeffs, c.const, GE))
            out.append(Constraint(tuple(-x for x in c.coeffs), -c.const, GE))
        else:
            out.append(c)
    return out


def _try_merge(P: Polyhedron, Q: Polyhedron) -> Optional[Polyhedron]:
    hull = [c for c in _as_inequalities(P) if _valid_on(c, Q)]
    hull += [c for c in _as_inequalities(Q) if _valid_on(c, P)]
    H = canonical(Polyhedron(P.dim, tuple(hull)))
    if H.empty:
        return None
    if subset_of_union(H, [P, Q]):
        return H
    return None


def canonical_region(R: RegionSet) -> RegionSet:
    """Deterministic simplification: canonical pieces, covered pieces dropped,
    pairs merged when their union is one polyhedron."""
    items = {}
    for P, prov in zip(R.polyhedra, R.provenance):
        C = canonical(P)
        if C.empty:
            continue
        key = _key(C)
        if key in items:
            items[key] = (C, tuple(sorted(set(items[key][1]) | set(prov))))
        else:
            items[key] = (C, tuple(prov))
    polys = [items[k] for k in sorted(items)]

    changed = True
    while changed:
        changed = False
        # drop pieces covered by the others
        for i, (P, prov) in enumerate(polys):
            others = [Q for j, (Q, _) in enumerate(polys) if j != i]
            if others and subset_of_union(P, others):
                target = next((j for j, (Q, _) in enumerate(polys)
                               if j != i and contains_polyhedron(Q, P)), None)
                del polys[i]
                if target is not None:
                    t = target if target < i else target - 1
                    Q, qprov = polys[t]
                    polys[t] = (Q, tuple(sorted(set(qprov) | set(prov))))
                changed = True
                break
        if changed:
            continue
        for i, j in itertools.combinations(range(len(polys)), 2):
            merged = _try_merge(polys[i][0], polys[j][0])
            if merged is not None:
                prov = tuple(sorted(set(polys[i][1]) | set(polys[j][1])))
                polys = [p for k, p in enumerate(polys) if k not in (i, j)]
                polys.append((merged, prov))
                polys.sort(key=lambda item: _key(item[0]))
                changed = True
                break
    polys.sort(key=lambda item: _key(item[0]))
    return RegionSet(R.dim, tuple(p for p, _ in polys), tuple(pr for _, pr in polys))


def disjoint_pieces(polys: Sequence[Polyhedron]) -> list[Polyhedron]:
    out: list[Polyhedron] = []
    seen: list[Polyhedron] = []
    for P in polys:
        parts = [P]
        for Q in seen:
            nxt = []
            for part in parts:
                nxt.extend(difference_pieces(part, Q))
            parts = nxt
        out.extend(parts)
        seen.append(P)
    return out


def _line_intersection(c1: Constraint, c2: Constraint):
    (a, b), (c, d) = c1.coeffs, c2.coeffs
    det = a * d - b * c
    if det == 0:
        return None
    e, f = c1.const, c2.const
    return ((e * d - b * f) / det, (a * f - e * c) / det)


def polygon_vertices(P: Polyhedron) -> list[tuple[Fraction, Fraction]]:
    """Vertices of the closure of a bounded planar polyhedron, counter-clockwise."""
    C = canonical(P)
    if C.empty:
        return []
    closed = [c.closure() for c in C.constraints]
    pts = set()
    for c1, c2 in itertools.combinations(closed, 2):
        x = _line_intersection(c1, c2)
        if x is not None and all(c.holds(x) for c in closed):
            pts.add(x)
    if any(c.rel == EQ for c in closed):
        return sorted(pts)  # a segment or a point
    return _sort_ccw(list(pts))


def _sort_ccw(pts):
    if len(pts) < 3:
        return sorted(pts)
    cx = sum(p[0] for p in pts) / len(pts)
    cy = sum(p[1] for p in pts) / len(pts)

    def half(p):
        dx, dy = p[0] - cx, p[1] - cy
        return 0 if (dy > 0 or (dy == 0 and dx > 0)) else 1

    def cmp(p, q):
        hp, hq = half(p), half(q)
        if hp != hq:
            return hp - hq
        cross = (p[0] - cx) * (q[1] - cy) - (p[1] - cy) * (q[0] - cx)
        if cross > 0:
            return -1
        if cross < 0:
            return 1
        return 0

    return sorted(pts, key=functools.cmp_to_key(cmp))


def polygon_area(P: Polyhedron) -> Fraction:
    from . import lp
    from .polyhedra import minimize_linear
    C = canonical(P)
    if C.empty or C.equalities:
        return Fraction(0)
    for obj in ((1, 0), (-1, 0), (0, 1), (0, -1)):
        if minimize_linear(obj, C.constraints, 2).status != lp.OPTIMAL:
            raise ValueError("area of an unbounded region")
    pts = polygon_vertices(C)
    s = Fraction(0)
    for (x1, y1), (x2, y2) in zip(pts, pts[1:] + pts[:1]):
        s += x1 * y2 - x2 * y1
    return abs(s) / 2


def grid_points(box: Sequence[tuple[Fraction, Fraction]], step: Fraction) -> Iterator[tuple[Fraction, ...]]:
    """Points ``lo + k * step`` of the box, last coordinate fastest."""
    step = Fraction(step)
    if step <= 0:
        raise ValueError("step must be positive")
    axes = []
    for lo, hi in box:
        lo, hi = Fraction(lo), Fraction(hi)
        axes.append([lo + k * step for k in range(int((hi - lo) / step) + 1)])
    return itertools.product(*axes)

"""Functoriality of quasimap mirrors on finite presentations.

The mirror of ``X`` is represented by its toric data together with a finite
set of spurious candidates.  Products concatenate, open embeddings pull
candidates back, and quotients push offsets forward.  The checks compare the
certified non-displaceable sets these operations predict.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Optional, Sequence

from .certifier import NonDispCertificate, certify_point, certify_region
from .errors import InputError, NotEmbedded
from .linalg import fmt, mat_vec, rank, smith_divisors, transpose, vec
from .polyhedra import Constraint, Polyhedron, contains_polyhedron, difference_pieces
from .regions import RegionSet, canonical_region, grid_points
from .toric import (FacetSpec, SpuriousCandidate, ToricData, ToricModel, bounding_box, candidates_for,
                    canonical_cover, validate)


@dataclass(frozen=True)
class MirrorDescriptor:
    """Finite generating data of a quasimap mirror."""

    data: ToricData
    candidates: tuple[tuple[int, ...], ...] = ()

    @property
    def model(self) -> ToricModel:
        return validate(self.data)

    def spurious(self) -> list[SpuriousCandidate]:
        return candidates_for(self.model, self.candidates)

    def region(self, **kw) -> RegionSet:
        return certify_region(self.model, self.spurious(), **kw)


# ---------------------------------------------------------------------------
# products


def product(X1: ToricData, X2: ToricData) -> ToricData:
    n1, n2 = X1.dim, X2.dim
    facets = [FacetSpec(tuple(f.normal) + (0,) * n2, f.offset, f.strict) for f in X1.facets]
    facets += [FacetSpec((0,) * n1 + tuple(f.normal), f.offset, f.strict) for f in X2.facets]
    return ToricData(f"{X1.name}x{X2.name}", n1 + n2, tuple(facets))


def product_candidates(c1: Iterable[Sequence[int]], c2: Iterable[Sequence[int]],
                       n1: int, n2: int) -> list[tuple[int, ...]]:
    return ([tuple(v) + (0,) * n2 for v in c1] + [(0,) * n1 + tuple(v) for v in c2])


def product_region(R1: RegionSet, R2: RegionSet) -> RegionSet:
    n1, n2 = R1.dim, R2.dim
    polys, prov = [], []
    for (P, p1), (Q, p2) in itertools.product(zip(R1.polyhedra, R1.provenance),
                                              zip(R2.polyhedra, R2.provenance)):
        cons = [Constraint(tuple(c.coeffs) + (0,) * n2, c.const, c.rel) for c in P.constraints]
        cons += [Constraint((0,) * n1 + tuple(c.coeffs), c.const, c.rel) for c in Q.constraints]
        polys.append(Polyhedron(n1 + n2, tuple(cons)))
        prov.append(tuple(p1) + tuple(p2))
    return canonical_region(RegionSet(n1 + n2, tuple(polys), tuple(prov)))


# ---------------------------------------------------------------------------
# open embeddings


@dataclass(frozen=True)
class EmbeddingWitness:
    """``small`` is an open toric sub-orbifold of ``big``.

    ``facet_map[i]`` is the index in ``small`` of the closed facet matching
    closed facet ``i`` of ``big``, or ``None`` when that facet was removed
    (its normal then contributes a spurious candidate on ``small``).
    """

    big: ToricData
    small: ToricData
    facet_map: tuple[tuple[int, Optional[int]], ...]

    def pulled_back(self, big_candidates: Iterable[Sequence[int]] = ()) -> list[tuple[int, ...]]:
        """Directions available on ``small``: big candidates plus removed facet normals."""
        small_normals = {self.small.facets[j].normal for _, j in self.facet_map if j is not None}
        dirs = [tuple(int(x) for x in v) for v in big_candidates]
        dirs += [tuple(int(x) for x in self.big.facets[i].normal)
                 for i, j in self.facet_map if j is None]
        out = []
        for d in dirs:
            if vec(d) not in small_normals and d not in out:
                out.append(d)
        return out

    def candidate_map(self, small_candidates: Iterable[Sequence[int]] = (),
                      big_candidates: Iterable[Sequence[int]] = ()) -> list[dict]:
        """Directions admissible on both sides, with both offsets.

        A direction that is a closed facet normal of ``big`` is paired with
        that facet's pinned offset.  Directions unbounded below on ``big``
        have no counterpart and are left out.
        """
        small, big = validate(self.small), validate(self.big)
        big_facets = {big.facets[i].int_normal: i for i in big.facet_indices}
        dirs = [tuple(int(x) for x in v) for v in small_candidates]
        dirs += [d for d in self.pulled_back(big_candidates) if d not in dirs]
        out = []
        for d in dirs:
            mine = next((c for c in candidates_for(small, [d]) if c.direction == d), None)
            if mine is None:
                continue
            if d in big_facets:
                theirs = {"facet": big_facets[d], "offset": fmt(big.facets[big_facets[d]].offset)}
            else:
                match = next((c for c in candidates_for(big, [d]) if c.direction == d), None)
                if match is None:
                    continue
                theirs = {"bound": fmt(match.bound), "equality_allowed": match.equality_allowed}
            out.append({"direction": list(d),
                         "small": {"bound": fmt(mine.bound), "equality_allowed": mine.equality_allowed},
                         "big": theirs})
        return out

    def then(self, inner: "EmbeddingWitness") -> "EmbeddingWitness":
        """Compose ``inner.small -> inner.big = self.small -> self.big``."""
        if inner.big != self.small:
            raise InputError("embeddings do not compose")
        first = dict(inner.facet_map)
        fm = tuple((i, None if j is None else first.get(j)) for i, j in self.facet_map)
        return EmbeddingWitness(self.big, inner.small, fm)

    def to_json(self) -> dict:
        return {"big": self.big.name, "small": self.small.name,
                "facet_map": [[i, j] for i, j in self.facet_map]}


def restrict(big: ToricData, small: ToricData) -> EmbeddingWitness:
    """Witness that ``small`` embeds openly in ``big``; raises :class:`NotEmbedded`."""
    if big.dim != small.dim:
        raise NotEmbedded("dimensions differ")
    B, S = validate(big), validate(small)
    if not contains_polyhedron(B.phi, S.phi):
        corners = [f.sample for f in S.vertices() if S.phi.contains(f.sample)
                   and not B.phi.contains(f.sample)]
        x = corners[0] if corners else difference_pieces(S.phi, B.phi)[0].relative_interior_point()
        raise NotEmbedded(f"{small.name} is not contained in {big.name}", x)
    big_closed = {(B.facets[i].normal, B.facets[i].offset): i for i in B.facet_indices}
    small_closed = {(S.facets[j].normal, S.facets[j].offset): j for j in S.facet_indices}
    for key, j in small_closed.items():
        if key not in big_closed:
            face = Polyhedron(S.dim, S.closure.constraints
                              + (Constraint(key[0], key[1], "="),))
            raise NotEmbedded(f"closed facet {j} of {small.name} is not a facet of {big.name}",
                              face.relative_interior_point())
    fm = tuple((i, small_closed.get(key)) for key, i in sorted(big_closed.items(), key=lambda t: t[1]))
    return EmbeddingWitness(big, small, fm)


# ---------------------------------------------------------------------------
# quotients


@dataclass(frozen=True)
class QuotientMap:
    """Integer matrix of ``pi: t -> t/t_0`` (rows index the quotient)."""

    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        m = tuple(tuple(int(x) for x in row) for row in self.matrix)
        object.__setattr__(self, "matrix", m)
        if not m or rank(m) != len(m):
            raise InputError("quotient map must have full row rank")
        if any(d != 1 for d in smith_divisors([list(r) for r in m])):
            raise InputError("quotient map is not surjective on lattices")

    @property
    def source_dim(self) -> int:
        return len(self.matrix[0])

    @property
    def target_dim(self) -> int:
        return len(self.matrix)

    def __call__(self, v: Sequence[int]) -> tuple[int, ...]:
        return tuple(int(x) for x in mat_vec(self.matrix, v))

    def then(self, other: "QuotientMap") -> "QuotientMap":
        """``other o self``."""
        prod_ = [[sum(a * b for a, b in zip(row, col)) for col in zip(*self.matrix)]
                 for row in other.matrix]
        return QuotientMap(tuple(tuple(r) for r in prod_))

    def dual(self, mu: Sequence) -> tuple[Fraction, ...]:
        """``pi^T mu``: a point of the level set of the subtorus moment map."""
        return tuple(vec(mat_vec(transpose(self.matrix), mu)))


NEG_INF = None  # marks eps = -infinity (the term is absent)


def pushforward_eps(pi: QuotientMap, eps: Mapping) -> dict:
    """``(pi_* eps)(v0) = min over finite-valued preimages``."""
    out: dict = {}
    for v, e in eps.items():
        v0 = pi(v)
        if e is NEG_INF:
            out.setdefault(v0, NEG_INF)
            continue
        e = Fraction(e)
        cur = out.get(v0)
        out[v0] = e if cur is NEG_INF or e < cur else cur
    return out


def pushforward_delta(pi: QuotientMap, eps: Mapping, delta: Mapping) -> dict:
    """Sum of ``delta`` over the preimages attaining the pushed-forward minimum."""
    low = pushforward_eps(pi, eps)
    out: dict = {}
    for v, d in delta.items():
        if v not in eps:
            raise InputError(f"delta is defined at {v} where eps is not")
        e, v0 = eps[v], pi(v)
        if e is NEG_INF or low[v0] is NEG_INF or Fraction(e) != low[v0]:
            continue
        out[v0] = out[v0] + d if v0 in out else d
    return out


def quotient(X: ToricData, pi: QuotientMap) -> ToricData:
    """Toric data of the reduction at level zero, in coordinates of ``(t/t_0)^*``."""
    if pi.source_dim != X.dim:
        raise InputError("quotient map does not match the dimension")
    merged: dict = {}
    for f in X.facets:
        normal = tuple(Fraction(x) for x in mat_vec(pi.matrix, f.normal))
        if not any(normal):
            if (f.strict and f.offset >= 0) or (not f.strict and f.offset > 0):
                raise InputError("the level set misses the polytope")
            continue
        key = (normal, f.offset)
        merged[key] = merged.get(key, False) or f.strict
    facets = tuple(FacetSpec(n, o, s) for (n, o), s in merged.items())
    return ToricData(f"{X.name}//pi", pi.target_dim, facets)


# ---------------------------------------------------------------------------
# checks


def _certified(model, cands, point, cap) -> bool:
    return isinstance(certify_point(model, cands, point, cap), NonDispCertificate)


def _box(model: ToricModel, default=(Fraction(0), Fraction(3))):
    """Bounding box with unbounded sides replaced by ``default``."""
    return tuple((default[0] if lo is None else lo, default[1] if hi is None else hi)
                 for lo, hi in bounding_box(model))


def _result(name, kind, passed, checked, witnesses, **extra) -> dict:
    out = {"name": name, "kind": kind, "passed": passed, "points_checked": checked,
           "witnesses": [[fmt(x) for x in w] for w in witnesses[:10]]}
    out.update(extra)
    return out


def check_product(X1: ToricData, c1, X2: ToricData, c2, cap: int = 3) -> dict:
    """Certified set of the product equals the product of certified sets, as polyhedra."""
    P = product(X1, X2)
    cands = product_candidates(c1, c2, X1.dim, X2.dim)
    R = MirrorDescriptor(P, tuple(cands)).region(support_cap=cap)
    R12 = product_region(MirrorDescriptor(X1, tuple(c1)).region(support_cap=cap),
                         MirrorDescriptor(X2, tuple(c2)).region(support_cap=cap))
    exact = R.polyhedra == R12.polyhedra
    same = exact or R.same_set(R12)
    return {"name": f"product:{X1.name},{X2.name}", "kind": "product", "passed": same,
            "exact_constraint_equality": exact,
            "region": R.to_json(), "product_of_regions": R12.to_json()}


def check_restriction(big: ToricData, big_cands, small: ToricData, small_cands=(),
                      step: Fraction = Fraction(1, 4), cap: int = 3) -> dict:
    """Grid check of ``FND(small) >= FND(big)`` on the interior of ``small``."""
    w = restrict(big, small)
    B, S = validate(big), validate(small)
    bc = candidates_for(B, big_cands)
    sc = candidates_for(S, list(small_cands) + w.pulled_back(big_cands))
    bad, n = [], 0
    for x in grid_points(_box(S), step):
        if not S.is_interior(x):
            continue
        n += 1
        if _certified(B, bc, x, cap) and not _certified(S, sc, x, cap):
            bad.append(x)
    return _result(f"restriction:{big.name}>{small.name}", "restriction", not bad, n, bad,
                   embedding=w.to_json(), small_candidates=[list(c.direction) for c in sc])


def check_quotient(X: ToricData, cands, pi: QuotientMap, step: Fraction = Fraction(1, 4),
                   cap: int = 3) -> dict:
    """FND of the quotient contains FND(X) on the zero level set."""
    Q = quotient(X, pi)
    XM, QM = validate(X), validate(Q)
    xc = candidates_for(XM, cands)
    images = [pi(c.direction) for c in xc if any(pi(c.direction))]
    images += [pi(XM.facets[i].int_normal) for i in XM.facet_indices]
    qnormals = set(QM.facet_normals)
    qc = candidates_for(QM, [d for d in images if d not in qnormals])
    bad, n = [], 0
    for mu in grid_points(_box(QM), step):
        lam = pi.dual(mu)
        if not QM.is_interior(mu) or not XM.is_interior(lam):
            continue
        n += 1
        if _certified(XM, xc, lam, cap) and not _certified(QM, qc, mu, cap):
            bad.append(mu)
    return _result(f"quotient:{X.name}", "quotient", not bad, n, bad,
                   quotient=Q.to_json(), map=[list(r) for r in pi.matrix])


def cover_data(X: ToricData, cands, step: Fraction = Fraction(1, 4), cap: int = 3) -> dict:
    """Evidence for the cover question: certified points of X versus of every chart."""
    M = validate(X)
    xc = candidates_for(M, cands)
    charts = canonical_cover(M)
    chart_models = []
    for ch in charts:
        w = restrict(X, ch)
        cm = validate(ch)
        chart_models.append((cm, candidates_for(cm, w.pulled_back(cands))))
    in_x, in_all, only_charts, only_x, n = 0, 0, [], [], 0
    for x in grid_points(_box(M), step):
        if not M.is_interior(x):
            continue
        n += 1
        a = _certified(M, xc, x, cap)
        b = all(_certified(cm, cc, x, cap) for cm, cc in chart_models)
        in_x += a
        in_all += b
        if b and not a:
            only_charts.append(x)
        if a and not b:
            only_x.append(x)
    return {"name": f"cover-question:{X.name}", "kind": "question", "passed": None,
            "points_checked": n, "certified_in_X": in_x, "certified_in_every_chart": in_all,
            "charts_only": [[fmt(t) for t in p] for p in only_charts[:10]],
            "X_only": [[fmt(t) for t in p] for p in only_x[:10]]}


def _library_checks() -> dict[str, Callable[[], list[dict]]]:
    from .scenarios import get

    def prod():
        b, d = get("ball2"), get("disk")
        return [check_product(b.data, b.candidates, d.data, d.candidates)]

    def restr():
        q, e = get("quadrant"), get("ellipsoid12")
        return [check_restriction(q.data, q.candidates, e.data, e.candidates, Fraction(1, 8))]

    def cover(name, step):
        def run():
            s = get(name)
            out = []
            for ch in canonical_cover(s.model):
                out.append(check_restriction(s.data, s.candidates, ch, (), step))
            return out
        return run

    def quot():
        s = get("p1xp1")
        return [check_quotient(s.data, s.candidates, QuotientMap(((1, 1),)), Fraction(1, 8))]

    def question():
        return [cover_data(get("p112").data, get("p112").candidates, Fraction(1, 8)),
                cover_data(get("p135").data, get("p135").candidates, Fraction(1, 4))]

    return {"product": prod, "restriction": restr,
            "cover-p112": cover("p112", Fraction(1, 8)),
            "cover-p135": cover("p135", Fraction(1, 4)),
            "quotient": quot, "question": question}


CHECKS = tuple(_library_checks())


def check_functoriality(which: str = "all") -> dict:
    """Run the named check (or all of them) and return a JSON-ready report."""
    table = _library_checks()
    names = list(table) if which == "all" else [which]
    for n in names:
        if n not in table:
            raise InputError(f"unknown check {n!r}; known: {', '.join(table)}, all")
    results = []
    for n in names:
        results.extend(table[n]())
    decided = [r["passed"] for r in results if r["passed"] is not None]
    return {"checks": results, "passed": all(decided)}

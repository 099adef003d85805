"""Non-displaceability certificates from the valuation-kernel criterion.

In unit coordinates a critical point of the bulk-deformed potential is a
vector ``z`` in the rational kernel of the direction matrix (tensored with
the Novikov field) whose valuations are pinned on facet columns and bounded
below on spurious columns.  :func:`criterion` searches for the valuation
vector with the tropical conditions (minimum attained twice on every
cocircuit); :func:`synthesize_witness` then builds an exact ``z`` and checks
it, so a positive verdict never rests on the search alone.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterator, Optional, Sequence

from .errors import ConsistencyViolation, ExteriorPoint, InputError, SynthesisFailed
from .linalg import (as_fraction, dot, fmt, kernel_basis, minimal_supports, primitive_integer, rank,
                     vec)
from .novikov import (FACET, Check, NovikovPoly, TermSpec, ValuationRule, delta_leading, q,
                      verify_certificate)
from .polyhedra import EQ, GE, GT, Constraint, Polyhedron, feasible, project
from .regions import RegionSet, canonical_region
from .toric import SpuriousCandidate, ToricModel, candidate_key

DEFAULT_SUPPORT_CAP = 3
DEFAULT_SEED = 0
SYNTHESIS_RETRIES = 64


@dataclass(frozen=True)
class Column:
    """One potential term: its direction and offset.

    Facet columns have exponent exactly ``<v, lambda> - offset``.  Spurious
    columns may have any exponent at least that (strictly more when
    ``strict``), which is the freedom of choosing ``eps(v) <= eps_max``.
    """

    direction: tuple[int, ...]
    offset: Fraction
    spurious: bool = False
    strict: bool = False

    def __post_init__(self):
        object.__setattr__(self, "direction", tuple(int(x) for x in self.direction))
        object.__setattr__(self, "offset", as_fraction(self.offset))

    def exponent(self, point) -> Fraction:
        return dot(self.direction, point) - self.offset

    def rule(self, point) -> ValuationRule:
        if not self.spurious:
            return FACET
        return ValuationRule(self.exponent(point), self.strict)

    def to_json(self) -> dict:
        return {"v": list(self.direction), "offset": fmt(self.offset),
                "spurious": self.spurious, "strict": self.strict}

    @classmethod
    def from_json(cls, d) -> "Column":
        return cls(tuple(d["v"]), d["offset"], d["spurious"], d["strict"])


class ValuationProblem:
    """Columns of a potential: facet columns first, then a spurious support."""

    def __init__(self, dim: int, columns: Sequence[Column]):
        columns = tuple(columns)
        seen_spurious = False
        for c in columns:
            if len(c.direction) != dim:
                raise InputError(f"column {c.direction} does not have dimension {dim}")
            if not any(c.direction):
                raise InputError("zero direction")
            if c.spurious:
                seen_spurious = True
            elif seen_spurious:
                raise InputError("facet columns must precede spurious columns")
        spurious = [c.direction for c in columns if c.spurious]
        if len(set(spurious)) != len(spurious):
            raise InputError("duplicate spurious direction in support")
        self.dim = dim
        self.columns = columns
        self.n_fixed = sum(1 for c in columns if not c.spurious)

    @classmethod
    def from_model(cls, model: ToricModel, support: Sequence[SpuriousCandidate] = ()) -> "ValuationProblem":
        cols = [Column(model.facets[i].int_normal, model.facets[i].offset)
                for i in model.facet_indices]
        cols += [Column(c.direction, c.bound, True, not c.equality_allowed) for c in support]
        return cls(model.dim, cols)

    def __len__(self):
        return len(self.columns)

    def __repr__(self):
        return f"ValuationProblem(dim={self.dim}, columns={[c.direction for c in self.columns]})"

    @property
    def support(self) -> tuple[tuple[int, ...], ...]:
        return tuple(c.direction for c in self.columns if c.spurious)

    @cached_property
    def matrix(self) -> tuple[tuple[int, ...], ...]:
        """``dim x m`` matrix whose columns are the directions."""
        return tuple(tuple(c.direction[k] for c in self.columns) for k in range(self.dim))

    @cached_property
    def cocircuits(self) -> tuple[tuple[int, ...], ...]:
        return tuple(minimal_supports(self.matrix))

    @cached_property
    def kernel(self) -> tuple[tuple[Fraction, ...], ...]:
        return tuple(kernel_basis(self.matrix, len(self.columns)))

    def terms(self, w: Sequence[Fraction]) -> tuple[TermSpec, ...]:
        return tuple(TermSpec(c.direction, x) for c, x in zip(self.columns, w))

    def rules(self, point) -> tuple[ValuationRule, ...]:
        return tuple(c.rule(point) for c in self.columns)


# ---------------------------------------------------------------------------
# criterion


@dataclass(frozen=True)
class _Encoding:
    """Each column's valuation as an affine form in the search variables."""

    nvars: int
    forms: tuple[tuple[tuple[Fraction, ...], Fraction], ...]
    base: tuple[Constraint, ...]


def _unit(n, k):
    return tuple(Fraction(int(i == k)) for i in range(n))


def _point_encoding(problem: ValuationProblem, point) -> _Encoding:
    s = len(problem) - problem.n_fixed
    forms, base = [], []
    for c in problem.columns:
        if not c.spurious:
            forms.append(((Fraction(0),) * s, c.exponent(point)))
        else:
            k = len(forms) - problem.n_fixed
            forms.append((_unit(s, k), Fraction(0)))
            base.append(Constraint(_unit(s, k), c.exponent(point), GT if c.strict else GE))
    return _Encoding(s, tuple(forms), tuple(base))


def _region_encoding(problem: ValuationProblem, domain: Polyhedron) -> _Encoding:
    n = problem.dim
    s = len(problem) - problem.n_fixed
    nv = n + s
    forms = []
    base = [Constraint(tuple(c.coeffs) + (Fraction(0),) * s, c.const, c.rel)
            for c in domain.constraints]
    for c in problem.columns:
        lam = tuple(Fraction(x) for x in c.direction)
        if not c.spurious:
            forms.append((lam + (Fraction(0),) * s, -c.offset))
        else:
            k = len(forms) - problem.n_fixed
            wk = _unit(nv, n + k)
            forms.append((wk, Fraction(0)))
            # w_k - <v, lambda> >= -offset
            base.append(Constraint(tuple(a - b for a, b in zip(wk, lam + (0,) * s)),
                                   -c.offset, GT if c.strict else GE))
    return _Encoding(nv, tuple(forms), tuple(base))


def _relation(enc: _Encoding, a: int, b: int, rel: str) -> Constraint:
    """``w_a rel w_b``."""
    (ca, ka), (cb, kb) = enc.forms[a], enc.forms[b]
    return Constraint(tuple(x - y for x, y in zip(ca, cb)), kb - ka, rel)


def _split_constraints(enc: _Encoding, C: Sequence[int], a: int, b: int):
    """Constraints saying the minimum over ``C`` is attained at ``a`` and ``b``."""
    out = [_relation(enc, a, b, EQ)]
    out += [_relation(enc, k, a, GE) for k in C if k not in (a, b)]
    return out


def _extend(cons: tuple[Constraint, ...], new: Sequence[Constraint]):
    """Add constraints, dropping tautologies; ``None`` if one is a contradiction."""
    out = list(cons)
    for c in new:
        if c.is_trivial():
            if not c.holds([0] * c.arity):
                return None
            continue
        c = c.normalized()
        if c not in out:
            out.append(c)
    return tuple(out)


def _search(problem: ValuationProblem, enc: _Encoding, first_only: bool):
    """Depth-first case split over argmin pairs; yields feasible leaf systems."""
    order = sorted(problem.cocircuits, key=lambda C: (len(C), C))
    start = _extend((), enc.base)
    if start is None:
        return
    seen: set = set()

    def rec(depth, cons):
        key = (depth, frozenset(cons))
        if key in seen:
            return
        seen.add(key)
        fz = feasible(cons, enc.nvars) if cons else feasible((), enc.nvars)
        if not fz:
            return
        if depth == len(order):
            yield cons, fz.witness
            return
        C = order[depth]
        for a, b in itertools.combinations(C, 2):
            nxt = _extend(cons, _split_constraints(enc, C, a, b))
            if nxt is None:
                continue
            found = False
            for leaf in rec(depth + 1, nxt):
                found = True
                yield leaf
            if found and first_only:
                return

    yield from rec(0, start)


def criterion(problem: ValuationProblem, point) -> Optional[tuple[Fraction, ...]]:
    """A valuation vector meeting every cocircuit condition and bound, or ``None``."""
    point = vec(point)
    enc = _point_encoding(problem, point)
    for _, x in _search(problem, enc, first_only=True):
        return _valuations(problem, enc, x)
    return None


def _valuations(problem, enc, x) -> tuple[Fraction, ...]:
    return tuple(dot(c, x) + k for c, k in enc.forms)


# ---------------------------------------------------------------------------
# witnesses


def _covering_vector(basis, block, rng: random.Random, retries: int):
    """A vector in the span of ``basis`` that is nonzero on every index of ``block``."""
    for j in block:
        if all(v[j] == 0 for v in basis):
            return None
    ranked = sorted(basis, key=lambda v: (sum(1 for x in v if x), tuple(abs(x) for x in v)))
    for v in ranked:
        if all(v[j] != 0 for j in block):
            return v
    for attempt in range(retries):
        span = 2 + attempt
        coeffs = [rng.choice([k for k in range(-span, span + 1) if k]) for _ in basis]
        y = tuple(sum((c * v[j] for c, v in zip(coeffs, basis)), Fraction(0))
                  for j in range(len(basis[0])))
        if all(y[j] != 0 for j in block):
            return tuple(Fraction(x) for x in primitive_integer(y))
    return None


def synthesize_witness(problem: ValuationProblem, point, w: Sequence, seed: int = DEFAULT_SEED,
                       retries: int = SYNTHESIS_RETRIES) -> tuple[NovikovPoly, ...]:
    """Exact kernel vector with valuations ``w``, verified before it is returned.

    Writing the distinct values of ``w`` as ``u_1 < ... < u_k``, the witness is
    ``sum_i q^{u_i} y_i`` where ``y_i`` lies in the kernel, vanishes on every
    column with valuation above ``u_i`` and is nonzero on those equal to it.
    """
    point = vec(point)
    w = vec(w)
    m = len(problem)
    if len(w) != m:
        raise ValueError("one valuation per column is required")
    rng = random.Random(seed)
    z = [NovikovPoly() for _ in range(m)]
    for u in sorted(set(w)):
        block = [j for j in range(m) if w[j] == u]
        above = [j for j in range(m) if w[j] > u]
        rows = [list(r) for r in problem.matrix] + [list(_unit(m, j)) for j in above]
        basis = kernel_basis(rows, m)
        y = _covering_vector(basis, block, rng, retries) if basis else None
        if y is None:
            raise SynthesisFailed(
                f"no kernel vector realises valuation {fmt(u)} on columns {block} "
                f"while vanishing on {above} ({problem!r}, w={[fmt(x) for x in w]})")
        for j, yj in enumerate(y):
            if yj:
                z[j] = z[j] + q(u, yj)
    z = tuple(z)
    check = verify_certificate(problem.terms(w), z, problem.rules(point))
    if not check:
        raise SynthesisFailed(f"synthesised witness fails verification: {check.reason}")
    return z


# ---------------------------------------------------------------------------
# certificates


@dataclass(frozen=True)
class NonDispCertificate:
    """A verified critical point of the potential at ``point``."""

    point: tuple[Fraction, ...]
    columns: tuple[Column, ...]
    valuations: tuple[Fraction, ...]
    witness: tuple[NovikovPoly, ...]
    seed: int = DEFAULT_SEED
    kind: str = field(default="nondisplaceable", init=False)

    @property
    def support(self) -> tuple[tuple[int, ...], ...]:
        return tuple(c.direction for c in self.columns if c.spurious)

    @property
    def implied_eps(self) -> tuple[Fraction, ...]:
        """``eps(v) = <v, lambda> - w_v`` on spurious columns."""
        return tuple(dot(c.direction, self.point) - w
                     for c, w in zip(self.columns, self.valuations) if c.spurious)

    def problem(self) -> ValuationProblem:
        return ValuationProblem(len(self.point), self.columns)

    def terms(self) -> tuple[TermSpec, ...]:
        return self.problem().terms(self.valuations)

    def rules(self) -> tuple[ValuationRule, ...]:
        return self.problem().rules(self.point)

    def leading_coefficients(self):
        return tuple(delta_leading(z, w) for z, w in zip(self.witness, self.valuations))

    def verify(self) -> Check:
        if len(self.valuations) != len(self.columns):
            return Check(False, "one valuation per column is required")
        for c, w in zip(self.columns, self.valuations):
            if not c.spurious and w != c.exponent(self.point):
                return Check(False, f"facet {c.direction}: valuation {fmt(w)} != "
                                    f"{fmt(c.exponent(self.point))} at the point")
        check = verify_certificate(self.terms(), self.witness, self.rules())
        if not check:
            return check
        for c, eps in zip([c for c in self.columns if c.spurious], self.implied_eps):
            if eps > c.offset or (c.strict and eps == c.offset):
                return Check(False, f"implied eps {fmt(eps)} for {c.direction} exceeds its bound")
        return Check(True)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "point": [fmt(x) for x in self.point],
            "columns": [c.to_json() for c in self.columns],
            "terms": [t.to_json() for t in self.terms()],
            "valuations": [fmt(x) for x in self.valuations],
            "witness": [z.to_json() for z in self.witness],
            "implied_eps": [fmt(x) for x in self.implied_eps],
            "leading_coefficients": [str(c) for c in self.leading_coefficients()],
            "seed": self.seed,
        }

    @classmethod
    def from_json(cls, d) -> "NonDispCertificate":
        return cls(vec(d["point"]), tuple(Column.from_json(c) for c in d["columns"]),
                   vec(d["valuations"]), tuple(NovikovPoly.from_json(z) for z in d["witness"]),
                   d.get("seed", DEFAULT_SEED))


@dataclass(frozen=True)
class Unknown:
    """Neither method decided the point within the recorded search bounds."""

    point: tuple[Fraction, ...]
    reason: str
    candidates: tuple[tuple[int, ...], ...] = ()
    support_cap: int = DEFAULT_SUPPORT_CAP
    seed: int = DEFAULT_SEED
    norm_bound: Optional[int] = None
    search_bound: Optional[int] = None
    kind: str = field(default="unknown", init=False)

    def to_json(self) -> dict:
        return {"kind": self.kind, "point": [fmt(x) for x in self.point], "reason": self.reason,
                "candidates": [list(c) for c in self.candidates],
                "support_cap": self.support_cap, "seed": self.seed,
                "norm_bound": self.norm_bound, "search_bound": self.search_bound}


def recheck(cert: NonDispCertificate, model: ToricModel,
            candidates: Sequence[SpuriousCandidate]) -> Check:
    """Re-validate a certificate against the toric data it claims to be about."""
    expected = ValuationProblem.from_model(model).columns
    facets = tuple(c for c in cert.columns if not c.spurious)
    if facets != expected:
        return Check(False, "facet columns do not match the toric data")
    if not model.is_interior(cert.point):
        return Check(False, "point is not interior")
    allowed = {c.direction: c for c in candidates}
    for col in cert.columns:
        if not col.spurious:
            continue
        cand = allowed.get(col.direction)
        if cand is None:
            return Check(False, f"{col.direction} is not an admissible candidate")
        if col.offset != cand.bound or col.strict != (not cand.equality_allowed):
            return Check(False, f"{col.direction}: bound data differs from the model")
    return cert.verify()


def _ordered(candidates: Sequence[SpuriousCandidate]) -> list[SpuriousCandidate]:
    uniq = {c.direction: c for c in candidates}
    return sorted(uniq.values(), key=candidate_key)


def supports(candidates: Sequence[SpuriousCandidate], cap: int) -> Iterator[tuple[SpuriousCandidate, ...]]:
    """Spurious supports in canonical (size, lexicographic) order."""
    cands = _ordered(candidates)
    for size in range(0, min(cap, len(cands)) + 1):
        yield from itertools.combinations(cands, size)


def certify_point(model: ToricModel, candidates: Sequence[SpuriousCandidate], point,
                  support_cap: int = DEFAULT_SUPPORT_CAP, seed: int = DEFAULT_SEED):
    """First verified certificate over the supports, or :class:`Unknown`."""
    point = vec(point)
    if len(point) != model.dim:
        raise InputError(f"point has dimension {len(point)}, expected {model.dim}")
    if not model.is_interior(point):
        raise ExteriorPoint(f"{[fmt(x) for x in point]} is not interior to {model.name}")
    for support in supports(candidates, support_cap):
        problem = ValuationProblem.from_model(model, support)
        w = criterion(problem, point)
        if w is None:
            continue
        z = synthesize_witness(problem, point, w, seed=seed)
        cert = NonDispCertificate(point, problem.columns, w, z, seed)
        check = cert.verify()
        if not check:
            raise SynthesisFailed(f"certificate failed re-verification: {check.reason}")
        return cert
    return Unknown(point, "no support admits a critical point",
                   tuple(c.direction for c in _ordered(candidates)), support_cap, seed)


def _support_label(support) -> str:
    if not support:
        return "support=facets"
    return "support=" + ";".join("(" + ",".join(str(x) for x in c.direction) + ")" for c in support)


def _rank_on(vectors, cols) -> int:
    if not cols:
        return 0
    return rank([[v[j] for j in cols] for v in vectors]) if vectors else 0


def kernel_flats(problem: ValuationProblem) -> dict[frozenset, int]:
    """Flats of the matroid of the kernel, with their ranks."""
    m = len(problem)
    K = problem.kernel
    flats = {}
    for size in range(m + 1):
        for S in itertools.combinations(range(m), size):
            r = _rank_on(K, S)
            if all(_rank_on(K, S + (j,)) > r for j in range(m) if j not in S):
                flats[frozenset(S)] = r
    return flats


def maximal_flags(problem: ValuationProblem) -> list[tuple[frozenset, ...]]:
    """Maximal chains of flats from the closure of the empty set to all columns.

    Empty when some column is a loop (forced to vanish on the kernel).
    """
    flats = kernel_flats(problem)
    if frozenset() not in flats:
        return []
    top = len(problem.kernel)
    by_rank: dict[int, list[frozenset]] = {}
    for F_, r in flats.items():
        by_rank.setdefault(r, []).append(F_)
    for r in by_rank:
        by_rank[r].sort(key=lambda S: sorted(S))
    out = []

    def rec(chain):
        r = len(chain) - 1
        if r == top:
            out.append(tuple(chain))
            return
        for G in by_rank.get(r + 1, ()):
            if chain[-1] < G:
                rec(chain + [G])

    rec([frozenset()])
    return out


def _flag_system(problem: ValuationProblem, domain: Polyhedron, flag) -> Polyhedron:
    """Points (lambda, u) with valuations constant on the blocks of ``flag``.

    Block ``i`` is ``flag[i] - flag[i-1]`` and carries value ``u_i``; values
    decrease along the chain, so every superlevel set of the valuation vector
    is one of the flats.
    """
    n, r = problem.dim, len(flag) - 1
    nv = n + r
    zero = (Fraction(0),) * r
    cons = [Constraint(tuple(c.coeffs) + zero, c.const, c.rel) for c in domain.constraints]
    block = {}
    for i in range(1, r + 1):
        for j in flag[i] - flag[i - 1]:
            block[j] = i - 1
    for j, col in enumerate(problem.columns):
        # u - <v, lambda> rel -offset
        coeffs = tuple(-Fraction(x) for x in col.direction) + _unit(r, block[j])
        rel = EQ if not col.spurious else (GT if col.strict else GE)
        cons.append(Constraint(coeffs, -col.offset, rel))
    for i in range(r - 1):
        cons.append(Constraint((Fraction(0),) * n + tuple(
            Fraction(1 if k == i else -1 if k == i + 1 else 0) for k in range(r)), 0, GE))
    return Polyhedron(nv, tuple(cons))


def region_for_problem(problem: ValuationProblem, domain: Polyhedron,
                       method: str = "flags") -> list[Polyhedron]:
    """Moment-space points where ``problem`` has a valuation vector.

    ``method="flags"`` decomposes the tropical kernel into cones of maximal
    flags of flats; ``method="cocircuits"`` projects every feasible argmin
    case split instead (slower, used for cross-checking).
    """
    if method == "flags":
        systems = [_flag_system(problem, domain, f) for f in maximal_flags(problem)]
    elif method == "cocircuits":
        enc = _region_encoding(problem, domain)
        systems = [Polyhedron(enc.nvars, cons)
                   for cons, _ in _search(problem, enc, first_only=False)]
    else:
        raise ValueError(f"unknown method {method!r}")
    out, keys = [], set()
    for S in systems:
        if S.is_empty():
            continue
        P = project(S, range(problem.dim))
        if P.empty:
            continue
        if P.constraints not in keys:
            keys.add(P.constraints)
            out.append(P)
    return out


def certify_region(model: ToricModel, candidates: Sequence[SpuriousCandidate],
                   support_cap: int = DEFAULT_SUPPORT_CAP, seed: int = DEFAULT_SEED,
                   verify: bool = True, method: str = "flags") -> RegionSet:
    """Exact set of interior points certified by some support (canonical form)."""
    polys, prov = [], []
    for support in supports(candidates, support_cap):
        problem = ValuationProblem.from_model(model, support)
        for P in region_for_problem(problem, model.interior, method):
            polys.append(P)
            prov.append((_support_label(support),))
    region = canonical_region(RegionSet(model.dim, tuple(polys), tuple(prov)))
    if verify:
        for P in region.polyhedra:
            x = P.relative_interior_point()
            res = certify_point(model, candidates, x, support_cap, seed)
            if not isinstance(res, NonDispCertificate):
                raise ConsistencyViolation(
                    f"region sample {[fmt(t) for t in x]} of {model.name} is not certified", x)
    return region

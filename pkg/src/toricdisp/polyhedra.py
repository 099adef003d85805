"""Rational polyhedra with mixed strict and non-strict constraints.

A :class:`Constraint` reads ``coeffs . x  rel  const`` with ``rel`` one of
``">="``, ``">"`` or ``"="``.  A :class:`Polyhedron` keeps its constraints in
canonical order; :func:`canonical` additionally makes implicit equalities
explicit, eliminates redundancy and puts equalities in reduced echelon form,
so two calls on the same set give identical constraint lists.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from . import lp
from .linalg import as_fraction, dot, fmt, primitive_integer, rref, vec

GE, GT, EQ = ">=", ">", "="
_REL_ORDER = {EQ: 0, GE: 1, GT: 2}


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple[Fraction, ...]
    const: Fraction
    rel: str = GE

    def __post_init__(self):
        if self.rel not in (GE, GT, EQ):
            raise ValueError(f"unknown relation {self.rel!r}")
        object.__setattr__(self, "coeffs", vec(self.coeffs))
        object.__setattr__(self, "const", as_fraction(self.const))

    @property
    def arity(self) -> int:
        return len(self.coeffs)

    @property
    def strict(self) -> bool:
        return self.rel == GT

    def value(self, x) -> Fraction:
        return dot(self.coeffs, x) - self.const

    def holds(self, x) -> bool:
        s = self.value(x)
        if self.rel == GE:
            return s >= 0
        if self.rel == GT:
            return s > 0
        return s == 0

    def is_trivial(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def trivially_true(self) -> bool:
        return self.is_trivial() and self.holds([0] * self.arity)

    def normalized(self) -> "Constraint":
        """Scale to primitive integer coefficients (positive factor; equalities
        additionally get a positive leading coefficient)."""
        if self.is_trivial():
            return self
        ints = primitive_integer(self.coeffs)
        nz = next(i for i, c in enumerate(self.coeffs) if c != 0)
        scale = Fraction(ints[nz]) / self.coeffs[nz]
        coeffs, const = ints, self.const * scale
        if self.rel == EQ and ints[nz] < 0:
            coeffs, const = tuple(-c for c in ints), -const
        return Constraint(coeffs, const, self.rel)

    def negation(self) -> list["Constraint"]:
        """Constraints whose union is the complement of this one."""
        neg = tuple(-c for c in self.coeffs)
        if self.rel == GE:
            return [Constraint(neg, -self.const, GT)]
        if self.rel == GT:
            return [Constraint(neg, -self.const, GE)]
        return [Constraint(self.coeffs, self.const, GT), Constraint(neg, -self.const, GT)]

    def closure(self) -> "Constraint":
        return Constraint(self.coeffs, self.const, GE) if self.rel == GT else self

    def strictified(self) -> "Constraint":
        return Constraint(self.coeffs, self.const, GT) if self.rel == GE else self

    def sort_key(self):
        return (_REL_ORDER[self.rel], tuple(-c for c in self.coeffs), self.const)

    def render(self, names: Sequence[str] | None = None) -> str:
        names = names or [f"x{i + 1}" for i in range(self.arity)]
        parts = []
        for c, nm in zip(self.coeffs, names):
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            coef = "" if mag == 1 else fmt(mag) + "*"
            parts.append(f"{sign} {coef}{nm}")
        lhs = " ".join(parts).lstrip("+ ").strip() or "0"
        if lhs.startswith("- "):
            lhs = "-" + lhs[2:]
        return f"{lhs} {self.rel} {fmt(self.const)}"

    def to_json(self) -> dict:
        return {"coeffs": [fmt(c) for c in self.coeffs], "const": fmt(self.const),
                "rel": self.rel, "strict": self.strict}

    @classmethod
    def from_json(cls, d) -> "Constraint":
        return cls(tuple(d["coeffs"]), d["const"], d["rel"])


def ge(coeffs, const) -> Constraint:
    return Constraint(tuple(coeffs), const, GE)


def gt(coeffs, const) -> Constraint:
    return Constraint(tuple(coeffs), const, GT)


def eq(coeffs, const) -> Constraint:
    return Constraint(tuple(coeffs), const, EQ)


@dataclass(frozen=True)
class LinearSystem:
    """An ordered list of constraints of common arity."""

    dim: int
    constraints: tuple[Constraint, ...] = ()

    def __post_init__(self):
        cons = tuple(self.constraints)
        for c in cons:
            if c.arity != self.dim:
                raise ValueError(f"constraint arity {c.arity} != {self.dim}")
        object.__setattr__(self, "constraints", cons)

    def __iter__(self):
        return iter(self.constraints)

    def __len__(self):
        return len(self.constraints)

    def extend(self, more: Iterable[Constraint]) -> "LinearSystem":
        return LinearSystem(self.dim, self.constraints + tuple(more))


@dataclass(frozen=True)
class Feasibility:
    feasible: bool
    witness: Optional[tuple[Fraction, ...]] = None

    def __bool__(self):
        return self.feasible


def _split(constraints, closure=False):
    A_ge, b_ge, A_eq, b_eq, strict = [], [], [], [], []
    for c in constraints:
        if c.rel == EQ:
            A_eq.append(c.coeffs)
            b_eq.append(c.const)
        elif c.rel == GT and not closure:
            strict.append(c)
        else:
            A_ge.append(c.coeffs)
            b_ge.append(c.const)
    return A_ge, b_ge, A_eq, b_eq, strict


def feasible(system, dim: int | None = None) -> Feasibility:
    """Decide a mixed strict/non-strict system exactly, with a witness point.

    Strict rows ``a.x > b`` become ``a.x - t >= b`` and ``t`` (capped at 1) is
    maximised; the system is feasible iff the optimum is positive.
    """
    if isinstance(system, Polyhedron) and system.empty:
        return Feasibility(False)
    cons = tuple(system)
    if dim is None:
        dim = system.dim if isinstance(system, (LinearSystem, Polyhedron)) else cons[0].arity
    return _feasible_cached(dim, cons)


@lru_cache(maxsize=200_000)
def _feasible_cached(dim, cons) -> Feasibility:
    for c in cons:
        if c.is_trivial() and not c.holds([0] * dim):
            return Feasibility(False)
    cons = tuple(c for c in cons if not c.is_trivial())
    if not cons:
        return Feasibility(True, tuple(Fraction(0) for _ in range(dim)))
    A_ge, b_ge, A_eq, b_eq, strict = _split(cons)
    if not strict:
        res = lp.minimize([0] * dim, A_ge, b_ge, A_eq, b_eq, nvars=dim)
        if res.status == lp.INFEASIBLE:
            return Feasibility(False)
        return Feasibility(True, res.x)
    n = dim + 1
    A = [tuple(a) + (0,) for a in A_ge]
    b = list(b_ge)
    for c in strict:
        A.append(tuple(c.coeffs) + (-1,))
        b.append(c.const)
    A.append((0,) * dim + (-1,))  # t <= 1
    b.append(-1)
    A.append((0,) * dim + (1,))  # t >= 0
    b.append(0)
    Ae = [tuple(a) + (0,) for a in A_eq]
    res = lp.minimize([0] * dim + [-1], A, b, Ae, b_eq, nvars=n)
    if res.status != lp.OPTIMAL or -res.value <= 0:
        return Feasibility(False)
    return Feasibility(True, res.x[:dim])


def minimize_linear(objective: Sequence, constraints, dim: int) -> lp.LPResult:
    """Minimise over the closure of the constraint set."""
    A_ge, b_ge, A_eq, b_eq, _ = _split(constraints, closure=True)
    return lp.minimize(list(objective), A_ge, b_ge, A_eq, b_eq, nvars=dim)


# ---------------------------------------------------------------------------
# Polyhedra


@dataclass(frozen=True)
class Polyhedron:
    """A rational polyhedron; ``empty`` marks the canonical empty set."""

    dim: int
    constraints: tuple[Constraint, ...] = ()
    empty: bool = False

    def __post_init__(self):
        cons = tuple(self.constraints)
        for c in cons:
            if c.arity != self.dim:
                raise ValueError(f"constraint arity {c.arity} != {self.dim}")
        object.__setattr__(self, "constraints", cons)

    def __iter__(self):
        return iter(self.constraints)

    def contains(self, x) -> bool:
        if self.empty:
            return False
        return all(c.holds(x) for c in self.constraints)

    def is_empty(self) -> bool:
        return self.empty or not feasible(self.constraints, self.dim)

    @property
    def equalities(self) -> tuple[Constraint, ...]:
        return tuple(c for c in self.constraints if c.rel == EQ)

    def intersect(self, other: "Polyhedron | Iterable[Constraint]") -> "Polyhedron":
        if isinstance(other, Polyhedron):
            if other.empty or self.empty:
                return Polyhedron(self.dim, (), True)
            other = other.constraints
        return Polyhedron(self.dim, self.constraints + tuple(other), self.empty)

    def closure(self) -> "Polyhedron":
        return Polyhedron(self.dim, tuple(c.closure() for c in self.constraints), self.empty)

    def relative_interior_point(self) -> Optional[tuple[Fraction, ...]]:
        """A point strictly inside every non-implied inequality."""
        can = canonical(self)
        if can.empty:
            return None
        cons = [c if c.rel == EQ else c.strictified() for c in can.constraints]
        res = feasible(cons, self.dim)
        return res.witness if res else None

    def affine_dimension(self) -> int:
        can = canonical(self)
        if can.empty:
            return -1
        return self.dim - len(can.equalities)

    def render(self, names=None) -> str:
        if self.empty:
            return "{}"
        return "{" + ", ".join(c.render(names) for c in self.constraints) + "}"

    def to_json(self) -> dict:
        return {"dim": self.dim, "empty": self.empty,
                "constraints": [c.to_json() for c in self.constraints]}

    @classmethod
    def from_json(cls, d) -> "Polyhedron":
        return cls(d["dim"], tuple(Constraint.from_json(c) for c in d["constraints"]),
                   d.get("empty", False))


def polyhedron(dim: int, constraints: Iterable[Constraint]) -> Polyhedron:
    return Polyhedron(dim, tuple(constraints))


def _merge_parallel(cons: list[Constraint]) -> list[Constraint]:
    best: dict = {}
    for c in cons:
        key = (c.rel == EQ, c.coeffs)
        if c.rel == EQ:
            best.setdefault(key, []).append(c)
            continue
        cur = best.get(key)
        if cur is None or c.const > cur.const or (c.const == cur.const and c.strict):
            best[key] = c
    out = []
    for key, val in best.items():
        out.extend(val if isinstance(val, list) else [val])
    return out


def _eliminate_equalities(eqs: list[Constraint], others: list[Constraint], dim: int):
    """Reduce equalities to echelon form and substitute pivots elsewhere."""
    rows = [list(c.coeffs) + [c.const] for c in eqs]
    red, pivots = rref(rows)
    if dim in pivots:  # 0 = nonzero
        return None, None
    new_eqs = [Constraint(tuple(r[:dim]), r[dim], EQ).normalized() for r in red]
    reduced = []
    for c in others:
        coeffs, const = list(c.coeffs), c.const
        for r, p in zip(red, pivots):
            f = coeffs[p]
            if f:
                coeffs = [a - f * b for a, b in zip(coeffs, r[:dim])]
                const = const - f * r[dim]
        reduced.append(Constraint(tuple(coeffs), const, c.rel))
    return new_eqs, reduced


_EMPTY_CACHE: dict = {}


def canonical(P: Polyhedron) -> Polyhedron:
    """Canonical form: explicit equalities in echelon form, irredundant
    primitive-integer inequalities, sorted."""
    if P.empty:
        return Polyhedron(P.dim, (), True)
    return _canonical_cached(P.dim, P.constraints)


@lru_cache(maxsize=50_000)
def _canonical_cached(dim: int, cons: tuple[Constraint, ...]) -> Polyhedron:
    empty = Polyhedron(dim, (), True)
    work = []
    for c in cons:
        if c.is_trivial():
            if not c.holds([0] * dim):
                return empty
            continue
        work.append(c.normalized())
    if not feasible(work, dim):
        return empty
    # implicit equalities
    eqs = [c for c in work if c.rel == EQ]
    ineqs = [c for c in work if c.rel != EQ]
    changed = True
    while changed:
        changed = False
        for c in list(ineqs):
            if c.rel != GE:
                continue
            test = eqs + [x for x in ineqs if x is not c] + [c.strictified()]
            if not feasible(test, dim):
                ineqs.remove(c)
                eqs.append(Constraint(c.coeffs, c.const, EQ))
                changed = True
                break
    if eqs:
        eqs, ineqs = _eliminate_equalities(eqs, ineqs, dim)
        if eqs is None:
            return empty
    cleaned = []
    for c in ineqs:
        if c.is_trivial():
            if not c.holds([0] * dim):
                return empty
            continue
        cleaned.append(c.normalized())
    ineqs = sorted(_merge_parallel(cleaned), key=Constraint.sort_key)
    # redundancy: drop c if the rest already implies it
    i = 0
    while i < len(ineqs):
        c = ineqs[i]
        rest = eqs + ineqs[:i] + ineqs[i + 1:]
        if not feasible(rest + c.negation(), dim):
            ineqs.pop(i)
        else:
            i += 1
    out = sorted(eqs, key=Constraint.sort_key) + ineqs
    return Polyhedron(dim, tuple(out))


def project(P: Polyhedron, keep: Sequence[int]) -> Polyhedron:
    """Fourier-Motzkin projection onto the variables ``keep`` (in that order).

    A derived inequality is strict iff one of its parents is strict.  The
    result is canonical.
    """
    keep = list(keep)
    dim = P.dim
    if P.empty:
        return Polyhedron(len(keep), (), True)
    cur = canonical(P)
    if cur.empty:
        return Polyhedron(len(keep), (), True)
    cons = list(cur.constraints)
    for k in [j for j in range(dim) if j not in keep]:
        eqk = next((c for c in cons if c.rel == EQ and c.coeffs[k] != 0), None)
        if eqk is not None:
            nxt = []
            for c in cons:
                if c is eqk:
                    continue
                f = c.coeffs[k]
                if f:
                    s = f / eqk.coeffs[k]
                    c = Constraint(tuple(a - s * b for a, b in zip(c.coeffs, eqk.coeffs)),
                                   c.const - s * eqk.const, c.rel)
                nxt.append(c)
            cons = nxt
        else:
            lower, upper, rest = [], [], []
            for c in cons:
                f = c.coeffs[k]
                (lower if f > 0 else upper if f < 0 else rest).append(c)
            for lo in lower:
                for up in upper:
                    a, b = lo.coeffs[k], -up.coeffs[k]
                    coeffs = tuple(b * x + a * y for x, y in zip(lo.coeffs, up.coeffs))
                    const = b * lo.const + a * up.const
                    rel = GT if (lo.strict or up.strict) else GE
                    rest.append(Constraint(coeffs, const, rel))
            cons = rest
        cons = list(canonical(Polyhedron(dim, tuple(cons))).constraints) if cons else []
    sub = [Constraint(tuple(c.coeffs[j] for j in keep), c.const, c.rel) for c in cons]
    return canonical(Polyhedron(len(keep), tuple(sub)))


def embed(P: Polyhedron, dim: int, positions: Sequence[int]) -> Polyhedron:
    """Lift ``P`` into ``dim`` variables, placing its variables at ``positions``."""
    out = []
    for c in P.constraints:
        coeffs = [Fraction(0)] * dim
        for j, p in enumerate(positions):
            coeffs[p] = c.coeffs[j]
        out.append(Constraint(tuple(coeffs), c.const, c.rel))
    return Polyhedron(dim, tuple(out), P.empty)


def contains_polyhedron(outer: Polyhedron, inner: Polyhedron) -> bool:
    """``inner`` is a subset of ``outer``."""
    if inner.empty:
        return True
    if outer.empty:
        return inner.is_empty()
    for c in outer.constraints:
        for neg in c.negation():
            if feasible(inner.constraints + (neg,), inner.dim):
                return False
    return True


def difference_pieces(P: Polyhedron, Q: Polyhedron) -> list[Polyhedron]:
    """Disjoint polyhedra whose union is ``P \\ Q``."""
    if P.empty or P.is_empty():
        return []
    if Q.empty:
        return [P]
    pieces = []
    prefix: list[Constraint] = []
    for c in Q.constraints:
        for neg in c.negation():
            piece = Polyhedron(P.dim, P.constraints + tuple(prefix) + (neg,))
            if not piece.is_empty():
                pieces.append(piece)
        prefix.append(c)
    return pieces


def subset_of_union(P: Polyhedron, Qs: Sequence[Polyhedron]) -> bool:
    """``P`` is covered by the union of ``Qs``."""
    todo = [P]
    for Q in Qs:
        nxt = []
        for piece in todo:
            nxt.extend(difference_pieces(piece, Q))
        todo = nxt
        if not todo:
            return True
    return all(p.is_empty() for p in todo)

"""Dense two-phase simplex over the rationals (Bland's rule).

Only what the polyhedral code needs: minimise a linear objective over
``{x : A_ge x >= b_ge, A_eq x = b_eq}`` with free variables.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    value: Optional[Fraction] = None
    x: Optional[tuple[Fraction, ...]] = None


def _eliminate(target, f, row, nz):
    for j in nz:
        target[j] -= f * row[j]


def _pivot(tab, obj, basis, r, c):
    row = tab[r]
    piv = row[c]
    if piv != 1:
        row = [v / piv if v else v for v in row]
        tab[r] = row
    nz = [j for j, v in enumerate(row) if v]
    for i, other in enumerate(tab):
        if i != r:
            f = other[c]
            if f:
                _eliminate(other, f, row, nz)
    f = obj[c]
    if f:
        _eliminate(obj, f, row, nz)
    basis[r] = c


def _iterate(tab, obj, basis, allowed) -> bool:
    """Run simplex iterations; return False when unbounded."""
    while True:
        enter = next((j for j in allowed if obj[j] < 0), None)
        if enter is None:
            return True
        best = None
        for i, row in enumerate(tab):
            a = row[enter]
            if a > 0:
                ratio = row[-1] / a
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            return False
        _pivot(tab, obj, basis, best[1], enter)


def _standard_form(c, A_ge, b_ge, A_eq, b_eq, nvars):
    # x = xp - xm ; each >= row gets a surplus column
    rows, rhs = [], []
    n_ge = len(A_ge)
    ncols = 2 * nvars + n_ge
    for k, (a, b) in enumerate(zip(A_ge, b_ge)):
        row = [Fraction(v) for v in a] + [-Fraction(v) for v in a] + [Fraction(0)] * n_ge
        row[2 * nvars + k] = Fraction(-1)
        rows.append(row)
        rhs.append(Fraction(b))
    for a, b in zip(A_eq, b_eq):
        rows.append([Fraction(v) for v in a] + [-Fraction(v) for v in a] + [Fraction(0)] * n_ge)
        rhs.append(Fraction(b))
    cost = [Fraction(v) for v in c] + [-Fraction(v) for v in c] + [Fraction(0)] * n_ge
    return rows, rhs, cost, ncols


def minimize(c: Sequence, A_ge: Sequence[Sequence] = (), b_ge: Sequence = (),
             A_eq: Sequence[Sequence] = (), b_eq: Sequence = (),
             nvars: int | None = None) -> LPResult:
    """Minimise ``c.x`` subject to ``A_ge x >= b_ge`` and ``A_eq x = b_eq``."""
    if nvars is None:
        nvars = len(c)
    rows, rhs, cost, ncols = _standard_form(c, A_ge, b_ge, A_eq, b_eq, nvars)
    m = len(rows)
    if m == 0:
        if any(v != 0 for v in c):
            return LPResult(UNBOUNDED)
        return LPResult(OPTIMAL, Fraction(0), tuple(Fraction(0) for _ in range(nvars)))
    tab = []
    for i, (row, b) in enumerate(zip(rows, rhs)):
        if b < 0:
            row = [-v for v in row]
            b = -b
        art = [Fraction(0)] * m
        art[i] = Fraction(1)
        tab.append(row + art + [b])
    basis = [ncols + i for i in range(m)]
    total = ncols + m
    # phase 1 objective: sum of artificials, expressed in reduced form
    obj = [Fraction(0)] * (total + 1)
    for row in tab:
        for j in range(ncols):
            obj[j] -= row[j]
        obj[-1] -= row[-1]
    _iterate(tab, obj, basis, range(ncols))
    if obj[-1] != 0:
        return LPResult(INFEASIBLE)
    # drive artificials out of the basis
    r = 0
    while r < len(tab):
        if basis[r] >= ncols:
            c_in = next((j for j in range(ncols) if tab[r][j] != 0), None)
            if c_in is None:
                del tab[r]
                del basis[r]
                continue
            _pivot(tab, obj, basis, r, c_in)
        r += 1
    tab = [row[:ncols] + [row[-1]] for row in tab]
    obj = list(cost) + [Fraction(0)]
    for i, b in enumerate(basis):
        f = obj[b]
        if f:
            obj = [a - f * v for a, v in zip(obj, tab[i])]
    if not _iterate(tab, obj, basis, range(ncols)):
        return LPResult(UNBOUNDED)
    y = [Fraction(0)] * ncols
    for i, b in enumerate(basis):
        y[b] = tab[i][-1]
    x = tuple(y[j] - y[nvars + j] for j in range(nvars))
    value = sum((Fraction(ci) * xi for ci, xi in zip(c, x)), Fraction(0))
    return LPResult(OPTIMAL, value, x)

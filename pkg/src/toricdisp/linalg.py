"""Exact rational and integer linear algebra.

Everything here works on plain Python sequences of ``int``/``Fraction``;
no floating point is involved anywhere.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Sequence

from .errors import EnumerationGuard

MAX_SUPPORT_COLUMNS = 16


def as_fraction(x) -> Fraction:
    """Convert ``int``, ``Fraction`` or a ``"p/q"`` string to ``Fraction``."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot convert {x!r} to an exact rational")


def fmt(x: Fraction) -> str:
    """Render a rational as ``"p/q"`` (or ``"p"`` when integral)."""
    x = as_fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def vec(xs: Iterable) -> tuple[Fraction, ...]:
    return tuple(as_fraction(x) for x in xs)


def dot(a: Sequence, b: Sequence):
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b) if a and b else 0


def primitive_integer(v: Sequence) -> tuple[int, ...]:
    """Positive rescaling of a rational vector to a primitive integer vector."""
    v = vec(v)
    den = reduce(lcm, (x.denominator for x in v), 1)
    ints = [int(x * den) for x in v]
    g = reduce(gcd, (abs(x) for x in ints), 0)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def is_primitive(v: Sequence[int]) -> bool:
    return reduce(gcd, (abs(int(x)) for x in v), 0) == 1


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    mat = [list(vec(r)) for r in rows]
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def _normalise_direction(v: Sequence[Fraction]) -> tuple[Fraction, ...]:
    ints = primitive_integer(v)
    lead = next((x for x in ints if x != 0), 0)
    if lead < 0:
        ints = tuple(-x for x in ints)
    return tuple(Fraction(x) for x in ints)


def kernel_basis(matrix: Sequence[Sequence], ncols: int | None = None) -> list[tuple[Fraction, ...]]:
    """Basis of the right kernel of ``matrix`` over the rationals.

    Basis vectors are rescaled to primitive integer vectors whose first
    nonzero entry is positive.  ``ncols`` is needed only when the matrix
    has no rows.
    """
    if not matrix:
        if ncols is None:
            raise ValueError("ncols is required for an empty matrix")
        return [tuple(Fraction(int(i == j)) for j in range(ncols)) for i in range(ncols)]
    ncols = len(matrix[0])
    reduced, pivots = rref(matrix)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(reduced, pivots):
            v[p] = -row[f]
        basis.append(_normalise_direction(v))
    return basis


def smith_divisors(matrix: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Nonzero elementary divisors ``d1 | d2 | ...`` of an integer matrix."""
    a = [[int(x) for x in row] for row in matrix]
    if not a or not a[0]:
        return ()
    m, n = len(a), len(a[0])

    def swap_cols(j, k):
        for row in a:
            row[j], row[k] = row[k], row[j]

    divisors = []
    for t in range(min(m, n)):
        nz = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n) if a[i][j]]
        if not nz:
            break
        _, i0, j0 = min(nz)
        a[t], a[i0] = a[i0], a[t]
        swap_cols(t, j0)
        while True:
            p = a[t][t]
            for i in range(t + 1, m):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
            for j in range(t + 1, n):
                q = a[t][j] // p
                if q:
                    for row in a:
                        row[j] -= q * row[t]
            rest = [(abs(a[i][t]), i, t) for i in range(t + 1, m) if a[i][t]]
            rest += [(abs(a[t][j]), t, j) for j in range(t + 1, n) if a[t][j]]
            if rest:
                _, i0, j0 = min(rest)
                a[t], a[i0] = a[i0], a[t]
                swap_cols(t, j0)
                continue
            bad = next((i for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % p), None)
            if bad is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[bad])]
        divisors.append(abs(a[t][t]))
    return tuple(divisors)


def minimal_supports(rows: Sequence[Sequence]) -> list[tuple[int, ...]]:
    """Minimal supports of nonzero vectors in the row span of ``rows``.

    These are the cocircuits of the column matroid.  Supports are returned as
    sorted 0-based index tuples ordered by (size, lexicographic).
    """
    if not rows:
        return []
    m = len(rows[0])
    if m > MAX_SUPPORT_COLUMNS:
        raise EnumerationGuard(f"{m} columns exceeds the enumeration bound {MAX_SUPPORT_COLUMNS}")
    basis, _ = rref(rows)
    r = len(basis)
    if r == 0:
        return []
    found = set()
    # a cocircuit is the support of the unique (up to scale) row-span vector
    # vanishing on some set of r-1 columns of rank r-1
    for zero in itertools.combinations(range(m), r - 1):
        sub = [[row[j] for row in basis] for j in zero]  # constraints on coefficients
        coeffs = kernel_basis(sub, ncols=r) if sub else kernel_basis([], ncols=r)
        if len(coeffs) != 1:
            continue
        c = coeffs[0]
        u = [sum((c[k] * basis[k][j] for k in range(r)), Fraction(0)) for j in range(m)]
        found.add(tuple(j for j in range(m) if u[j] != 0))
    return sorted(found, key=lambda s: (len(s), s))


def mat_vec(matrix: Sequence[Sequence], v: Sequence):
    return tuple(dot(row, v) for row in matrix)


def transpose(matrix: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*matrix)]

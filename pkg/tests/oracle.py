"""Brute-force reference for the valuation criterion.

A valuation vector ``w`` is realised by a kernel vector over the Novikov field
iff, for every value ``u`` taken by ``w``, some kernel vector vanishes on the
columns with ``w_j > u`` and is nonzero on every column with ``w_j = u``.  The
oracle enumerates all weak orderings of the columns (ordered set partitions),
tests that linear-algebra condition with sympy, and then decides the value
constraints by a direct left-to-right scan.  It shares no code with the
package's LP or cocircuit machinery.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Optional, Sequence

import sympy


def ordered_partitions(items: Sequence[int]) -> Iterator[tuple[tuple[int, ...], ...]]:
    """All ordered set partitions (blocks listed from smallest value up)."""
    items = tuple(items)
    if not items:
        yield ()
        return
    n = len(items)
    # choose the first block as any nonempty subset
    for mask in range(1, 1 << n):
        first = tuple(items[i] for i in range(n) if mask >> i & 1)
        rest = tuple(items[i] for i in range(n) if not mask >> i & 1)
        for tail in ordered_partitions(rest):
            yield (first,) + tail


@lru_cache(maxsize=None)
def _kernel_support(matrix, zero_cols: frozenset, m: int) -> frozenset:
    """Columns on which some kernel vector (vanishing on ``zero_cols``) is nonzero."""
    rows = [list(r) for r in matrix]
    for j in sorted(zero_cols):
        rows.append([1 if k == j else 0 for k in range(m)])
    basis = sympy.Matrix(rows).nullspace() if rows else [sympy.eye(m)[:, k] for k in range(m)]
    return frozenset(j for j in range(m) if any(v[j] != 0 for v in basis))


def block_condition(matrix, blocks) -> bool:
    m = sum(len(b) for b in blocks)
    mat = tuple(tuple(r) for r in matrix)
    above: frozenset = frozenset()
    for b in reversed(blocks):
        if not set(b) <= _kernel_support(mat, above, m):
            return False
        above |= set(b)
    return True


def values_for(blocks, pinned, lowers) -> Optional[list[Fraction]]:
    """Strictly increasing block values meeting the pins and lower bounds.

    ``pinned[j]`` is the exact value of a facet column; ``lowers[j]`` is
    ``(bound, strict)`` for a spurious column.
    """
    k = len(blocks)
    pins: list[Optional[Fraction]] = []
    for b in blocks:
        vals = {pinned[j] for j in b if j in pinned}
        if len(vals) > 1:
            return None
        pins.append(vals.pop() if vals else None)
    lo: tuple[Fraction, bool] | None = None  # (value, strict)
    floors = []
    for i, b in enumerate(blocks):
        bounds = [lowers[j] for j in b if j in lowers]
        if lo is not None:
            bounds.append(lo)
        best = None
        for v, s in bounds:
            if best is None or v > best[0] or (v == best[0] and s):
                best = (v, s)
        if pins[i] is not None:
            p = pins[i]
            if best is not None and (p < best[0] or (p == best[0] and best[1])):
                return None
            floors.append(p)
        else:
            floors.append(best)
        base = pins[i] if pins[i] is not None else (best[0] if best else None)
        lo = None if base is None else (base, True)
    # concrete values: a free block sits at its floor, or half-way to the next pin
    out: list[Fraction] = []
    for i in range(k):
        if pins[i] is not None:
            out.append(pins[i])
            continue
        low, strict = floors[i] if floors[i] is not None else (None, False)
        if out and (low is None or out[-1] >= low):
            low, strict = out[-1], True
        nxt = next((pins[t] for t in range(i + 1, k) if pins[t] is not None), None)
        if low is None:
            out.append(nxt - 1 if nxt is not None else Fraction(0))
        elif not strict:
            out.append(low)
        else:
            out.append((low + nxt) / 2 if nxt is not None else low + 1)
    return out


def oracle(matrix, columns, point) -> Optional[tuple[Fraction, ...]]:
    """A realisable valuation vector, or ``None``.

    ``columns`` are ``(direction, offset, spurious, strict)``.
    """
    m = len(columns)
    pinned, lowers = {}, {}
    for j, (v, off, spur, strict) in enumerate(columns):
        l = sum(Fraction(a) * b for a, b in zip(v, point)) - Fraction(off)
        if spur:
            lowers[j] = (l, strict)
        else:
            pinned[j] = l
    mat = tuple(tuple(r) for r in matrix)
    for blocks in ordered_partitions(range(m)):
        if not _cached_condition(mat, blocks):
            continue
        vals = values_for(blocks, pinned, lowers)
        if vals is None:
            continue
        w = [Fraction(0)] * m
        for b, u in zip(blocks, vals):
            for j in b:
                w[j] = u
        return tuple(w)
    return None


@lru_cache(maxsize=None)
def _cached_condition(matrix, blocks) -> bool:
    return block_condition(matrix, blocks)

"""Exhaustive enumeration of small multiplication tables.

Generates every associative table on {0..n-1} (raw labeled tables, no
isomorphism rejection) by backtracking over cells in row-major order with
incremental associativity pruning.  Counts for n = 1..4 are 1, 8, 113, 3492.
"""

from __future__ import annotations

from functools import lru_cache

from .core import FiniteAlgebra


def _consistent(t, n, i, j):
    """Associativity triples that could involve the just-filled cell (i, j)."""
    v = t[i * n + j]
    # (i, j, c): inner-left product is the new cell
    for c in range(n):
        q = t[j * n + c]
        if q >= 0:
            left = t[v * n + c]
            right = t[i * n + q]
            if left >= 0 and right >= 0 and left != right:
                return False
    # (a, i, j): inner-right product is the new cell
    for a in range(n):
        p = t[a * n + i]
        if p >= 0:
            left = t[p * n + j]
            right = t[a * n + v]
            if left >= 0 and right >= 0 and left != right:
                return False
    # (a, b, j) where t[a][b] = i: new cell is the outer-left lookup
    for a in range(n):
        row = a * n
        for b in range(n):
            if t[row + b] == i:
                q = t[b * n + j]
                if q >= 0:
                    right = t[row + q]
                    if right >= 0 and right != v:
                        return False
    # (i, b, c) where t[b][c] = j: new cell is the outer-right lookup
    for b in range(n):
        tb = t[i * n + b]
        row = b * n
        for c in range(n):
            if t[row + c] == j:
                if tb >= 0:
                    left = t[tb * n + c]
                    if left >= 0 and left != v:
                        return False
    return True


def semigroup_tables(n: int):
    """Yield every associative n x n table as a tuple of row tuples."""
    if n < 1:
        raise ValueError("n must be >= 1")
    cells = n * n
    t = [-1] * cells
    pos = 0
    value = [0] * cells
    while pos >= 0:
        if pos == cells:
            yield tuple(tuple(t[i * n : (i + 1) * n]) for i in range(n))
            pos -= 1
            value[pos] += 1
            t[pos] = -1
            continue
        v = value[pos]
        if v == n:
            value[pos] = 0
            t[pos] = -1
            pos -= 1
            if pos >= 0:
                value[pos] += 1
                t[pos] = -1
            continue
        t[pos] = v
        if _consistent(t, n, pos // n, pos % n):
            pos += 1
        else:
            value[pos] += 1
    return


@lru_cache(maxsize=None)
def all_semigroups_upto(n: int) -> tuple[tuple[tuple[int, ...], ...], ...]:
    out = []
    for size in range(1, n + 1):
        out.extend(semigroup_tables(size))
    return tuple(out)


def as_algebra(table) -> FiniteAlgebra:
    n = len(table)
    labels = tuple(f"s{i}" for i in range(n))
    return FiniteAlgebra("semigroup", labels, table,
                         meta={"construction": "corpus-table"})

"""GF(2) linear algebra on rows stored as Python int bitsets."""

from __future__ import annotations

from typing import Iterable


def rank(rows: Iterable[int]) -> int:
    """Rank of a set of bitset rows over GF(2)."""
    pivots: dict[int, int] = {}
    r = 0
    for row in rows:
        while row:
            top = row.bit_length() - 1
            p = pivots.get(top)
            if p is None:
                pivots[top] = row
                r += 1
                break
            row ^= p
    return r


def submatrix(rows: list[int], idx: list[int]) -> list[int]:
    """Restrict rows and columns to ``idx`` (renumbered 0..len-1)."""
    out = []
    for i in idx:
        row = rows[i]
        v = 0
        for new, j in enumerate(idx):
            if row >> j & 1:
                v |= 1 << new
        out.append(v)
    return out


def matmul(a: list[int], b: list[int]) -> list[int]:
    """Product of square bitset matrices, row convention (row i of a times b)."""
    out = []
    for row in a:
        acc = 0
        j = 0
        while row:
            if row & 1:
                acc ^= b[j]
            row >>= 1
            j += 1
        out.append(acc)
    return out


def bits(row: int) -> list[int]:
    out = []
    j = 0
    while row:
        if row & 1:
            out.append(j)
        row >>= 1
        j += 1
    return out

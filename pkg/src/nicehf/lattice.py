"""Exact integer linear algebra: Hermite normal form, solving, kernels, residues.

Everything works on lists of Python ints so there is no overflow to worry
about.  Matrices are small (faces by crossings), so clarity wins over speed.
"""

from __future__ import annotations

from typing import Sequence


def row_hnf(rows: Sequence[Sequence[int]], with_transform: bool = True):
    """Row Hermite normal form.

    Returns ``(H, T, pivots)`` with ``T`` unimodular, ``T @ rows == H``, the
    first ``len(pivots)`` rows of ``H`` in echelon form with positive pivots and
    entries above each pivot reduced into ``[0, pivot)``, remaining rows zero.
    """
    H = [list(r) for r in rows]
    n = len(H)
    ncols = len(H[0]) if n else 0
    T = [[int(i == j) for j in range(n)] for i in range(n)] if with_transform else None

    def swap(i, j):
        H[i], H[j] = H[j], H[i]
        if T is not None:
            T[i], T[j] = T[j], T[i]

    def addmul(dst, src, f):
        # row dst -= f * row src
        if f == 0:
            return
        hs, hd = H[src], H[dst]
        for c in range(ncols):
            if hs[c]:
                hd[c] -= f * hs[c]
        if T is not None:
            ts, td = T[src], T[dst]
            for c in range(n):
                if ts[c]:
                    td[c] -= f * ts[c]

    pivots = []
    r = 0
    for col in range(ncols):
        if r == n:
            break
        while True:
            nz = [i for i in range(r, n) if H[i][col]]
            if not nz:
                break
            best = min(nz, key=lambda i: abs(H[i][col]))
            swap(r, best)
            done = True
            for i in range(r + 1, n):
                if H[i][col]:
                    addmul(i, r, H[i][col] // H[r][col])
                    if H[i][col]:
                        done = False
            if done:
                break
        if not any(H[i][col] for i in range(r, n)):
            continue
        if H[r][col] < 0:
            H[r] = [-x for x in H[r]]
            if T is not None:
                T[r] = [-x for x in T[r]]
        p = H[r][col]
        for i in range(r):
            addmul(i, r, H[i][col] // p)
        pivots.append(col)
        r += 1
    return H, T, pivots


def hnf_basis(rows) -> list[list[int]]:
    """Canonical basis (nonzero HNF rows) of the lattice spanned by ``rows``."""
    rows = [list(r) for r in rows]
    if not rows:
        return []
    H, _, piv = row_hnf(rows, with_transform=False)
    return [H[i] for i in range(len(piv))]


def reduce_mod(v: Sequence[int], basis: Sequence[Sequence[int]], pivots: Sequence[int]) -> tuple[int, ...]:
    """Canonical representative of ``v`` modulo an echelon (HNF) lattice."""
    v = list(v)
    for row, p in zip(basis, pivots):
        f = v[p] // row[p]
        if f:
            for c in range(p, len(v)):
                v[c] -= f * row[c]
    return tuple(v)


def pivots_of(basis) -> list[int]:
    return [next(i for i, x in enumerate(row) if x) for row in basis]


class IntegerSystem:
    """Solve ``M n = r`` over the integers for a fixed matrix ``M`` (rows x cols).

    Precomputes the row HNF of ``M^T`` once; each solve is then a triangular
    forward substitution.
    """

    def __init__(self, M: Sequence[Sequence[int]]):
        self.nrows = len(M)
        self.ncols = len(M[0]) if M else 0
        A = [[M[i][j] for i in range(self.nrows)] for j in range(self.ncols)]
        self.H, self.T, self.pivots = row_hnf(A)
        self.rank = len(self.pivots)
        self.image_basis = [self.H[i] for i in range(self.rank)]

    def solve(self, r: Sequence[int]) -> list[int] | None:
        """One integer solution, or None if ``r`` is not in the image lattice."""
        u = []
        for i, p in enumerate(self.pivots):
            s = r[p] - sum(u[j] * self.H[j][p] for j in range(i))
            q, rem = divmod(s, self.H[i][p])
            if rem:
                return None
            u.append(q)
        # every column must match, not only the pivot ones
        for c in range(self.nrows):
            if sum(u[j] * self.H[j][c] for j in range(self.rank)) != r[c]:
                return None
        n = [0] * self.ncols
        for j, uj in enumerate(u):
            if uj:
                Tj = self.T[j]
                for c in range(self.ncols):
                    if Tj[c]:
                        n[c] += uj * Tj[c]
        return n

    def kernel(self) -> list[list[int]]:
        """HNF basis of the integer kernel of ``M``."""
        return hnf_basis(self.T[self.rank:])

    def residue(self, r: Sequence[int]) -> tuple[int, ...]:
        """Canonical class of ``r`` modulo the image lattice of ``M``."""
        return reduce_mod(r, self.image_basis, self.pivots)


def coordinates(v: Sequence[int], basis: Sequence[Sequence[int]]) -> list[int] | None:
    """Integer coordinates of ``v`` in an HNF ``basis``, or None if ``v`` is outside."""
    piv = pivots_of(basis)
    v = list(v)
    out = []
    for row, p in zip(basis, piv):
        q, rem = divmod(v[p], row[p])
        if rem:
            return None
        out.append(q)
        if q:
            for c in range(len(v)):
                v[c] -= q * row[c]
    if any(v):
        return None
    return out

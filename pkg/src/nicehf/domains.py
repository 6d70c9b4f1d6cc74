"""Domains (2-chains on the faces) and the measures built from them."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Sequence

from .diagram import HeegaardDiagram
from .errors import NotInLattice
from .lattice import IntegerSystem, coordinates, hnf_basis
from .surface import QUADRANTS, curve_complement_components

Generator = tuple[int, ...]
Domain = tuple[int, ...]

# sign of each quadrant in the corner equation a + c - b - d
QUAD_SIGN = {"A": 1, "B": -1, "C": 1, "D": -1}


@dataclass
class CornerSystem:
    """One equation per crossing, plus per-face measure data."""

    crossings: tuple[int, ...]
    row_of: dict[int, int]
    matrix: list[list[int]]  # crossings x faces
    quad: dict[int, tuple[int, int, int, int]]  # crossing -> faces at A, B, C, D
    e4: list[int]  # 4 * Euler measure per face
    pointed: tuple[int, ...]
    solver: IntegerSystem = field(repr=False)


@lru_cache(maxsize=256)
def corner_system(d: HeegaardDiagram) -> CornerSystem:
    m = d.map
    nf = len(m.faces)
    M = []
    quad = {}
    for c in m.crossings:
        row = [0] * nf
        fs = m.quadrant_faces(c)
        quad[c] = fs
        for q, f in zip(QUADRANTS, fs):
            row[f] += QUAD_SIGN[q]
        M.append(row)
    e4 = [4 * f.chi - f.n_corners for f in m.faces]
    return CornerSystem(m.crossings, dict(m.index), M, quad, e4, d.basepoint_faces, IntegerSystem(M))


def delta(d: HeegaardDiagram, x: Sequence[int]) -> list[int]:
    """Indicator vector of a generator over the crossings."""
    cs = corner_system(d)
    v = [0] * len(cs.crossings)
    for c in x:
        v[cs.row_of[c]] += 1
    return v


def corner_rhs(d, x, y) -> list[int]:
    return [b - a for a, b in zip(delta(d, x), delta(d, y))]


def check_corners(d, D, x, y) -> bool:
    cs = corner_system(d)
    r = corner_rhs(d, x, y)
    return all(sum(a * n for a, n in zip(row, D)) == ri for row, ri in zip(cs.matrix, r))


@dataclass
class DomainLattice:
    particular: Domain | None
    kernel_basis: list[Domain]

    @property
    def rank(self) -> int:
        return len(self.kernel_basis)


def solve_pi2(d: HeegaardDiagram, x, y) -> DomainLattice:
    cs = corner_system(d)
    sol = cs.solver.solve(corner_rhs(d, x, y))
    return DomainLattice(None if sol is None else tuple(sol), [tuple(k) for k in cs.solver.kernel()])


def class_key(d: HeegaardDiagram, x) -> tuple[int, ...]:
    """Two generators share a key exactly when some domain connects them."""
    return corner_system(d).solver.residue(delta(d, x))


# -- measures ------------------------------------------------------------------
def euler_measure(d: HeegaardDiagram, D: Sequence[int]) -> Fraction:
    e4 = corner_system(d).e4
    return Fraction(sum(n * e for n, e in zip(D, e4)), 4)


def point_measure(d: HeegaardDiagram, D: Sequence[int], x, y) -> Fraction:
    quad = corner_system(d).quad
    total = 0
    for c in list(x) + list(y):
        total += sum(D[f] for f in quad[c])
    return Fraction(total, 4)


def maslov(d: HeegaardDiagram, D: Sequence[int], x, y) -> Fraction:
    return euler_measure(d, D) + point_measure(d, D, x, y)


def basepoint_multiplicities(d: HeegaardDiagram, D: Sequence[int]) -> tuple[list[int], int]:
    vals = [D[f] for f in d.basepoint_faces]
    return vals, sum(vals)


def whole_surface(d: HeegaardDiagram) -> Domain:
    return tuple([1] * len(d.faces))


def add(D1, D2) -> Domain:
    return tuple(a + b for a, b in zip(D1, D2))


def sub(D1, D2) -> Domain:
    return tuple(a - b for a, b in zip(D1, D2))


def scale(D, k) -> Domain:
    return tuple(k * a for a in D)


# -- lattices of special domains -------------------------------------------------
def boundary_degenerations(d: HeegaardDiagram, kind: str) -> DomainLattice:
    """Indicators of the components of the surface cut along one curve family."""
    nf = len(d.faces)
    basis = []
    for comp in curve_complement_components(d.map, kind):
        v = [0] * nf
        for f in comp:
            v[f] = 1
        basis.append(tuple(v))
    return DomainLattice(tuple([0] * nf), basis)


@lru_cache(maxsize=256)
def periodic_basis(d: HeegaardDiagram) -> tuple[Domain, ...]:
    """HNF basis of periodic domains avoiding every basepoint."""
    cs = corner_system(d)
    nf = len(d.faces)
    rows = [list(r) for r in cs.matrix]
    for f in d.basepoint_faces:
        rows.append([int(i == f) for i in range(nf)])
    ker = IntegerSystem(rows).kernel()
    return tuple(tuple(k) for k in hnf_basis(ker))


@dataclass
class H2Data:
    pi2prime: list[Domain]
    h2_basis: list[Domain]
    rank: int


def pi2prime_and_h2(d: HeegaardDiagram, x=None) -> H2Data:
    """pi2'(x,x) is P + Z*Sigma; its quotient by Sigma is identified with P.

    The lattice does not depend on ``x``; the argument is accepted for symmetry.
    """
    P = list(periodic_basis(d))
    return H2Data(P + [whole_surface(d)], P, len(P))


def h2_class(d: HeegaardDiagram, basis: Sequence[Domain], D: Sequence[int]) -> tuple[tuple[int, ...], int]:
    vals = [D[f] for f in d.basepoint_faces]
    if len(set(vals)) > 1:
        raise NotInLattice("multiplicities differ between basepoints")
    mlt = vals[0] if vals else 0
    rest = [a - mlt for a in D]
    co = coordinates(rest, [list(b) for b in basis]) if basis else ([] if not any(rest) else None)
    if co is None:
        raise NotInLattice("domain is not a periodic domain")
    return tuple(co), mlt * len(vals)


def periodic_maslov_gcd(d: HeegaardDiagram, x) -> int:
    """gcd of Maslov indices, measured at ``x``, over periodic domains avoiding basepoints."""
    g = 0
    for P in periodic_basis(d):
        g = gcd(g, int(maslov(d, P, x, x)))
    return g


def reference_domain(d: HeegaardDiagram, base, y) -> Domain:
    """A domain from ``base`` to ``y`` with zero multiplicity at every basepoint."""
    sol = solve_pi2(d, base, y).particular
    if sol is None:
        raise NotInLattice("generators are in different classes")
    comps = boundary_degenerations(d, "alpha").kernel_basis
    D = list(sol)
    for f in d.basepoint_faces:
        k = D[f]
        if k:
            comp = next(c for c in comps if c[f])
            D = [a - k * b for a, b in zip(D, comp)]
    return tuple(D)

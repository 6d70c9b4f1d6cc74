"""Twisted coefficients: the complex over GF(2)[H2] for one class of generators."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import gf2
from .complex import Differential, cached_differential, generator_classes, relative_grading
from .diagram import HeegaardDiagram
from .domains import (
    h2_class, maslov, periodic_basis, periodic_maslov_gcd, reference_domain,
)
from .errors import NoConnectingDomain, NotUnivariate
from .lattice import pivots_of, reduce_mod
from .laurent import ZERO, GroupRingElement, pdeg, smith_diagonal, strip_t

Generator = tuple[int, ...]


def reference_domains(d: HeegaardDiagram, cls: Sequence[Generator]) -> dict[Generator, tuple[int, ...]]:
    """D_y from the smallest generator to each y, with no basepoint multiplicity.

    Each D_y is reduced modulo the periodic lattice, so the choice is canonical.
    """
    cls = sorted(cls)
    if not cls:
        return {}
    base = cls[0]
    P = [list(p) for p in periodic_basis(d)]
    piv = pivots_of(P)
    out = {}
    for y in cls:
        try:
            D = reference_domain(d, base, y)
        except Exception as exc:  # different class
            raise NoConnectingDomain(str(exc)) from None
        out[y] = reduce_mod(D, P, piv) if P else D
    return out


@dataclass
class TwistedComplex:
    generators: list[Generator]
    base: Generator
    ref_domains: dict[Generator, tuple[int, ...]]
    h2_basis: list[tuple[int, ...]]
    matrix: list[list[GroupRingElement]]  # matrix[i][j]: coefficient of z_j in d(y_i)
    untwisted: list[int] = field(default_factory=list)

    @property
    def m(self) -> int:
        return len(self.h2_basis)

    def augmented(self) -> list[int]:
        rows = []
        for row in self.matrix:
            v = 0
            for j, e in enumerate(row):
                if e.augmentation():
                    v |= 1 << j
            rows.append(v)
        return rows

    def to_json(self) -> dict:
        return {
            "generators": [list(g) for g in self.generators],
            "base": list(self.base),
            "h2_basis": [list(b) for b in self.h2_basis],
            "entries": [
                {"row": i, "col": j, "exponents": e.to_json()}
                for i, row in enumerate(self.matrix) for j, e in enumerate(row) if e
            ],
        }


def twisted_differential(d: HeegaardDiagram, cls: Sequence[Generator], diff: Differential | None = None,
                         refs: dict | None = None) -> TwistedComplex:
    """``refs`` overrides the reference domains (they must avoid the basepoints)."""
    diff = cached_differential(d) if diff is None else diff
    cls = sorted(cls)
    refs = reference_domains(d, cls) if refs is None else refs
    basis = list(periodic_basis(d))
    gidx = {g: i for i, g in enumerate(diff.generators)}
    local = {g: i for i, g in enumerate(cls)}
    n = len(cls)
    matrix = [[ZERO] * n for _ in range(n)]
    for (i, j), doms in diff.witnesses.items():
        y, z = diff.generators[i], diff.generators[j]
        if y not in local:
            continue
        if z not in local:
            raise NoConnectingDomain("polygon leaves its class")
        exps = []
        for D in doms:
            P = [a + b - c for a, b, c in zip(refs[y], D, refs[z])]
            coords, _ = h2_class(d, basis, P)
            exps.append(coords)
        li, lj = local[y], local[z]
        matrix[li][lj] = matrix[li][lj] + GroupRingElement.from_exponents(exps)
    untw = gf2.submatrix(diff.rows, [gidx[g] for g in cls])
    return TwistedComplex(cls, cls[0], refs, basis, matrix, untw)


def all_twisted(d: HeegaardDiagram) -> list[TwistedComplex]:
    diff = cached_differential(d)
    return [
        twisted_differential(d, [diff.generators[i] for i in idx], diff)
        for idx in generator_classes(d, diff.generators)
    ]


def verify_twisted_d_squared(c: TwistedComplex) -> bool:
    n = len(c.generators)
    for i in range(n):
        for k in range(n):
            acc = ZERO
            for j in range(n):
                if c.matrix[i][j] and c.matrix[j][k]:
                    acc = acc + c.matrix[i][j] * c.matrix[j][k]
            if acc:
                return False
    return True


@dataclass
class TwistedHomology:
    ring: str
    free_rank: int
    divisors: list[int]  # polynomials in t as ints, with factors of t removed
    gf2_dim: int | None


def univariate_homology(c: TwistedComplex) -> TwistedHomology:
    n = len(c.generators)
    if c.m == 0:
        rows = c.augmented()
        r = gf2.rank(rows)
        return TwistedHomology("F2", n - 2 * r, [], n - 2 * r)
    if c.m != 1:
        raise NotUnivariate(f"exponent rank is {c.m}")
    low = min((e[0] for row in c.matrix for x in row for e in x.terms), default=0)
    shift = max(0, -low)
    A = [[x.to_poly(shift) for x in row] for row in c.matrix]
    diag = smith_diagonal(A)
    r = len(diag)
    divisors = sorted((p for p in (strip_t(q) for q in diag) if p != 1), key=lambda p: (pdeg(p), p))
    free = n - 2 * r
    dim = sum(pdeg(p) for p in divisors) if free == 0 else None
    return TwistedHomology("F2[t,t^-1]", free, divisors, dim)


def twisted_grading(d: HeegaardDiagram, c: TwistedComplex, ya, zb) -> tuple[Fraction, int]:
    """gr([y,a]) - gr([z,b]) and the modulus it is defined up to."""
    (y, a), (z, b) = ya, zb
    if y not in c.ref_domains or z not in c.ref_domains:
        raise NoConnectingDomain("generator outside the class")
    D = [rz - ry for ry, rz in zip(c.ref_domains[y], c.ref_domains[z])]
    for coef, P in zip([bi - ai for ai, bi in zip(a, b)], c.h2_basis):
        D = [x + coef * p for x, p in zip(D, P)]
    mu = maslov(d, D, y, z)
    mod = periodic_maslov_gcd(d, c.base)
    return (mu % mod if mod else mu), mod


__all__ = [
    "reference_domains", "twisted_differential", "verify_twisted_d_squared",
    "univariate_homology", "twisted_grading", "TwistedComplex", "all_twisted", "relative_grading",
]

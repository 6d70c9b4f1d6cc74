"""Group-ring elements over GF(2) and Smith normal form over GF(2)[t].

Univariate polynomials are plain ints: bit i is the coefficient of t^i.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable


# -- GF(2)[t] as ints --------------------------------------------------------
def pdeg(p: int) -> int:
    return p.bit_length() - 1


def pmul(a: int, b: int) -> int:
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def pdivmod(a: int, b: int) -> tuple[int, int]:
    if b == 0:
        raise ZeroDivisionError("polynomial division by zero")
    q = 0
    db = pdeg(b)
    while a and pdeg(a) >= db:
        s = pdeg(a) - db
        q ^= 1 << s
        a ^= b << s
    return q, a


def strip_t(p: int) -> int:
    """Remove factors of t, which are units among Laurent polynomials."""
    if p == 0:
        return 0
    while not p & 1:
        p >>= 1
    return p


def pformat(p: int, var: str = "t") -> str:
    if p == 0:
        return "0"
    terms = []
    for i in range(pdeg(p) + 1):
        if p >> i & 1:
            terms.append("1" if i == 0 else var if i == 1 else f"{var}^{i}")
    return "+".join(terms)


def smith_diagonal(A: list[list[int]]) -> list[int]:
    """Nonzero invariant factors of a matrix over GF(2)[t] (each divides the next)."""
    A = [list(r) for r in A]
    nr = len(A)
    nc = len(A[0]) if nr else 0
    diag = []
    t = 0
    while t < min(nr, nc):
        # pick the entry of least degree in the remaining block
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                if A[i][j] and (best is None or pdeg(A[i][j]) < pdeg(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        A[t], A[i] = A[i], A[t]
        for r in A:
            r[t], r[j] = r[j], r[t]
        while True:
            changed = False
            p = A[t][t]
            for i in range(t + 1, nr):
                if A[i][t]:
                    q, _ = pdivmod(A[i][t], p)
                    A[i] = [a ^ pmul(q, b) for a, b in zip(A[i], A[t])]
                    if A[i][t]:
                        changed = True
            for j in range(t + 1, nc):
                if A[t][j]:
                    q, _ = pdivmod(A[t][j], p)
                    for r in A:
                        r[j] ^= pmul(q, r[t])
                    if A[t][j]:
                        changed = True
            if changed:
                # a remainder of smaller degree appeared; move it to the pivot
                cands = [(pdeg(A[i][t]), "r", i) for i in range(t, nr) if A[i][t]]
                cands += [(pdeg(A[t][j]), "c", j) for j in range(t, nc) if A[t][j]]
                _, kind, k = min(cands)
                if kind == "r":
                    A[t], A[k] = A[k], A[t]
                else:
                    for r in A:
                        r[t], r[k] = r[k], r[t]
                continue
            # divisibility of the remaining block by the pivot
            bad = None
            for i in range(t + 1, nr):
                for j in range(t + 1, nc):
                    if A[i][j] and pdivmod(A[i][j], p)[1]:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            A[t] = [a ^ b for a, b in zip(A[t], A[bad])]
        diag.append(A[t][t])
        t += 1
    return diag


# -- group ring F2[Z^m] ----------------------------------------------------------
@dataclass(frozen=True)
class GroupRingElement:
    """Finite GF(2) combination of monomials t^a, a in Z^m."""

    terms: frozenset = frozenset()

    @classmethod
    def monomial(cls, exp: Iterable[int]) -> "GroupRingElement":
        return cls(frozenset([tuple(exp)]))

    @classmethod
    def from_exponents(cls, exps: Iterable[Iterable[int]]) -> "GroupRingElement":
        out = set()
        for e in exps:
            out ^= {tuple(e)}
        return cls(frozenset(out))

    def __add__(self, other: "GroupRingElement") -> "GroupRingElement":
        return GroupRingElement(self.terms ^ other.terms)

    def __mul__(self, other: "GroupRingElement") -> "GroupRingElement":
        out: set = set()
        for a in self.terms:
            for b in other.terms:
                out ^= {tuple(x + y for x, y in zip(a, b))}
        return GroupRingElement(frozenset(out))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def augmentation(self) -> int:
        """Value at t = 1 for every variable."""
        return len(self.terms) % 2

    def to_json(self) -> list[list[int]]:
        return sorted(list(t) for t in self.terms)

    def to_poly(self, shift: int = 0) -> int:
        """Univariate case: the polynomial t^shift * self (exponents must end up >= 0)."""
        p = 0
        for (e,) in self.terms:
            p ^= 1 << (e + shift)
        return p

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms):
            if not any(e):
                parts.append("1")
            else:
                name = (lambda i: f"t{i}") if len(e) > 1 else (lambda i: "t")
                parts.append("*".join(name(i) if v == 1 else f"{name(i)}^{v}" for i, v in enumerate(e) if v))
        return " + ".join(parts)


ZERO = GroupRingElement()

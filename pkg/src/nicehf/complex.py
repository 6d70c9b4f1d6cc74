"""The chain complex of a nice diagram: generators, empty polygons, homology."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from . import gf2
from .diagram import HeegaardDiagram, is_nice, validate
from .domains import (
    class_key, corner_rhs, corner_system, maslov, periodic_maslov_gcd, reference_domain,
)
from .errors import NoConnectingDomain, NotAChainComplex, NotNice

Generator = tuple[int, ...]


# -- generators ------------------------------------------------------------------
def _intersections(d: HeegaardDiagram) -> dict[tuple[int, int], list[int]]:
    m = d.map
    table: dict[tuple[int, int], list[int]] = {}
    for c in m.crossings:
        table.setdefault((m.alpha_of[c], m.beta_of[c]), []).append(c)
    return table


@lru_cache(maxsize=128)
def enumerate_generators(d: HeegaardDiagram) -> tuple[Generator, ...]:
    """All k-tuples (one crossing per alpha curve) hitting each beta curve once."""
    m = d.map
    k = d.k
    if len(d.beta) != k:
        return ()
    per_alpha = [sorted(cur) for cur in d.alpha]
    out = []
    used = [False] * len(d.beta)
    cur: list[int] = []

    def rec(i):
        if i == k:
            out.append(tuple(cur))
            return
        for c in per_alpha[i]:
            j = m.beta_of[c]
            if not used[j]:
                used[j] = True
                cur.append(c)
                rec(i + 1)
                cur.pop()
                used[j] = False

    rec(0)
    return tuple(sorted(out))


def count_generators(d: HeegaardDiagram, cap: int | None = None) -> int:
    """Number of generators, stopping early once ``cap`` is exceeded."""
    m = d.map
    k = d.k
    per_alpha = [[m.beta_of[c] for c in cur] for cur in d.alpha]
    used = [False] * len(d.beta)
    total = 0

    def rec(i):
        nonlocal total
        if cap is not None and total > cap:
            return
        if i == k:
            total += 1
            return
        for j in per_alpha[i]:
            if not used[j]:
                used[j] = True
                rec(i + 1)
                used[j] = False

    rec(0)
    return total


# -- empty polygon search --------------------------------------------------------------
class PolygonSearch:
    """{0,1} solutions of the corner system with pointed faces fixed at zero.

    The search keeps, for every crossing, the residual right-hand side and the
    range still reachable by the unassigned faces; a face is forced whenever a
    residual sits at an end of its range.  Branching always happens at a
    crossing whose residual is nonzero, so the search grows the polygon from
    its corners outwards.
    """

    def __init__(self, d: HeegaardDiagram):
        cs = corner_system(d)
        self.d = d
        self.cs = cs
        pointed = set(d.basepoint_faces)
        self.faces = [f for f in range(len(d.faces)) if f not in pointed]
        var_of = {f: i for i, f in enumerate(self.faces)}
        self.cons = []
        self.var_cons = [[] for _ in self.faces]
        for r, row in enumerate(cs.matrix):
            terms = [(var_of[f], a) for f, a in enumerate(row) if a and f in var_of]
            self.cons.append(terms)
            for v, a in terms:
                self.var_cons[v].append((r, a))
        self.lo0 = [sum(a for _, a in t if a < 0) for t in self.cons]
        self.hi0 = [sum(a for _, a in t if a > 0) for t in self.cons]
        self.quad_vars = {
            c: [var_of[f] for f in cs.quad[c] if f in var_of] for c in cs.crossings
        }
        self.e4 = [cs.e4[f] for f in self.faces]

    def weights(self, x, y) -> list[int]:
        w = list(self.e4)
        for c in list(x) + list(y):
            for v in self.quad_vars[c]:
                w[v] += 1
        return w

    def solve(self, rhs: Sequence[int], w: Sequence[int], target: int = 4) -> list[tuple[int, ...]]:
        """All assignments with the given residuals and total weight ``target``."""
        ncons = len(self.cons)
        for r in range(ncons):
            if not self.cons[r] and rhs[r]:
                return []
        n = len(self.faces)
        val = [-1] * n
        res = list(rhs)
        lo = list(self.lo0)
        hi = list(self.hi0)
        cnt = [len(t) for t in self.cons]
        weight = [0]
        trail: list[int] = []
        cons, var_cons = self.cons, self.var_cons
        out = []

        def assign(v, b):
            val[v] = b
            trail.append(v)
            ok = True
            if b:
                weight[0] += w[v]
                if weight[0] > target:
                    ok = False
            for r, a in var_cons[v]:
                if a > 0:
                    hi[r] -= a
                else:
                    lo[r] -= a
                cnt[r] -= 1
                if b:
                    res[r] -= a
                if res[r] < lo[r] or res[r] > hi[r]:
                    ok = False
            return ok

        def undo(mark):
            while len(trail) > mark:
                v = trail.pop()
                b = val[v]
                val[v] = -1
                if b:
                    weight[0] -= w[v]
                for r, a in var_cons[v]:
                    if a > 0:
                        hi[r] += a
                    else:
                        lo[r] += a
                    cnt[r] += 1
                    if b:
                        res[r] += a

        def propagate(queue):
            while queue:
                r = queue.pop()
                if not cnt[r]:
                    continue
                if res[r] == lo[r]:
                    pos_val, neg_val = 0, 1
                elif res[r] == hi[r]:
                    pos_val, neg_val = 1, 0
                else:
                    continue
                for v, a in cons[r]:
                    if val[v] < 0:
                        if not assign(v, pos_val if a > 0 else neg_val):
                            return False
                        queue.extend(r2 for r2, _ in var_cons[v])
            return True

        def rec():
            best, best_cnt = -1, None
            for r in range(ncons):
                if res[r] and cnt[r] and (best_cnt is None or cnt[r] < best_cnt):
                    best, best_cnt = r, cnt[r]
            if best < 0:
                if any(res) or weight[0] != target:
                    return
                out.append(tuple(max(b, 0) for b in val))
                return
            v = next(v for v, _ in cons[best] if val[v] < 0)
            for b in (1, 0):
                mark = len(trail)
                if assign(v, b) and propagate([r for r, _ in var_cons[v]]):
                    rec()
                undo(mark)

        if propagate(list(range(ncons))):
            rec()
        return out

    def to_domain(self, sol) -> tuple[int, ...]:
        D = [0] * len(self.d.faces)
        for v, b in enumerate(sol):
            if b:
                D[self.faces[v]] = 1
        return tuple(D)


@lru_cache(maxsize=64)
def polygon_search(d: HeegaardDiagram) -> PolygonSearch:
    return PolygonSearch(d)


def candidate_targets(d: HeegaardDiagram, x: Generator) -> list[Generator]:
    """Generators differing from x in one coordinate on the same curve pair,
    or in two coordinates swapped across two alpha and two beta curves."""
    m = d.map
    inter = _intersections(d)
    bj = [m.beta_of[c] for c in x]
    out = set()
    k = len(x)
    for i in range(k):
        for c in inter.get((i, bj[i]), ()):
            if c != x[i]:
                out.add(x[:i] + (c,) + x[i + 1:])
    for i in range(k):
        for j in range(i + 1, k):
            for c1 in inter.get((i, bj[j]), ()):
                for c2 in inter.get((j, bj[i]), ()):
                    y = list(x)
                    y[i], y[j] = c1, c2
                    out.add(tuple(y))
    return sorted(out)


def require_nice(d: HeegaardDiagram) -> None:
    rep = validate(d)
    if not rep.valid:
        raise NotNice(f"diagram is not valid: {rep.violations}")
    nice = is_nice(d)
    if not nice.is_nice:
        raise NotNice(f"unpointed faces that are not bigons or rectangles: {nice.offenders}")


def empty_polygons(d: HeegaardDiagram, x: Generator, check: bool = True) -> list[tuple[Generator, tuple[int, ...]]]:
    if check:
        require_nice(d)
    ps = polygon_search(d)
    out = []
    for y in candidate_targets(d, x):
        for sol in ps.solve(corner_rhs(d, x, y), ps.weights(x, y)):
            out.append((y, ps.to_domain(sol)))
    return out


# -- the differential -----------------------------------------------------------------
@dataclass
class Differential:
    generators: tuple[Generator, ...]
    rows: list[int]  # bit j of rows[i] is the coefficient of generators[j] in d(generators[i])
    witnesses: dict[tuple[int, int], list[tuple[int, ...]]] = field(default_factory=dict)

    @property
    def size(self) -> int:
        return len(self.generators)

    def entry(self, i: int, j: int) -> int:
        return self.rows[i] >> j & 1

    def nonzero(self) -> list[tuple[int, int]]:
        return [(i, j) for i, row in enumerate(self.rows) for j in gf2.bits(row)]

    def export(self) -> str:
        """Sparse text form: header "rows cols", then one "row col" per nonzero."""
        lines = [f"{self.size} {self.size}"]
        lines += [f"{i} {j}" for i, j in self.nonzero()]
        return "\n".join(lines) + "\n"


def default_threads() -> int:
    try:
        return max(1, int(os.environ.get("HF_THREADS", "1")))
    except ValueError:
        return 1


def differential(d: HeegaardDiagram, threads: int | None = None) -> Differential:
    require_nice(d)
    gens = enumerate_generators(d)
    index = {g: i for i, g in enumerate(gens)}
    threads = threads or default_threads()

    def row(x):
        return empty_polygons(d, x, check=False)

    if threads > 1 and len(gens) > 1:
        with ThreadPoolExecutor(threads) as ex:
            results = list(ex.map(row, gens))
    else:
        results = [row(x) for x in gens]
    rows = []
    wit: dict[tuple[int, int], list] = {}
    for i, polys in enumerate(results):
        v = 0
        for y, D in polys:
            j = index[y]
            v ^= 1 << j
            wit.setdefault((i, j), []).append(D)
        rows.append(v)
    return Differential(gens, rows, wit)


@lru_cache(maxsize=64)
def cached_differential(d: HeegaardDiagram) -> Differential:
    return differential(d)


def verify_d_squared(diff: Differential) -> tuple[bool, tuple[int, int] | None]:
    sq = gf2.matmul(diff.rows, diff.rows)
    for i, row in enumerate(sq):
        if row:
            return False, (i, gf2.bits(row)[0])
    return True, None


# -- homology -------------------------------------------------------------------------
@dataclass
class HomologyResult:
    total: int
    per_class: list[dict]
    n_generators: int
    rank: int


def generator_classes(d: HeegaardDiagram, gens=None) -> list[list[int]]:
    """Indices of generators grouped into classes joined by domains, in first-seen order."""
    gens = enumerate_generators(d) if gens is None else gens
    groups: dict[tuple, list[int]] = {}
    for i, g in enumerate(gens):
        groups.setdefault(class_key(d, g), []).append(i)
    return list(groups.values())


def homology(d: HeegaardDiagram, diff: Differential | None = None) -> HomologyResult:
    diff = cached_differential(d) if diff is None else diff
    ok, bad = verify_d_squared(diff)
    if not ok:
        raise NotAChainComplex(f"d^2 != 0, first bad pair {bad}")
    per = []
    total = 0
    total_rank = 0
    for idx in generator_classes(d, diff.generators):
        r = gf2.rank(gf2.submatrix(diff.rows, idx))
        dim = len(idx) - 2 * r
        total += dim
        total_rank += r
        per.append({"generators": [list(diff.generators[i]) for i in idx], "dim": dim})
    return HomologyResult(total, per, diff.size, total_rank)


def homology_dim(d: HeegaardDiagram) -> int:
    return homology(d).total


def relative_grading(d: HeegaardDiagram, cls: Sequence[Generator]) -> tuple[dict[Generator, int], int]:
    """Relative Maslov grading on one class, normalized to minimum 0.

    Returns the grading and the modulus (0 means a genuine integer grading).
    """
    cls = sorted(cls)
    if not cls:
        return {}, 0
    base = cls[0]
    key = class_key(d, base)
    if any(class_key(d, y) != key for y in cls):
        raise NoConnectingDomain("generators lie in different classes")
    mod = periodic_maslov_gcd(d, base)
    gr = {}
    for y in cls:
        D = reference_domain(d, base, y)
        mu = maslov(d, D, base, y)
        assert mu.denominator == 1
        gr[y] = -int(mu)
    if mod:
        gr = {y: v % mod for y, v in gr.items()}
    low = min(gr.values())
    return {y: v - low for y, v in gr.items()}, mod


# -- stable invariant -------------------------------------------------------------------
@dataclass(frozen=True)
class StableClass:
    dim: int
    b: int

    def tensor_summands(self, n: int) -> "StableClass":
        """Tensor with (F + F)^n, used for declared S1xS2 summands."""
        return StableClass(self.dim * 2 ** n, self.b)

    def equivalent(self, other: "StableClass") -> bool:
        return stable_equal(self, other)


def stable_class(d: HeegaardDiagram) -> StableClass:
    return StableClass(homology(d).total, d.b)


def stable_equal(a: StableClass, b: StableClass) -> bool:
    return a.dim * 2 ** b.b == b.dim * 2 ** a.b

"""Independent checks: exhaustive polygon search, sheeted surfaces, additivity.

Nothing here reuses the corner system or the search of the complex module;
equations and measures are rebuilt from the raw quadrant data.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .diagram import HeegaardDiagram
from .errors import AdditivityViolation, PreconditionFailed, TooLarge
from .surface import AI, AO

FACE_CAP = 22
_CHUNK = 1 << 16


def _raw(d: HeegaardDiagram):
    m = d.map
    nf = len(m.faces)
    quads = {c: m.quadrant_faces(c) for c in m.crossings}  # A, B, C, D
    eq = np.zeros((len(m.crossings), nf), dtype=np.int64)
    for r, c in enumerate(m.crossings):
        a, b, cc, dd = quads[c]
        eq[r, a] += 1
        eq[r, cc] += 1
        eq[r, b] -= 1
        eq[r, dd] -= 1
    corners = np.array([f.n_corners for f in m.faces], dtype=np.int64)
    chi = np.array([f.chi for f in m.faces], dtype=np.int64)
    return m, quads, eq, 4 * chi - corners


def oracle_maslov(d: HeegaardDiagram, D, x, y) -> Fraction:
    """e(D) + p(D), recomputed from face corner counts and quadrant lookups."""
    m, quads, _, e4 = _raw(d)
    total = int(np.dot(e4, np.asarray(D, dtype=np.int64)))
    for c in list(x) + list(y):
        total += sum(D[f] for f in quads[c])
    return Fraction(total, 4)


def _is_generator(d: HeegaardDiagram, pts) -> tuple | None:
    m = d.map
    if len(pts) != d.k:
        return None
    al = sorted(m.alpha_of[c] for c in pts)
    be = sorted(m.beta_of[c] for c in pts)
    if al != list(range(d.k)) or be != list(range(d.k)):
        return None
    return tuple(sorted(pts, key=lambda c: m.alpha_of[c]))


@lru_cache(maxsize=32)
def all_polygons(d: HeegaardDiagram, cap: int = FACE_CAP) -> dict[tuple, list[tuple[int, ...]]]:
    """Every {0,1} domain with mu = 1 avoiding the basepoints, keyed by (x, y)."""
    m, quads, eq, e4 = _raw(d)
    nf = len(m.faces)
    free = [f for f in range(nf) if f not in set(d.basepoint_faces)]
    if len(free) > cap:
        raise TooLarge(f"{len(free)} unpointed faces exceed the cap {cap}")
    sub = eq[:, free]
    shifts = np.arange(len(free), dtype=np.int64)
    crossings = list(m.crossings)
    out: dict[tuple, list] = {}
    total = 1 << len(free)
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(total, start + _CHUNK), dtype=np.int64)
        bits = (idx[:, None] >> shifts) & 1
        res = bits @ sub.T
        keep = np.nonzero(np.all(np.abs(res) <= 1, axis=1) & np.any(res != 0, axis=1))[0]
        for row in keep:
            r = res[row]
            plus = {crossings[i] for i in np.nonzero(r == 1)[0]}
            minus = {crossings[i] for i in np.nonzero(r == -1)[0]}
            D = [0] * nf
            for j, f in enumerate(free):
                D[f] = int(bits[row, j])
            D = tuple(D)
            for x in _generators_containing(d, minus, plus):
                y = _is_generator(d, (set(x) - minus) | plus)
                if y is None:
                    continue
                if oracle_maslov(d, D, x, y) == 1:
                    out.setdefault((x, y), []).append(D)
    return out


def _generators_containing(d: HeegaardDiagram, must: set, avoid: set):
    from .complex import enumerate_generators

    for g in enumerate_generators(d):
        s = set(g)
        if must <= s and not (avoid & s):
            yield g


def brute_force_polygons(d: HeegaardDiagram, x, y, cap: int = FACE_CAP) -> list[tuple[int, ...]]:
    return sorted(all_polygons(d, cap).get((tuple(x), tuple(y)), []))


def compare_with_search(d: HeegaardDiagram, cap: int = FACE_CAP) -> list[dict]:
    """Pairs where the exhaustive and the pruned search disagree."""
    from .complex import empty_polygons, enumerate_generators

    brute = all_polygons(d, cap)
    fast: dict[tuple, list] = {}
    for x in enumerate_generators(d):
        for y, D in empty_polygons(d, x):
            fast.setdefault((x, y), []).append(D)
    bad = []
    for key in sorted(set(brute) | set(fast)):
        a, b = sorted(brute.get(key, [])), sorted(fast.get(key, []))
        if a != b:
            bad.append({"x": list(key[0]), "y": list(key[1]), "brute": a, "search": b})
    return bad


# -- sheeted surface -------------------------------------------------------------
@dataclass
class TiledSurface:
    sheets: list[tuple[int, int]]  # (face, copy)
    euler_characteristic: int
    boundary_components: int
    corners: list[tuple[int, int]]  # (crossing, number of sectors meeting there)
    glued_edges: int
    boundary_edges: int
    sheet_chi: int = field(repr=False, default=0)

    @property
    def n_corners(self) -> int:
        return len(self.corners)

    @property
    def euler_measure(self) -> Fraction:
        convex = sum(1 for _, k in self.corners if k == 1)
        concave = sum(1 for _, k in self.corners if k == 3)
        return self.euler_characteristic - Fraction(convex, 4) + Fraction(concave, 4)


class _UF:
    def __init__(self):
        self.p: dict = {}

    def find(self, a):
        self.p.setdefault(a, a)
        while self.p[a] != a:
            self.p[a] = self.p[self.p[a]]
            a = self.p[a]
        return a

    def union(self, a, b):
        self.p[self.find(a)] = self.find(b)


def build_surface(d: HeegaardDiagram, D, x, y) -> TiledSurface:
    """Glue copies of faces: alpha edges bottom to bottom, beta edges top to top."""
    m, quads, _, _ = _raw(d)
    if any(n < 0 for n in D):
        raise PreconditionFailed("domain has negative multiplicities")
    if any(D[f] for f in d.basepoint_faces):
        raise PreconditionFailed("domain covers a basepoint")
    for c in list(x) + list(y):
        if sum(D[f] for f in quads[c]) >= 4:
            raise PreconditionFailed(f"point measure at {c} is not below 1")
    face_of = m.face_of_dart
    sheets = [(f, s) for f, n in enumerate(D) for s in range(n)]
    uf = _UF()
    for f, s in sheets:
        for g in m.faces[f].darts:
            uf.find((f, s, g))
    glued = 0
    boundary: list[tuple[int, int, int]] = []
    for g in range(len(m.darts)):
        h = m.involution[g]
        F, G = face_of[g], face_of[h]
        nF, nG = D[F], D[G]
        pairs = []
        if m.kind_of(g) in (AO, AI):
            pairs = [(s, s) for s in range(min(nF, nG))]
        else:
            k = min(nF, nG)
            pairs = [(nF - 1 - j, nG - 1 - j) for j in range(k)]
        if g < h:
            glued += len(pairs)
            for s, t in pairs:
                uf.union((F, s, g), (G, t, m.phi(h)))
                uf.union((F, s, m.phi(g)), (G, t, h))
        paired = {s for s, _ in pairs}
        for s in range(nF):
            if s not in paired:
                boundary.append((F, s, g))
    slots = [(f, s, g) for f, s in sheets for g in m.faces[f].darts]
    vclasses: dict = {}
    for slot in slots:
        vclasses.setdefault(uf.find(slot), []).append(slot)
    V = len(vclasses)
    E = len(slots) - glued
    chi_sheets = sum(m.faces[f].chi for f, _ in sheets)
    chi = V - E + chi_sheets

    buf = _UF()
    incident: dict = {}
    for e in boundary:
        F, s, g = e
        a = uf.find((F, s, g))
        b = uf.find((F, s, m.phi(g)))
        buf.find(e)
        for v in (a, b):
            incident.setdefault(v, []).append(e)
    for v, es in incident.items():
        for e in es[1:]:
            buf.union(es[0], e)
    ncomp = len({buf.find(e) for e in boundary})
    corners = []
    for v, es in incident.items():
        kinds = {m.kind_of(g) in (AO, AI) for _, _, g in es}
        if len(kinds) == 2:
            c = m.crossing_of(vclasses[v][0][2])
            corners.append((c, len(vclasses[v])))
    corners.sort()
    return TiledSurface(sheets, chi, ncomp, corners, glued, len(boundary), chi_sheets)


# -- additivity -----------------------------------------------------------------
@dataclass
class AdditivityReport:
    trials: int
    seed: int
    failures: list[dict]

    @property
    def ok(self) -> bool:
        return not self.failures


def maslov_additivity_sample(d: HeegaardDiagram, trials: int = 1000, seed: int = 0, bound: int = 3) -> AdditivityReport:
    from .complex import enumerate_generators, generator_classes
    from .domains import check_corners, maslov, solve_pi2

    rng = random.Random(seed)
    gens = enumerate_generators(d)
    classes = generator_classes(d, gens)
    fails = []
    if not gens:
        return AdditivityReport(0, seed, [])
    ker = solve_pi2(d, gens[0], gens[0]).kernel_basis

    def sample(a, b):
        D = list(solve_pi2(d, a, b).particular)
        for K in ker:
            c = rng.randint(-bound, bound)
            if c:
                D = [u + c * v for u, v in zip(D, K)]
        return tuple(D)

    for t in range(trials):
        cls = rng.choice(classes)
        x, y, z = (gens[rng.choice(cls)] for _ in range(3))
        D1, D2 = sample(x, y), sample(y, z)
        S = tuple(a + b for a, b in zip(D1, D2))
        lhs = maslov(d, S, x, z)
        rhs = maslov(d, D1, x, y) + maslov(d, D2, y, z)
        if not check_corners(d, S, x, z) or lhs != rhs or lhs != oracle_maslov(d, S, x, z):
            fails.append({"trial": t, "x": x, "y": y, "z": z, "D1": D1, "D2": D2, "lhs": str(lhs), "rhs": str(rhs)})
    rep = AdditivityReport(trials, seed, fails)
    if fails:
        raise AdditivityViolation(f"{len(fails)} failures, first {fails[0]}")
    return rep

"""Combinatorial-map model of a Heegaard surface carrying alpha and beta curves.

Every crossing of an alpha curve with a beta curve is a 4-valent vertex owning
four darts (outgoing half-edges): alpha-out, alpha-in, beta-out, beta-in.
The rotation ``sigma`` lists them counterclockwise, the involution ``iota``
glues an outgoing dart to the incoming dart of the next crossing along the
same curve, and faces are traced so that each face lies to the left of its
boundary darts: ``phi = sigma^-1 . iota``.

Components of the crossing graph may be joined by *tubes*.  A tube removes a
small disk from two faces and glues in an annulus, so a merged face is no
longer a disk.  This is how connected sums and stabilizations are encoded.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DisconnectedMap, DuplicateCrossing, MissingCrossing, NonIntegerGenus

AO, AI, BO, BI = 0, 1, 2, 3
KIND_NAMES = ("alpha-out", "alpha-in", "beta-out", "beta-in")
KIND_CODES = {name: i for i, name in enumerate(KIND_NAMES)}

# counterclockwise dart order at a crossing, by sign
CCW = {1: (AO, BO, AI, BI), -1: (AO, BI, AI, BO)}
# label of the sector that starts at CCW position i and sweeps counterclockwise.
# Positions are (alpha-out, left of alpha, alpha-in, right of alpha); A and B
# lie on the left of alpha, A on the incoming side.
SECTOR_LABELS = ("B", "A", "D", "C")
QUADRANTS = ("A", "B", "C", "D")


@dataclass(frozen=True)
class Dart:
    id: int
    crossing: int
    kind: str  # "alpha" | "beta"
    sense: str  # "out" | "in"


@dataclass(frozen=True)
class Face:
    """An elementary domain: one cell, or several cells merged by tubes."""

    id: int
    cycles: tuple[tuple[int, ...], ...]
    corners: tuple[tuple[int, str], ...]
    chi: int

    @property
    def n_corners(self) -> int:
        return len(self.corners)

    @property
    def is_disk(self) -> bool:
        return self.chi == 1 and len(self.cycles) == 1

    @property
    def euler_measure(self) -> Fraction:
        return Fraction(self.chi) - Fraction(self.n_corners, 4)

    @property
    def darts(self) -> tuple[int, ...]:
        return tuple(d for cyc in self.cycles for d in cyc)


def _check_curves(alpha, beta):
    seen_a, seen_b = {}, {}
    for name, curves, seen in (("alpha", alpha, seen_a), ("beta", beta, seen_b)):
        if not curves:
            raise MissingCrossing(f"no {name} curves given")
        for i, cur in enumerate(curves):
            if len(cur) == 0:
                raise MissingCrossing(f"{name} curve {i} has no crossings")
            for c in cur:
                if c in seen:
                    raise DuplicateCrossing(f"crossing {c} appears twice on {name} curves")
                seen[c] = i
    if set(seen_a) != set(seen_b):
        missing = sorted(set(seen_a) ^ set(seen_b))
        raise MissingCrossing(f"crossings {missing} are not on both an alpha and a beta curve")
    return seen_a, seen_b


class CombinatorialMap:
    """Immutable 4-valent map with optional tubes between faces."""

    def __init__(
        self,
        alpha_curves: Sequence[Sequence[int]],
        beta_curves: Sequence[Sequence[int]],
        signs: dict[int, int],
        tubes: Iterable[tuple[tuple[int, str], tuple[int, str]]] = (),
    ):
        self.alpha_curves = tuple(tuple(c) for c in alpha_curves)
        self.beta_curves = tuple(tuple(c) for c in beta_curves)
        self.alpha_of, self.beta_of = _check_curves(self.alpha_curves, self.beta_curves)
        self.crossings = tuple(sorted(self.alpha_of))
        for c in self.crossings:
            if signs.get(c) not in (1, -1):
                raise MissingCrossing(f"crossing {c} has no sign +1/-1")
        extra = set(signs) - set(self.crossings)
        if extra:
            raise MissingCrossing(f"signs given for unknown crossings {sorted(extra)}")
        self.crossing_signs = {c: signs[c] for c in self.crossings}
        self.index = {c: i for i, c in enumerate(self.crossings)}
        self.tubes = tuple(tubes)

        n = len(self.crossings)
        self.darts = []
        for c in self.crossings:
            for kind in range(4):
                self.darts.append(
                    Dart(4 * self.index[c] + kind, c, "alpha" if kind < 2 else "beta",
                         "out" if kind in (AO, BO) else "in")
                )
        self.rotation = [0] * (4 * n)
        self.position = [0] * (4 * n)
        for c in self.crossings:
            order = CCW[self.crossing_signs[c]]
            base = 4 * self.index[c]
            for pos, kind in enumerate(order):
                self.rotation[base + kind] = base + order[(pos + 1) % 4]
                self.position[base + kind] = pos
        self.rotation_inv = [0] * (4 * n)
        for d, e in enumerate(self.rotation):
            self.rotation_inv[e] = d
        self.involution = [0] * (4 * n)
        for curves, out, inn in ((self.alpha_curves, AO, AI), (self.beta_curves, BO, BI)):
            for cur in curves:
                for j, c in enumerate(cur):
                    nxt = cur[(j + 1) % len(cur)]
                    a = self.dart(c, out)
                    b = self.dart(nxt, inn)
                    self.involution[a] = b
                    self.involution[b] = a
        self._trace()
        self._check_connected()

    # -- basic accessors -------------------------------------------------
    def dart(self, crossing: int, kind: int) -> int:
        return 4 * self.index[crossing] + kind

    def crossing_of(self, d: int) -> int:
        return self.crossings[d // 4]

    @staticmethod
    def kind_of(d: int) -> int:
        return d % 4

    def phi(self, d: int) -> int:
        return self.rotation_inv[self.involution[d]]

    def sector_label(self, d: int) -> str:
        return SECTOR_LABELS[self.position[d]]

    def label_dart(self, crossing: int, label: str) -> int:
        """The dart whose counterclockwise sector carries ``label``."""
        pos = SECTOR_LABELS.index(label)
        kind = CCW[self.crossing_signs[crossing]][pos]
        return self.dart(crossing, kind)

    @property
    def n_vertices(self) -> int:
        return len(self.crossings)

    @property
    def n_edges(self) -> int:
        return 2 * len(self.crossings)

    # -- face tracing ----------------------------------------------------
    def _trace(self):
        n_darts = len(self.darts)
        cell_of = [-1] * n_darts
        cells = []
        for start in range(n_darts):
            if cell_of[start] >= 0:
                continue
            cyc = []
            d = start
            while cell_of[d] < 0:
                cell_of[d] = len(cells)
                cyc.append(d)
                d = self.phi(d)
            cells.append(tuple(cyc))
        self.cells = cells
        self.cell_of_dart = cell_of

        parent = list(range(len(cells)))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        tube_cells = []
        for end1, end2 in self.tubes:
            c1 = cell_of[self._corner_dart(end1)]
            c2 = cell_of[self._corner_dart(end2)]
            tube_cells.append((c1, c2))
            parent[find(c1)] = find(c2)
        groups: dict[int, list[int]] = {}
        for i in range(len(cells)):
            groups.setdefault(find(i), []).append(i)
        tubes_in = {}
        for c1, _ in tube_cells:
            r = find(c1)
            tubes_in[r] = tubes_in.get(r, 0) + 1
        ordered = sorted(groups.items(), key=lambda kv: min(min(cells[i]) for i in kv[1]))
        self.faces = []
        self.face_of_dart = [0] * n_darts
        for fid, (root, members) in enumerate(ordered):
            members = sorted(members, key=lambda i: min(cells[i]))
            cycles = tuple(cells[i] for i in members)
            corners = tuple(
                (self.crossing_of(d), self.sector_label(d)) for cyc in cycles for d in cyc
            )
            chi = len(members) - 2 * tubes_in.get(root, 0)
            self.faces.append(Face(fid, cycles, corners, chi))
            for cyc in cycles:
                for d in cyc:
                    self.face_of_dart[d] = fid

    def _corner_dart(self, corner: tuple[int, str]) -> int:
        c, label = corner
        if c not in self.index or label not in QUADRANTS:
            raise MissingCrossing(f"corner {corner} does not exist")
        return self.label_dart(c, label)

    def face_of_corner(self, corner: tuple[int, str]) -> int:
        return self.face_of_dart[self._corner_dart(corner)]

    def quadrant_faces(self, crossing: int) -> tuple[int, int, int, int]:
        """Face ids of quadrants (A, B, C, D) at ``crossing``."""
        return tuple(self.face_of_dart[self.label_dart(crossing, q)] for q in QUADRANTS)

    def _check_connected(self):
        parent = list(range(len(self.cells)))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        # cells meeting at a crossing or along an edge lie in one graph component
        for c in self.crossings:
            ds = [self.dart(c, k) for k in range(4)]
            for d in ds[1:]:
                parent[find(self.cell_of_dart[d])] = find(self.cell_of_dart[ds[0]])
        for end1, end2 in self.tubes:
            a = self.cell_of_dart[self._corner_dart(end1)]
            b = self.cell_of_dart[self._corner_dart(end2)]
            parent[find(a)] = find(b)
        if len({find(i) for i in range(len(self.cells))}) != 1:
            raise DisconnectedMap("surface is disconnected; join components with tubes")

    def graph_components(self) -> list[list[int]]:
        """Crossing sets of the connected components of the curve graph."""
        parent = {c: c for c in self.crossings}

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for cur in self.alpha_curves + self.beta_curves:
            for c in cur[1:]:
                parent[find(c)] = find(cur[0])
        comps: dict[int, list[int]] = {}
        for c in self.crossings:
            comps.setdefault(find(c), []).append(c)
        return sorted(comps.values())


def build_map(alpha_curves, beta_curves, signs, tubes=()) -> CombinatorialMap:
    return CombinatorialMap(alpha_curves, beta_curves, signs, tubes)


def trace_faces(m: CombinatorialMap) -> list[Face]:
    return list(m.faces)


def euler_characteristic(m: CombinatorialMap) -> int:
    return m.n_vertices - m.n_edges + len(m.cells) - 2 * len(m.tubes)


def genus(m: CombinatorialMap) -> int:
    chi = euler_characteristic(m)
    if chi % 2 or chi > 2:
        raise NonIntegerGenus(f"Euler characteristic {chi} is not 2 - 2g")
    return (2 - chi) // 2


def curve_complement_components(m: CombinatorialMap, kind: str) -> list[list[int]]:
    """Partition of face ids into components of the surface minus one curve family."""
    if kind not in ("alpha", "beta"):
        raise ValueError(kind)
    parent = list(range(len(m.faces)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    other = (BO, BI) if kind == "alpha" else (AO, AI)
    for c in m.crossings:
        for k in other:
            d = m.dart(c, k)
            parent[find(m.face_of_dart[d])] = find(m.face_of_dart[m.involution[d]])
    comps: dict[int, list[int]] = {}
    for f in range(len(m.faces)):
        comps.setdefault(find(f), []).append(f)
    return sorted(comps.values())

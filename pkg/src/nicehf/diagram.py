"""Multi-pointed Heegaard diagrams: fixtures, validation, niceness, file format."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd
from typing import Iterable

from .errors import LemmaViolation, MapError, NotCoprime, SchemaError, UnpointedFace
from .surface import (
    AI, AO, BI, BO, QUADRANTS, CombinatorialMap, curve_complement_components, genus,
)

Corner = tuple[int, str]


def _rotate_min(seq):
    i = seq.index(min(seq))
    return tuple(seq[i:] + seq[:i])


def canonical_curves(curves) -> tuple[tuple[int, ...], ...]:
    return tuple(sorted((_rotate_min(list(c)) for c in curves), key=lambda c: c[0]))


@dataclass(frozen=True)
class HeegaardDiagram:
    """A diagram (Sigma, alpha, beta, w) stored in canonical form.

    Basepoints are addressed by corners; the face containing the corner is
    pointed.  ``tubes`` join faces of different graph components.
    """

    alpha: tuple[tuple[int, ...], ...]
    beta: tuple[tuple[int, ...], ...]
    signs: tuple[tuple[int, int], ...]
    basepoint_corners: tuple[Corner, ...]
    tubes: tuple[tuple[Corner, Corner], ...] = ()
    name: str = field(default="", compare=False)

    @classmethod
    def create(cls, alpha, beta, signs, basepoints, tubes=(), name="") -> "HeegaardDiagram":
        sg = tuple(sorted((int(c), int(s)) for c, s in dict(signs).items()))
        bps = tuple(sorted((int(c), str(q)) for c, q in basepoints))
        tb = tuple(sorted(tuple(sorted(((int(a[0]), str(a[1])), (int(b[0]), str(b[1]))))) for a, b in tubes))
        return cls(canonical_curves(alpha), canonical_curves(beta), sg, bps, tb, name)

    # -- derived data ----------------------------------------------------
    @cached_property
    def map(self) -> CombinatorialMap:
        return CombinatorialMap(self.alpha, self.beta, dict(self.signs), self.tubes)

    @property
    def sign(self) -> dict[int, int]:
        return dict(self.signs)

    @property
    def k(self) -> int:
        return len(self.alpha)

    @cached_property
    def g(self) -> int:
        return genus(self.map)

    @property
    def b(self) -> int:
        return len(self.basepoint_corners)

    @cached_property
    def faces(self):
        return self.map.faces

    @cached_property
    def basepoint_faces(self) -> tuple[int, ...]:
        return tuple(self.map.face_of_corner(c) for c in self.basepoint_corners)

    @cached_property
    def basepoints(self) -> frozenset[int]:
        return frozenset(self.basepoint_faces)

    @property
    def crossings(self) -> tuple[int, ...]:
        return self.map.crossings

    def is_pointed(self, face: int) -> bool:
        return face in self.basepoints

    def relabel(self, offset: int) -> "HeegaardDiagram":
        """Shift every crossing id by ``offset``."""
        sh = lambda c: c + offset  # noqa: E731
        return HeegaardDiagram.create(
            [[sh(c) for c in cur] for cur in self.alpha],
            [[sh(c) for c in cur] for cur in self.beta],
            {sh(c): s for c, s in self.signs},
            [(sh(c), q) for c, q in self.basepoint_corners],
            [((sh(a[0]), a[1]), (sh(b[0]), b[1])) for a, b in self.tubes],
            self.name,
        )

    def with_name(self, name: str) -> "HeegaardDiagram":
        return HeegaardDiagram(self.alpha, self.beta, self.signs, self.basepoint_corners, self.tubes, name)


# -- validation ---------------------------------------------------------------
@dataclass
class ValidationReport:
    valid: bool
    violations: list[str]

    def __bool__(self):
        return self.valid


@dataclass
class NicenessReport:
    is_nice: bool
    offenders: list[tuple[int, int, bool]]

    def __bool__(self):
        return self.is_nice


def validate(d: HeegaardDiagram) -> ValidationReport:
    m = d.map
    bad = []
    if len(d.alpha) != len(d.beta):
        bad.append("balanced")
    if d.b != d.k - d.g + 1:
        bad.append("basepoint count k-g+1")
    faces = d.basepoint_faces
    if len(set(faces)) != len(faces):
        bad.append("at most one basepoint per face")
    for kind in ("alpha", "beta"):
        for comp in curve_complement_components(m, kind):
            n = sum(1 for f in faces if f in comp)
            if n != 1:
                bad.append(f"unique basepoint per {kind}-component")
                break
    return ValidationReport(not bad, bad)


def is_nice(d: HeegaardDiagram) -> NicenessReport:
    offenders = []
    for f in d.faces:
        if f.id in d.basepoints:
            continue
        if not (f.is_disk and f.n_corners in (2, 4)):
            offenders.append((f.id, f.n_corners, False))
    return NicenessReport(not offenders, offenders)


def basepoints_both_sides(d: HeegaardDiagram) -> dict[tuple[str, int], tuple[int, int]]:
    """For each curve, a pointed face on its left and one on its right."""
    m = d.map
    out = {}
    for kind, curves, o, i in (("alpha", d.alpha, AO, AI), ("beta", d.beta, BO, BI)):
        for idx, cur in enumerate(curves):
            left = sorted({m.face_of_dart[m.dart(c, o)] for c in cur} & d.basepoints)
            right = sorted({m.face_of_dart[m.dart(c, i)] for c in cur} & d.basepoints)
            if not left or not right:
                raise LemmaViolation(f"{kind} curve {idx} lacks a pointed face on one side")
            out[(kind, idx)] = (left[0], right[0])
    return out


# -- fixtures -----------------------------------------------------------------
def make_s3_torus() -> HeegaardDiagram:
    return HeegaardDiagram.create([[0]], [[0]], {0: 1}, [(0, "A")], name="s3_torus")


def make_s3_sphere() -> HeegaardDiagram:
    return HeegaardDiagram.create(
        [[0, 1]], [[0, 1]], {0: 1, 1: -1}, [(0, "A"), (0, "C")], name="s3_sphere"
    )


def make_s1s2() -> HeegaardDiagram:
    # the sphere picture with the two pointed bigons joined by a tube
    return HeegaardDiagram.create(
        [[0, 1]], [[0, 1]], {0: 1, 1: -1}, [(0, "A")], tubes=[((0, "A"), (0, "C"))], name="s1s2"
    )


def make_lens(p: int, q: int) -> HeegaardDiagram:
    if p < 1:
        raise ValueError("p must be positive")
    if gcd(p, q) != 1:
        raise NotCoprime(f"gcd({p},{q}) != 1")
    alpha = [list(range(p))]
    beta = [[(j * q) % p for j in range(p)]]
    return HeegaardDiagram.create(alpha, beta, {c: 1 for c in range(p)}, [(0, "A")], name=f"L({p},{q})")


def make_grid_s3() -> HeegaardDiagram:
    """Two alpha and two beta circles on a torus cut into four squares.

    The two basepoints sit in diagonal squares, so every curve has a pointed
    square on each side.  Used as the handle-slide playground.
    """
    # crossing (i, j) = alpha_i meets beta_j, id 2*i + j
    alpha = [[0, 1], [2, 3]]
    beta = [[0, 2], [1, 3]]
    return HeegaardDiagram.create(alpha, beta, {c: 1 for c in range(4)}, [(0, "A"), (3, "A")], name="grid_s3")


def face_corner(d: HeegaardDiagram, face: int | Corner) -> Corner:
    """A corner addressing ``face``; basepoint corners are preferred."""
    if isinstance(face, tuple):
        return face
    for c in d.basepoint_corners:
        if d.map.face_of_corner(c) == face:
            return c
    return d.faces[face].corners[0]


def connected_sum(d1: HeegaardDiagram, d2: HeegaardDiagram, face1=None, face2=None) -> HeegaardDiagram:
    """Join pointed faces of ``d1`` and ``d2`` by a tube; the merged face keeps one basepoint.

    Faces may be given as face ids or as corners; default is the first basepoint.
    """
    face1 = d1.basepoint_corners[0] if face1 is None else face1
    face2 = d2.basepoint_corners[0] if face2 is None else face2
    c1 = face_corner(d1, face1)
    c2 = face_corner(d2, face2)
    f1, f2 = d1.map.face_of_corner(c1), d2.map.face_of_corner(c2)
    if f1 not in d1.basepoints or f2 not in d2.basepoints:
        raise UnpointedFace("connected sum needs pointed faces on both sides")
    offset = max(d1.crossings) + 1
    e = d2.relabel(offset)
    c2s = (c2[0] + offset, c2[1])
    drop = next(c for c in e.basepoint_corners if e.map.face_of_corner(c) == f2)
    bps = list(d1.basepoint_corners) + [c for c in e.basepoint_corners if c != drop]
    name = f"{d1.name}#{d2.name}" if d1.name or d2.name else ""
    return HeegaardDiagram.create(
        list(d1.alpha) + list(e.alpha),
        list(d1.beta) + list(e.beta),
        {**d1.sign, **e.sign},
        bps,
        list(d1.tubes) + list(e.tubes) + [(c1, c2s)],
        name,
    )


FIXTURES = {
    "s3_sphere": make_s3_sphere,
    "s3_torus": make_s3_torus,
    "s1s2": make_s1s2,
    "grid_s3": make_grid_s3,
}


# -- serialization -----------------------------------------------------------
_FIELDS = {"name", "alpha", "beta", "signs", "basepoints", "tubes"}


def to_dict(d: HeegaardDiagram) -> dict:
    out = {
        "name": d.name,
        "alpha": [list(c) for c in d.alpha],
        "beta": [list(c) for c in d.beta],
        "signs": {str(c): s for c, s in d.signs},
        "basepoints": [{"crossing": c, "quadrant": q} for c, q in d.basepoint_corners],
    }
    if d.tubes:
        out["tubes"] = [[{"crossing": c, "quadrant": q} for c, q in t] for t in d.tubes]
    return out


def serialize(d: HeegaardDiagram) -> str:
    return json.dumps(to_dict(d), sort_keys=True, indent=1) + "\n"


def _corner(obj, where) -> Corner:
    if not isinstance(obj, dict) or set(obj) != {"crossing", "quadrant"}:
        raise SchemaError(f"{where}: expected {{crossing, quadrant}}")
    c, q = obj["crossing"], obj["quadrant"]
    if not isinstance(c, int) or isinstance(c, bool) or c < 0:
        raise SchemaError(f"{where}.crossing: nonnegative integer expected")
    if q not in QUADRANTS:
        raise SchemaError(f"{where}.quadrant: {q!r} is not one of A,B,C,D")
    return (c, q)


def _curves(obj, key):
    if not isinstance(obj, list) or not all(isinstance(c, list) for c in obj):
        raise SchemaError(f"{key}: list of crossing lists expected")
    for i, cur in enumerate(obj):
        for c in cur:
            if not isinstance(c, int) or isinstance(c, bool) or c < 0:
                raise SchemaError(f"{key}[{i}]: crossing ids must be nonnegative integers")
        if not cur:
            raise SchemaError(f"{key}[{i}]: empty curve")
    return obj


def from_dict(obj) -> HeegaardDiagram:
    if not isinstance(obj, dict):
        raise SchemaError("top level must be an object")
    unknown = set(obj) - _FIELDS
    if unknown:
        raise SchemaError(f"unknown fields: {sorted(unknown)}")
    for key in ("alpha", "beta", "signs", "basepoints"):
        if key not in obj:
            raise SchemaError(f"missing field {key!r}")
    alpha = _curves(obj["alpha"], "alpha")
    beta = _curves(obj["beta"], "beta")
    if not isinstance(obj["signs"], dict):
        raise SchemaError("signs: object expected")
    signs = {}
    for key, s in obj["signs"].items():
        try:
            c = int(key)
        except ValueError:
            raise SchemaError(f"signs: key {key!r} is not an integer") from None
        if s not in (1, -1):
            raise SchemaError(f"signs[{key}]: must be 1 or -1")
        signs[c] = s
    if not isinstance(obj["basepoints"], list):
        raise SchemaError("basepoints: list expected")
    bps = [_corner(b, f"basepoints[{i}]") for i, b in enumerate(obj["basepoints"])]
    tubes = []
    for i, t in enumerate(obj.get("tubes", [])):
        if not isinstance(t, list) or len(t) != 2:
            raise SchemaError(f"tubes[{i}]: pair of corners expected")
        tubes.append((_corner(t[0], f"tubes[{i}][0]"), _corner(t[1], f"tubes[{i}][1]")))
    name = obj.get("name", "")
    if not isinstance(name, str):
        raise SchemaError("name: string expected")
    d = HeegaardDiagram.create(alpha, beta, signs, bps, tubes, name)
    known = {c for cur in alpha for c in cur}
    for c, _ in list(bps) + [e for t in tubes for e in t]:
        if c not in known:
            raise SchemaError(f"corner refers to unknown crossing {c}")
    d.map  # structural errors surface here
    return d


def parse(text: str) -> HeegaardDiagram:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return from_dict(obj)


def load(path) -> HeegaardDiagram:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def save(d: HeegaardDiagram, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize(d))


def corpus(max_p: int = 7) -> list[HeegaardDiagram]:
    """The standard test corpus: the named fixtures, small lens spaces and two sums."""
    out = [make_s3_sphere(), make_s3_torus(), make_s1s2()]
    for p in range(2, max_p + 1):
        for q in range(1, p):
            if gcd(p, q) == 1:
                out.append(make_lens(p, q))
    out.append(connected_sum(make_s3_torus(), make_s3_torus()))
    out.append(connected_sum(make_s3_torus(), make_s1s2()))
    out.append(make_grid_s3())
    return out


__all__ = [
    "HeegaardDiagram", "ValidationReport", "NicenessReport", "validate", "is_nice",
    "basepoints_both_sides", "make_lens", "make_s3_sphere", "make_s3_torus", "make_s1s2",
    "make_grid_s3", "connected_sum", "parse", "serialize", "load", "save", "corpus", "MapError",
]

"""Nice moves as rewrites of the curve sequences.

Isotopies and handle slides are written for the alpha family; the beta
versions run the same code on the transposed diagram (alpha and beta swapped,
signs negated, corner labels re-expressed).  Every rewrite is followed by a
full check of the result: same genus, valid, nice.
"""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass, field
from typing import Any

from .complex import count_generators, homology
from .diagram import HeegaardDiagram, connected_sum, face_corner, is_nice, make_s3_sphere, make_s3_torus, validate
from .errors import InvarianceViolation, PreconditionFailed, UnpointedFace
from .surface import AI, AO, BI, BO, CCW, KIND_CODES, KIND_NAMES, SECTOR_LABELS

Corner = tuple[int, str]


# -- move records ----------------------------------------------------------------
@dataclass
class Isotopy:
    start: tuple[int, str]  # (crossing, dart kind) on the moving family
    path: list[tuple[int, str]]  # darts of the other family, one per crossed edge
    family: str = "alpha"


@dataclass
class HandleSlide:
    dart: tuple[int, str]  # dart on the sliding curve; its face is the rectangle
    family: str = "alpha"


@dataclass
class StabB:
    face: Corner | None = None


@dataclass
class StabG:
    face: Corner | None = None


@dataclass
class Destab:
    kind: str  # "b" or "g"


MOVE_NAMES = {Isotopy: "isotopy", HandleSlide: "handle_slide", StabB: "stab_b", StabG: "stab_g", Destab: "destab"}


def move_to_json(mv) -> dict:
    out = {"move": MOVE_NAMES[type(mv)]}
    for k, v in asdict(mv).items():
        if k == "face" and v is not None:
            v = {"crossing": v[0], "quadrant": v[1]}
        if v is not None:
            out[k] = v
    return out


def move_from_json(obj: dict):
    kind = obj.get("move")
    try:
        if kind == "isotopy":
            return Isotopy(tuple(obj["start"]), [tuple(p) for p in obj["path"]], obj.get("family", "alpha"))
        if kind == "handle_slide":
            return HandleSlide(tuple(obj["dart"]), obj.get("family", "alpha"))
        if kind in ("stab_b", "stab_g"):
            f = obj.get("face")
            face = None if f is None else (f["crossing"], f["quadrant"])
            return (StabB if kind == "stab_b" else StabG)(face)
        if kind == "destab":
            return Destab(obj["kind"])
    except (KeyError, TypeError) as exc:
        raise PreconditionFailed(f"malformed move record {obj}: {exc}") from None
    raise PreconditionFailed(f"unknown move {kind!r}")


# -- helpers ----------------------------------------------------------------------
def _label_of_kinds(sign: int, kinds: set[int]) -> str:
    order = CCW[sign]
    for pos in range(4):
        if {order[pos], order[(pos + 1) % 4]} == kinds:
            return SECTOR_LABELS[pos]
    raise AssertionError(kinds)


def _kinds_of_label(sign: int, label: str) -> set[int]:
    order = CCW[sign]
    pos = SECTOR_LABELS.index(label)
    return {order[pos], order[(pos + 1) % 4]}


def _swap_corner(signs: dict[int, int], corner: Corner) -> Corner:
    c, q = corner
    kinds = {k ^ 2 for k in _kinds_of_label(signs[c], q)}
    return (c, _label_of_kinds(-signs[c], kinds))


def transpose(d: HeegaardDiagram) -> HeegaardDiagram:
    """Swap the roles of alpha and beta (the same geometric sectors are kept)."""
    s = d.sign
    return HeegaardDiagram.create(
        d.beta, d.alpha, {c: -v for c, v in s.items()},
        [_swap_corner(s, b) for b in d.basepoint_corners],
        [(_swap_corner(s, a), _swap_corner(s, b)) for a, b in d.tubes],
        d.name,
    )


def _insert(curves, after: dict[int, list[int]], before: dict[int, list[int]]):
    out = []
    for cur in curves:
        new = []
        for c in cur:
            new.extend(before.get(c, ()))
            new.append(c)
            new.extend(after.get(c, ()))
        out.append(new)
    return out


def _finish(d: HeegaardDiagram, alpha, beta, signs, bps, tubes, clause: str, genus: int | None = None) -> HeegaardDiagram:
    genus = d.g if genus is None else genus
    try:
        out = HeegaardDiagram.create(alpha, beta, signs, bps, tubes, d.name)
        if out.g != genus:
            raise PreconditionFailed(f"{clause}: genus changed")
        rep = validate(out)
    except PreconditionFailed:
        raise
    except Exception as exc:  # structural failure of the rewrite
        raise PreconditionFailed(f"{clause}: {exc}") from None
    if not rep.valid:
        raise PreconditionFailed(f"{clause}: result invalid ({rep.violations})")
    if not is_nice(out).is_nice:
        raise PreconditionFailed(f"{clause}: result not nice")
    return out


def _family(d, family):
    if family == "alpha":
        return d, lambda x: x
    if family == "beta":
        return transpose(d), transpose
    raise PreconditionFailed(f"unknown family {family!r}")


def _swap_dart(dart):
    c, kind = dart
    return (c, KIND_NAMES[KIND_CODES[kind] ^ 2])


def _face_ok(d, f) -> bool:
    face = d.faces[f]
    return f in d.basepoints or (face.is_disk and face.n_corners == 2)


# -- isotopy ------------------------------------------------------------------
def _arc_clauses(d: HeegaardDiagram, start, path):
    """Pre-checks of a finger arc in the alpha family; returns (clause, data)."""
    m = d.map
    c0, k0 = start
    if c0 not in m.index or KIND_CODES.get(k0) not in (AO, AI):
        return "start on alpha", None
    if not path:
        return "nonempty path", None
    d0 = m.dart(c0, KIND_CODES[k0])
    darts = []
    for c, k in path:
        if c not in m.index or KIND_CODES.get(k) not in (BO, BI):
            return "disjoint from alpha", None
        darts.append(m.dart(c, KIND_CODES[k]))
    cells = [m.cell_of_dart[d0]]
    for b in darts:
        if m.cell_of_dart[b] != cells[-1]:
            return "transverse path", None
        cells.append(m.cell_of_dart[m.involution[b]])
    if len(set(cells[:-1])) != len(cells) - 1:
        return "simple path", None
    f1 = m.face_of_dart[m.involution[d0]]
    ff = m.face_of_dart[m.involution[darts[-1]]]
    if not _face_ok(d, ff):
        return "end face", None
    if not _face_ok(d, f1):
        return "start face", None
    if f1 == ff and f1 not in d.basepoints:
        return "start equals end", None
    return None, (d0, darts)


def _apply_isotopy_alpha(d: HeegaardDiagram, start, path) -> HeegaardDiagram:
    clause, data = _arc_clauses(d, start, path)
    if clause:
        raise PreconditionFailed(clause)
    d0, darts = data
    m = d.map
    c0 = m.crossing_of(d0)
    k0 = m.kind_of(d0)
    n = len(darts)
    base = max(m.crossings) + 1
    L = [base + 2 * i for i in range(n)]
    R = [base + 2 * i + 1 for i in range(n)]
    signs = d.sign
    a_after, a_before = {}, {}
    if k0 == AO:
        a_after[c0] = L + R[::-1]
    else:
        a_before[c0] = R + L[::-1]
    b_after: dict[int, list[int]] = {}
    for i, b in enumerate(darts):
        s = m.crossing_of(b)
        kb = m.kind_of(b)
        if kb == BO:
            b_after[s] = [R[i], L[i]]
        else:
            t = m.crossing_of(m.involution[b])
            b_after[t] = [L[i], R[i]]
        beta_sign = 1 if kb == BO else -1
        along_l = 1 if k0 == AO else -1
        signs[L[i]] = along_l * beta_sign
        signs[R[i]] = -along_l * beta_sign
    alpha = _insert(d.alpha, a_after, a_before)
    beta = _insert(d.beta, b_after, {})
    return _finish(d, alpha, beta, signs, d.basepoint_corners, d.tubes, "traversed pieces")


def check_nice_arc(d: HeegaardDiagram, mv: Isotopy) -> tuple[bool, str | None]:
    try:
        apply_isotopy(d, mv)
    except PreconditionFailed as exc:
        return False, str(exc).split(":")[0]
    return True, None


def apply_isotopy(d: HeegaardDiagram, mv: Isotopy) -> HeegaardDiagram:
    td, back = _family(d, mv.family)
    start, path = mv.start, mv.path
    if mv.family == "beta":
        start, path = _swap_dart(start), [_swap_dart(p) for p in path]
    return back(_apply_isotopy_alpha(td, start, path))


# -- handle slide --------------------------------------------------------------
def _slide_data(d: HeegaardDiagram, dart):
    m = d.map
    c, k = dart
    if c not in m.index or KIND_CODES.get(k) not in (AO, AI):
        raise PreconditionFailed("slide dart must lie on the sliding family")
    d1 = m.dart(c, KIND_CODES[k])
    cell = m.cell_of_dart[d1]
    rf = m.face_of_dart[d1]
    face = d.faces[rf]
    if not (face.is_disk and face.n_corners == 4) or rf in d.basepoints:
        raise PreconditionFailed("slide arc must lie in one unpointed rectangle")
    cyc = m.cells[cell]
    d2 = cyc[(cyc.index(d1) + 2) % 4]
    if m.alpha_of[m.crossing_of(d1)] == m.alpha_of[m.crossing_of(d2)]:
        raise PreconditionFailed("rectangle must join two different curves")
    f1 = m.face_of_dart[m.involution[d1]]
    if f1 not in d.basepoints or f1 == rf:
        raise PreconditionFailed("rear face must be pointed")
    return d1, d2


def _apply_slide_alpha(d: HeegaardDiagram, dart) -> HeegaardDiagram:
    m = d.map
    d1, d2 = _slide_data(d, dart)
    P = m.crossing_of(d1)
    S = m.crossing_of(d2)
    k1, k2 = m.kind_of(d1), m.kind_of(d2)
    a2 = list(d.alpha[m.alpha_of[S]])
    if k2 == AO:
        i = a2.index(S)
        order = a2[i + 1:] + a2[: i + 1]
    else:
        rev = a2[::-1]
        i = rev.index(S)
        order = rev[i + 1:] + rev[: i + 1]
    base = max(m.crossings) + 1
    f = {c: base + j for j, c in enumerate(order)}
    flip = k1 != k2
    signs = d.sign
    for c in order:
        signs[f[c]] = -signs[c] if flip else signs[c]
    a_after, a_before = {}, {}
    if k1 == AO:
        a_after[P] = [f[c] for c in order]
    else:
        a_before[P] = [f[c] for c in order[::-1]]
    s = 1 if k2 == AO else -1
    b_after, b_before = {}, {}
    for c in order:
        (b_after if d.sign[c] * s == 1 else b_before)[c] = [f[c]]
    alpha = _insert(d.alpha, a_after, a_before)
    beta = _insert(d.beta, b_after, b_before)

    # corners squeezed between the curve and its pushed-off copy move to the copy
    r_side = {"A", "B"} if k2 == AO else {"C", "D"}

    def move(corner):
        c, q = corner
        if c not in f or q not in r_side:
            return corner
        kinds = _kinds_of_label(d.sign[c], q)
        ka = next(x for x in kinds if x in (AO, AI))
        kb = next(x for x in kinds if x in (BO, BI))
        ka2 = (ka ^ 1) if flip else ka
        return (f[c], _label_of_kinds(signs[f[c]], {ka2, kb}))

    bps = [move(b) for b in d.basepoint_corners]
    tubes = [(move(a), move(b)) for a, b in d.tubes]
    return _finish(d, alpha, beta, signs, bps, tubes, "handle slide")


def apply_handle_slide(d: HeegaardDiagram, mv: HandleSlide) -> HeegaardDiagram:
    td, back = _family(d, mv.family)
    dart = _swap_dart(mv.dart) if mv.family == "beta" else mv.dart
    return back(_apply_slide_alpha(td, dart))


def slide_candidates(d: HeegaardDiagram) -> list[HandleSlide]:
    out = []
    for family in ("alpha", "beta"):
        td = d if family == "alpha" else transpose(d)
        for c in td.crossings:
            for k in ("alpha-out", "alpha-in"):
                try:
                    _slide_data(td, (c, k))
                except PreconditionFailed:
                    continue
                out.append(HandleSlide((c, k) if family == "alpha" else _swap_dart((c, k)), family))
    return out


# -- stabilizations -------------------------------------------------------------
def _pointed_corner(d: HeegaardDiagram, face) -> Corner:
    corner = d.basepoint_corners[0] if face is None else face_corner(d, face)
    try:
        f = d.map.face_of_corner(corner)
    except Exception:
        raise UnpointedFace(f"no such corner {corner}") from None
    if f not in d.basepoints:
        raise UnpointedFace("stabilization needs a pointed face")
    return corner


def apply_stab_b(d: HeegaardDiagram, face=None) -> HeegaardDiagram:
    """Two new circles meeting twice inside a pointed face, plus a new basepoint."""
    out = connected_sum(d, make_s3_sphere(), _pointed_corner(d, face), (0, "A"))
    return out.with_name(d.name)


def apply_stab_g(d: HeegaardDiagram, face=None) -> HeegaardDiagram:
    """A new handle inside a pointed face carrying one alpha and one beta meeting once."""
    out = connected_sum(d, make_s3_torus(), _pointed_corner(d, face), (0, "A"))
    return out.with_name(d.name)


def _opposite(label: str) -> str:
    return {"A": "C", "C": "A", "B": "D", "D": "B"}[label]


def destab_candidates(d: HeegaardDiagram, kind: str) -> list[dict]:
    """Leaf components matching our own stabilization patterns."""
    m = d.map
    out = []
    comps = m.graph_components()
    if len(comps) < 2:
        return out
    for comp in comps:
        cs = set(comp)
        alphas = [a for a in d.alpha if set(a) <= cs]
        betas = [b for b in d.beta if set(b) <= cs]
        if len(alphas) != 1 or len(betas) != 1:
            continue
        a, b = alphas[0], betas[0]
        touching = [t for t in d.tubes if (t[0][0] in cs) != (t[1][0] in cs)]
        inside = [t for t in d.tubes if t[0][0] in cs and t[1][0] in cs]
        if len(touching) != 1 or inside:
            continue
        tube = touching[0]
        mine, other = (tube[0], tube[1]) if tube[0][0] in cs else (tube[1], tube[0])
        my_bps = [bp for bp in d.basepoint_corners if bp[0] in cs]
        tube_cell = m.cell_of_dart[m.label_dart(*mine)]
        if kind == "g" and len(a) == 1 and a == b:
            if all(m.cell_of_dart[m.label_dart(*bp)] == tube_cell for bp in my_bps):
                out.append({"component": sorted(cs), "tube": tube, "other": other, "drop": []})
        elif kind == "b" and len(a) == 2 and set(a) == set(b) and d.sign[a[0]] == -d.sign[a[1]]:
            lens = m.cell_of_dart[m.label_dart(mine[0], _opposite(mine[1]))]
            cells = {m.cell_of_dart[m.label_dart(*bp)] for bp in my_bps}
            far = [bp for bp in my_bps if m.cell_of_dart[m.label_dart(*bp)] == lens]
            if len(far) == 1 and cells <= {lens, tube_cell}:
                out.append({"component": sorted(cs), "tube": tube, "other": other, "drop": far})
    return out


def destabilize(d: HeegaardDiagram, kind: str) -> HeegaardDiagram:
    cands = destab_candidates(d, kind)
    if not cands:
        raise PreconditionFailed(f"no type-{kind} stabilization pattern found")
    cand = cands[0]
    cs = set(cand["component"])
    bps = []
    for bp in d.basepoint_corners:
        if bp[0] not in cs:
            bps.append(bp)
        elif bp not in cand["drop"]:
            bps.append(cand["other"])  # the merged face's basepoint stays on our side
    tubes = [t for t in d.tubes if t != cand["tube"]]
    return _finish(
        d,
        [a for a in d.alpha if not set(a) <= cs],
        [b for b in d.beta if not set(b) <= cs],
        {c: s for c, s in d.signs if c not in cs},
        bps, tubes, "destabilization", genus=d.g - (1 if kind == "g" else 0),
    )


def apply_move(d: HeegaardDiagram, mv) -> HeegaardDiagram:
    if isinstance(mv, Isotopy):
        return apply_isotopy(d, mv)
    if isinstance(mv, HandleSlide):
        return apply_handle_slide(d, mv)
    if isinstance(mv, StabB):
        return apply_stab_b(d, mv.face)
    if isinstance(mv, StabG):
        return apply_stab_g(d, mv.face)
    if isinstance(mv, Destab):
        return destabilize(d, mv.kind)
    raise PreconditionFailed(f"unknown move {mv!r}")


# expected change of dim under each move: (numerator, denominator)
DIM_FACTOR = {"isotopy": (1, 1), "handle_slide": (1, 1), "stab_g": (1, 1), "stab_b": (2, 1),
              "destab_g": (1, 1), "destab_b": (1, 2)}


def _move_label(mv) -> str:
    if isinstance(mv, Destab):
        return f"destab_{mv.kind}"
    return MOVE_NAMES[type(mv)]


# -- random moves -----------------------------------------------------------------
def random_isotopy(d: HeegaardDiagram, rng: random.Random, max_len: int = 2, tries: int = 40) -> Isotopy | None:
    for _ in range(tries):
        family = rng.choice(("alpha", "beta"))
        td = d if family == "alpha" else transpose(d)
        m = td.map
        c = rng.choice(td.crossings)
        k = rng.choice((AO, AI))
        d0 = m.dart(c, k)
        n = rng.randint(1, max_len)
        cells = [m.cell_of_dart[d0]]
        darts = []
        ok = True
        for i in range(n):
            opts = [b for b in m.cells[cells[-1]] if m.kind_of(b) in (BO, BI)]
            if i < n - 1:
                opts = [b for b in opts if m.cell_of_dart[m.involution[b]] not in cells]
            if not opts:
                ok = False
                break
            b = rng.choice(opts)
            darts.append(b)
            cells.append(m.cell_of_dart[m.involution[b]])
        if not ok:
            continue
        start = (c, KIND_NAMES[k])
        path = [(m.crossing_of(b), KIND_NAMES[m.kind_of(b)]) for b in darts]
        if family == "beta":
            start, path = _swap_dart(start), [_swap_dart(p) for p in path]
        mv = Isotopy(start, path, family)
        try:
            apply_isotopy(d, mv)
        except PreconditionFailed:
            continue
        return mv
    return None


@dataclass
class FuzzConfig:
    n_moves: int = 5
    seed: int = 0
    max_crossings: int = 20
    max_generators: int = 200
    weights: dict[str, float] = field(default_factory=lambda: {
        "isotopy": 0.35, "handle_slide": 0.25, "stab_b": 0.1, "stab_g": 0.1, "destab": 0.2,
    })


@dataclass
class FuzzReport:
    start: str
    seed: int
    steps: list[dict[str, Any]]
    initial: tuple[int, int]
    final: tuple[int, int]
    ok: bool

    def to_json(self) -> dict:
        return asdict(self)


def _propose(d: HeegaardDiagram, rng: random.Random, cfg: FuzzConfig):
    names = list(cfg.weights)
    kinds = rng.choices(names, [cfg.weights[n] for n in names], k=12)
    for kind in kinds:
        if kind == "isotopy":
            mv = random_isotopy(d, rng)
        elif kind == "handle_slide":
            cands = slide_candidates(d)
            mv = rng.choice(cands) if cands else None
        elif kind == "stab_b":
            mv = StabB(rng.choice(d.basepoint_corners))
        elif kind == "stab_g":
            mv = StabG(rng.choice(d.basepoint_corners))
        else:
            opts = [k for k in ("b", "g") if destab_candidates(d, k)]
            mv = Destab(rng.choice(opts)) if opts else None
        if mv is None:
            continue
        try:
            out = apply_move(d, mv)
        except PreconditionFailed:
            continue
        if len(out.crossings) > cfg.max_crossings:
            continue
        if count_generators(out, cfg.max_generators) > cfg.max_generators:
            continue
        return mv, out
    return None, d


def fuzz_invariance(d: HeegaardDiagram, n_moves: int = 5, seed: int = 0, config: FuzzConfig | None = None) -> FuzzReport:
    """Apply seeded random nice moves, checking how dim HF changes after each."""
    from .complex import StableClass, stable_equal

    cfg = config or FuzzConfig(n_moves=n_moves, seed=seed)
    rng = random.Random(cfg.seed)
    dim = homology(d).total
    initial = StableClass(dim, d.b)
    steps = []
    cur = d
    for step in range(cfg.n_moves):
        mv, nxt = _propose(cur, rng, cfg)
        if mv is None:
            steps.append({"step": step, "move": None})
            continue
        new_dim = homology(nxt).total
        label = _move_label(mv)
        num, den = DIM_FACTOR[label]
        rec = {
            "step": step, "move": move_to_json(mv), "dim": new_dim, "b": nxt.b, "k": nxt.k, "g": nxt.g,
            "crossings": len(nxt.crossings),
        }
        steps.append(rec)
        if new_dim * den != dim * num or not stable_equal(StableClass(new_dim, nxt.b), initial):
            raise InvarianceViolation(f"{label} changed dim {dim} -> {new_dim}; trace {steps}")
        cur, dim = nxt, new_dim
    return FuzzReport(d.name, cfg.seed, steps, (initial.dim, initial.b), (dim, cur.b), True)

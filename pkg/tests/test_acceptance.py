"""The eleven acceptance criteria, each reported as one PASS/FAIL line."""

import time

import pytest

from conftest import ACCEPTANCE_LINES
from nicehf import diagram as dg
from nicehf.complex import StableClass, differential, generator_classes, homology, stable_equal, verify_d_squared
from nicehf.domains import pi2prime_and_h2
from nicehf.moves import DIM_FACTOR, apply_move, fuzz_invariance, move_from_json
from nicehf.oracle import all_polygons, build_surface, compare_with_search, maslov_additivity_sample
from nicehf.twisted import all_twisted, univariate_homology

NAMED = [dg.make_s3_sphere(), dg.make_s3_torus(), dg.make_s1s2()]
LENSES = [d for d in dg.corpus(7) if d.name.startswith("L(")]
SUMS = [dg.connected_sum(dg.make_s3_torus(), dg.make_s3_torus()),
        dg.connected_sum(dg.make_s3_torus(), dg.make_s1s2())]
FIXTURES = NAMED + LENSES + SUMS + [dg.make_grid_s3()]


def descendants():
    """Each fixture after a few seeded random moves, kept if the oracle can handle it."""
    out = []
    for i, d in enumerate(FIXTURES):
        for seed in (i, 100 + i):
            e = _replay(d, fuzz_invariance(d, 5, seed).steps)
            if len(e.faces) <= 22:
                out.append(e)
    return out


def report(n: int, ok: bool, detail: str):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {n:2d}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def _replay(d, steps):
    for st in steps:
        if st["move"] is not None:
            d = apply_move(d, move_from_json(st["move"]))
    return d


def test_01_d_squared():
    t0 = time.perf_counter()
    checked = 0
    bad = []
    for i, d in enumerate(FIXTURES):
        rep = fuzz_invariance(d, 5, seed=i)
        for e in (d, _replay(d, rep.steps)):
            ok, _ = verify_d_squared(differential(e))
            checked += 1
            if not ok:
                bad.append(e.name)
    dt = time.perf_counter() - t0
    report(1, not bad and dt < 30, f"d^2 = 0 on {checked} diagrams (fixtures and 5-move descendants), {dt:.2f}s < 30s")


def test_02_sphere_and_torus():
    res = []
    for d, want in ((dg.make_s3_sphere(), 2), (dg.make_s3_torus(), 1)):
        t0 = time.perf_counter()
        got = homology(d, differential(d)).total
        res.append((d.name, got, want, time.perf_counter() - t0))
    ok = all(g == w and t < 1 for _, g, w, t in res)
    report(2, ok, ", ".join(f"{n} dim {g} (want {w}, {t:.3f}s)" for n, g, w, t in res))


def test_03_lens_spaces():
    cases = [dg.make_lens(p, 1) for p in range(2, 8)] + [dg.make_lens(5, 2)]
    fails = []
    slow = 0.0
    for d in cases:
        t0 = time.perf_counter()
        p = len(d.crossings)
        diff = differential(d)
        h = homology(d, diff)
        classes = generator_classes(d, diff.generators)
        if not (h.total == p and not diff.nonzero() and len(classes) == p
                and all(len(c) == 1 for c in classes) and all_polygons(d) == {}):
            fails.append(d.name)
        slow = max(slow, time.perf_counter() - t0)
    report(3, not fails and slow < 1,
           f"L(p,1) p=2..7 and L(5,2): dim p, zero differential, p singleton classes, no oracle polygons; max {slow:.3f}s")


def test_04_s1s2():
    t0 = time.perf_counter()
    a = homology(dg.make_s1s2(), differential(dg.make_s1s2())).total
    b = homology(SUMS[1], differential(SUMS[1])).total
    dt = time.perf_counter() - t0
    report(4, a == 2 and b == 2 and dt < 1, f"s1s2 dim {a}, s3_torus#s1s2 dim {b} (want 2, 2), {dt:.3f}s")


def test_05_move_invariance():
    t0 = time.perf_counter()
    applied = 0
    kinds = {}
    seed = 0
    pool = NAMED + [dg.make_grid_s3(), dg.make_lens(3, 1), dg.make_lens(5, 2)] + SUMS
    while applied < 120:
        d = pool[seed % len(pool)]
        rep = fuzz_invariance(d, 8, seed)  # raises on any violation
        dim, b = homology(d).total, d.b
        start = StableClass(dim, b)
        for st in rep.steps:
            if st["move"] is None:
                continue
            label = st["move"]["move"]
            if label == "destab":
                label = f"destab_{st['move']['kind']}"
            num, den = DIM_FACTOR[label]
            assert st["dim"] * den == dim * num
            assert stable_equal(StableClass(st["dim"], st["b"]), start)
            dim = st["dim"]
            kinds[label] = kinds.get(label, 0) + 1
            applied += 1
        seed += 1
    dt = time.perf_counter() - t0
    summary = ", ".join(f"{k} {v}" for k, v in sorted(kinds.items()))
    report(5, applied >= 100 and dt < 300, f"{applied} fuzz moves ({summary}), dims as predicted, {dt:.1f}s < 300s")


def test_06_oracle_equivalence():
    bad = 0
    diagrams = [d for d in FIXTURES if len(d.faces) <= 22] + descendants()
    pairs = 0
    for d in diagrams:
        bad += len(compare_with_search(d))
        pairs += len(all_polygons(d))
    report(6, bad == 0, f"{len(diagrams)} diagrams with <= 22 faces (fixtures and fuzzed descendants), {pairs} polygon pairs, {bad} discrepancies")


def test_07_polygon_geometry():
    n = 0
    errors = []
    for d in FIXTURES + descendants():
        diff = differential(d)
        for (i, j), doms in diff.witnesses.items():
            x, y = diff.generators[i], diff.generators[j]
            moved = sum(1 for a, b in zip(x, y) if a != b)
            for D in doms:
                n += 1
                try:
                    s = build_surface(d, D, x, y)
                except Exception as exc:  # any failure counts against the criterion
                    errors.append(repr(exc))
                    continue
                ok = (s.euler_characteristic == 1 and s.boundary_components == 1
                      and s.n_corners == 2 * moved and moved in (1, 2)
                      and all(k == 1 for _, k in s.corners))
                if not ok:
                    errors.append(f"{d.name} {x}->{y}")
    report(7, n > 0 and not errors, f"{n} witnesses tile disks with one boundary circle; bigon/rectangle corners; {len(errors)} exceptions")


def test_08_additivity():
    t0 = time.perf_counter()
    for d in FIXTURES:
        maslov_additivity_sample(d, 1000, seed=7)
    dt = time.perf_counter() - t0
    report(8, dt < 10, f"1000 composable pairs on each of {len(FIXTURES)} fixtures, exact, {dt:.2f}s < 10s")


def test_09_twisted_examples():
    t0 = time.perf_counter()
    (s,) = all_twisted(dg.make_s3_sphere())
    hs = univariate_homology(s)
    entry = str(s.matrix[0][1])
    (t,) = all_twisted(dg.make_s3_torus())
    ht = univariate_homology(t)
    dt = time.perf_counter() - t0
    ok = entry == "1 + t" and hs.free_rank == 0 and hs.divisors == [0b11] and hs.gf2_dim == 1 and ht.gf2_dim == 1
    report(9, ok and dt < 1, f"sphere d_T x = ({entry}) y, torsion (1+t), dim {hs.gf2_dim}; torus dim {ht.gf2_dim}; {dt:.3f}s")


def test_10_h2_ranks():
    out = []
    ok = True
    for d in FIXTURES:
        want = d.b if "s1s2" in d.name else d.b - 1
        got = pi2prime_and_h2(d).rank
        ok &= got == want
        out.append(got == want)
    report(10, ok, f"H2 rank b-1 on {sum(1 for d in FIXTURES if 's1s2' not in d.name)} QHS fixtures, b on the 2 with an S1xS2 summand")


def test_11_augmentation():
    n = 0
    bad = 0
    for d in FIXTURES:
        for c in all_twisted(d):
            n += 1
            bad += c.augmented() != c.untwisted
    report(11, bad == 0, f"augmentation equals the untwisted differential on {n} classes across {len(FIXTURES)} fixtures")

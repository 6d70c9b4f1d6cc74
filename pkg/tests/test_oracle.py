import pytest

from nicehf import diagram as dg
from nicehf.complex import differential
from nicehf.domains import euler_measure, maslov
from nicehf.errors import AdditivityViolation, PreconditionFailed, TooLarge
from nicehf.moves import fuzz_invariance, apply_move, move_from_json
from nicehf.oracle import (
    all_polygons, brute_force_polygons, build_surface, compare_with_search,
    maslov_additivity_sample, oracle_maslov,
)

CORPUS = dg.corpus(7)


@pytest.mark.parametrize("d", CORPUS, ids=lambda d: d.name)
def test_search_matches_exhaustion(d):
    assert compare_with_search(d) == []


def test_lens_has_no_polygons():
    for p in range(2, 8):
        assert all_polygons(dg.make_lens(p, 1)) == {}


def test_sphere_pair(sphere):
    assert len(brute_force_polygons(sphere, (0,), (1,))) == 2
    assert brute_force_polygons(sphere, (1,), (0,)) == []


def test_oracle_maslov_agrees(corpus):
    for d in corpus:
        for (x, y), doms in all_polygons(d).items():
            for D in doms:
                assert oracle_maslov(d, D, x, y) == maslov(d, D, x, y) == 1


@pytest.mark.parametrize("d", CORPUS, ids=lambda d: d.name)
def test_witness_surfaces(d):
    diff = differential(d)
    for (i, j), doms in diff.witnesses.items():
        x, y = diff.generators[i], diff.generators[j]
        for D in doms:
            s = build_surface(d, D, x, y)
            assert s.euler_characteristic == 1
            assert s.boundary_components == 1
            moving = {c for c in x if c not in y} | {c for c in y if c not in x}
            assert s.n_corners == len(moving) in (2, 4)
            assert all(k == 1 for _, k in s.corners)
            assert s.euler_measure == euler_measure(d, D)


def test_fuzzed_diagrams_agree():
    for seed in range(3):
        d = dg.make_grid_s3()
        for st in fuzz_invariance(d, 3, seed).steps:
            if st["move"] is not None:
                d = apply_move(d, move_from_json(st["move"]))
        assert compare_with_search(d) == []


def test_surface_refuses_pointed_domain(sphere):
    D = [0] * 4
    D[sphere.basepoint_faces[0]] = 1
    with pytest.raises(PreconditionFailed):
        build_surface(sphere, D, (0,), (1,))


def test_cap_is_enforced():
    with pytest.raises(TooLarge):
        all_polygons(dg.make_lens(7, 2), cap=3)


def test_additivity_sample(corpus):
    for d in corpus[:6]:
        assert maslov_additivity_sample(d, 100, seed=1).ok


def test_additivity_sample_detects_a_wrong_index(monkeypatch, sphere):
    import nicehf.domains as dm

    real = dm.maslov
    monkeypatch.setattr(dm, "maslov", lambda d, D, x, y: real(d, D, x, y) + (1 if x == y else 0))
    with pytest.raises(AdditivityViolation):
        maslov_additivity_sample(sphere, 50, seed=0)

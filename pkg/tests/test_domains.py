import random

import pytest
from hypothesis import given, strategies as st

from nicehf import diagram as dg
from nicehf.complex import enumerate_generators, generator_classes
from nicehf.domains import (
    add, check_corners, euler_measure, h2_class, maslov, periodic_basis, pi2prime_and_h2,
    reference_domain, scale, solve_pi2, whole_surface,
)
from nicehf.errors import NotInLattice

CORPUS = dg.corpus(7)


def test_sphere_bigon_has_index_one(sphere):
    x, y = (0,), (1,)
    lat = solve_pi2(sphere, x, y)
    assert lat.particular is not None
    assert check_corners(sphere, lat.particular, x, y)
    # the two unpointed bigons are the two domains from x to y
    bigons = [tuple(int(f == i) for f in range(4)) for i in range(4) if i not in sphere.basepoints]
    for D in bigons:
        assert check_corners(sphere, D, x, y)
        assert maslov(sphere, D, x, y) == 1


@pytest.mark.parametrize("d", CORPUS, ids=lambda d: d.name)
def test_whole_surface(d):
    S = whole_surface(d)
    assert euler_measure(d, S) == 2 - 2 * d.g
    x = enumerate_generators(d)[0]
    assert check_corners(d, S, x, x)
    assert maslov(d, S, x, x) == 2 * d.b


@pytest.mark.parametrize("d", CORPUS, ids=lambda d: d.name)
def test_periodic_domains(d):
    x = enumerate_generators(d)[0]
    for P in periodic_basis(d):
        assert check_corners(d, P, x, x)
        assert all(P[f] == 0 for f in d.basepoint_faces)


@pytest.mark.parametrize("d", CORPUS, ids=lambda d: d.name)
def test_h2_rank(d):
    # one extra rank for each extra basepoint, and one for the S1xS2 summand
    expected = d.b - 1 + (1 if "s1s2" in d.name else 0)
    assert pi2prime_and_h2(d).rank == expected


def test_h2_class_of_sigma(grid=dg.make_grid_s3()):
    basis = list(periodic_basis(grid))
    co, m = h2_class(grid, basis, whole_surface(grid))
    assert co == (0,) and m == grid.b
    P = add(scale(basis[0], 3), whole_surface(grid))
    assert h2_class(grid, basis, P) == ((3,), grid.b)


def test_h2_class_rejects_non_periodic(sphere):
    with pytest.raises(NotInLattice):
        h2_class(sphere, list(periodic_basis(sphere)), (1, 0, 0, 0))


@pytest.mark.parametrize("d", CORPUS, ids=lambda d: d.name)
def test_reference_domains_avoid_basepoints(d):
    gens = enumerate_generators(d)
    for cls in generator_classes(d, gens):
        base = gens[cls[0]]
        for i in cls:
            D = reference_domain(d, base, gens[i])
            assert check_corners(d, D, base, gens[i])
            assert all(D[f] == 0 for f in d.basepoint_faces)


@given(st.integers(0, len(CORPUS) - 1), st.integers(0, 10**6))
def test_maslov_is_additive(i, seed):
    d = CORPUS[i]
    rng = random.Random(seed)
    gens = enumerate_generators(d)
    cls = rng.choice(generator_classes(d, gens))
    x, y, z = (gens[rng.choice(cls)] for _ in range(3))
    D1, D2 = solve_pi2(d, x, y).particular, solve_pi2(d, y, z).particular
    S = add(D1, D2)
    assert check_corners(d, S, x, z)
    assert maslov(d, S, x, z) == maslov(d, D1, x, y) + maslov(d, D2, y, z)


def test_different_classes_have_no_domain():
    d = dg.make_lens(5, 2)
    gens = enumerate_generators(d)
    assert solve_pi2(d, gens[0], gens[1]).particular is None

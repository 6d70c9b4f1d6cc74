import pytest

from nicehf import diagram as dg
from nicehf.errors import NotUnivariate
from nicehf.laurent import GroupRingElement
from nicehf.moves import apply_move, fuzz_invariance, move_from_json
from nicehf.twisted import (
    all_twisted, twisted_grading, univariate_homology, verify_twisted_d_squared,
)

CORPUS = dg.corpus(7)


def test_sphere_twisted_differential(sphere):
    (c,) = all_twisted(sphere)
    assert c.matrix[0][1] == GroupRingElement.from_exponents([(0,), (1,)])
    h = univariate_homology(c)
    assert h.free_rank == 0 and h.divisors == [0b11] and h.gf2_dim == 1


def test_torus_twisted_homology(torus):
    (c,) = all_twisted(torus)
    assert c.m == 0
    assert univariate_homology(c).gf2_dim == 1


@pytest.mark.parametrize("d", CORPUS, ids=lambda d: d.name)
def test_twisted_square_and_augmentation(d):
    for c in all_twisted(d):
        assert verify_twisted_d_squared(c)
        assert c.augmented() == c.untwisted


def test_s1s2_twisted_is_torsion():
    (c,) = all_twisted(dg.make_s1s2())
    assert c.m == 1
    h = univariate_homology(c)
    # the two untwisted generators cancel except for torsion (1+t)
    assert h.free_rank == 0 and h.divisors == [0b11] and h.gf2_dim == 1


def test_corrupted_twisted_matrix_is_caught(sphere):
    # add a fake arrow back from y to x: d_T^2 becomes (1+t)^2 on x
    (c,) = all_twisted(sphere)
    c.matrix[1][0] = GroupRingElement.from_exponents([(0,), (1,)])
    assert not verify_twisted_d_squared(c)


def test_two_variables_are_not_univariate():
    d = dg.connected_sum(dg.make_s3_sphere(), dg.make_s3_sphere())
    for c in all_twisted(d):
        assert c.m == 2
        assert verify_twisted_d_squared(c)
        with pytest.raises(NotUnivariate):
            univariate_homology(c)


def test_twisted_grading_of_sphere(sphere):
    (c,) = all_twisted(sphere)
    gr, mod = twisted_grading(sphere, c, ((0,), (0,)), ((1,), (0,)))
    assert gr == 1 and mod == 0


def test_twisted_checks_survive_moves():
    for seed in range(3):
        rep = fuzz_invariance(dg.make_grid_s3(), 4, seed)
        d = dg.make_grid_s3()
        for st in rep.steps:
            if st["move"] is not None:
                d = apply_move(d, move_from_json(st["move"]))
        for c in all_twisted(d):
            assert verify_twisted_d_squared(c)
            assert c.augmented() == c.untwisted


@pytest.mark.parametrize("name", ["s3_sphere", "s1s2", "grid_s3", "s3_torus#s1s2"])
@pytest.mark.parametrize("shift", [1, -2, 3])
def test_homology_ignores_choice_of_reference_domains(name, shift):
    from nicehf.domains import periodic_basis
    from nicehf.twisted import reference_domains, twisted_differential

    d = next(e for e in CORPUS if e.name == name)
    (c,) = all_twisted(d)
    P = periodic_basis(d)[0]
    refs = reference_domains(d, c.generators)
    # move every reference domain except the base by a different multiple of P
    alt = {y: tuple(a + (i * shift) * p for a, p in zip(D, P)) for i, (y, D) in enumerate(sorted(refs.items()))}
    c2 = twisted_differential(d, c.generators, refs=alt)
    assert verify_twisted_d_squared(c2)
    h1, h2 = univariate_homology(c), univariate_homology(c2)
    assert (h1.free_rank, h1.divisors) == (h2.free_rank, h2.divisors)

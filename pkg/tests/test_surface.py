from fractions import Fraction
from math import gcd

import pytest
from hypothesis import assume, given, strategies as st

from nicehf import diagram as dg
from nicehf.errors import DisconnectedMap, DuplicateCrossing, MissingCrossing
from nicehf.surface import AI, AO, BI, BO, CombinatorialMap, euler_characteristic, genus


def test_torus_has_one_square_face(torus):
    m = torus.map
    assert len(m.faces) == 1
    assert m.faces[0].n_corners == 4
    assert torus.g == 1


def test_sphere_has_four_bigons(sphere):
    assert sphere.g == 0
    assert sorted(f.n_corners for f in sphere.faces) == [2, 2, 2, 2]


def test_lens_faces_are_squares():
    d = dg.make_lens(3, 1)
    assert [f.n_corners for f in d.faces] == [4, 4, 4]
    assert d.g == 1


def test_s1s2_tube_raises_genus():
    assert dg.make_s1s2().g == 1


def test_involution_and_rotation_are_consistent(corpus):
    for d in corpus:
        m = d.map
        for x in range(len(m.darts)):
            assert m.involution[m.involution[x]] == x
            assert m.involution[x] != x
            # the partner dart has the same family and swapped direction
            assert m.kind_of(m.involution[x]) == m.kind_of(x) ^ 1


def test_every_dart_lies_on_exactly_one_face(corpus):
    for d in corpus:
        seen = [x for f in d.faces for x in f.darts]
        assert sorted(seen) == list(range(len(d.map.darts)))


def test_quadrant_faces_match_labels(sphere):
    m = sphere.map
    for c in m.crossings:
        quads = m.quadrant_faces(c)
        for lab, f in zip("ABCD", quads):
            assert m.face_of_corner((c, lab)) == f


@given(st.integers(2, 9).flatmap(lambda p: st.tuples(st.just(p), st.integers(1, p - 1))))
def test_gauss_bonnet_on_lenses(pq):
    p, q = pq
    assume(gcd(p, q) == 1)
    d = dg.make_lens(p, q)
    total = sum(f.euler_measure for f in d.faces)
    assert total == 2 - 2 * d.g


def test_gauss_bonnet_on_corpus(corpus):
    for d in corpus:
        total = sum((f.euler_measure for f in d.faces), Fraction(0))
        assert total == euler_characteristic(d.map) == 2 - 2 * genus(d.map)


def test_map_errors():
    with pytest.raises(DuplicateCrossing):
        CombinatorialMap([[0, 0]], [[0]], {0: 1})
    with pytest.raises(MissingCrossing):
        CombinatorialMap([[0, 1]], [[0]], {0: 1, 1: 1})
    with pytest.raises(DisconnectedMap):
        CombinatorialMap([[0], [1]], [[0], [1]], {0: 1, 1: 1})


def test_dart_kind_constants():
    assert (AO, AI, BO, BI) == (0, 1, 2, 3)

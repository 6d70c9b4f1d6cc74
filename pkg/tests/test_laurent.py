from hypothesis import given, strategies as st

from nicehf.laurent import (
    GroupRingElement, pdeg, pdivmod, pformat, pmul, smith_diagonal, strip_t,
)

polys = st.integers(0, 2**12)
nonzero = st.integers(1, 2**12)


@given(polys, nonzero)
def test_division_identity(a, b):
    q, r = pdivmod(a, b)
    assert pmul(q, b) ^ r == a
    assert r == 0 or pdeg(r) < pdeg(b)


@given(polys, polys, polys)
def test_multiplication_distributes(a, b, c):
    assert pmul(a, b ^ c) == pmul(a, b) ^ pmul(a, c)
    assert pmul(a, b) == pmul(b, a)


def test_format_and_strip():
    assert pformat(0b11) == "1+t"
    assert pformat(0b101) == "1+t^2"
    assert strip_t(0b1100) == 0b11


def test_smith_of_diagonal_and_mixed():
    assert smith_diagonal([[0b11]]) == [0b11]
    # diag(1+t, 1+t^2) has invariant factors 1+t, 1+t^2
    assert smith_diagonal([[0b11, 0], [0, 0b101]]) == [0b11, 0b101]
    # coprime entries collapse to 1 and their product
    d = smith_diagonal([[0b10, 0], [0, 0b11]])
    assert d[0] == 1 and d[1] == pmul(0b10, 0b11)


@given(st.lists(st.lists(st.integers(0, 15), min_size=3, max_size=3), min_size=3, max_size=3))
def test_smith_divisibility_chain(A):
    d = smith_diagonal(A)
    for a, b in zip(d, d[1:]):
        assert pdivmod(b, a)[1] == 0


@given(st.lists(st.tuples(st.integers(-3, 3)), max_size=6), st.lists(st.tuples(st.integers(-3, 3)), max_size=6))
def test_augmentation_is_a_ring_map(e1, e2):
    a, b = GroupRingElement.from_exponents(e1), GroupRingElement.from_exponents(e2)
    assert (a + b).augmentation() == (a.augmentation() + b.augmentation()) % 2
    assert (a * b).augmentation() == a.augmentation() * b.augmentation()


def test_string_form():
    assert str(GroupRingElement.from_exponents([(0,), (1,)])) == "1 + t"
    assert str(GroupRingElement.from_exponents([(0,), (0,)])) == "0"

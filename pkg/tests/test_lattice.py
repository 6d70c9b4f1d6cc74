from fractions import Fraction

from hypothesis import given, strategies as st

from nicehf.lattice import IntegerSystem, coordinates, hnf_basis, row_hnf

small = st.integers(-4, 4)


def matrices(max_r=5, max_c=5):
    return st.integers(1, max_r).flatmap(
        lambda r: st.integers(1, max_c).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


def _mul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


def _det(M):
    M = [[Fraction(x) for x in r] for r in M]
    n, det = len(M), Fraction(1)
    for i in range(n):
        p = next((r for r in range(i, n) if M[r][i]), None)
        if p is None:
            return 0
        if p != i:
            M[i], M[p] = M[p], M[i]
            det = -det
        det *= M[i][i]
        for r in range(i + 1, n):
            f = M[r][i] / M[i][i]
            M[r] = [a - f * b for a, b in zip(M[r], M[i])]
    return det


@given(matrices())
def test_hnf_transform_is_unimodular(A):
    H, T, piv = row_hnf(A)
    assert _mul(T, A) == H
    assert abs(_det(T)) == 1
    for i, p in enumerate(piv):
        assert H[i][p] > 0
        assert all(H[i][c] == 0 for c in range(p))
        for j in range(i):
            assert 0 <= H[j][p] < H[i][p]
    assert all(not any(r) for r in H[len(piv):])


@given(matrices(), st.data())
def test_solve_recovers_a_preimage(M, data):
    n = data.draw(st.lists(small, min_size=len(M[0]), max_size=len(M[0])))
    r = [sum(a * b for a, b in zip(row, n)) for row in M]
    sys = IntegerSystem(M)
    sol = sys.solve(r)
    assert sol is not None
    assert [sum(a * b for a, b in zip(row, sol)) for row in M] == r


@given(matrices())
def test_kernel_is_annihilated(M):
    sys = IntegerSystem(M)
    ker = sys.kernel()
    for k in ker:
        assert all(sum(a * b for a, b in zip(row, k)) == 0 for row in M)
    assert len(ker) == len(M[0]) - sys.rank


@given(matrices(), st.data())
def test_residue_is_a_class_invariant(M, data):
    sys = IntegerSystem(M)
    r = data.draw(st.lists(small, min_size=len(M), max_size=len(M)))
    n = data.draw(st.lists(small, min_size=len(M[0]), max_size=len(M[0])))
    shifted = [a + sum(x * y for x, y in zip(row, n)) for a, row in zip(r, M)]
    assert sys.residue(r) == sys.residue(shifted)
    assert (sys.solve(r) is None) == any(sys.residue(r))


def test_non_solvable_system():
    sys = IntegerSystem([[2, 0], [0, 2]])
    assert sys.solve([1, 0]) is None
    assert sys.solve([2, -4]) == [1, -2]


@given(matrices())
def test_coordinates_in_hnf_basis(rows):
    B = hnf_basis(rows)
    if not B:
        return
    co = [3, -1, 2, 0, 1][: len(B)]
    v = [sum(c * b[j] for c, b in zip(co, B)) for j in range(len(B[0]))]
    assert coordinates(v, B) == co

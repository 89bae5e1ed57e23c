from hypothesis import given, settings, strategies as st

from quasicut.intlinalg import (column_hnf, integer_kernel, integer_rank, lattice_basis,
                                smith_invariants, solve_integer)

from oracles import naive_snf

small = st.integers(min_value=-9, max_value=9)


def matrices(max_rows=4, max_cols=5):
    return st.integers(1, max_cols).flatmap(
        lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=1, max_size=max_rows))


def matmul(a, b):
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]


def det(m):
    if len(m) == 1:
        return m[0][0]
    return sum((-1) ** j * m[0][j] * det([r[:j] + r[j + 1:] for r in m[1:]]) for j in range(len(m)))


def test_smith_examples():
    assert smith_invariants([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]) == [2, 6, 12]
    assert smith_invariants([[1, 0], [0, 1]]) == [1, 1]
    assert smith_invariants([[2, 0], [0, 4]]) == [2, 4]
    assert smith_invariants([[0, 0, 0]]) == []


def test_kernel_and_solve():
    a = [[1, 1, 1, 1, 1]]
    ker = integer_kernel(a, 5)
    assert len(ker) == 4
    assert all(sum(v) == 0 for v in ker)
    assert solve_integer([[2, 4]], [3], 2) is None
    assert solve_integer([[2, 4]], [6], 2) is not None


@settings(max_examples=80, derandomize=True, deadline=None)
@given(matrices())
def test_hnf_is_a_unimodular_transform(a):
    k = len(a[0])
    h, u, pivots = column_hnf(a, k)
    assert matmul(a, u) == h
    assert abs(det(u)) == 1
    for c, i in enumerate(pivots):
        assert h[i][c] > 0
        assert all(h[r][c] == 0 for r in range(i))
        assert all(0 <= h[i][j] < h[i][c] for j in range(c))


@settings(max_examples=80, derandomize=True, deadline=None)
@given(matrices())
def test_kernel_spans_solutions(a):
    k = len(a[0])
    ker = integer_kernel(a, k)
    assert len(ker) == k - integer_rank(a, k)
    for v in ker:
        assert all(sum(x * y for x, y in zip(row, v)) == 0 for row in a)


@settings(max_examples=80, derandomize=True, deadline=None)
@given(matrices(), st.lists(small, min_size=5, max_size=5))
def test_solve_integer_round_trip(a, m):
    k = len(a[0])
    m = m[:k]
    b = [sum(x * y for x, y in zip(row, m)) for row in a]
    sol = solve_integer(a, b, k)
    assert sol is not None
    assert [sum(x * y for x, y in zip(row, sol)) for row in a] == b


@settings(max_examples=100, derandomize=True, deadline=None)
@given(matrices(5, 5))
def test_smith_against_oracle(a):
    assert smith_invariants(a, len(a[0])) == naive_snf(a)


def test_lattice_basis_is_canonical():
    b1 = lattice_basis([[2, 0], [0, 3], [2, 3]], 2)
    b2 = lattice_basis([[2, 3], [4, 3]], 2)
    assert b1 == b2

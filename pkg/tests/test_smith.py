import itertools
import random
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from picardkit.smith import diagonal, in_lattice, invariant_factors, kernel_basis, matmul, smith_normal_form, snf_full


def det(M):
    # Laplace expansion; only used on tiny minors
    if len(M) == 1:
        return M[0][0]
    return sum((-1) ** j * M[0][j] * det([row[:j] + row[j + 1:] for row in M[1:]]) for j in range(len(M)))


def determinantal_divisors(A):
    """gcd of all k x k minors, for k = 1 .. min(m, n)."""
    m, n = len(A), len(A[0])
    out = []
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows in itertools.combinations(range(m), k):
            for cols in itertools.combinations(range(n), k):
                g = gcd(g, det([[A[i][j] for j in cols] for i in rows]))
        out.append(g)
    return out


def is_snf(D):
    d = diagonal(D)
    off = all(D[i][j] == 0 for i in range(len(D)) for j in range(len(D[0])) if i != j)
    nonneg = all(x >= 0 for x in d)
    divides = all(b % a == 0 if a else b == 0 for a, b in zip(d, d[1:]))
    return off and nonneg and divides


def check_matrix(A):
    U, D, V, Uinv, Vinv = snf_full(A)
    assert matmul(matmul(U, A), V) == D
    assert is_snf(D)
    assert matmul(U, Uinv) == [[int(i == j) for j in range(len(U))] for i in range(len(U))]
    assert matmul(V, Vinv) == [[int(i == j) for j in range(len(V))] for i in range(len(V))]
    # d_1 ... d_k equals the k-th determinantal divisor
    prod = 1
    for d, dk in zip(diagonal(D), determinantal_divisors(A)):
        prod *= d
        assert prod == dk


def test_known_forms():
    assert invariant_factors([[2, 0], [0, 3]]) == [1, 6]
    assert invariant_factors([[2, 4], [4, 2]]) == [2, 6]
    assert invariant_factors([[0, 0], [0, 0]]) == [0, 0]
    assert invariant_factors([[4, 0], [0, 2]]) == [2, 4]


def test_rectangular_and_degenerate():
    for A in ([[1, 2, 3]], [[1], [2], [3]], [[0, 6, 4], [0, 0, 0]], [[7]]):
        check_matrix(A)


def test_random_matrices_200():
    rng = random.Random(11)
    for _ in range(200):
        m, n = rng.randint(1, 6), rng.randint(1, 6)
        A = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)]
        U, D, V = smith_normal_form(A)
        assert matmul(matmul(U, A), V) == D and is_snf(D)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4).flatmap(lambda m: st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-12, 12), min_size=n, max_size=n), min_size=m, max_size=m))))
def test_snf_properties(A):
    check_matrix(A)


def test_kernel_basis_spans_kernel():
    A = [[1, 2, 3], [2, 4, 6]]
    K = kernel_basis(A, 3)
    for j in range(len(K[0])):
        col = [K[i][j] for i in range(3)]
        assert all(sum(a * c for a, c in zip(row, col)) == 0 for row in A)
    # every small kernel vector is in the span
    for v in itertools.product(range(-3, 4), repeat=3):
        if all(sum(a * c for a, c in zip(row, v)) == 0 for row in A):
            assert in_lattice(list(v), K)


def test_in_lattice():
    gens = [[2, 0], [0, 3]]
    assert in_lattice([4, 9], gens)
    assert not in_lattice([1, 0], gens)
    assert in_lattice([0, 0], [])
    assert not in_lattice([1, 0], [])


@pytest.mark.parametrize("A", [[[6, 4], [4, 6]], [[3, 0, 0], [0, 5, 0], [0, 0, 7]]])
def test_divisibility_fixup(A):
    check_matrix(A)

import itertools
import random
from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from omegac import intlinalg as il
from omegac.checks import naive_hnf, naive_invariant_factors, random_matrix

small = st.integers(1, 4).flatmap(
    lambda m: st.integers(1, 4).flatmap(
        lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=m, max_size=m)))


def _minor_gcds(A):
    """Invariant factors from gcds of k x k minors (independent of any elimination)."""
    m, n = len(A), len(A[0])
    out, prev = [], 1
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows in itertools.combinations(range(m), k):
            for cols in itertools.combinations(range(n), k):
                g = gcd(g, il.det([[A[i][j] for j in cols] for i in rows]))
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return out


def _leibniz_det(A):
    n = len(A)
    total = 0
    for p in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
        term = 1
        for i in range(n):
            term *= A[i][p[i]]
        total += -term if inv % 2 else term
    return total


@given(st.integers(1, 5).flatmap(lambda n: st.lists(st.lists(st.integers(-5, 5), min_size=n, max_size=n),
                                                    min_size=n, max_size=n)))
def test_det_matches_leibniz(A):
    assert il.det(A) == _leibniz_det(A)


def test_snf_known_example():
    A = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]
    assert il.invariant_factors(A) == [2, 6, 12]


def test_hnf_shape_and_certificate():
    A = [[4, 6], [6, 9], [2, 3]]
    H, U, r = il.hnf(A, 2)
    assert r == 1 and H[0] == [2, 3] and all(not any(row) for row in H[1:])
    assert il.matmul(U, A) == H and il.is_unimodular(U)


@given(small)
def test_snf_matches_minor_oracle(A):
    n = len(A[0])
    S, U, V = il.snf(A, n)
    assert il.check_snf_certificate(A, S, U, V, n)
    assert il.invariant_factors(A, n) == _minor_gcds(A)


@given(small)
def test_hnf_matches_naive(A):
    n = len(A[0])
    H, U, r = il.hnf(A, n)
    assert il.matmul(U, A, n) == H and il.is_unimodular(U)
    assert H[:r] == naive_hnf(A, n)
    assert il.same_lattice(A, H[:r], n)


def test_random_matrices_against_naive_oracle():
    rng = random.Random(0)
    for _ in range(200):
        A, n = random_matrix(rng)
        H, U, r = il.hnf(A, n)
        assert H[:r] == naive_hnf(A, n)
        assert il.invariant_factors(A, n) == naive_invariant_factors(A, n)


def test_random_matrices_against_sympy():
    sympy = pytest.importorskip("sympy")
    from sympy.matrices.normalforms import smith_normal_form
    rng = random.Random(1)
    for _ in range(40):
        A, n = random_matrix(rng, 8)
        D = smith_normal_form(sympy.Matrix(A), domain=sympy.ZZ)
        theirs = [abs(int(D[i, i])) for i in range(min(D.shape)) if D[i, i] != 0]
        assert il.invariant_factors(A, n) == theirs


def test_left_kernel():
    A = [[1, 2], [2, 4], [0, 1]]
    K = il.left_kernel(A)
    assert K and all(not any(v) for v in il.matmul(K, A))
    assert len(K) == 1


def test_inverse_unimodular():
    U = [[2, 1], [1, 1]]
    assert il.matmul(il.inverse_unimodular(U), U) == il.identity(2)

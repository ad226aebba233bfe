import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from blocklab.gf import field
from blocklab.linalg import (EchelonBuilder, Subspace, contains, inverse, left_nullspace, nullspace,
                             quotient_dim, rank, rref, solve, subspace_intersect, subspace_sum)
from oracles import kernel_size_prime


def test_rref_identity():
    F = field(3)
    R, piv = rref(F, F.identity(4))
    assert np.array_equal(R, F.identity(4)) and piv == [0, 1, 2, 3]


def test_nullspace_of_zero():
    assert nullspace(field(2), np.zeros((2, 2), dtype=np.int64)).dim == 2


def test_quotient_dim_example():
    F = field(2)
    V = Subspace(F, 3, [[1, 0, 0], [0, 1, 0]])
    W = Subspace(F, 3, [[1, 1, 0]])
    assert quotient_dim(V, W) == 1
    with pytest.raises(ValueError):
        quotient_dim(W, Subspace(F, 3, [[0, 0, 1]]))


@given(st.sampled_from([2, 3]), st.integers(1, 4), st.integers(1, 5), st.integers(0, 10**6))
@settings(max_examples=60, deadline=None)
def test_nullity_matches_enumeration(p, r, c, seed):
    F = field(p)
    M = F.random(np.random.default_rng(seed), (r, c))
    N = nullspace(F, M)
    assert p ** N.dim == kernel_size_prime(M.tolist(), p)
    assert rank(F, M) + N.dim == c
    if N.dim:
        assert not np.any(F.matmul(M, N.basis.T))


@given(st.sampled_from([(2, 2), (3, 1), (5, 1), (2, 3)]), st.integers(1, 8), st.integers(1, 8), st.integers(0, 10**6))
@settings(max_examples=60, deadline=None)
def test_rank_nullity(pm, r, c, seed):
    F = field(*pm)
    M = F.random(np.random.default_rng(seed), (r, c))
    assert rank(F, M) + nullspace(F, M).dim == c
    assert rank(F, M) + left_nullspace(F, M).dim == r


@given(st.integers(0, 10**6))
@settings(max_examples=40, deadline=None)
def test_solve_and_inverse(seed):
    F = field(2, 2)
    rng = np.random.default_rng(seed)
    A = F.random(rng, (5, 5))
    x = F.random(rng, 5)
    b = F.matmul(A, x)
    y = solve(F, A, b)
    assert y is not None and np.array_equal(F.matmul(A, y), b)
    if rank(F, A) == 5:
        assert np.array_equal(F.matmul(A, inverse(F, A)), F.identity(5))


def test_solve_inconsistent():
    F = field(2)
    assert solve(F, np.array([[1, 0], [1, 0]]), np.array([0, 1])) is None


@given(st.integers(0, 10**6))
@settings(max_examples=40, deadline=None)
def test_sum_intersection_dimensions(seed):
    F = field(3)
    rng = np.random.default_rng(seed)
    U = Subspace(F, 6, F.random(rng, (3, 6)))
    W = Subspace(F, 6, F.random(rng, (3, 6)))
    S, I = subspace_sum(U, W), subspace_intersect(U, W)
    assert S.dim + I.dim == U.dim + W.dim
    for v in I.basis:
        assert contains(U, v) and contains(W, v)
    assert S.contains_space(U) and S.contains_space(W)


def test_echelon_builder_dependency():
    F = field(3)
    E = EchelonBuilder(F, 3)
    assert E.add(np.array([1, 0, 0])) is None
    assert E.add(np.array([0, 1, 0])) is None
    dep = E.add(np.array([2, 1, 0]))
    assert dep is not None and dep[-1] == 1

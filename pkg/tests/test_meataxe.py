import numpy as np
import pytest

from blocklab.algebra import block_decomposition
from blocklab.constructors import named
from blocklab.gf import field, splitting_degree
from blocklab.linalg import inverse, rank
from blocklab.lowerdefect import distribute_pregular_classes
from blocklab.meataxe import (chop, hom_dimension, is_isomorphic, matching_sigma, module_from_images,
                              regular_rep_of_block, simples_of_block, spin, trace_matrix, trivial_module)


def setup(name, p):
    G = named(name)
    F = field(p, splitting_degree(p, G.pprime_exponent(p)))
    return G, F, block_decomposition(G, p, F)


def base_change(M, P):
    F = M.F
    Pi = inverse(F, P)
    imgs = np.stack([F.matmul(F.matmul(Pi, X), P) for X in M.images])
    return module_from_images(M.G, F, imgs)


def direct_sum(M, N):
    F = M.F
    d, e = M.dim, N.dim
    imgs = np.zeros((M.G.order, d + e, d + e), dtype=np.int64)
    imgs[:, :d, :d] = M.images
    imgs[:, d:, d:] = N.images
    return module_from_images(M.G, F, imgs)


def test_regular_rep_dimensions():
    T = named("trivial")
    (b,) = block_decomposition(T, 2, field(2))
    assert regular_rep_of_block(T, field(2), b).dim == 1
    G, F, (b0, b1) = setup("s3", 2)
    assert regular_rep_of_block(G, F, b0).dim == 2
    assert regular_rep_of_block(G, F, b1).dim == 4


def test_regular_rep_is_a_homomorphism():
    G, F, bl = setup("a5", 2)
    M = regular_rep_of_block(G, F, bl[0])
    assert M.check_homomorphism(np.random.default_rng(0), 50)


def test_chop_examples():
    G, F, (b0, _) = setup("s3", 2)
    ((S, m),) = chop(regular_rep_of_block(G, F, b0))
    assert S.dim == 1 and m == 2
    G, F, (b,) = setup("a4", 2)
    factors = chop(regular_rep_of_block(G, F, b))
    assert sorted((S.dim, m) for S, m in factors) == [(1, 4)] * 3


def test_chop_of_simple_is_itself():
    G, F, bl = setup("a5", 2)
    S = simples_of_block(G, 2, F, bl[0]).simples[1]
    ((T, m),) = chop(S, seed=4)
    assert m == 1 and is_isomorphic(S, T)


def test_chop_direct_sum_with_base_change():
    G, F, bl = setup("s4", 3)
    simples = [S for b in bl for S in simples_of_block(G, 3, F, b).simples]
    M = direct_sum(direct_sum(simples[0], simples[2]), simples[2])
    rng = np.random.default_rng(1)
    while True:
        P = F.random(rng, (M.dim, M.dim))
        if rank(F, P) == M.dim:
            break
    factors = chop(base_change(M, P), seed=2)
    assert sorted((S.dim, m) for S, m in factors) == [(1, 1), (3, 2)]


def test_is_isomorphic_examples():
    G, F, (b,) = setup("s3", 3)
    triv, sign = simples_of_block(G, 3, F, b).simples
    assert is_isomorphic(triv, triv)
    assert not is_isomorphic(triv, sign)
    G, F, (_, b1) = setup("s3", 2)
    (S,) = simples_of_block(G, 2, F, b1).simples
    P = np.array([[1, 1], [0, 1]])
    S2 = base_change(S, P)
    assert not np.array_equal(S2.images, S.images)
    assert is_isomorphic(S, S2)
    assert hom_dimension(S, S2) == 1


def test_simples_examples():
    G, F, (b0, b1) = setup("s3", 2)
    assert [S.dim for S in simples_of_block(G, 2, F, b0).simples] == [1]
    assert [S.dim for S in simples_of_block(G, 2, F, b1).simples] == [2]
    G, F, (b,) = setup("s3", 3)
    assert [S.dim for S in simples_of_block(G, 3, F, b).simples] == [1, 1]
    G, F, bl = setup("a5", 2)
    assert [S.dim for S in simples_of_block(G, 2, F, bl[0]).simples] == [1, 2, 2]


def test_simple_count_mismatch_raises():
    from blocklab.errors import InvariantViolation
    G, F, (b,) = setup("s3", 3)
    with pytest.raises(InvariantViolation):
        simples_of_block(G, 3, F, b, expected=3)


@pytest.mark.parametrize("name,p", [("s3", 2), ("s3", 3), ("a4", 2), ("s4", 2), ("s4", 3), ("sl23", 2),
                                    ("a5", 2), ("a5", 3), ("a5", 5), ("c7:c3", 3), ("q8", 2), ("d8", 2)])
def test_block_invariants(name, p):
    G, F, bl = setup(name, p)
    dist = distribute_pregular_classes(G, p, F, bl)
    total_l, dim_sum = 0, 0
    for b in bl:
        mods = simples_of_block(G, p, F, b)
        total_l += len(mods.simples)
        dim_sum += sum(m * S.dim for S, m in zip(mods.simples, mods.multiplicities))
        cls = dist.classes_of(b.label)
        T = trace_matrix(G, mods.simples, cls, b.label)
        assert rank(F, T.entries) == len(cls)
        sigma = matching_sigma(T, F)
        assert sorted(sigma) == list(range(len(cls)))
        assert all(T.entries[sigma[i], i] != 0 for i in range(len(cls)))
        for S in mods.simples:
            assert S.check_homomorphism(np.random.default_rng(3), 10)
    assert total_l == sum(c.is_p_regular for c in G.conjugacy_classes(p))
    assert dim_sum == G.order


def test_trace_matrix_s3_p2():
    G, F, (b0, b1) = setup("s3", 2)
    dist = distribute_pregular_classes(G, 2, F, [b0, b1])
    S0 = simples_of_block(G, 2, F, b0).simples
    S1 = simples_of_block(G, 2, F, b1).simples
    assert matching_sigma(trace_matrix(G, S0, dist.classes_of(0)), F) == [0]
    T1 = trace_matrix(G, S1, dist.classes_of(1))
    assert T1.entries.tolist() == [[1]]
    # whole algebra: rows trivial, dim-2; columns e, 3-cycle
    T = trace_matrix(G, S0 + S1, dist.classes_of(0) + dist.classes_of(1))
    assert T.entries.tolist() == [[1, 1], [0, 1]]
    assert matching_sigma(T, F) == [0, 1]


def test_chop_deterministic():
    G, F, bl = setup("a5", 2)
    a = simples_of_block(G, 2, F, bl[0], seed=9)
    b = simples_of_block(G, 2, F, bl[0], seed=9)
    assert [S.images.tolist() for S in a.simples] == [S.images.tolist() for S in b.simples]


def test_spin_of_trivial_module():
    G = named("s4")
    F = field(2)
    M = trivial_module(G, F)
    assert spin(F, M.gens, np.array([[1]])).dim == 1

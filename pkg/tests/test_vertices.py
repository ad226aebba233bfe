import numpy as np
import pytest

from blocklab.algebra import block_decomposition, p_subgroup_classes
from blocklab.constructors import named
from blocklab.gf import field, splitting_degree
from blocklab.meataxe import simples_of_block, trivial_module
from blocklab.vertices import (fixed_endomorphisms, higman_certificate, is_relatively_projective,
                               relative_trace_image, vertex)


def setup(name, p):
    G = named(name)
    F = field(p, splitting_degree(p, G.pprime_exponent(p)))
    bl = block_decomposition(G, p, F)
    return G, F, bl, [simples_of_block(G, p, F, b) for b in bl]


def test_fixed_endomorphisms_examples():
    G, F, bl, mods = setup("a5", 2)
    S = mods[0].simples[1]
    assert fixed_endomorphisms(S, G.whole).dim == 1
    assert fixed_endomorphisms(S, G.trivial).dim == S.dim ** 2
    T = trivial_module(G, F)
    for Q in p_subgroup_classes(G, 2):
        assert fixed_endomorphisms(T, Q).dim == 1


def test_projectivity_examples():
    G, F, bl, mods = setup("s3", 2)
    triv = mods[0].simples[0]
    two = mods[1].simples[0]
    assert is_relatively_projective(triv, G.sylow(2))
    assert not is_relatively_projective(triv, G.trivial)
    assert is_relatively_projective(two, G.trivial)
    assert relative_trace_image(triv, G.trivial).dim == 0


def test_vertex_examples():
    G, F, bl, mods = setup("s3", 2)
    assert vertex(G, 2, mods[0].simples[0]).vertex_order == 2
    assert vertex(G, 2, mods[1].simples[0]).vertex_order == 1
    G, F, bl, mods = setup("s3", 3)
    triv, sign = mods[0].simples
    v = vertex(G, 3, sign)
    assert v.vertex_order == 3 and v.p_rank == 1


def test_trivial_module_vertex_is_sylow():
    for name, p in [("s4", 2), ("a5", 2), ("sl23", 2), ("a4", 3)]:
        G = named(name)
        F = field(p, splitting_degree(p, G.pprime_exponent(p)))
        assert vertex(G, p, trivial_module(G, F)).vertex_order == G.sylow(p).order


@pytest.mark.parametrize("name,p", [("s4", 2), ("a5", 2), ("sl23", 2), ("s4", 3), ("d8", 2), ("c7:c3", 7)])
def test_certificates_and_monotonicity(name, p):
    G, F, bl, mods = setup(name, p)
    classes = p_subgroup_classes(G, p)
    for b, bm in zip(bl, mods):
        for S in bm.simples:
            res = vertex(G, p, S)
            Q = res.vertex
            # certificate: Q-fixed endomorphism tracing to the identity
            f = res.certificate
            fixed = fixed_endomorphisms(S, Q)
            assert fixed.contains(f.ravel())
            assert np.array_equal(higman_certificate(S, Q) is not None, True)
            for R, dim in res.witnesses:
                assert not is_relatively_projective(S, R)
            assert G.o_p(p).issubset(Q)
            assert G.is_conjugate_subgroup_leq(Q, b.defect_group)
            for R in classes:
                for R2 in classes:
                    if G.is_conjugate_subgroup_leq(R, R2) and is_relatively_projective(S, R):
                        assert is_relatively_projective(S, R2)
            assert is_relatively_projective(S, G.sylow(p))

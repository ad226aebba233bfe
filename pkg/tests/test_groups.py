import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from blocklab.constructors import (cycle_perm, direct_product, group_from_json, group_to_json, named,
                                   semidirect_product, cyclic)
from blocklab.errors import ConfigurationError
from blocklab.groups import FiniteGroup, p_part
from oracles import conj_classes, element_order, subgroups_by_joins, subgroups_by_subsets

CORPUS = ["trivial", "c2", "c6", "s3", "d8", "q8", "a4", "s4", "sl23", "c7:c3", "a5", "s5", "c3:c4"]
ORDERS = {"trivial": 1, "c2": 2, "c6": 6, "s3": 6, "d8": 8, "q8": 8, "a4": 12, "s4": 24, "sl23": 24,
          "c7:c3": 21, "a5": 60, "s5": 120, "c3:c4": 12}
CLASS_COUNTS = {"trivial": 1, "c2": 2, "c6": 6, "s3": 3, "d8": 5, "q8": 5, "a4": 4, "s4": 5, "sl23": 7,
                "c7:c3": 5, "a5": 5, "s5": 7, "c3:c4": 6}


def test_from_generators_examples():
    assert FiniteGroup.from_generators(3, [cycle_perm(3, [0, 1]), cycle_perm(3, [0, 1, 2])]).order == 6
    assert FiniteGroup.from_generators(1, []).order == 1
    G = FiniteGroup.from_generators(4, [cycle_perm(4, [0, 1], [2, 3]), cycle_perm(4, [0, 2], [1, 3]), cycle_perm(4, [0, 1, 2])])
    assert G.order == 12


def test_order_cap():
    with pytest.raises(ConfigurationError):
        named("s7")


@pytest.mark.parametrize("name", CORPUS)
def test_table_axioms(name):
    G = named(name)
    assert G.order == ORDERS[name]
    assert G.check_associative()
    idx = np.arange(G.order)
    assert np.array_equal(G.mul[0], idx) and np.array_equal(G.mul[:, 0], idx)
    assert np.all(G.mul[idx, G.inv] == 0)
    mul = G.mul.tolist()
    for x in range(G.order):
        assert G.element_order[x] == element_order(mul, x)


@pytest.mark.parametrize("name", CORPUS)
def test_classes_match_orbit_oracle(name):
    G = named(name)
    classes = G.conjugacy_classes()
    assert len(classes) == CLASS_COUNTS[name]
    assert sum(c.size for c in classes) == G.order
    assert sorted(list(c.members) for c in classes) == sorted(conj_classes(G.mul.tolist()))
    assert classes[0].members == (0,)


def test_class_examples():
    S3 = named("s3")
    cl = S3.conjugacy_classes(2)
    assert len(cl) == 3 and sum(c.is_p_regular for c in cl) == 2
    A4 = named("a4")
    cl = A4.conjugacy_classes(2)
    assert len(cl) == 4 and sum(c.is_p_regular for c in cl) == 3
    assert named("trivial").conjugacy_classes(5)[0].is_p_regular


def test_centralizer_normalizer_examples():
    S3 = named("s3")
    x = next(g for g in range(6) if S3.element_order[g] == 3)
    assert S3.centralizer(x).order == 3
    assert S3.centralizer(0).order == 6
    A4 = named("a4")
    V = A4.sylow(2)
    assert V.order == 4 and A4.normalizer(V).order == 12


@pytest.mark.parametrize("name", ["s3", "d8", "q8", "a4", "c3:c4", "c6"])
def test_subgroup_lattice_vs_subsets(name):
    G = named(name)
    subs = sorted(S.members for S in G.all_subgroups())
    assert subs == sorted(subgroups_by_subsets(G.mul.tolist()))


@pytest.mark.parametrize("name", ["s4", "sl23", "c7:c3", "a5"])
def test_subgroup_lattice_vs_joins(name):
    G = named(name)
    subs = sorted(S.members for S in G.all_subgroups(cap=120))
    assert subs == subgroups_by_joins(G.mul.tolist())


@pytest.mark.parametrize("name", ["s3", "a4", "s4", "sl23", "c7:c3", "a5", "d8", "c6"])
def test_sylow_vs_exhaustive(name):
    G = named(name)
    subs = subgroups_by_joins(G.mul.tolist())
    for p in (2, 3, 5, 7):
        S = G.sylow(p)
        assert S.order == p_part(G.order, p)
        best = max(len(H) for H in subs if len(H) == p_part(len(H), p))
        assert S.order == best
        H = G.centralizer(int(np.argmax(G.element_order)))
        assert G.sylow(p, H).order == p_part(H.order, p)


def test_sylow_examples():
    S3 = named("s3")
    assert S3.sylow(2).order == 2
    x = next(g for g in range(6) if S3.element_order[g] == 3)
    assert S3.sylow(2, S3.centralizer(x)).order == 1
    assert named("a4").sylow(2).order == 4


def test_subgroup_classes_examples():
    A4 = named("a4")
    assert [S.order for S in A4.subgroups_up_to_conjugacy(A4.sylow(2))] == [1, 2, 4]
    D8 = named("d8")
    assert len(D8.subgroups_up_to_conjugacy(D8.whole)) == 8
    C2 = named("c2")
    assert len(C2.subgroups_up_to_conjugacy(C2.whole)) == 2


@pytest.mark.parametrize("name,p", [("d8", 2), ("q8", 2), ("s4", 2), ("a5", 2), ("sl23", 2), ("s5", 3)])
def test_class_sizes_count_all_p_subgroups(name, p):
    G = named(name)
    P = G.sylow(p)
    reps = G.subgroups_up_to_conjugacy(P)
    # every subgroup of P, counted through the G-classes, vs direct enumeration in G
    all_p = [S for S in G.all_subgroups(cap=120) if S.order == p_part(S.order, p)]
    assert sum(G.order // G.normalizer(R).order for R in reps) == len(all_p)


def test_conjugate_leq_examples():
    S3 = named("s3")
    invs = [g for g in range(6) if S3.element_order[g] == 2]
    A, B = S3.subgroup([invs[0]]), S3.subgroup([invs[1]])
    assert S3.is_conjugate_subgroup_leq(A, B)
    assert S3.is_conjugate_subgroup_leq(S3.trivial, B)
    A4 = named("a4")
    C3 = A4.sylow(3)
    assert not A4.is_conjugate_subgroup_leq(C3, A4.sylow(2))


@pytest.mark.parametrize("name,p", [("s4", 2), ("s5", 2), ("sl23", 2)])
def test_conjugate_leq_transitive(name, p):
    G = named(name)
    reps = list(G.subgroups_up_to_conjugacy(G.sylow(p)))
    for A in reps:
        assert G.is_conjugate_subgroup_leq(A, A)
        for B in reps:
            for C in reps:
                if G.is_conjugate_subgroup_leq(A, B) and G.is_conjugate_subgroup_leq(B, C):
                    assert G.is_conjugate_subgroup_leq(A, C)


def test_normal_structure_examples():
    S3 = named("s3")
    assert S3.o_pprime(2).order == 3 and S3.is_p_nilpotent(2)
    assert S3.o_pprime(3).order == 1 and not S3.is_p_nilpotent(3) and S3.is_p_solvable(3)
    assert not named("a5").is_p_solvable(2)
    assert named("s4").o_p(2).order == 4
    assert named("s3").pprime_exponent(2) == 3


@pytest.mark.parametrize("name", CORPUS)
def test_nilpotent_implies_solvable(name):
    G = named(name)
    for p in (2, 3, 5, 7):
        if G.is_p_nilpotent(p):
            assert G.is_p_solvable(p)
        # p-nilpotent iff the p'-core has full p'-order
        assert G.is_p_nilpotent(p) == (G.o_pprime(p).order == G.order // p_part(G.order, p))


def test_products_and_json_roundtrip():
    G = direct_product(cyclic(2), cyclic(3))
    assert G.order == 6 and len(G.conjugacy_classes()) == 6
    H = semidirect_product(cyclic(3), cyclic(2), {1: [0, 2, 1]})
    assert H.order == 6 and len(H.conjugacy_classes()) == 3
    with pytest.raises(ConfigurationError):
        semidirect_product(cyclic(3), cyclic(2), {1: [0, 1, 1]})
    A5 = named("a5")
    B = group_from_json(group_to_json(A5))
    assert B.order == 60
    with pytest.raises(ConfigurationError):
        group_from_json({"generators": []})


@given(st.sampled_from(["s4", "a5", "sl23"]), st.integers(0, 10**6))
@settings(max_examples=30, deadline=None)
def test_conjugation_is_an_automorphism(name, seed):
    G = named(name)
    rng = np.random.default_rng(seed)
    x, y, g = (int(v) for v in rng.integers(0, G.order, 3))
    assert G.conj(G.mul[x, y], g) == G.mul[G.conj(x, g), G.conj(y, g)]

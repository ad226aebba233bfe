# S4 at p=3: the normal Klein four group and its inertial groups
from blocklab import analyze, named
from blocklab.algebra import GroupAlgebra, block_decomposition
from blocklab.harness import check_lemma_4_2_fong

G = named("s4")
N = G.o_pprime(3)
print("O_3'(S4) has order", N.order)

an = analyze(G, 3)
A = GroupAlgebra(G, an.F)
NG, emb = G.subgroup_as_group(N)

# blocks of kV4 at p=3 are the four linear characters; S3 permutes the three nontrivial ones
for c in block_decomposition(NG, 3, an.F):
    v = A.one() * 0
    v[emb] = c.idempotent
    stab = [g for g in range(G.order) if (A.conjugate(v, g) == v).all()]
    print("block of kN", c.label, "inertial group order", len(stab))

verdict = check_lemma_4_2_fong(an)
print(verdict.status, verdict.checked, verdict.detail)

# blocks of S4 itself
for ba in an.blocks:
    print(ba.label, ba.block.defect_group.order, [S.dim for S in ba.modules.simples], ba.cartan.entries.tolist())

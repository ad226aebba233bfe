# A5 at p=2: principal block with Klein four defect group
from blocklab import named
from blocklab.algebra import block_decomposition
from blocklab.cartan import cartan_matrix, elementary_divisors, radical_of_block
from blocklab.gf import field, splitting_degree
from blocklab.meataxe import regular_rep_of_block, simples_of_block
from blocklab.vertices import vertex

G = named("a5")
F = field(2, splitting_degree(2, G.pprime_exponent(2)))  # GF(16): need cube and fifth roots of 1
print(F)

blocks = block_decomposition(G, 2, F)
print([(b.label, b.defect_group.order) for b in blocks])

b0 = blocks[0]
reg = regular_rep_of_block(G, F, b0)
print("dim b0 kG =", reg.dim)  # 60 - 16

mods = simples_of_block(G, 2, F, b0)
print("simple dims", [S.dim for S in mods.simples])
print("composition multiplicities", mods.multiplicities)

# radical: dim b0kG minus the semisimple quotient 1 + 4 + 4
J = radical_of_block(G, F, b0, mods.simples)
print("dim J =", J.dim)

C = cartan_matrix(G, F, b0, mods.simples)
print(C.entries)
print("elementary divisors", elementary_divisors(C).values)

# abelian defect group, so every simple has the full V4 as vertex
for S in mods.simples:
    res = vertex(G, 2, S)
    print(S.name, S.dim, "vertex order", res.vertex_order, "p-rank", res.p_rank)

# S3 at p=2 and p=3: blocks, lower defect groups, simples, vertices
import numpy as np

from blocklab import analyze, named

G = named("s3")
print(G, [c.size for c in G.conjugacy_classes()])

# p=2: one block of defect C2 plus a defect-zero block
an = analyze(G, 2)
for ba in an.blocks:
    print("p=2 block", ba.label,
          "defect", ba.block.defect_group.order,
          "simples", [S.dim for S in ba.modules.simples],
          "vertices", [v.vertex_order for v in ba.vertices],
          "lower", ba.lower.order_multiset())

# the idempotents themselves, as coefficient vectors over GF(4)
for ba in an.blocks:
    print(ba.block.idempotent)

# p=3: a single block, Cartan [[2,1],[1,2]] with divisors {1,3}
an = analyze(G, 3)
(ba,) = an.blocks
print(ba.cartan.entries)
print("divisors", ba.divisors.values, "lower defect", ba.lower.order_multiset())

# product of lower defect orders vs product of vertex orders
lhs = np.prod([Q.order for Q in ba.class_defect])
rhs = np.prod([v.vertex_order for v in ba.vertices])
print(lhs, "<", rhs, "since S3 is not 3-nilpotent:", G.is_p_nilpotent(3))

for v in an.verdicts:
    print(f"{v.status:15s} {v.name}")

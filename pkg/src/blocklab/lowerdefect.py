"""Lower defect multiplicities of blocks attached to p-regular classes.

Two independent routes are provided: a quotient of relative-trace images in
kG (``m1_quotient``) and Broue's local formula through the Brauer
homomorphism (``m1_broue``).  ``lower_defect_table`` insists they agree.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .algebra import Block, GroupAlgebra, brauer_hom, p_subgroup_classes
from .errors import InvariantViolation
from .gf import GF
from .groups import ConjClass, FiniteGroup, Subgroup, is_p_power
from .linalg import Subspace, rank


@dataclass
class PRegularDistribution:
    assignment: dict[int, int]  # class index -> block label
    classes: list[ConjClass]  # all conjugacy classes, indexed as in ``assignment``

    def classes_of(self, label: int) -> list[int]:
        return sorted(c for c, b in self.assignment.items() if b == label)


@dataclass
class LowerDefectTable:
    label: int
    entries: list[tuple[Subgroup, int]]

    def multiplicity(self, G: FiniteGroup, Q: Subgroup) -> int:
        for R, m in self.entries:
            if G.are_conjugate(R, Q):
                return m
        return 0

    @property
    def total(self) -> int:
        return sum(m for _, m in self.entries)

    def order_multiset(self) -> list[int]:
        out = []
        for Q, m in self.entries:
            out += [Q.order] * m
        return sorted(out)


def class_defect_group(G: FiniteGroup, p: int, C: ConjClass) -> Subgroup:
    if G.element_order[C.representative] % p == 0:
        raise ValueError("class defect groups are defined here for p-regular classes only")
    return G.sylow(p, G.centralizer(C.representative))


def _pregular_class_indices(G: FiniteGroup, p: int) -> list[int]:
    return [i for i, c in enumerate(G.conjugacy_classes(p)) if c.is_p_regular]


def distribute_pregular_classes(G: FiniteGroup, p: int, F: GF, blocks: list[Block]) -> PRegularDistribution:
    """Partition the p-regular classes so each block receives a basis of ``Z(kG_p') b``.

    Matroid partition: each class is placed greedily, and when no block can
    take it an augmenting chain of reassignments is found by breadth-first
    search over the exchange graph.
    """
    A = GroupAlgebra(G, F)
    classes = G.conjugacy_classes(p)
    reg = _pregular_class_indices(G, p)
    k = len(classes)
    eye = F.identity(k)
    vec = {}
    targets = {}
    for b in blocks:
        rows = A.center_product(eye[reg], b.center_coords)
        for i, c in enumerate(reg):
            vec[c, b.label] = rows[i]
        targets[b.label] = rank(F, rows)
    if sum(targets.values()) != len(reg):
        raise InvariantViolation("block projections of p-regular class sums do not decompose")

    def independent(cls_list, label):
        if not cls_list:
            return True
        M = np.array([vec[c, label] for c in cls_list])
        return rank(F, M) == len(cls_list)

    assigned: dict[int, list[int]] = {b.label: [] for b in blocks}
    owner: dict[int, int] = {}
    labels = [b.label for b in blocks]
    for c in reg:
        # BFS over classes; an edge x -> y (via block L) means x can replace y in L
        parent: dict[int, tuple[int | None, int | None]] = {c: (None, None)}
        queue = deque([c])
        end = None
        while queue and end is None:
            x = queue.popleft()
            for L in labels:
                if owner.get(x) == L:
                    continue
                cur = assigned[L]
                if len(cur) < targets[L] and independent(cur + [x], L):
                    end = (x, L)
                    break
                for y in cur:
                    if y in parent:
                        continue
                    swapped = [z for z in cur if z != y] + [x]
                    if independent(swapped, L):
                        parent[y] = (x, L)
                        queue.append(y)
        if end is None:
            raise InvariantViolation(f"no augmenting path for class {c}")
        x, L = end
        while x is not None:
            old = owner.get(x)
            if old is not None:
                assigned[old].remove(x)
            assigned[L].append(x)
            owner[x] = L
            px, pL = parent[x]
            # the predecessor px takes x's old slot in block old == pL
            x, L = px, pL
    for L in labels:
        if len(assigned[L]) != targets[L] or not independent(assigned[L], L):
            raise InvariantViolation(f"distribution failed for block {L}")
    return PRegularDistribution(dict(sorted(owner.items())), classes)


def _require_p_group(Q: Subgroup, p: int):
    if not is_p_power(Q.order, p):
        raise ValueError(f"subgroup of order {Q.order} is not a {p}-group")


class _TraceSpaces:
    """Caches ``(kG_p')_Q^G b`` for one (G, p, F) across blocks and subgroups."""

    def __init__(self, G: FiniteGroup, p: int, F: GF):
        self.A = GroupAlgebra(G, F)
        self.G, self.p, self.F = G, p, F
        self.reg = np.flatnonzero(G.p_regular(p))
        self._traces: dict = {}

    def traces(self, Q: Subgroup) -> np.ndarray:
        if Q.members not in self._traces:
            orbits = self.A.orbit_sums(Q, self.reg)
            self._traces[Q.members] = self.A.relative_trace(orbits, Q)
        return self._traces[Q.members]

    def space(self, Q: Subgroup, b: Block) -> Subspace:
        T = self.A.products(self.traces(Q), b.idempotent)
        return Subspace(self.F, self.G.order, T)


_SPACES: dict = {}


def _spaces(G, p, F) -> _TraceSpaces:
    key = (id(G), p, F.params)
    if key not in _SPACES or _SPACES[key].G is not G:
        _SPACES[key] = _TraceSpaces(G, p, F)
    return _SPACES[key]


def m1_quotient(G: FiniteGroup, p: int, F: GF, b: Block, Q: Subgroup) -> int:
    """``dim (kG_p')_Q^G b`` modulo the sum over maximal subgroups ``R < Q``."""
    _require_p_group(Q, p)
    S = _spaces(G, p, F)
    top = S.space(Q, b)
    lower = Subspace(F, G.order)
    for R in G.maximal_subgroups(Q):
        lower = lower + S.space(R, b)
    return (top + lower).dim - lower.dim


def m1_broue(G: FiniteGroup, p: int, F: GF, b: Block, Q: Subgroup) -> int:
    """``dim (kC_G(Q)_p')_Q^{N_G(Q)} Br_Q(b)``."""
    _require_p_group(Q, p)
    A = GroupAlgebra(G, F)
    C = G.centralizer_of(Q)
    N = G.normalizer(Q)
    ys = C.array[G.p_regular(p)[C.array]]
    rows = np.zeros((ys.size, G.order), dtype=np.int64)
    rows[np.arange(ys.size), ys] = 1
    T = A.relative_trace(rows, Q, N)
    br = brauer_hom(G, Q, b.idempotent, check=False)
    return Subspace(F, G.order, A.products(T, br)).dim


def lower_defect_table(G: FiniteGroup, p: int, F: GF, b: Block) -> LowerDefectTable:
    entries = []
    for Q in p_subgroup_classes(G, p):
        mq = m1_quotient(G, p, F, b, Q)
        mb = m1_broue(G, p, F, b, Q)
        if mq != mb:
            raise InvariantViolation(
                f"block {b.label}, |Q|={Q.order}: quotient formula gives {mq}, Broue formula gives {mb}"
            )
        entries.append((Q, mq))
    return LowerDefectTable(b.label, entries)

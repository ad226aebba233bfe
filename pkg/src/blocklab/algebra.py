"""The group algebra kG, its centre, and block idempotents.

Elements of kG are coefficient vectors indexed by group-element index.  The
centre is handled in class-sum coordinates, where multiplication is given by
integer structure constants reduced mod p.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import poly as P
from .errors import InvariantViolation
from .gf import GF
from .groups import FiniteGroup, Subgroup
from .linalg import Subspace, left_nullspace, solve


class GroupAlgebra:
    """kG over a fixed finite field, with cached product machinery."""

    def __init__(self, G: FiniteGroup, F: GF):
        self.G = G
        self.F = F
        self.n = G.order

    def one(self) -> np.ndarray:
        v = np.zeros(self.n, dtype=np.int64)
        v[0] = 1
        return v

    def basis_element(self, g: int) -> np.ndarray:
        v = np.zeros(self.n, dtype=np.int64)
        v[g] = 1
        return v

    @cached_property
    def _right_index(self) -> np.ndarray:
        G = self.G
        return G.mul[G.inv[:, None], np.arange(self.n)[None, :]]

    @cached_property
    def _left_index(self) -> np.ndarray:
        G = self.G
        return G.mul[np.arange(self.n)[None, :], G.inv[:, None]]

    def right_mult_matrix(self, b) -> np.ndarray:
        """``R`` with ``a * b == a @ R``."""
        return np.asarray(b, dtype=np.int64)[self._right_index]

    def left_mult_matrix(self, a) -> np.ndarray:
        """``L`` with ``a * x == x @ L``."""
        return np.asarray(a, dtype=np.int64)[self._left_index]

    def product(self, a, b) -> np.ndarray:
        return self.F.matmul(np.asarray(a, dtype=np.int64), self.right_mult_matrix(b))

    def products(self, A, b) -> np.ndarray:
        """Row-wise ``A[i] * b``."""
        return self.F.matmul(np.asarray(A, dtype=np.int64), self.right_mult_matrix(b))

    def right_action(self, v, g: int) -> np.ndarray:
        """``v * g`` for a group element ``g``."""
        return np.asarray(v)[..., self.G.mul[:, self.G.inv[g]]]

    def conjugate(self, v, g: int) -> np.ndarray:
        """``g^-1 v g``."""
        G = self.G
        return np.asarray(v)[..., G.conj(np.arange(self.n), G.inv[g])]

    def is_invariant(self, v, H: Subgroup) -> bool:
        v = np.asarray(v)
        return all(np.array_equal(self.conjugate(v, h), v) for h in (H.generators or H.members))

    def relative_trace(self, v, H: Subgroup, K: Subgroup | None = None) -> np.ndarray:
        """Conjugation trace ``sum over g in H\\K of g^-1 v g``."""
        out = np.zeros_like(np.asarray(v, dtype=np.int64))
        for g in self.G.right_transversal(H, K):
            out = self.F.add(out, self.conjugate(v, g))
        return out

    def orbit_sums(self, H: Subgroup, support) -> np.ndarray:
        """Rows: sums over the ``H``-conjugation orbits of the elements in ``support``."""
        G = self.G
        support = np.asarray(support, dtype=np.int64)
        seen = set()
        rows = []
        hs = H.array
        for x in support.tolist():
            if x in seen:
                continue
            orb = np.unique(G.conj(x, hs))
            seen.update(orb.tolist())
            r = np.zeros(self.n, dtype=np.int64)
            r[orb] = 1
            rows.append(r)
        return np.array(rows, dtype=np.int64).reshape(len(rows), self.n)

    def is_central(self, v) -> bool:
        return self.is_invariant(v, self.G.whole)

    # -- centre ------------------------------------------------------------------

    @cached_property
    def classes(self):
        return self.G.conjugacy_classes()

    @cached_property
    def class_sum_matrix(self) -> np.ndarray:
        """Rows are the class sums, in class order."""
        S = np.zeros((len(self.classes), self.n), dtype=np.int64)
        for i, c in enumerate(self.classes):
            S[i, list(c.members)] = 1
        return S

    @cached_property
    def structure_constants(self) -> np.ndarray:
        """``A[i, j, k]`` (integers) with ``C_i C_j = sum_k A[i,j,k] C_k``."""
        G = self.G
        k = len(self.classes)
        A = np.zeros((k, k, k), dtype=np.int64)
        for i, ci in enumerate(self.classes):
            xs = np.array(ci.members)
            for kk, ck in enumerate(self.classes):
                z = ck.representative
                ys = G.mul[G.inv[xs], z]
                A[i, :, kk] = np.bincount(G.class_of[ys], minlength=k)
        return A

    @cached_property
    def _structure_mod_p(self) -> np.ndarray:
        return self.F.from_int(self.structure_constants)

    def center_mult_matrix(self, z) -> np.ndarray:
        """Matrix of ``u -> u * z`` on class-sum coordinates."""
        F = self.F
        A = self._structure_mod_p
        k = A.shape[0]
        M = np.zeros((k, k), dtype=np.int64)
        for j in np.flatnonzero(z):
            M = F.add(M, F.mul(z[j], A[:, j, :]))
        return M

    def center_product(self, u, z) -> np.ndarray:
        return self.F.matmul(np.asarray(u, dtype=np.int64), self.center_mult_matrix(z))

    def center_to_group(self, u) -> np.ndarray:
        return self.F.matmul(np.asarray(u, dtype=np.int64), self.class_sum_matrix)

    def group_to_center(self, v) -> np.ndarray:
        reps = [c.representative for c in self.classes]
        return np.asarray(v, dtype=np.int64)[..., reps]

    def trivial_character(self, u) -> int:
        """Image of a central element (class coordinates) under ``C -> |C| mod p``."""
        sizes = self.F.from_int(np.array([c.size for c in self.classes]))
        return int(self.F.sum(self.F.mul(np.asarray(u), sizes)))


def class_sums(G: FiniteGroup, F: GF) -> list[np.ndarray]:
    return list(GroupAlgebra(G, F).class_sum_matrix)


def center_basis(G: FiniteGroup, F: GF) -> list[np.ndarray]:
    return class_sums(G, F)


@dataclass(eq=False)
class Block:
    idempotent: np.ndarray
    label: int
    defect_group: Subgroup
    is_principal: bool
    center_coords: np.ndarray = field(repr=False)
    is_principal_type: bool | None = None
    l_b: int | None = None

    @property
    def defect(self) -> int:
        n, d = self.defect_group.order, 0
        while n > 1:
            n //= _smallest_prime(n)
            d += 1
        return d

    @property
    def min_support(self) -> int:
        return int(np.flatnonzero(self.idempotent)[0])


def _smallest_prime(n: int) -> int:
    d = 2
    while n % d:
        d += 1
    return d


def _split_idempotent(A: GroupAlgebra, e, z):
    """Split ``e`` by the primary decomposition of multiplication by ``z`` on ``eZ``.

    Returns the list of pieces (one when nothing splits) and the irreducible
    factors seen, so the caller can detect a field that is too small.
    """
    F = A.F
    k = len(A.classes)
    eye = F.identity(k)
    ideal = Subspace(F, k, A.center_product(eye, e))
    if ideal.dim <= 1:
        return [e], []
    Lz = ideal.coordinates(F.matmul(ideal.basis, A.center_mult_matrix(z)))
    mp = P.minpoly(F, Lz)
    factors = P.factor_squarefree_distinct(F, mp)
    if len(factors) == 1:
        return [e], factors
    kernels = []
    for f, mult in factors:
        fm = P.const(1)
        for _ in range(mult):
            fm = P.mul(F, fm, f)
        K = left_nullspace(F, P.evaluate_matrix(F, fm, Lz))
        kernels.append(K.basis)
    stacked = np.concatenate(kernels)
    x = solve(F, stacked.T, ideal.coordinates(e)[0])
    pieces = []
    start = 0
    for K in kernels:
        xi = x[start : start + K.shape[0]]
        start += K.shape[0]
        pieces.append(F.matmul(F.matmul(xi, K), ideal.basis))
    return pieces, factors


def central_idempotents(A: GroupAlgebra, rng: np.random.Generator, n_random: int = 4) -> list[np.ndarray]:
    """Primitive idempotents of Z(kG) in class-sum coordinates."""
    F = A.F
    k = len(A.classes)
    eye = F.identity(k)
    current = [eye[0]]
    candidates = [eye[j] for j in range(k)]
    candidates += [F.random(rng, k) for _ in range(n_random)]
    changed = True
    while changed:
        changed = False
        for z in candidates:
            nxt = []
            for e in current:
                pieces, _ = _split_idempotent(A, e, z)
                nxt.extend(pieces)
            if len(nxt) > len(current):
                current = nxt
                changed = True
    for e in current:
        for z in candidates[:k]:
            _, factors = _split_idempotent(A, e, z)
            if any(P.deg(f) > 1 for f, _ in factors):
                raise InvariantViolation(
                    f"centre of a block ideal is not split over {F}; the field is too small"
                )
    return current


def brauer_hom(G: FiniteGroup, Q: Subgroup, z, *, check: bool = True) -> np.ndarray:
    """Truncate ``z`` to the support ``C_G(Q)``; ``z`` must be Q-invariant."""
    z = np.asarray(z, dtype=np.int64)
    if check:
        for q in Q.generators or Q.members:
            perm = G.conj(np.arange(G.order), G.inv[q])
            if not np.array_equal(z[..., perm], z):
                raise ValueError("brauer_hom: element is not Q-invariant")
    C = G.centralizer_of(Q)
    out = np.zeros_like(z)
    out[..., C.array] = z[..., C.array]
    return out


def p_subgroup_classes(G: FiniteGroup, p: int):
    """Subgroups of a fixed Sylow p-subgroup, up to G-conjugacy."""
    S = G.sylow(p)
    return G.subgroups_up_to_conjugacy(S, cap=max(S.order, 64))


def defect_group(G: FiniteGroup, p: int, b) -> Subgroup:
    """The maximal p-subgroup class with nonzero Brauer image of ``b``."""
    idem = b.idempotent if isinstance(b, Block) else np.asarray(b)
    classes = p_subgroup_classes(G, p)
    hits = [Q for Q in classes if np.any(brauer_hom(G, Q, idem, check=False))]
    if not hits:
        raise InvariantViolation("block idempotent has zero Brauer image at the trivial subgroup")
    D = max(hits, key=lambda Q: Q.order)
    for Q in hits:
        if not G.is_conjugate_subgroup_leq(Q, D):
            raise InvariantViolation("p-subgroups with nonzero Brauer image have no unique maximum")
    return D


def block_decomposition(G: FiniteGroup, p: int, F: GF, *, seed: int = 0) -> list[Block]:
    """Blocks of kG, labelled: principal block 0, then by defect desc, support."""
    if F.p != p:
        raise ValueError("field characteristic differs from p")
    A = GroupAlgebra(G, F)
    rng = np.random.default_rng(seed)
    idems = central_idempotents(A, rng)
    blocks = []
    for u in idems:
        v = A.center_to_group(u)
        D = defect_group(G, p, v)
        blocks.append(Block(v, -1, D, A.trivial_character(u) == 1, u))
    principal = [b for b in blocks if b.is_principal]
    if len(principal) != 1:
        raise InvariantViolation(f"expected one principal block, found {len(principal)}")
    rest = sorted((b for b in blocks if not b.is_principal), key=lambda b: (-b.defect_group.order, b.min_support))
    ordered = principal + rest
    for i, b in enumerate(ordered):
        b.label = i
    return ordered


def is_principal(G: FiniteGroup, F: GF, b: Block) -> bool:
    A = GroupAlgebra(G, F)
    return A.trivial_character(A.group_to_center(b.idempotent)) == 1


def is_principal_type(G: FiniteGroup, p: int, F: GF, b: Block, *, cache: dict | None = None) -> bool:
    """``Br_Q(b)`` is a single block of kC_G(Q) for every p-subgroup class ``Q <= P``."""
    cache = {} if cache is None else cache
    for Q in p_subgroup_classes(G, p):
        if not G.is_conjugate_subgroup_leq(Q, b.defect_group):
            continue
        br = brauer_hom(G, Q, b.idempotent, check=False)
        if not np.any(br):
            return False
        C = G.centralizer_of(Q)
        if C.members not in cache:
            H, emb = G.subgroup_as_group(C)
            sub_blocks = block_decomposition(H, p, F)
            embedded = []
            for sb in sub_blocks:
                v = np.zeros(G.order, dtype=np.int64)
                v[emb] = sb.idempotent
                embedded.append(v)
            cache[C.members] = embedded
        if not any(np.array_equal(br, e) for e in cache[C.members]):
            return False
    return True

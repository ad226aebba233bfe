"""Cartan matrices of blocks and their integer elementary divisors.

The radical of ``b kG`` is the common kernel of the representations on the
simple modules.  Lifting diagonal matrix units from ``b kG / J`` gives
primitive idempotents ``e_i``, and ``c_ij = dim e_i kG e_j``.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

import numpy as np
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors

from .algebra import Block, GroupAlgebra
from .errors import InvariantViolation
from .gf import GF
from .groups import FiniteGroup
from .linalg import Subspace, left_nullspace, rank, solve
from .meataxe import Representation


@dataclass
class CartanMatrix:
    label: int
    entries: np.ndarray

    @property
    def size(self) -> int:
        return self.entries.shape[0]

    def determinant(self) -> int:
        return int(Matrix(self.entries.tolist()).det())


@dataclass
class ElementaryDivisors:
    values: list[int]  # ascending

    def multiplicity(self, d: int) -> int:
        return self.values.count(d)

    def product(self) -> int:
        return math.prod(self.values)


@dataclass
class BlockAlgebra:
    """``b kG`` with the simple-module representations laid side by side."""

    A: GroupAlgebra
    block: Block
    basis: Subspace  # of b kG inside kG
    simples: list[Representation]

    def realize(self, x) -> np.ndarray:
        """Images of ``x`` in each ``End(S_i)``, flattened and concatenated."""
        F = self.A.F
        x = np.asarray(x, dtype=np.int64)
        parts = [F.matmul(x, S.images.reshape(S.G.order, -1)) for S in self.simples]
        return np.concatenate(parts, axis=-1)

    def preimage(self, target: np.ndarray) -> np.ndarray:
        """Some element of ``b kG`` with the given realization."""
        F = self.A.F
        Phi = self.realize(self.basis.basis)
        c = solve(F, Phi.T, target)
        if c is None:
            raise InvariantViolation(f"block {self.block.label}: realization is not surjective")
        return F.matmul(c, self.basis.basis)


def block_algebra(G: FiniteGroup, F: GF, b: Block, simples: list[Representation]) -> BlockAlgebra:
    A = GroupAlgebra(G, F)
    rows = np.stack([A.right_action(b.idempotent, g) for g in range(G.order)])
    return BlockAlgebra(A, b, Subspace(F, G.order, rows), simples)


def radical_of_block(G: FiniteGroup, F: GF, b: Block, simples: list[Representation]) -> Subspace:
    BA = block_algebra(G, F, b, simples)
    basis = BA.basis.basis
    kernel = left_nullspace(F, BA.realize(basis))
    J = Subspace(F, G.order, F.matmul(kernel.basis, basis) if kernel.dim else None)
    expected = BA.basis.dim - sum(S.dim ** 2 for S in simples)
    if J.dim != expected:
        raise InvariantViolation(f"block {b.label}: radical has dimension {J.dim}, expected {expected}")
    _check_nilpotent(BA.A, J, b.label)
    return J


def _check_nilpotent(A: GroupAlgebra, J: Subspace, label) -> int:
    """Loewy length of ``J``; raises if powers do not reach zero."""
    F = A.F
    power = J
    steps = 1
    while power.dim:
        if steps > J.dim + 1:
            raise InvariantViolation(f"block {label}: radical is not nilpotent")
        prods = np.concatenate([A.products(power.basis, y) for y in J.basis])
        nxt = Subspace(F, A.n, prods)
        if nxt.dim >= power.dim:
            raise InvariantViolation(f"block {label}: radical is not nilpotent")
        power = nxt
        steps += 1
    return steps


def _matrix_unit(d: int, j: int) -> np.ndarray:
    E = np.zeros((d, d), dtype=np.int64)
    E[j, j] = 1
    return E.ravel()


def lift_primitive_idempotents(G: FiniteGroup, F: GF, b: Block, simples: list[Representation],
                               J: Subspace | None = None) -> list[tuple[np.ndarray, int]]:
    """Orthogonal primitive idempotents summing to ``b``, tagged with the index of their top."""
    BA = block_algebra(G, F, b, simples)
    A = BA.A
    dims = [S.dim for S in simples]
    max_steps = int(math.log2(max(BA.basis.dim, 1))) + 4
    rest = b.idempotent.copy()
    out = []
    for i, d in enumerate(dims):
        for j in range(d):
            target = np.concatenate([
                _matrix_unit(dk, j) if k == i else np.zeros(dk * dk, dtype=np.int64)
                for k, dk in enumerate(dims)
            ])
            a = BA.preimage(target)
            e = A.product(A.product(rest, a), rest)
            for _ in range(max_steps):
                e2 = A.product(e, e)
                if np.array_equal(e2, e):
                    break
                e3 = A.product(e2, e)
                e = F.sub(F.mul(F.from_int(3), e2), F.mul(F.from_int(2), e3))
            else:
                raise InvariantViolation(f"block {b.label}: idempotent lifting did not stabilize")
            out.append((e, i))
            rest = F.sub(rest, e)
    if np.any(rest):
        raise InvariantViolation(f"block {b.label}: lifted idempotents do not sum to the block")
    return out


def cartan_matrix(G: FiniteGroup, F: GF, b: Block, simples: list[Representation],
                  idempotents: list[tuple[np.ndarray, int]] | None = None) -> CartanMatrix:
    if idempotents is None:
        idempotents = lift_primitive_idempotents(G, F, b, simples)
    A = GroupAlgebra(G, F)
    reps = []
    for i in range(len(simples)):
        reps.append(next(e for e, top in idempotents if top == i))
    l = len(reps)
    C = np.zeros((l, l), dtype=np.int64)
    for i, ei in enumerate(reps):
        L = A.left_mult_matrix(ei)
        for j, ej in enumerate(reps):
            C[i, j] = rank(F, F.matmul(L, A.right_mult_matrix(ej)))
    if not np.array_equal(C, C.T):
        raise InvariantViolation(f"block {b.label}: Cartan matrix is not symmetric")
    return CartanMatrix(b.label, C)


def elementary_divisors(C: CartanMatrix | np.ndarray) -> ElementaryDivisors:
    M = C.entries if isinstance(C, CartanMatrix) else np.asarray(C)
    if M.size == 0:
        return ElementaryDivisors([])
    inv = invariant_factors(Matrix(M.tolist()), domain=ZZ)
    vals = sorted(abs(int(v)) for v in inv)
    return ElementaryDivisors(vals)


def composition_multiplicities(C: CartanMatrix, dims: list[int]) -> list[int]:
    """Multiplicity of each simple in ``b kG`` predicted by the Cartan matrix."""
    return [int(sum(dims[i] * C.entries[i, j] for i in range(C.size))) for j in range(C.size)]


def divisor_multiset(values) -> Counter:
    return Counter(int(v) for v in values)

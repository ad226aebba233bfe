"""Modules over kG given by matrices, and the MeatAxe.

Modules are right modules: ``v -> v @ rho(g)`` for row vectors ``v``.  The
chopper follows Holt-Rees: a random algebra element ``A`` and a small
irreducible factor ``f`` of a vector's order polynomial give ``N = ker f(A)``;
a vector of ``N`` is spun in the module and in its dual, and when both spin
to everything while ``dim N == deg f`` the module is certified irreducible
(Norton's criterion).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linear_sum_assignment

from . import poly as P
from .algebra import Block, GroupAlgebra
from .errors import InvariantViolation
from .gf import GF
from .groups import FiniteGroup
from .linalg import Subspace, left_nullspace, nullspace, rank, rref

MAX_TRIES = 200
MAX_RESEEDS = 3
MAX_FACTOR_DEGREE = 4


@dataclass(eq=False)
class Representation:
    """A kG-module: one ``dim x dim`` matrix per generator of ``G``."""

    G: FiniteGroup
    F: GF
    gens: list[np.ndarray]
    name: str = ""
    _images: np.ndarray | None = field(default=None, repr=False)
    _trivial_dim: int = field(default=1, repr=False)  # used only when G has no generators

    @property
    def dim(self) -> int:
        return int(self.gens[0].shape[0]) if self.gens else self._trivial_dim

    @property
    def images(self) -> np.ndarray:
        """``rho(g)`` for every element ``g`` (computed once by breadth-first search)."""
        if self._images is None:
            G, F, d = self.G, self.F, self.dim
            imgs = np.zeros((G.order, d, d), dtype=np.int64)
            imgs[0] = F.identity(d)
            done = np.zeros(G.order, dtype=bool)
            done[0] = True
            frontier = [0]
            while frontier:
                nxt = []
                for x in frontier:
                    for s, M in zip(G.generators, self.gens):
                        y = int(G.mul[x, s])
                        if not done[y]:
                            imgs[y] = F.matmul(imgs[x], M)
                            done[y] = True
                            nxt.append(y)
                frontier = nxt
            if not done.all():
                raise ValueError("generators do not generate the group")
            self._images = imgs
        return self._images

    def image(self, g: int) -> np.ndarray:
        return self.images[g]

    def element_matrix(self, coeffs) -> np.ndarray:
        """``rho`` of the group-algebra element with the given coefficients."""
        d = self.dim
        flat = self.images.reshape(self.G.order, d * d)
        return self.F.matmul(np.asarray(coeffs, dtype=np.int64), flat).reshape(d, d)

    def trace(self, g: int) -> int:
        return self.F.trace(self.images[g])

    def check_homomorphism(self, rng: np.random.Generator, samples: int = 20) -> bool:
        G, F = self.G, self.F
        for _ in range(samples):
            x, y = (int(v) for v in rng.integers(0, G.order, 2))
            if not np.array_equal(F.matmul(self.images[x], self.images[y]), self.images[G.mul[x, y]]):
                return False
        return True

    def fingerprint(self, classes) -> tuple[int, ...]:
        return tuple(self.trace(c) for c in classes)


def trivial_module(G: FiniteGroup, F: GF) -> Representation:
    one = np.ones((1, 1), dtype=np.int64)
    return Representation(G, F, [one.copy() for _ in G.generators], "trivial")


def module_from_images(G: FiniteGroup, F: GF, images: np.ndarray, name: str = "") -> Representation:
    gens = [images[s] for s in G.generators]
    rep = Representation(G, F, gens, name)
    if not G.generators:
        rep._trivial_dim = images.shape[1]
    rep._images = images
    return rep


def regular_rep_of_block(G: FiniteGroup, F: GF, b) -> Representation:
    """Right multiplication on ``b kG`` in an echelon basis."""
    A = GroupAlgebra(G, F)
    idem = b.idempotent if isinstance(b, Block) else np.asarray(b)
    rows = np.stack([A.right_action(idem, g) for g in range(G.order)])
    S = Subspace(F, G.order, rows)
    imgs = np.stack([S.coordinates(A.right_action(S.basis, g)) for g in range(G.order)])
    label = b.label if isinstance(b, Block) else "?"
    return module_from_images(G, F, imgs, f"kG b{label}")


# -- spinning ----------------------------------------------------------------

def spin(F: GF, gens, vectors) -> Subspace:
    """Smallest subspace containing ``vectors`` and closed under ``v -> v @ g``."""
    gens = list(gens)
    d = gens[0].shape[0] if gens else np.asarray(vectors).shape[-1]
    S = Subspace(F, d, vectors)
    frontier = S.basis
    while frontier.shape[0] and S.dim < d and gens:
        imgs = np.concatenate([F.matmul(frontier, g) for g in gens])
        R = S.reduce(imgs)
        R = R[np.any(R, axis=1)]
        if R.shape[0] == 0:
            break
        new, _ = rref(F, R)
        S = S.extend(new)
        frontier = new
    return S


def submodule(rep: Representation, S: Subspace) -> Representation:
    F = rep.F
    imgs = np.stack([S.coordinates(F.matmul(S.basis, M)) for M in rep.images])
    return module_from_images(rep.G, F, imgs)


def quotient_module(rep: Representation, S: Subspace) -> Representation:
    F = rep.F
    comp = [c for c in range(rep.dim) if c not in set(S.pivots)]
    imgs = np.stack([S.reduce(M[comp])[:, comp] for M in rep.images])
    return module_from_images(rep.G, F, imgs)


def _small_factors(F: GF, f, maxdeg: int, rng):
    """Distinct monic irreducible factors of ``f`` of degree <= ``maxdeg``."""
    f = P.monic(F, P.trim(f))
    out = []
    x = P.X(F)
    h = P.rem(F, x, f) if P.deg(f) > 1 else x
    for d in range(1, maxdeg + 1):
        if P.deg(f) < d:
            break
        h = P.powmod(F, h, F.q, f)
        g = P.gcd(F, f, P.sub(F, h, x))
        if P.deg(g) > 0:
            out.extend(P.equal_degree(F, g, d, rng))
            while P.deg(P.gcd(F, f, g)) > 0:
                f = P.divmod_(F, f, P.gcd(F, f, g))[0]
            if P.deg(f) < 1:
                break
            h = P.rem(F, h, f)
    return out


def _split_or_certify(rep: Representation, rng: np.random.Generator):
    """``None`` when ``rep`` is certified irreducible, else a proper submodule."""
    F, d = rep.F, rep.dim
    if d == 1:
        return None
    gens = [rep.images[g] for g in range(rep.G.order)] if not rep.gens else rep.gens
    gensT = [np.ascontiguousarray(M.T) for M in gens]
    for _ in range(MAX_TRIES):
        A = rep.element_matrix(F.random(rng, rep.G.order))
        v = F.random(rng, d)
        if not np.any(v):
            continue
        mu = P.vector_minpoly(F, A, v)
        for f in _small_factors(F, mu, min(MAX_FACTOR_DEGREE, d), rng):
            B = P.evaluate_matrix(F, f, A)
            N = left_nullspace(F, B)
            if N.dim == 0:
                continue
            S = spin(F, gens, N.basis[:1])
            if S.dim < d:
                return S
            NT = nullspace(F, B)
            ST = spin(F, gensT, NT.basis[:1])
            if ST.dim < d:
                # the annihilator of a dual submodule is a submodule
                return nullspace(F, ST.basis)
            if N.dim == P.deg(f):
                return None
    raise _ChopStalled()


class _ChopStalled(Exception):
    pass


def _split_with_retries(rep, rng):
    for attempt in range(MAX_RESEEDS + 1):
        try:
            return _split_or_certify(rep, rng)
        except _ChopStalled:
            rng = np.random.default_rng(rng.integers(0, 2 ** 63))
    raise InvariantViolation(f"MeatAxe made no progress on a {rep.dim}-dimensional module")


def hom_dimension(M1: Representation, M2: Representation) -> int:
    """``dim Hom_kG(M1, M2)``: solutions of ``rho1(s) X = X rho2(s)`` for all generators."""
    F = M1.F
    d1, d2 = M1.dim, M2.dim
    eqs = []
    for s in M1.G.generators:
        R1, R2 = M1.images[s], M2.images[s]
        # row-major vec: vec(R1 X) = (R1 (x) I) vec X, vec(X R2) = (I (x) R2^T) vec X
        eqs.append(F.sub(F.kron(R1, F.identity(d2)), F.kron(F.identity(d1), R2.T)))
    if not eqs:
        return d1 * d2
    return nullspace(F, np.concatenate(eqs)).dim


def is_isomorphic(M1: Representation, M2: Representation) -> bool:
    """Isomorphism test for irreducible modules over a splitting field."""
    if M1.dim != M2.dim:
        return False
    cls = [c.representative for c in M1.G.conjugacy_classes()]
    if M1.fingerprint(cls) != M2.fingerprint(cls):
        return False
    return hom_dimension(M1, M2) > 0


def chop(rep: Representation, *, seed: int = 0) -> list[tuple[Representation, int]]:
    """Composition factors of ``rep`` with multiplicities, in discovery order."""
    rng = np.random.default_rng(seed)
    stack = [rep]
    found: list[list] = []
    while stack:
        M = stack.pop()
        S = _split_with_retries(M, rng)
        if S is None:
            for entry in found:
                if is_isomorphic(entry[0], M):
                    entry[1] += 1
                    break
            else:
                found.append([M, 1])
            continue
        stack.append(quotient_module(M, S))
        stack.append(submodule(M, S))
    total = sum(m * M.dim for M, m in found)
    if total != rep.dim:
        raise InvariantViolation(f"composition factors have total dimension {total}, expected {rep.dim}")
    return [(M, m) for M, m in found]


def _sort_simples(G, simples):
    cls = [c.representative for c in G.conjugacy_classes()]
    return sorted(simples, key=lambda M: (M.dim, M.fingerprint(cls)))


@dataclass
class BlockModules:
    label: int
    simples: list[Representation]
    multiplicities: list[int]  # composition multiplicity of each simple in b kG
    regular_dim: int


def simples_of_block(G: FiniteGroup, p: int, F: GF, b: Block, *, seed: int = 0,
                     expected: int | None = None) -> BlockModules:
    """Simple modules of a block, deduplicated and sorted by (dim, trace fingerprint)."""
    reg = regular_rep_of_block(G, F, b)
    factors = chop(reg, seed=seed + b.label)
    order = _sort_simples(G, [M for M, _ in factors])
    mult = [next(m for M, m in factors if M is S) for S in order]
    for i, S in enumerate(order):
        S.name = f"b{b.label}.S{i}"
    if expected is not None and len(order) != expected:
        raise InvariantViolation(
            f"block {b.label}: {len(order)} simple modules but {expected} p-regular classes"
        )
    b.l_b = len(order)
    return BlockModules(b.label, order, mult, reg.dim)


@dataclass
class BrauerTraceMatrix:
    label: int
    entries: np.ndarray  # rows: simples, columns: classes
    classes: list[int]  # class indices (columns)
    representatives: list[int]


def trace_matrix(G: FiniteGroup, simples: list[Representation], class_indices: list[int], label: int = 0) -> BrauerTraceMatrix:
    classes = G.conjugacy_classes()
    reps = [classes[c].representative for c in class_indices]
    T = np.array([[S.trace(x) for x in reps] for S in simples], dtype=np.int64).reshape(len(simples), len(reps))
    return BrauerTraceMatrix(label, T, list(class_indices), reps)


def matching_sigma(T: BrauerTraceMatrix, F: GF) -> list[int]:
    """``sigma[i]``: simple paired with class column ``i``, all ``T[sigma[i], i] != 0``."""
    E = T.entries
    l = E.shape[0]
    if E.shape != (l, l):
        raise InvariantViolation("trace matrix is not square")
    if rank(F, E) != l:
        raise InvariantViolation(f"block {T.label}: Brauer trace matrix is singular")
    # zero-cost assignment on the nonzero pattern; lexicographic tie-break keeps it reproducible
    cost = np.where(E != 0, 0.0, 1.0).T
    rows, cols = linear_sum_assignment(cost)
    sigma = [int(c) for _, c in sorted(zip(rows, cols))]
    if any(E[sigma[i], i] == 0 for i in range(l)):
        raise InvariantViolation(f"block {T.label}: no perfect matching on nonzero traces")
    return sigma

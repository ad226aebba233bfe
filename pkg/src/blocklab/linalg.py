"""Dense exact linear algebra over a :class:`~blocklab.gf.GF`.

Vectors are rows.  ``nullspace(F, M)`` is the right kernel ``{x : M x = 0}``;
use ``left_nullspace`` for ``{x : x M = 0}``.
"""

from __future__ import annotations

import numpy as np

from .gf import GF


def rref(F: GF, M) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns.  Zero rows are dropped."""
    A = np.array(M, dtype=np.int64, copy=True)
    if A.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    rows, cols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            A[[r, k]] = A[[k, r]]
        if A[r, c] != 1:
            A[r] = F.mul(F.inv(A[r, c]), A[r])
        col = A[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            A[hit] = F.sub(A[hit], F.mul(col[hit, None], A[r][None, :]))
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank(F: GF, M) -> int:
    M = np.asarray(M)
    if M.size == 0:
        return 0
    return len(rref(F, M)[1])


def nullspace(F: GF, M) -> "Subspace":
    M = np.asarray(M, dtype=np.int64)
    n = M.shape[1]
    if M.shape[0] == 0:
        return Subspace.full(F, n)
    R, piv = rref(F, M)
    free = [c for c in range(n) if c not in set(piv)]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for r, c in enumerate(piv):
            basis[i, c] = F.neg(R[r, f])
    return Subspace(F, n, basis)


def left_nullspace(F: GF, M) -> "Subspace":
    return nullspace(F, np.asarray(M).T)


def solve(F: GF, A, b):
    """A solution ``x`` of ``A x = b``, or ``None`` when inconsistent."""
    A = np.asarray(A, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64).reshape(-1)
    aug = np.concatenate([A, b[:, None]], axis=1)
    R, piv = rref(F, aug)
    n = A.shape[1]
    if piv and piv[-1] == n:
        return None
    x = np.zeros(n, dtype=np.int64)
    for r, c in enumerate(piv):
        x[c] = R[r, n]
    return x


def det_nonzero(F: GF, M) -> bool:
    M = np.asarray(M)
    return M.shape[0] == M.shape[1] and rank(F, M) == M.shape[0]


def inverse(F: GF, M) -> np.ndarray:
    M = np.asarray(M, dtype=np.int64)
    n = M.shape[0]
    R, piv = rref(F, np.concatenate([M, F.identity(n)], axis=1))
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise ZeroDivisionError("singular matrix")
    return R[:n, n:]


class Subspace:
    """A row space stored as a reduced echelon basis."""

    def __init__(self, F: GF, ambient: int, vectors=None, *, echelon: bool = False):
        self.F = F
        self.ambient = ambient
        if vectors is None or len(vectors) == 0:
            self.basis = np.zeros((0, ambient), dtype=np.int64)
            self.pivots: list[int] = []
        elif echelon:
            self.basis = np.asarray(vectors, dtype=np.int64)
            self.pivots = [int(np.flatnonzero(r)[0]) for r in self.basis]
        else:
            self.basis, self.pivots = rref(F, np.asarray(vectors, dtype=np.int64))

    @classmethod
    def full(cls, F: GF, n: int) -> "Subspace":
        return cls(F, n, F.identity(n), echelon=True)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def __len__(self):
        return self.dim

    def reduce(self, vectors) -> np.ndarray:
        """Residues of row vectors modulo this space (zero on the pivots)."""
        V = np.array(vectors, dtype=np.int64, ndmin=2, copy=True)
        if self.dim == 0:
            return V
        coeff = V[:, self.pivots]
        return self.F.sub(V, self.F.matmul(coeff, self.basis))

    def coordinates(self, vectors) -> np.ndarray:
        """Coordinates with respect to ``basis`` of vectors known to lie inside."""
        V = np.array(vectors, dtype=np.int64, ndmin=2)
        return V[:, self.pivots]

    def contains(self, v) -> bool:
        return not np.any(self.reduce(v))

    def contains_space(self, other: "Subspace") -> bool:
        return other.dim == 0 or not np.any(self.reduce(other.basis))

    def __add__(self, other: "Subspace") -> "Subspace":
        if other.dim == 0:
            return self
        if self.dim == 0:
            return other
        return Subspace(self.F, self.ambient, np.concatenate([self.basis, other.basis]))

    def extend(self, vectors) -> "Subspace":
        V = np.array(vectors, dtype=np.int64, ndmin=2)
        if V.shape[0] == 0:
            return self
        return Subspace(self.F, self.ambient, np.concatenate([self.basis, V]))

    def intersect(self, other: "Subspace") -> "Subspace":
        if self.dim == 0 or other.dim == 0:
            return Subspace(self.F, self.ambient)
        stacked = np.concatenate([self.basis, other.basis])
        K = left_nullspace(self.F, stacked)
        if K.dim == 0:
            return Subspace(self.F, self.ambient)
        return Subspace(self.F, self.ambient, self.F.matmul(K.basis[:, : self.dim], self.basis))

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.ambient == other.ambient
            and self.dim == other.dim
            and np.array_equal(self.basis, other.basis)
        )

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient}, {self.F})"


def subspace_sum(U: Subspace, W: Subspace) -> Subspace:
    return U + W


def subspace_intersect(U: Subspace, W: Subspace) -> Subspace:
    return U.intersect(W)


def contains(U: Subspace, v) -> bool:
    return U.contains(v)


def quotient_dim(V: Subspace, W: Subspace) -> int:
    """``dim V - dim W``; raises ``ValueError`` unless ``W`` lies in ``V``."""
    if not V.contains_space(W):
        raise ValueError("quotient_dim: W is not contained in V")
    return V.dim - W.dim


class EchelonBuilder:
    """Incremental semi-echelon basis that records how each row was formed.

    ``add(v)`` reduces ``v`` against the rows added so far.  When ``v`` is
    dependent it returns the combination ``c`` (over the *inputs* so far plus
    ``v`` itself, last entry 1) with ``sum c_i input_i = 0``; otherwise it
    stores the reduced row and returns ``None``.
    """

    def __init__(self, F: GF, ambient: int, capacity: int | None = None):
        self.F = F
        self.ambient = ambient
        cap = capacity if capacity is not None else ambient + 1
        self.rows = np.zeros((0, ambient), dtype=np.int64)
        self.track = np.zeros((0, cap), dtype=np.int64)
        self.pivots: list[int] = []
        self.n_inputs = 0
        self._cap = cap

    def add(self, v):
        F = self.F
        w = np.array(v, dtype=np.int64, copy=True)
        t = np.zeros(self._cap, dtype=np.int64)
        t[self.n_inputs] = 1
        self.n_inputs += 1
        for i, c in enumerate(self.pivots):
            a = w[c]
            if a:
                w = F.sub(w, F.mul(a, self.rows[i]))
                t = F.sub(t, F.mul(a, self.track[i]))
        nz = np.flatnonzero(w)
        if nz.size == 0:
            return t[: self.n_inputs]
        c = int(nz[0])
        s = F.inv(w[c])
        self.rows = np.vstack([self.rows, F.mul(s, w)])
        self.track = np.vstack([self.track, F.mul(s, t)])
        self.pivots.append(c)
        return None

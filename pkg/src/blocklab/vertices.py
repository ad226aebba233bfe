"""Vertices of simple modules by Higman's criterion.

A module ``M`` is projective relative to ``Q`` exactly when the identity of
``End(M)`` is a relative trace ``sum_g rho(g)^-1 f rho(g)`` of some
``Q``-equivariant endomorphism ``f``.  The vertex is the smallest such ``Q``
in the p-subgroup lattice, which is unique up to conjugacy.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import p_subgroup_classes
from .errors import InvariantViolation
from .groups import FiniteGroup, Subgroup
from .linalg import Subspace, nullspace, solve
from .meataxe import Representation


def fixed_endomorphisms(M: Representation, Q: Subgroup) -> Subspace:
    """Row-major ``vec(X)`` of all ``X`` commuting with ``rho(q)`` for ``q`` in ``Q``."""
    F, d = M.F, M.dim
    G = M.G
    gens = Q.generators or G.generating_set(Q.members)
    eye = F.identity(d)
    eqs = [F.sub(F.kron(M.images[q], eye), F.kron(eye, M.images[q].T)) for q in gens]
    if not eqs:
        return Subspace.full(F, d * d)
    return nullspace(F, np.concatenate(eqs))


def _trace_rows(M: Representation, Q: Subgroup, rows: np.ndarray) -> np.ndarray:
    F, d, G = M.F, M.dim, M.G
    T = G.right_transversal(Q)
    X = rows.reshape(-1, d, d)
    out = np.zeros_like(X)
    for g in T:
        left = M.images[G.inv[g]]
        out = F.add(out, F.matmul(F.matmul(left, X), M.images[g]))
    return out.reshape(rows.shape[0], d * d)


def relative_trace_image(M: Representation, Q: Subgroup) -> Subspace:
    fixed = fixed_endomorphisms(M, Q)
    return Subspace(M.F, M.dim ** 2, _trace_rows(M, Q, fixed.basis))


def is_relatively_projective(M: Representation, Q: Subgroup) -> bool:
    return relative_trace_image(M, Q).contains(M.F.identity(M.dim).ravel())


def higman_certificate(M: Representation, Q: Subgroup) -> np.ndarray | None:
    """A ``Q``-fixed endomorphism whose trace to ``G`` is the identity, if any."""
    F, d = M.F, M.dim
    fixed = fixed_endomorphisms(M, Q)
    if fixed.dim == 0:
        return None
    traced = _trace_rows(M, Q, fixed.basis)
    c = solve(F, traced.T, F.identity(d).ravel())
    if c is None:
        return None
    return F.matmul(c, fixed.basis).reshape(d, d)


@dataclass
class VertexResult:
    module_id: str
    vertex: Subgroup
    p_rank: int
    certificate: np.ndarray = field(repr=False)
    # (maximal subgroup of the vertex, dim of its trace image) -- identity not in it
    witnesses: list[tuple[Subgroup, int]] = field(default_factory=list, repr=False)

    @property
    def vertex_order(self) -> int:
        return self.vertex.order


def vertex(G: FiniteGroup, p: int, M: Representation, *, classes=None) -> VertexResult:
    """Minimal relatively-projective p-subgroup class, with certificates."""
    classes = p_subgroup_classes(G, p) if classes is None else classes
    memo: dict = {}

    def proj(Q):
        if Q.members not in memo:
            memo[Q.members] = is_relatively_projective(M, Q)
        return memo[Q.members]

    minimal = []
    for Q in sorted(classes, key=lambda Q: Q.order):
        if any(G.is_conjugate_subgroup_leq(R, Q) for R in minimal):
            continue  # contains a known vertex: projective, not minimal
        if proj(Q) and not any(proj(R) for R in G.maximal_subgroups(Q)):
            minimal.append(Q)
    if not minimal:
        raise InvariantViolation(f"module {M.name} is not projective relative to a Sylow subgroup")
    Q = minimal[0]
    if any(not G.are_conjugate(Q, R) for R in minimal[1:]):
        raise InvariantViolation(
            f"module {M.name} has non-conjugate minimal relatively-projective subgroups "
            f"of orders {[R.order for R in minimal]}"
        )
    cert = higman_certificate(M, Q)
    if cert is None:
        raise InvariantViolation("Higman certificate vanished on recomputation")
    witnesses = [(R, relative_trace_image(M, R).dim) for R in G.maximal_subgroups(Q)]
    return VertexResult(M.name, Q, G.p_rank(Q, p), cert, witnesses)

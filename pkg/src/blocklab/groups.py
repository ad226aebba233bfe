"""Finite groups stored as full multiplication tables.

Elements are the indices ``0 .. order-1`` with 0 the identity.  Products are
``mul[x, y]`` ("x then y"); permutation inputs act on the right, so the
product of permutations ``x`` and ``y`` sends ``i`` to ``y[x[i]]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from math import lcm

import numpy as np

from .errors import ConfigurationError

DEFAULT_ORDER_CAP = 1000
DEFAULT_SUBGROUP_CAP = 64


@dataclass(frozen=True)
class Subgroup:
    members: tuple[int, ...]
    generators: tuple[int, ...] = field(default=(), compare=False)

    @property
    def order(self) -> int:
        return len(self.members)

    @property
    def key(self) -> tuple[int, ...]:
        return self.members

    def __contains__(self, x) -> bool:
        return int(x) in self._memberset

    @cached_property
    def _memberset(self) -> frozenset:
        return frozenset(self.members)

    @cached_property
    def array(self) -> np.ndarray:
        return np.array(self.members, dtype=np.int64)

    def issubset(self, other: "Subgroup") -> bool:
        return self._memberset <= other._memberset

    def __repr__(self):
        return f"Subgroup(order={self.order}, gens={list(self.generators)})"


@dataclass(frozen=True)
class ConjClass:
    representative: int
    members: tuple[int, ...]
    is_p_regular: bool

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class SubgroupClassList:
    representatives: tuple[Subgroup, ...]

    def __iter__(self):
        return iter(self.representatives)

    def __len__(self):
        return len(self.representatives)

    def __getitem__(self, i):
        return self.representatives[i]

    @property
    def orders(self) -> list[int]:
        return [H.order for H in self.representatives]


def p_part(n: int, p: int) -> int:
    r = 1
    while n % p == 0:
        n //= p
        r *= p
    return r


def is_p_power(n: int, p: int) -> bool:
    return p_part(n, p) == n


class FiniteGroup:
    def __init__(self, mul: np.ndarray, generators=(), *, name: str = "", perms=None):
        mul = np.asarray(mul, dtype=np.int64)
        n = mul.shape[0]
        if mul.shape != (n, n) or not np.array_equal(mul[0], np.arange(n)) or not np.array_equal(
            mul[:, 0], np.arange(n)
        ):
            raise ValueError("index 0 must be a two-sided identity")
        self.mul = mul
        self.mul.setflags(write=False)
        self.order = n
        self.name = name
        self.generators = tuple(int(g) for g in generators)
        self.perms = perms
        inv = np.argmax(mul == 0, axis=1)
        if not np.all(mul[np.arange(n), inv] == 0):
            raise ValueError("multiplication table has no inverses")
        self.inv = inv
        self._cache: dict = {}

    # -- construction ----------------------------------------------------------

    @classmethod
    def from_generators(cls, degree: int, generators, *, cap: int = DEFAULT_ORDER_CAP, name: str = ""):
        gens = [np.asarray(g, dtype=np.int64) for g in generators]
        for g in gens:
            if g.shape != (degree,) or sorted(g.tolist()) != list(range(degree)):
                raise ValueError(f"generator {g.tolist()} is not a permutation of 0..{degree - 1}")
        ident = tuple(range(degree))
        elements = [ident]
        index = {ident: 0}
        gen_tuples = [tuple(g.tolist()) for g in gens]
        i = 0
        while i < len(elements):
            x = elements[i]
            for g in gen_tuples:
                y = tuple(g[k] for k in x)
                if y not in index:
                    if len(elements) >= cap:
                        raise ConfigurationError(f"group order exceeds cap {cap}")
                    index[y] = len(elements)
                    elements.append(y)
            i += 1
        P = np.array(elements, dtype=np.int64).reshape(len(elements), degree)
        n = len(elements)
        mul = np.empty((n, n), dtype=np.int64)
        for a in range(n):
            comp = P[:, P[a]]  # row b: first a then b
            mul[a] = [index[tuple(r)] for r in comp.tolist()]
        gen_idx = [index[g] for g in gen_tuples]
        return cls(mul, gen_idx, name=name, perms=P)

    @classmethod
    def from_table(cls, table, generators=None, *, name: str = ""):
        table = np.asarray(table, dtype=np.int64)
        G = cls(table, generators or (), name=name)
        if generators is None:
            G.generators = G.generating_set(range(G.order))
        return G

    # -- elementwise ------------------------------------------------------------

    def conj(self, x, g):
        """``g^-1 x g`` (vectorised)."""
        return self.mul[self.mul[self.inv[g], x], g]

    def power(self, x: int, k: int) -> int:
        r = 0
        for _ in range(k):
            r = self.mul[r, x]
        return int(r)

    @cached_property
    def element_order(self) -> np.ndarray:
        n = self.order
        idx = np.arange(n)
        out = np.zeros(n, dtype=np.int64)
        cur = idx.copy()
        k = 1
        while np.any(out == 0):
            done = (cur == 0) & (out == 0)
            out[done] = k
            cur = self.mul[cur, idx]
            k += 1
        return out

    @cached_property
    def exponent(self) -> int:
        return lcm(*self.element_order.tolist())

    def pprime_exponent(self, p: int) -> int:
        e = self.exponent
        return e // p_part(e, p)

    def p_regular(self, p: int) -> np.ndarray:
        return self.element_order % p != 0

    # -- subgroups ---------------------------------------------------------------

    def closure(self, gens) -> np.ndarray:
        gens = np.unique(np.asarray(list(gens), dtype=np.int64))
        S = np.array([0], dtype=np.int64)
        if gens.size == 0:
            return S
        while True:
            T = np.union1d(S, self.mul[S][:, gens].ravel())
            if T.size == S.size:
                return S
            S = T

    def subgroup(self, gens) -> Subgroup:
        gens = tuple(int(g) for g in gens)
        return Subgroup(tuple(self.closure(gens).tolist()), gens)

    def generating_set(self, members) -> tuple[int, ...]:
        gens: list[int] = []
        S = np.array([0])
        mem = set(int(x) for x in members)
        for x in sorted(mem):
            if x not in set(S.tolist()):
                gens.append(x)
                S = self.closure(gens)
                if S.size == len(mem):
                    break
        return tuple(gens)

    def as_subgroup(self, members) -> Subgroup:
        members = tuple(sorted(int(x) for x in members))
        return Subgroup(members, self.generating_set(members))

    @cached_property
    def whole(self) -> Subgroup:
        return Subgroup(tuple(range(self.order)), self.generators)

    @cached_property
    def trivial(self) -> Subgroup:
        return Subgroup((0,), ())

    def is_subgroup(self, members) -> bool:
        S = np.unique(np.asarray(list(members), dtype=np.int64))
        if S.size == 0 or S[0] != 0:
            return False
        prod = np.unique(self.mul[S][:, S])
        return np.array_equal(prod, S) and np.all(np.isin(self.inv[S], S))

    def conjugate_subgroup(self, H: Subgroup, g: int) -> Subgroup:
        mem = np.sort(self.conj(H.array, g))
        gens = tuple(int(x) for x in self.conj(np.array(H.generators, dtype=np.int64), g)) if H.generators else ()
        return Subgroup(tuple(mem.tolist()), gens)

    def _all_conjugates(self, H: Subgroup, over=None) -> np.ndarray:
        g = np.arange(self.order) if over is None else np.asarray(over, dtype=np.int64)
        C = self.mul[self.mul[self.inv[g][:, None], H.array[None, :]], g[:, None]]
        return np.sort(C, axis=1)

    def canonical_key(self, H: Subgroup) -> tuple[int, ...]:
        """Lexicographically least member tuple over all G-conjugates."""
        C = self._all_conjugates(H)
        C = np.unique(C, axis=0)
        return tuple(C[0].tolist())

    def centralizer(self, x) -> Subgroup:
        key = ("centralizer", int(x))
        if key not in self._cache:
            idx = np.arange(self.order)
            mem = np.flatnonzero(self.mul[x, idx] == self.mul[idx, x])
            self._cache[key] = self.as_subgroup(mem)
        return self._cache[key]

    def centralizer_of(self, H: Subgroup, within: Subgroup | None = None) -> Subgroup:
        key = ("centralizer_of", H.members, None if within is None else within.members)
        if key not in self._cache:
            cand = np.arange(self.order) if within is None else within.array
            gens = H.generators or H.members
            ok = np.ones(cand.size, dtype=bool)
            for h in gens:
                ok &= self.mul[h, cand] == self.mul[cand, h]
            self._cache[key] = self.as_subgroup(cand[ok])
        return self._cache[key]

    def center(self, H: Subgroup) -> Subgroup:
        return self.centralizer_of(H, within=H)

    def normalizer(self, H: Subgroup, within: Subgroup | None = None) -> Subgroup:
        key = ("normalizer", H.members, None if within is None else within.members)
        if key not in self._cache:
            cand = np.arange(self.order) if within is None else within.array
            gens = np.array(H.generators or H.members, dtype=np.int64)
            ok = np.ones(cand.size, dtype=bool)
            if gens.size:
                C = self.mul[self.mul[self.inv[cand][:, None], gens[None, :]], cand[:, None]]
                ok = np.all(np.isin(C, H.array), axis=1)
            self._cache[key] = self.as_subgroup(cand[ok])
        return self._cache[key]

    def is_normal(self, H: Subgroup, within: Subgroup | None = None) -> bool:
        N = self.normalizer(H, within)
        return N.order == (self.order if within is None else within.order)

    def right_transversal(self, H: Subgroup, K: Subgroup | None = None) -> list[int]:
        """Representatives ``g`` of the right cosets ``Hg`` in ``K`` (``H <= K``)."""
        key = ("rtrans", H.members, None if K is None else K.members)
        if key not in self._cache:
            elems = range(self.order) if K is None else K.members
            seen = np.zeros(self.order, dtype=bool)
            reps = []
            for g in elems:
                if not seen[g]:
                    reps.append(int(g))
                    seen[self.mul[H.array, g]] = True
            self._cache[key] = reps
        return self._cache[key]

    # -- conjugacy ---------------------------------------------------------------

    @cached_property
    def _classes(self) -> list[tuple[int, ...]]:
        n = self.order
        idx = np.arange(n)
        seen = np.zeros(n, dtype=bool)
        out = []
        for x in range(n):
            if seen[x]:
                continue
            orbit = np.unique(self.conj(x, idx))
            seen[orbit] = True
            out.append(tuple(orbit.tolist()))
        return out

    @cached_property
    def class_of(self) -> np.ndarray:
        lab = np.empty(self.order, dtype=np.int64)
        for i, c in enumerate(self._classes):
            lab[list(c)] = i
        return lab

    def conjugacy_classes(self, p: int | None = None) -> list[ConjClass]:
        out = []
        for c in self._classes:
            reg = True if p is None else bool(self.element_order[c[0]] % p)
            out.append(ConjClass(c[0], c, reg))
        return out

    def is_conjugate_subgroup_leq(self, A: Subgroup, B: Subgroup) -> bool:
        """Some G-conjugate of ``A`` lies inside ``B``."""
        if A.order > B.order or B.order % A.order:
            return False
        key = ("leq", A.members, B.members)
        if key not in self._cache:
            gens = np.array(A.generators or A.members, dtype=np.int64)
            idx = np.arange(self.order)
            C = self.mul[self.mul[self.inv[idx][:, None], gens[None, :]], idx[:, None]]
            self._cache[key] = bool(np.any(np.all(np.isin(C, B.array), axis=1)))
        return self._cache[key]

    def are_conjugate(self, A: Subgroup, B: Subgroup) -> bool:
        return A.order == B.order and self.is_conjugate_subgroup_leq(A, B)

    def conjugates_of(self, H: Subgroup) -> list[Subgroup]:
        C = np.unique(self._all_conjugates(H), axis=0)
        return [Subgroup(tuple(r.tolist())) for r in C]

    # -- subgroup lattices -------------------------------------------------------

    def all_subgroups(self, parent: Subgroup | None = None, *, cap: int = DEFAULT_SUBGROUP_CAP) -> list[Subgroup]:
        parent = self.whole if parent is None else parent
        if parent.order > cap:
            raise ConfigurationError(f"subgroup enumeration capped at order {cap}, got {parent.order}")
        key = ("all_subgroups", parent.members)
        if key in self._cache:
            return self._cache[key]
        cyclic: dict[tuple, Subgroup] = {}
        for x in parent.members:
            H = self.subgroup([x])
            cyclic.setdefault(H.members, H)
        found: dict[tuple, Subgroup] = dict(cyclic)
        queue = list(found.values())
        cyc = list(cyclic.values())
        while queue:
            S = queue.pop()
            for C in cyc:
                if C.issubset(S):
                    continue
                J = self.subgroup(S.generators + C.generators)
                if J.members not in found:
                    found[J.members] = J
                    queue.append(J)
        out = sorted(found.values(), key=lambda H: (H.order, H.members))
        self._cache[key] = out
        return out

    def subgroups_up_to_conjugacy(self, parent: Subgroup | None = None, *, cap: int = DEFAULT_SUBGROUP_CAP) -> SubgroupClassList:
        """Subgroups of ``parent`` up to G-conjugacy, ascending by order."""
        parent = self.whole if parent is None else parent
        key = ("subclasses", parent.members)
        if key in self._cache:
            return self._cache[key]
        reps: dict[tuple, Subgroup] = {}
        for H in self.all_subgroups(parent, cap=cap):
            k = self.canonical_key(H)
            if k not in reps:
                reps[k] = H
        out = SubgroupClassList(tuple(sorted(reps.values(), key=lambda H: (H.order, H.members))))
        self._cache[key] = out
        return out

    def maximal_subgroups(self, H: Subgroup) -> list[Subgroup]:
        """Maximal subgroups of ``H`` (all of them, not up to conjugacy)."""
        subs = [S for S in self.all_subgroups(H, cap=max(H.order, DEFAULT_SUBGROUP_CAP)) if S.order < H.order]
        out = []
        for S in subs:
            if not any(S.order < T.order and S.issubset(T) for T in subs):
                out.append(S)
        return out

    def sylow(self, p: int, H: Subgroup | None = None) -> Subgroup:
        """A Sylow p-subgroup of ``H`` by normalizer ascent."""
        H = self.whole if H is None else H
        key = ("sylow", p, H.members)
        if key in self._cache:
            return self._cache[key]
        target = p_part(H.order, p)
        S = self.trivial
        while S.order < target:
            N = self.normalizer(S, within=H)
            Sset = S._memberset
            for x in N.members:
                if x in Sset:
                    continue
                if self.power(x, p) in Sset:
                    S = self.subgroup(S.generators + (x,))
                    break
            else:  # pragma: no cover - Sylow theory guarantees an extension
                raise AssertionError("normalizer ascent stalled")
        self._cache[key] = S
        return S

    # -- normal structure --------------------------------------------------------

    @cached_property
    def normal_subgroups(self) -> list[Subgroup]:
        closures: dict[tuple, Subgroup] = {}
        for c in self._classes:
            N = self.subgroup(c)
            closures.setdefault(N.members, N)
        found = dict(closures)
        found[(0,)] = self.trivial
        queue = list(found.values())
        base = list(closures.values())
        while queue:
            S = queue.pop()
            for C in base:
                if C.issubset(S):
                    continue
                J = self.subgroup(S.generators + C.generators)
                if J.members not in found:
                    found[J.members] = J
                    queue.append(J)
        return sorted(found.values(), key=lambda H: (H.order, H.members))

    def o_pprime(self, p: int) -> Subgroup:
        cands = [N for N in self.normal_subgroups if N.order % p]
        best = max(cands, key=lambda N: N.order)
        return self.as_subgroup(best.members)

    def o_p(self, p: int) -> Subgroup:
        cands = [N for N in self.normal_subgroups if is_p_power(N.order, p)]
        best = max(cands, key=lambda N: N.order)
        return self.as_subgroup(best.members)

    def is_p_nilpotent(self, p: int) -> bool:
        return self.o_pprime(p).order == self.order // p_part(self.order, p)

    def is_p_solvable(self, p: int) -> bool:
        G = self
        while G.order > 1:
            N = G.o_pprime(p)
            if N.order == 1:
                N = G.o_p(p)
                if N.order == 1:
                    return False
            G, _ = G.quotient(N)
        return True

    def is_p_group(self, p: int) -> bool:
        return is_p_power(self.order, p)

    def is_abelian_subgroup(self, H: Subgroup) -> bool:
        return self.center(H).order == H.order

    def is_elementary_abelian(self, H: Subgroup, p: int) -> bool:
        if H.order == 1:
            return True
        return is_p_power(H.order, p) and self.is_abelian_subgroup(H) and bool(
            np.all(self.element_order[H.array[1:]] == p)
        )

    def p_rank(self, H: Subgroup, p: int) -> int:
        best = 1
        for S in self.all_subgroups(H, cap=max(H.order, DEFAULT_SUBGROUP_CAP)):
            if self.is_elementary_abelian(S, p):
                best = max(best, S.order)
        r = 0
        while best > 1:
            best //= p
            r += 1
        return r

    # -- derived groups ------------------------------------------------------------

    def subgroup_as_group(self, H: Subgroup) -> tuple["FiniteGroup", np.ndarray]:
        """``H`` as a group in its own right, plus the embedding into ``self``."""
        emb = H.array
        pos = np.full(self.order, -1, dtype=np.int64)
        pos[emb] = np.arange(emb.size)
        table = pos[self.mul[np.ix_(emb, emb)]]
        gens = [int(pos[g]) for g in (H.generators or self.generating_set(H.members))]
        name = f"{self.name}<{H.order}>" if self.name else ""
        return FiniteGroup(table, gens, name=name), emb

    def quotient(self, N: Subgroup) -> tuple["FiniteGroup", np.ndarray]:
        """``G/N`` for normal ``N``, plus the projection of element indices."""
        label = self.mul[:, N.array].min(axis=1)
        reps, proj = np.unique(label, return_inverse=True)
        table = proj[self.mul[np.ix_(reps, reps)]]
        gens = sorted({int(proj[g]) for g in self.generators} - {0})
        return FiniteGroup(table, gens, name=f"{self.name}/{N.order}" if self.name else ""), proj

    # -- misc ------------------------------------------------------------------------

    def check_associative(self) -> bool:
        if self.order > 512:
            raise ValueError("associativity check limited to order <= 512")
        M = self.mul
        idx = np.arange(self.order)
        left = M[M[:, :, None], idx[None, None, :]]
        right = M[idx[:, None, None], M[None, :, :]]
        return bool(np.array_equal(left, right))

    def __repr__(self):
        return f"FiniteGroup({self.name or '?'}, order={self.order})"

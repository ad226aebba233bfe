"""Brute-force reference computations, kept independent of the library code."""

from __future__ import annotations

import itertools
import math
from fractions import Fraction


def naive_matmul(F, A, B):
    n, k = len(A), len(B)
    m = len(B[0]) if k else 0
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        for j in range(m):
            acc = 0
            for t in range(k):
                acc = int(F.add(acc, F.mul(int(A[i][t]), int(B[t][j]))))
            out[i][j] = acc
    return out


def kernel_size_prime(M, p):
    """Number of ``x`` in GF(p)^cols with ``M x = 0``, by enumeration."""
    cols = len(M[0])
    count = 0
    for x in itertools.product(range(p), repeat=cols):
        if all(sum(r[j] * x[j] for j in range(cols)) % p == 0 for r in M):
            count += 1
    return count


def subgroups_by_subsets(mul):
    """Every subgroup of a small table group, by testing all subsets containing 1."""
    n = len(mul)
    out = []
    for bits in range(1 << (n - 1)):
        S = [0] + [i + 1 for i in range(n - 1) if bits >> i & 1]
        s = set(S)
        if all(mul[a][b] in s for a in S for b in S):
            out.append(tuple(sorted(S)))
    return out


def subgroups_by_joins(mul):
    """All subgroups as a fixpoint of joins starting from cyclic ones."""
    n = len(mul)

    def close(gens):
        seen = {0}
        frontier = [0]
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = mul[x][g]
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
        return frozenset(seen)

    subs = {close([g]) for g in range(n)}
    changed = True
    while changed:
        changed = False
        cur = list(subs)
        for A in cur:
            for B in cur:
                J = close(list(A | B))
                if J not in subs:
                    subs.add(J)
                    changed = True
    return sorted(tuple(sorted(S)) for S in subs)


def conj_classes(mul):
    n = len(mul)
    inv = [next(y for y in range(n) if mul[x][y] == 0) for x in range(n)]
    seen, out = set(), []
    for x in range(n):
        if x in seen:
            continue
        orb = {mul[mul[inv[g]][x]][g] for g in range(n)}
        seen |= orb
        out.append(sorted(orb))
    return out


def element_order(mul, x):
    k, y = 1, x
    while y != 0:
        y = mul[y][x]
        k += 1
    return k


def determinantal_snf(M):
    """Invariant factors from gcds of k x k minors, ``d_k / d_{k-1}``."""
    n = len(M)

    def det(rows, cols):
        A = [[Fraction(M[r][c]) for c in cols] for r in rows]
        k = len(A)
        d = Fraction(1)
        for i in range(k):
            piv = next((r for r in range(i, k) if A[r][i] != 0), None)
            if piv is None:
                return 0
            if piv != i:
                A[i], A[piv] = A[piv], A[i]
                d = -d
            d *= A[i][i]
            for r in range(i + 1, k):
                f = A[r][i] / A[i][i]
                for c in range(i, k):
                    A[r][c] -= f * A[i][c]
        return int(d)

    ds = [1]
    for k in range(1, n + 1):
        g = 0
        for rows in itertools.combinations(range(n), k):
            for cols in itertools.combinations(range(n), k):
                g = math.gcd(g, det(rows, cols))
        ds.append(g)
    out = []
    for k in range(1, n + 1):
        out.append(ds[k] // ds[k - 1] if ds[k - 1] else 0)
    return sorted(out)

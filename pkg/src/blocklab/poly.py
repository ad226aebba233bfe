"""Univariate polynomials over GF(q) and their factorisation.

A polynomial is a 1-d ``int64`` array of field elements, lowest degree first,
without trailing zeros (the zero polynomial is the empty array).
"""

from __future__ import annotations

import numpy as np

from .gf import GF
from .linalg import EchelonBuilder

ZERO = np.zeros(0, dtype=np.int64)


def trim(f) -> np.ndarray:
    f = np.asarray(f, dtype=np.int64)
    nz = np.flatnonzero(f)
    return f[: nz[-1] + 1] if nz.size else ZERO


def deg(f) -> int:
    return len(f) - 1


def const(c: int) -> np.ndarray:
    return trim(np.array([c], dtype=np.int64))


def X(F: GF) -> np.ndarray:
    return np.array([0, 1], dtype=np.int64)


def add(F: GF, f, g):
    n = max(len(f), len(g))
    a = np.zeros(n, dtype=np.int64)
    b = np.zeros(n, dtype=np.int64)
    a[: len(f)] = f
    b[: len(g)] = g
    return trim(F.add(a, b))


def sub(F: GF, f, g):
    return add(F, f, F.neg(np.asarray(g, dtype=np.int64)))


def scale(F: GF, c, f):
    return trim(F.mul(c, np.asarray(f, dtype=np.int64)))


def mul(F: GF, f, g):
    if len(f) == 0 or len(g) == 0:
        return ZERO
    if len(f) < len(g):
        f, g = g, f
    out = np.zeros(len(f) + len(g) - 1, dtype=np.int64)
    for i, c in enumerate(g):
        if c:
            out[i : i + len(f)] = F.add(out[i : i + len(f)], F.mul(c, f))
    return trim(out)


def monic(F: GF, f):
    if len(f) == 0:
        return f
    return F.mul(F.inv(f[-1]), f)


def divmod_(F: GF, f, g):
    if len(g) == 0:
        raise ZeroDivisionError("polynomial division by zero")
    r = np.array(f, dtype=np.int64, copy=True)
    dg = len(g) - 1
    if len(r) - 1 < dg:
        return ZERO, trim(r)
    qt = np.zeros(len(r) - dg, dtype=np.int64)
    inv_lead = F.inv(g[-1])
    for k in range(len(r) - 1, dg - 1, -1):
        c = r[k]
        if c:
            c = F.mul(c, inv_lead)
            qt[k - dg] = c
            r[k - dg : k + 1] = F.sub(r[k - dg : k + 1], F.mul(c, g))
    return trim(qt), trim(r[:dg])


def rem(F: GF, f, g):
    return divmod_(F, f, g)[1]


def gcd(F: GF, f, g):
    f, g = trim(f), trim(g)
    while len(g):
        f, g = g, rem(F, f, g)
    return monic(F, f)


def lcm(F: GF, f, g):
    return monic(F, divmod_(F, mul(F, f, g), gcd(F, f, g))[0])


def powmod(F: GF, f, n: int, modulus):
    result = const(1)
    base = rem(F, f, modulus)
    while n:
        if n & 1:
            result = rem(F, mul(F, result, base), modulus)
        base = rem(F, mul(F, base, base), modulus)
        n >>= 1
    return result


def derivative(F: GF, f):
    if len(f) <= 1:
        return ZERO
    k = F.from_int(np.arange(1, len(f)))
    return trim(F.mul(k, f[1:]))


def pth_root(F: GF, f):
    """``g`` with ``g**p == f``; requires ``f`` to be a polynomial in ``x**p``."""
    p = F.p
    coeffs = f[::p]
    # c -> c^(q/p) inverts the Frobenius on GF(q)
    return trim(F.power(coeffs, F.q // p))


def evaluate(F: GF, f, x):
    acc = np.zeros_like(np.asarray(x, dtype=np.int64))
    for c in reversed(f):
        acc = F.add(F.mul(acc, x), c)
    return acc


def evaluate_matrix(F: GF, f, A):
    """``f(A)`` by Horner's rule."""
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[0]
    acc = F.zeros((n, n))
    eye = F.identity(n)
    for c in reversed(f):
        acc = F.matmul(acc, A)
        if c:
            acc = F.add(acc, F.mul(c, eye))
    return acc


def equal(f, g) -> bool:
    return np.array_equal(trim(f), trim(g))


# -- factorisation ------------------------------------------------------------

def squarefree_decomposition(F: GF, f):
    """Pairs ``(g, e)`` of squarefree, pairwise coprime monic ``g`` with
    ``f = lead * prod g**e``."""
    f = monic(F, trim(f))
    if len(f) <= 1:
        return []
    out = []
    _sqf(F, f, 1, out)
    merged: dict[tuple, int] = {}
    for g, e in out:
        merged[tuple(g)] = merged.get(tuple(g), 0) + e
    return [(np.array(k, dtype=np.int64), e) for k, e in merged.items()]


def _sqf(F, f, mult, out):
    p = F.p
    df = derivative(F, f)
    if len(df) == 0:
        _sqf(F, pth_root(F, f), mult * p, out)
        return
    c = gcd(F, f, df)
    w = divmod_(F, f, c)[0]
    i = 1
    while deg(w) > 0:
        y = gcd(F, w, c)
        z = divmod_(F, w, y)[0]
        if deg(z) > 0:
            out.append((monic(F, z), i * mult))
        w = y
        c = divmod_(F, c, y)[0]
        i += 1
    if deg(c) > 0:
        _sqf(F, pth_root(F, c), mult * p, out)


def distinct_degree(F: GF, f):
    """Distinct-degree factorisation of a squarefree monic ``f``."""
    f = monic(F, trim(f))
    out = []
    q = F.q
    x = X(F)
    h = rem(F, x, f)
    d = 0
    while deg(f) >= 2 * (d + 1):
        d += 1
        h = powmod(F, h, q, f)
        g = gcd(F, f, sub(F, h, x))
        if deg(g) > 0:
            out.append((g, d))
            f = divmod_(F, f, g)[0]
            h = rem(F, h, f)
    if deg(f) > 0:
        out.append((f, deg(f)))
    return out


def equal_degree(F: GF, f, d: int, rng: np.random.Generator):
    """Cantor-Zassenhaus splitting of a product of degree-``d`` irreducibles."""
    f = monic(F, trim(f))
    n = deg(f)
    if n == d:
        return [f]
    q = F.q
    while True:
        a = trim(F.random(rng, n))
        if deg(a) <= 0:
            continue
        if F.p == 2:
            # absolute trace a + a^2 + ... + a^(2^(md-1)) mod f
            t = rem(F, a, f)
            acc = t
            for _ in range(F.m * d - 1):
                t = rem(F, mul(F, t, t), f)
                acc = add(F, acc, t)
            b = acc
        else:
            b = sub(F, powmod(F, a, (q ** d - 1) // 2, f), const(1))
        g = gcd(F, f, b)
        if 0 < deg(g) < n:
            h = divmod_(F, f, g)[0]
            return equal_degree(F, g, d, rng) + equal_degree(F, h, d, rng)


def _poly_key(f):
    return (len(f), tuple(int(c) for c in reversed(f)))


def factor_squarefree_distinct(F: GF, f, rng: np.random.Generator | None = None):
    """Complete factorisation into monic irreducibles.

    Returns ``[(g, e), ...]`` sorted by degree then coefficients, with
    ``f = lead(f) * prod g**e``.  Squarefree decomposition, then distinct-degree
    and Cantor-Zassenhaus equal-degree splitting driven by ``rng``.
    """
    if rng is None:
        rng = np.random.default_rng(0)
    f = trim(f)
    if len(f) == 0:
        raise ValueError("cannot factor the zero polynomial")
    out = []
    for g, e in squarefree_decomposition(F, f):
        for h, d in distinct_degree(F, g):
            for irr in equal_degree(F, h, d, rng):
                out.append((irr, e))
    out.sort(key=lambda t: _poly_key(t[0]))
    return out


def is_irreducible(F: GF, f) -> bool:
    f = monic(F, trim(f))
    if deg(f) < 1:
        return False
    if deg(f) == 1:
        return True
    if deg(gcd(F, f, derivative(F, f))) > 0:
        return False
    parts = distinct_degree(F, f)
    return len(parts) == 1 and parts[0][1] == deg(f)


# -- minimal polynomials --------------------------------------------------------

def vector_minpoly(F: GF, A, v):
    """Monic ``g`` of least degree with ``v g(A) = 0`` (rows act on the left)."""
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[0]
    eb = EchelonBuilder(F, n, capacity=n + 1)
    w = np.asarray(v, dtype=np.int64)
    while True:
        dep = eb.add(w)
        if dep is not None:
            return trim(dep)
        w = F.matmul(w, A)


def minpoly(F: GF, A):
    """Exact minimal polynomial of a square matrix.

    The lcm of the vector minimal polynomials of the unit vectors, skipping
    unit vectors already inside the invariant span built so far.
    """
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[0]
    if n == 0:
        return const(1)
    from .linalg import Subspace

    span = Subspace(F, n)
    result = const(1)
    eye = F.identity(n)
    for i in range(n):
        if span.dim == n:
            break
        if span.contains(eye[i]):
            continue
        g = vector_minpoly(F, A, eye[i])
        result = lcm(F, result, g)
        vecs = [eye[i]]
        for _ in range(deg(g) - 1):
            vecs.append(F.matmul(vecs[-1], A))
        span = span.extend(np.array(vecs))
    return result

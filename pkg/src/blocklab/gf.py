"""Finite fields GF(p^m) with elements encoded as small integers.

An element is the integer ``sum(c_i * p**i)`` where ``c_0 + c_1 x + ...`` is
its polynomial representative modulo the defining polynomial.  All arithmetic
is vectorised over numpy integer arrays, so matrices over GF(q) are plain
``int64`` arrays tied to a :class:`GF` instance.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

import numpy as np

MAX_FIELD_SIZE = 1 << 20
_TABLE_LIMIT = 1024


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def splitting_degree(p: int, e: int) -> int:
    """Least ``m >= 1`` with ``p**m = 1 (mod e)``.

    GF(p^m) then contains all ``e``-th roots of unity, which makes it a
    splitting field for every group whose p'-exponent is ``e``.
    """
    if e < 1 or np.gcd(p, e) != 1:
        raise ValueError(f"need gcd(p, e) = 1 and e >= 1, got p={p}, e={e}")
    if e == 1:
        return 1
    m, x = 1, p % e
    while x != 1:
        x = (x * p) % e
        m += 1
    return m


# -- integer polynomials over GF(p), used only to pick the modulus ---------

def _poly_mod_p(a: list[int], b: list[int], p: int) -> list[int]:
    a = list(a)
    inv_lead = pow(b[-1], -1, p)
    while len(a) >= len(b):
        c = (a[-1] * inv_lead) % p
        shift = len(a) - len(b)
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        while a and a[-1] == 0:
            a.pop()
    return a


def _monic_polys(p: int, d: int):
    # ordered by the integer encoding of the lower coefficients
    for low in product(range(p), repeat=d):
        yield list(reversed(low)) + [1]


def is_irreducible_mod_p(poly: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    d = len(poly) - 1
    if d <= 0:
        return False
    for k in range(1, d // 2 + 1):
        for cand in _monic_polys(p, k):
            if not _poly_mod_p(poly, cand, p):
                return False
    return True


@dataclass(frozen=True)
class FieldParams:
    p: int
    m: int
    modulus: tuple[int, ...]  # low -> high, monic, degree m

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if len(self.modulus) != self.m + 1 or self.modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree m")
        if self.m > 1 and not is_irreducible_mod_p(list(self.modulus), self.p):
            raise ValueError(f"modulus {self.modulus} is reducible mod {self.p}")

    @property
    def q(self) -> int:
        return self.p ** self.m


def make_field(p: int, m: int = 1) -> FieldParams:
    """Parameters of GF(p^m) with the smallest irreducible monic modulus."""
    if m < 1 or m > 12:
        raise ValueError("extension degree must be in 1..12")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    for cand in _monic_polys(p, m):
        if m == 1 or is_irreducible_mod_p(cand, p):
            return FieldParams(p, m, tuple(cand))
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


class GF:
    """Vectorised arithmetic in GF(p^m).

    Elements are ``int64`` arrays with entries in ``range(q)``; 0 and 1 are
    the field's zero and one.  Equality of fields is equality of parameters.
    """

    def __init__(self, params: FieldParams):
        self.params = params
        self.p, self.m = params.p, params.m
        self.q = params.q
        if self.q > MAX_FIELD_SIZE:
            raise ValueError(f"field of size {self.q} is too large")
        p, m, q = self.p, self.m, self.q
        self._powers = p ** np.arange(m, dtype=np.int64)
        self.digits = (np.arange(q, dtype=np.int64)[:, None] // self._powers) % p
        self._modlow = np.array(params.modulus[:m], dtype=np.int64)
        if m == 1:
            self._neg = (-np.arange(q)) % p
        else:
            self._neg = self.encode((-self.digits) % p)
        self._build_log_tables()
        self._add_table = self._mul_table = None
        if m > 1 and q <= _TABLE_LIMIT:
            idx = np.arange(q)
            self._add_table = np.empty((q, q), dtype=np.int64)
            for a in range(q):
                self._add_table[a] = self.encode((self.digits[a] + self.digits) % p)
            self._mul_table = self._mul_via_logs(idx[:, None], idx[None, :])

    # -- construction helpers ------------------------------------------------

    def _mulx(self, digs: np.ndarray) -> np.ndarray:
        """Multiply coefficient rows by x modulo the defining polynomial."""
        top = digs[..., -1:]
        shifted = np.concatenate([np.zeros_like(top), digs[..., :-1]], axis=-1)
        return (shifted - top * self._modlow) % self.p

    def _poly_mulmod(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        acc = np.zeros(self.m, dtype=np.int64)
        cur = a.copy()
        for i in range(self.m):
            acc = (acc + b[i] * cur) % self.p
            cur = self._mulx(cur)
        return acc

    def _build_log_tables(self):
        q, p, m = self.q, self.p, self.m
        order = q - 1
        if m == 1:
            factors = prime_factors(order) if order > 1 else []
            for g in range(1, q):
                if all(pow(g, order // r, p) != 1 for r in factors):
                    break
            exp = np.empty(order, dtype=np.int64)
            x = 1
            for k in range(order):
                exp[k] = x
                x = (x * g) % p
        else:
            factors = prime_factors(order)
            one = np.zeros(m, dtype=np.int64)
            one[0] = 1

            def power(d, n):
                result, base = one.copy(), d.copy()
                while n:
                    if n & 1:
                        result = self._poly_mulmod(result, base)
                    base = self._poly_mulmod(base, base)
                    n >>= 1
                return result

            for g in range(p, q):
                gd = self.digits[g]
                if all(not np.array_equal(power(gd, order // r), one) for r in factors):
                    break
            # x -> x*g is GF(p)-linear; its matrix drives the exp table
            basis = np.eye(m, dtype=np.int64)
            gmat = np.array([self._poly_mulmod(basis[i], gd) for i in range(m)])
            exp = np.empty(order, dtype=np.int64)
            cur = one.copy()
            for k in range(order):
                exp[k] = int(cur @ self._powers)
                cur = (cur @ gmat) % p
        self.generator = int(exp[1]) if order > 1 else 1
        self._exp = exp
        self._log = np.zeros(q, dtype=np.int64)
        self._log[exp] = np.arange(order)

    def _mul_via_logs(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        r = self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, r)

    # -- elementwise ---------------------------------------------------------

    def encode(self, digs: np.ndarray) -> np.ndarray:
        return np.asarray(digs, dtype=np.int64) @ self._powers

    def add(self, a, b):
        if self.m == 1:
            return (np.asarray(a, dtype=np.int64) + b) % self.p
        if self._add_table is not None:
            return self._add_table[a, b]
        return self.encode((self.digits[a] + self.digits[b]) % self.p)

    def neg(self, a):
        return self._neg[a]

    def sub(self, a, b):
        if self.m == 1:
            return (np.asarray(a, dtype=np.int64) - b) % self.p
        return self.add(a, self._neg[b])

    def mul(self, a, b):
        if self.m == 1:
            return (np.asarray(a, dtype=np.int64) * b) % self.p
        if self._mul_table is not None:
            return self._mul_table[a, b]
        return self._mul_via_logs(a, b)

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero in GF(%d)" % self.q)
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def power(self, a, n: int):
        a = np.asarray(a, dtype=np.int64)
        if n == 0:
            return np.ones_like(a)
        r = self._exp[(self._log[a] * n) % (self.q - 1)]
        return np.where(a == 0, 0, r)

    def from_int(self, n):
        """Image of an integer (or integer array) under Z -> GF(p)."""
        return np.asarray(n, dtype=np.int64) % self.p

    def frobenius(self, a):
        return self.power(a, self.p)

    def sum(self, a, axis=0):
        a = np.asarray(a, dtype=np.int64)
        if self.m == 1:
            return a.sum(axis=axis) % self.p
        return self.encode(self.digits[a].sum(axis=axis) % self.p)

    def random(self, rng: np.random.Generator, shape=()):
        return rng.integers(0, self.q, size=shape, dtype=np.int64)

    # -- matrices ------------------------------------------------------------

    def matmul(self, A, B):
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        p = self.p
        if self.m == 1:
            return _exact_matmul(A, B) % p
        m = self.m
        Ad = [self.digits[A][..., i] for i in range(m)]
        Bd = [self.digits[B][..., j] for j in range(m)]
        coeffs = [None] * (2 * m - 1)
        for i in range(m):
            for j in range(m):
                prod = _exact_matmul(Ad[i], Bd[j])
                k = i + j
                coeffs[k] = prod if coeffs[k] is None else coeffs[k] + prod
        coeffs = [c % p for c in coeffs]
        for k in range(2 * m - 2, m - 1, -1):
            top = coeffs[k]
            for t in range(m):
                if self._modlow[t]:
                    coeffs[k - m + t] = (coeffs[k - m + t] - top * self._modlow[t]) % p
        return self.encode(np.stack(coeffs[:m], axis=-1))

    def identity(self, n: int) -> np.ndarray:
        return np.eye(n, dtype=np.int64)

    def zeros(self, shape) -> np.ndarray:
        return np.zeros(shape, dtype=np.int64)

    def kron(self, A, B):
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        r = self.mul(A[:, None, :, None], B[None, :, None, :])
        return r.reshape(A.shape[0] * B.shape[0], A.shape[1] * B.shape[1])

    def trace(self, A):
        return int(self.sum(np.diagonal(np.asarray(A))))

    def __eq__(self, other):
        return isinstance(other, GF) and self.params == other.params

    def __hash__(self):
        return hash(self.params)

    def __repr__(self):
        return f"GF({self.p}^{self.m})"


def _exact_matmul(A, B):
    # float64 BLAS is exact while every partial sum stays below 2**53
    n = A.shape[-1]
    if n * int(max(A.max(initial=0), 1)) * int(max(B.max(initial=0), 1)) < 2 ** 52:
        return np.rint(A.astype(np.float64) @ B.astype(np.float64)).astype(np.int64)
    return A @ B


@lru_cache(maxsize=None)
def field(p: int, m: int = 1) -> GF:
    """Cached :class:`GF` for the default modulus of GF(p^m)."""
    return GF(make_field(p, m))

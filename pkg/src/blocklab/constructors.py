"""Named groups and the JSON group-input format."""

from __future__ import annotations

import json
import re
from pathlib import Path

import numpy as np

from .errors import ConfigurationError
from .groups import FiniteGroup


def cycle_perm(degree: int, *cycles) -> list[int]:
    img = list(range(degree))
    for cyc in cycles:
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            img[a] = b
    return img


def trivial() -> FiniteGroup:
    return FiniteGroup.from_generators(1, [], name="trivial")


def cyclic(n: int) -> FiniteGroup:
    if n == 1:
        return FiniteGroup.from_generators(1, [], name="c1")
    return FiniteGroup.from_generators(n, [cycle_perm(n, list(range(n)))], name=f"c{n}")


def dihedral(order: int) -> FiniteGroup:
    """Dihedral group of the given (even) order."""
    if order % 2 or order < 2:
        raise ConfigurationError(f"dihedral order must be even, got {order}")
    n = order // 2
    if n == 1:
        G = cyclic(2)
    elif n == 2:
        G = FiniteGroup.from_generators(4, [cycle_perm(4, [0, 1], [2, 3]), cycle_perm(4, [0, 2], [1, 3])])
    else:
        rot = cycle_perm(n, list(range(n)))
        ref = [(-i) % n for i in range(n)]
        G = FiniteGroup.from_generators(n, [rot, ref])
    G.name = f"dihedral{order}"
    return G


def symmetric(n: int) -> FiniteGroup:
    if n == 1:
        return trivial()
    gens = [cycle_perm(n, [0, 1])]
    if n > 2:
        gens.append(cycle_perm(n, list(range(n))))
    return FiniteGroup.from_generators(n, gens, name=f"s{n}")


def alternating(n: int) -> FiniteGroup:
    if n < 3:
        return trivial()
    if n == 3:
        gens = [cycle_perm(3, [0, 1, 2])]
    elif n % 2:
        gens = [cycle_perm(n, [0, 1, 2]), cycle_perm(n, list(range(n)))]
    else:
        gens = [cycle_perm(n, [0, 1, 2]), cycle_perm(n, list(range(1, n)))]
    return FiniteGroup.from_generators(n, gens, name=f"a{n}")


def _regular(mul: np.ndarray, gens, name: str) -> FiniteGroup:
    """Right regular permutation representation of a table group."""
    perms = [mul[:, g].tolist() for g in gens]
    return FiniteGroup.from_generators(mul.shape[0], perms, name=name)


def quaternion() -> FiniteGroup:
    # units +-1, +-i, +-j, +-k as (sign, axis) with axis 0..3 = 1,i,j,k
    table = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }
    elems = [(s, a) for s in (1, -1) for a in range(4)]
    pos = {e: i for i, e in enumerate(elems)}
    mul = np.empty((8, 8), dtype=np.int64)
    for x, (s1, a1) in enumerate(elems):
        for y, (s2, a2) in enumerate(elems):
            s, a = table[(a1, a2)]
            mul[x, y] = pos[(s * s1 * s2, a)]
    return _regular(mul, [pos[(1, 1)], pos[(1, 2)]], "q8")


def sl23() -> FiniteGroup:
    vecs = [(a, b) for a in range(3) for b in range(3) if (a, b) != (0, 0)]
    pos = {v: i for i, v in enumerate(vecs)}

    def act(M):
        return [pos[((a * M[0][0] + b * M[1][0]) % 3, (a * M[0][1] + b * M[1][1]) % 3)] for a, b in vecs]

    return FiniteGroup.from_generators(8, [act([[1, 1], [0, 1]]), act([[0, 2], [1, 0]])], name="sl23")


def elementary_abelian(p: int, n: int) -> FiniteGroup:
    degree = p * n
    gens = [cycle_perm(degree, list(range(i * p, (i + 1) * p))) for i in range(n)]
    return FiniteGroup.from_generators(degree, gens, name=f"e{p}^{n}")


def frobenius_group(q: int, r: int) -> FiniteGroup:
    """``C_q x| C_r`` acting on Z/q, for prime ``q`` and ``r | q - 1``."""
    if (q - 1) % r:
        raise ConfigurationError(f"{r} does not divide {q} - 1")
    a = next(x for x in range(2, q) if pow(x, r, q) == 1 and all(pow(x, k, q) != 1 for k in range(1, r)))
    trans = [(i + 1) % q for i in range(q)]
    mult = [(a * i) % q for i in range(q)]
    return FiniteGroup.from_generators(q, [trans, mult], name=f"c{q}:c{r}")


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    n, m = G.order, H.order
    # (g, h) -> g * m + h
    mul = (G.mul[:, None, :, None] * m + H.mul[None, :, None, :]).reshape(n * m, n * m)
    gens = [g * m for g in G.generators] + list(H.generators)
    return _regular(mul, gens, f"{G.name}x{H.name}")


def semidirect_product(N: FiniteGroup, H: FiniteGroup, action: dict) -> FiniteGroup:
    """``N x| H`` from an explicit action table.

    ``action`` maps each generator index of ``H`` to an automorphism of ``N``
    given as the image array of N's element indices.  Products are
    ``(n1, h1)(n2, h2) = (n1 * phi_h1(n2), h1 h2)``.
    """
    n, m = N.order, H.order
    phi = {0: np.arange(n)}
    queue = [0]
    while queue:
        h = queue.pop(0)
        for g in H.generators:
            a = np.asarray(action[g], dtype=np.int64)
            hg = int(H.mul[h, g])
            img = phi[h][a]  # phi_{hg} = phi_h o phi_g
            if hg not in phi:
                phi[hg] = img
                queue.append(hg)
    for h1 in range(m):
        for h2 in range(m):
            if not np.array_equal(phi[int(H.mul[h1, h2])], phi[h1][phi[h2]]):
                raise ConfigurationError("action table is not a homomorphism H -> Aut(N)")
    for h in range(m):
        f = phi[h]
        if not np.array_equal(f[N.mul], N.mul[np.ix_(f, f)]):
            raise ConfigurationError("action table entry is not an automorphism of N")
    Phi = np.stack([phi[h] for h in range(m)])
    mul = np.empty((n * m, n * m), dtype=np.int64)
    for n1 in range(n):
        for h1 in range(m):
            n2 = N.mul[n1, Phi[h1]]  # n1 * phi_h1(n2) for all n2
            mul[n1 * m + h1] = (n2[:, None] * m + H.mul[h1][None, :]).ravel()
    gens = [g * m for g in N.generators] + list(H.generators)
    return _regular(mul, gens, f"{N.name}:{H.name}")


_NAMED = {
    "trivial": trivial,
    "s3": lambda: symmetric(3),
    "s4": lambda: symmetric(4),
    "s5": lambda: symmetric(5),
    "a4": lambda: alternating(4),
    "a5": lambda: alternating(5),
    "d8": lambda: dihedral(8),
    "q8": quaternion,
    "sl23": sl23,
    "c7:c3": lambda: frobenius_group(7, 3),
    "c3:c4": lambda: _c3_c4(),
}


def _c3_c4() -> FiniteGroup:
    G = semidirect_product(cyclic(3), cyclic(4), {1: [0, 2, 1]})
    G.name = "c3:c4"
    return G


def named(name: str) -> FiniteGroup:
    """Construct a group from a short name (``s3``, ``c6``, ``dihedral10``, ...)."""
    key = name.strip().lower()
    if key in _NAMED:
        G = _NAMED[key]()
        G.name = key
        return G
    if m := re.fullmatch(r"c(\d+)", key):
        return cyclic(int(m.group(1)))
    if m := re.fullmatch(r"dihedral(\d+)", key):
        return dihedral(int(m.group(1)))
    if m := re.fullmatch(r"s(\d+)", key):
        return symmetric(int(m.group(1)))
    if m := re.fullmatch(r"a(\d+)", key):
        return alternating(int(m.group(1)))
    if m := re.fullmatch(r"e(\d+)\^(\d+)", key):
        return elementary_abelian(int(m.group(1)), int(m.group(2)))
    raise ConfigurationError(f"unknown group name {name!r}")


def group_from_json(data: dict, *, cap: int | None = None) -> FiniteGroup:
    """``{"name": ..., "degree": n, "generators": [[...], ...]}`` with 0-based images."""
    try:
        degree = int(data["degree"])
        gens = data.get("generators", [])
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigurationError(f"malformed group JSON: {exc}") from exc
    kwargs = {} if cap is None else {"cap": cap}
    try:
        return FiniteGroup.from_generators(degree, gens, name=str(data.get("name", "")), **kwargs)
    except ValueError as exc:
        raise ConfigurationError(str(exc)) from exc


def group_from_file(path) -> FiniteGroup:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigurationError(f"cannot read group file {path}: {exc}") from exc
    return group_from_json(data)


def group_to_json(G: FiniteGroup) -> dict:
    if G.perms is None:
        raise ValueError("group has no permutation images")
    return {
        "name": G.name,
        "degree": int(G.perms.shape[1]),
        "generators": [G.perms[g].tolist() for g in G.generators],
    }

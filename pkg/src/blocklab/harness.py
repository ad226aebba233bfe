"""Full per-(G, p) pipeline, the theorem checks, and JSON reports."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linear_sum_assignment

from .algebra import Block, GroupAlgebra, block_decomposition, is_principal_type, p_subgroup_classes
from .cartan import CartanMatrix, ElementaryDivisors, cartan_matrix, composition_multiplicities, elementary_divisors, lift_primitive_idempotents, radical_of_block
from .errors import ConfigurationError, InvariantViolation
from .gf import GF, field as make_gf, is_prime, splitting_degree
from .groups import FiniteGroup, Subgroup
from .linalg import Subspace
from .lowerdefect import LowerDefectTable, PRegularDistribution, class_defect_group, distribute_pregular_classes, lower_defect_table
from .meataxe import BlockModules, BrauerTraceMatrix, matching_sigma, simples_of_block, trace_matrix
from .vertices import VertexResult, vertex

SCHEMA_VERSION = 1
PASS, FAIL, NOT_APPLICABLE = "pass", "fail", "not_applicable"


@dataclass
class Verdict:
    name: str
    status: str
    checked: int = 0
    detail: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status != FAIL

    def to_json(self) -> dict:
        return {"name": self.name, "status": self.status, "checked": self.checked, "detail": self.detail}


def _verdict(name, failures, checked, applicable=True, **detail) -> Verdict:
    if not applicable:
        return Verdict(name, NOT_APPLICABLE, 0, detail)
    if failures:
        detail["failures"] = failures
    return Verdict(name, FAIL if failures else PASS, checked, detail)


@dataclass
class BlockAnalysis:
    block: Block
    classes: list[int]
    class_defect: list[Subgroup]
    lower: LowerDefectTable
    modules: BlockModules
    trace: BrauerTraceMatrix
    sigma: list[int]
    vertices: list[VertexResult]
    cartan: CartanMatrix
    divisors: ElementaryDivisors

    @property
    def label(self) -> int:
        return self.block.label

    @property
    def l(self) -> int:
        return len(self.classes)


@dataclass
class Analysis:
    G: FiniteGroup
    p: int
    F: GF
    seed: int
    subgroup_classes: list[Subgroup]
    distribution: PRegularDistribution
    blocks: list[BlockAnalysis]
    verdicts: list[Verdict] = field(default_factory=list)

    def subgroup_index(self, Q: Subgroup) -> int:
        for i, R in enumerate(self.subgroup_classes):
            if self.G.are_conjugate(Q, R):
                return i
        raise InvariantViolation(f"subgroup of order {Q.order} missing from the p-subgroup list")

    def report(self) -> dict:
        G = self.G
        classes = G.conjugacy_classes(self.p)
        blocks = []
        for ba in self.blocks:
            b = ba.block
            blocks.append({
                "label": b.label,
                "principal": bool(b.is_principal),
                "principal_type": bool(b.is_principal_type),
                "defect_group": self.subgroup_index(b.defect_group),
                "defect_group_order": b.defect_group.order,
                "l": ba.l,
                "lower_defect": [
                    {"subgroup": self.subgroup_index(Q), "order": Q.order, "multiplicity": m}
                    for Q, m in ba.lower.entries if m
                ],
                "classes": [
                    {"index": c, "representative": classes[c].representative,
                     "size": classes[c].size, "class_defect_order": Q.order}
                    for c, Q in zip(ba.classes, ba.class_defect)
                ],
                "simple_dims": [S.dim for S in ba.modules.simples],
                "composition_multiplicities": ba.modules.multiplicities,
                "vertex_orders": [v.vertex_order for v in ba.vertices],
                "vertices": [self.subgroup_index(v.vertex) for v in ba.vertices],
                "vertex_p_ranks": [v.p_rank for v in ba.vertices],
                "trace_matrix": ba.trace.entries.tolist(),
                "sigma": ba.sigma,
                "cartan": ba.cartan.entries.tolist(),
                "elementary_divisors": ba.divisors.values,
            })
        return {
            "schema": SCHEMA_VERSION,
            "group": {"name": G.name, "order": G.order},
            "prime": self.p,
            "field": {"p": self.F.p, "m": self.F.m},
            "seed": self.seed,
            "p_nilpotent": G.is_p_nilpotent(self.p),
            "p_solvable": G.is_p_solvable(self.p),
            "p_subgroups": [
                {"index": i, "order": Q.order, "p_rank": G.p_rank(Q, self.p)}
                for i, Q in enumerate(self.subgroup_classes)
            ],
            "blocks": blocks,
            "verdicts": [v.to_json() for v in self.verdicts],
        }

    @property
    def passed(self) -> bool:
        return all(v.ok for v in self.verdicts)


def choose_field(G: FiniteGroup, p: int) -> GF:
    if not is_prime(p):
        raise ConfigurationError(f"{p} is not prime")
    return make_gf(p, splitting_degree(p, G.pprime_exponent(p)))


class _Step:
    """Prefixes invariant violations with the pipeline step that raised them."""

    def __init__(self, G, p, what):
        self.where = f"{G.name or 'G'} p={p} {what}"

    def __enter__(self):
        return self

    def __exit__(self, kind, exc, tb):
        if isinstance(exc, InvariantViolation) and not getattr(exc, "_located", False):
            new = InvariantViolation(f"{self.where}: {exc}")
            new._located = True
            raise new from exc
        return False


def analyze(G: FiniteGroup, p: int, seed: int = 0, *, checks: bool = True) -> Analysis:
    F = choose_field(G, p)
    with _Step(G, p, "blocks"):
        blocks = block_decomposition(G, p, F, seed=seed)
        cache: dict = {}
        for b in blocks:
            b.is_principal_type = is_principal_type(G, p, F, b, cache=cache)
    with _Step(G, p, "class distribution"):
        dist = distribute_pregular_classes(G, p, F, blocks)
    classes = G.conjugacy_classes(p)
    sub_classes = list(p_subgroup_classes(G, p))
    out = []
    for b in blocks:
        with _Step(G, p, f"block {b.label}"):
            cls = dist.classes_of(b.label)
            qs = [class_defect_group(G, p, classes[c]) for c in cls]
            lower = lower_defect_table(G, p, F, b)
            mods = simples_of_block(G, p, F, b, seed=seed, expected=len(cls))
            T = trace_matrix(G, mods.simples, cls, b.label)
            sigma = matching_sigma(T, F)
            vx = [vertex(G, p, S, classes=sub_classes) for S in mods.simples]
            radical_of_block(G, F, b, mods.simples)
            idem = lift_primitive_idempotents(G, F, b, mods.simples)
            C = cartan_matrix(G, F, b, mods.simples, idem)
            out.append(BlockAnalysis(b, cls, qs, lower, mods, T, sigma, vx, C, elementary_divisors(C)))
    an = Analysis(G, p, F, seed, sub_classes, dist, out)
    if checks:
        an.verdicts = run_checks(an)
    return an


# -- checks ------------------------------------------------------------------------

def check_lower_defect(an: Analysis) -> Verdict:
    """Both lower-defect routes agree (enforced upstream); totals and the defect group entry."""
    G, fails, n = an.G, [], 0
    for ba in an.blocks:
        n += 1
        if ba.lower.total != ba.l:
            fails.append(f"block {ba.label}: sum of multiplicities {ba.lower.total} != l(b) {ba.l}")
        if ba.lower.multiplicity(G, ba.block.defect_group) != 1:
            fails.append(f"block {ba.label}: defect group multiplicity is not 1")
        got = sorted(Q.order for Q in ba.class_defect)
        if got != ba.lower.order_multiset():
            fails.append(f"block {ba.label}: distributed class defect orders {got} != {ba.lower.order_multiset()}")
    return _verdict("lower_defect", fails, n)


def check_prop_2_1(an: Analysis) -> Verdict:
    fails, n = [], 0
    for ba in an.blocks:
        n += 1
        if ba.divisors.values != ba.lower.order_multiset():
            fails.append(f"block {ba.label}: divisors {ba.divisors.values} vs lower defect {ba.lower.order_multiset()}")
        det = ba.cartan.determinant()
        if det != ba.divisors.product():
            fails.append(f"block {ba.label}: det C = {det} but product of divisors {ba.divisors.product()}")
        P = ba.block.defect_group.order
        if ba.divisors.values[-1] != P or ba.divisors.multiplicity(P) != 1:
            fails.append(f"block {ba.label}: largest divisor is not |P| = {P} with multiplicity 1")
        dims = [S.dim for S in ba.modules.simples]
        if composition_multiplicities(ba.cartan, dims) != ba.modules.multiplicities:
            fails.append(f"block {ba.label}: Cartan matrix disagrees with composition multiplicities")
    return _verdict("prop_2_1_divisors", fails, n)


def check_prop_1_1(an: Analysis) -> Verdict:
    G, fails, n = an.G, [], 0
    for ba in an.blocks:
        lhs = rhs = 1
        for i, Q in enumerate(ba.class_defect):
            j = ba.sigma[i]
            n += 1
            if ba.trace.entries[j, i] == 0:
                fails.append(f"block {ba.label}: zero trace at matched pair ({i}, {j})")
            if not G.is_conjugate_subgroup_leq(Q, ba.vertices[j].vertex):
                fails.append(f"block {ba.label}: Q_{i} (order {Q.order}) not below vertex of S_{j}")
            lhs *= Q.order
        rhs = math.prod(v.vertex_order for v in ba.vertices)
        if lhs > rhs:
            fails.append(f"block {ba.label}: product {lhs} > {rhs}")
    return _verdict("prop_1_1", fails, n)


def check_thm_1_2(an: Analysis) -> Verdict:
    G, fails, n = an.G, [], 0
    for ba in an.blocks:
        if not ba.block.is_principal_type:
            continue
        P = ba.block.defect_group
        for v in ba.vertices:
            for Q, m in ba.lower.entries:
                if Q.order < P.order and G.is_conjugate_subgroup_leq(Q, P) and G.is_conjugate_subgroup_leq(v.vertex, Q):
                    n += 1
                    if m:
                        fails.append(f"block {ba.label}: m(Q)={m} for |Q|={Q.order} above a vertex")
    return _verdict("thm_1_2", fails, n)


def products(an: Analysis) -> tuple[int, int]:
    lhs = math.prod(Q.order for ba in an.blocks for Q in ba.class_defect)
    rhs = math.prod(v.vertex_order for ba in an.blocks for v in ba.vertices)
    return lhs, rhs


def check_cor_1_3(an: Analysis) -> Verdict:
    lhs, rhs = products(an)
    nil = an.G.is_p_nilpotent(an.p)
    fails = []
    if lhs > rhs:
        fails.append(f"{lhs} > {rhs}")
    if (lhs == rhs) != nil:
        fails.append(f"equality {lhs == rhs} but p-nilpotent {nil}")
    return _verdict("cor_1_3", fails, 1, lower_product=lhs, vertex_product=rhs, p_nilpotent=nil)


def check_thm_3_4_centric(an: Analysis) -> Verdict:
    G, fails, n = an.G, [], 0
    for ba in an.blocks:
        P = ba.block.defect_group
        conj_P = G.conjugates_of(P)
        for Q, m in ba.lower.entries:
            if Q.order >= P.order:
                continue
            over = [R for R in conj_P if Q.issubset(R)]
            if not over:
                continue
            ZQ = G.center(Q)
            if all(G.centralizer_of(Q, within=R).members == ZQ.members for R in over):
                n += 1
                if m:
                    fails.append(f"block {ba.label}: centric |Q|={Q.order} has m={m}")
    return _verdict("thm_3_4_centric", fails, n)


def _strict_matching(an: Analysis, ba: BlockAnalysis):
    G, P = an.G, ba.block.defect_group
    l = ba.l
    allowed = np.zeros((l, l), dtype=bool)
    for i, Q in enumerate(ba.class_defect):
        for j, v in enumerate(ba.vertices):
            R = v.vertex
            if G.is_conjugate_subgroup_leq(Q, R) and (Q.order < R.order or G.are_conjugate(Q, P)):
                allowed[i, j] = True
    rows, cols = linear_sum_assignment(np.where(allowed, 0.0, 1.0))
    if all(allowed[r, c] for r, c in zip(rows, cols)):
        return [int(c) for _, c in sorted(zip(rows, cols))]
    return None


def check_thm_4_3(an: Analysis) -> Verdict:
    if not an.G.is_p_solvable(an.p):
        return _verdict("thm_4_3", [], 0, applicable=False)
    fails, sigmas = [], {}
    for ba in an.blocks:
        s = _strict_matching(an, ba)
        if s is None:
            fails.append(f"block {ba.label}: no strict containment permutation")
        else:
            sigmas[str(ba.label)] = s
    return _verdict("thm_4_3", fails, len(an.blocks), sigma=sigmas)


def check_cor_4_4(an: Analysis) -> Verdict:
    if not an.G.is_p_solvable(an.p):
        return _verdict("cor_4_4", [], 0, applicable=False)
    fails = []
    for ba in an.blocks:
        det = ba.cartan.determinant()
        vp = math.prod(v.vertex_order for v in ba.vertices)
        if det > vp:
            fails.append(f"block {ba.label}: det C = {det} > {vp}")
        if (det == vp) != (ba.l == 1):
            fails.append(f"block {ba.label}: equality {det == vp} with l(b) = {ba.l}")
    return _verdict("cor_4_4", fails, len(an.blocks))


def _embed(G: FiniteGroup, emb: np.ndarray, v) -> np.ndarray:
    out = np.zeros(G.order, dtype=np.int64)
    out[emb] = v
    return out


def _stabilizer(A: GroupAlgebra, v) -> Subgroup:
    G = A.G
    return G.as_subgroup([g for g in range(G.order) if np.array_equal(A.conjugate(v, g), v)])


def check_lemma_4_2_fong(an: Analysis) -> Verdict:
    """Multiplicity transfer between a block of G and its Fong correspondent."""
    G, p, F = an.G, an.p, an.F
    if not G.is_p_solvable(p):
        return _verdict("lemma_4_2_fong", [], 0, applicable=False, reason="not p-solvable")
    N = G.o_pprime(p)
    if N.order == 1:
        return _verdict("lemma_4_2_fong", [], 0, applicable=False, reason="trivial p'-core")
    A = GroupAlgebra(G, F)
    NG, nemb = G.subgroup_as_group(N)
    fails, n, setups = [], 0, []
    by_idem = {ba.block.idempotent.tobytes(): ba for ba in an.blocks}
    done_orbits: list[np.ndarray] = []
    for c in block_decomposition(NG, p, F):
        cv = _embed(G, nemb, c.idempotent)
        if any(np.array_equal(cv, A.conjugate(o, g)) for o in done_orbits for g in range(G.order)):
            continue
        done_orbits.append(cv)
        T = _stabilizer(A, cv)
        if T.order == G.order:
            continue
        H, hemb = G.subgroup_as_group(T)
        AH = GroupAlgebra(H, F)
        c_in_H = cv[hemb]
        for d in block_decomposition(H, p, F):
            if not np.array_equal(AH.product(d.idempotent, c_in_H), d.idempotent):
                continue
            traced = A.relative_trace(_embed(G, hemb, d.idempotent), T)
            ba = by_idem.get(traced.tobytes())
            if ba is None:
                fails.append(f"Tr_H^G of a block over c (|H|={H.order}) is not a block of G")
                continue
            # d b = d
            if not np.array_equal(A.product(_embed(G, hemb, d.idempotent), ba.block.idempotent), _embed(G, hemb, d.idempotent)):
                fails.append(f"Fong correspondent of block {ba.label} does not satisfy d b = d")
            table_d = lower_defect_table(H, p, F, d)
            if table_d.total != ba.l:
                fails.append(f"block {ba.label}: l(d) = {table_d.total} != l(b) = {ba.l}")
            for U_H, _ in table_d.entries:
                U = G.as_subgroup(hemb[list(U_H.members)].tolist())
                lhs = sum(m for W, m in table_d.entries
                          if G.are_conjugate(G.as_subgroup(hemb[list(W.members)].tolist()), U))
                rhs = ba.lower.multiplicity(G, U)
                n += 1
                if lhs != rhs:
                    fails.append(f"block {ba.label}, |U|={U.order}: sum over H-classes {lhs} != {rhs}")
            setups.append({"inertial_order": T.order, "block": ba.label})
    if not setups:
        return _verdict("lemma_4_2_fong", [], 0, applicable=False, reason="no proper inertial group")
    return _verdict("lemma_4_2_fong", fails, n, setups=setups)


def check_lemma_3_2(an: Analysis) -> Verdict:
    """``b (kH)_1^G = 0`` for defect-zero blocks ``b`` of normal ``H`` with ``p | [T(b):H]``."""
    G, p, F = an.G, an.p, an.F
    A = GroupAlgebra(G, F)
    fails, n, cases = [], 0, []
    one = G.trivial
    for H in G.normal_subgroups:
        if H.order in (1, G.order):
            continue
        HG, emb = G.subgroup_as_group(H)
        rows = np.zeros((H.order, G.order), dtype=np.int64)
        rows[np.arange(H.order), emb] = 1
        traces = A.relative_trace(rows, one)
        for b in block_decomposition(HG, p, F):
            if b.defect_group.order != 1:
                continue
            bv = _embed(G, emb, b.idempotent)
            T = _stabilizer(A, bv)
            if (T.order // H.order) % p:
                continue
            n += 1
            cases.append({"normal_order": H.order, "inertial_index": T.order // H.order})
            if np.any(A.products(traces, bv)):
                fails.append(f"|H|={H.order}: b (kH)_1^G is nonzero")
    if not n:
        return _verdict("lemma_3_2", [], 0, applicable=False)
    return _verdict("lemma_3_2", fails, n, cases=cases)


def check_lemma_3_3(an: Analysis) -> Verdict:
    """Dimension of ``b (kC_G(Q)_p')_Q^G`` survives the quotient by ``Q = O_p(G)``."""
    G, p, F = an.G, an.p, an.F
    Q = G.o_p(p)
    if Q.order == 1:
        return _verdict("lemma_3_3", [], 0, applicable=False)
    A = GroupAlgebra(G, F)
    Gb, proj = G.quotient(Q)
    Ab = GroupAlgebra(Gb, F)
    C = G.centralizer_of(Q)
    ys = C.array[G.p_regular(p)[C.array]]
    rows = np.zeros((ys.size, G.order), dtype=np.int64)
    rows[np.arange(ys.size), ys] = 1
    top = A.relative_trace(rows, Q)
    img = np.unique(proj[C.array])
    ybar = img[Gb.p_regular(p)[img]]
    rows_b = np.zeros((ybar.size, Gb.order), dtype=np.int64)
    rows_b[np.arange(ybar.size), ybar] = 1
    top_b = Ab.relative_trace(rows_b, Gb.trivial)
    fails, dims = [], {}
    for ba in an.blocks:
        b = ba.block.idempotent
        bbar = np.zeros(Gb.order, dtype=np.int64)
        for g in np.flatnonzero(b):
            bbar[proj[g]] = F.add(bbar[proj[g]], b[g])
        d1 = Subspace(F, G.order, A.products(top, b)).dim
        d2 = Subspace(F, Gb.order, Ab.products(top_b, bbar)).dim
        dims[str(ba.label)] = [d1, d2]
        if d1 != d2:
            fails.append(f"block {ba.label}: {d1} != {d2}")
    return _verdict("lemma_3_3", fails, len(an.blocks), dims=dims)


def _max_elementary_abelian(G: FiniteGroup, p: int, within: Subgroup, subs: list[Subgroup]) -> int:
    return max(R.order for R in subs if R.issubset(within) and G.is_elementary_abelian(R, p))


def check_lemma_5_2(G: FiniteGroup, p: int, P: Subgroup | None = None) -> Verdict:
    """``|Q:F| <= |P:E|`` for all ``Q <= P`` with maximal elementary abelian ``E``, ``F``."""
    P = G.sylow(p) if P is None else P
    if P.order > 64:
        raise ConfigurationError("p-subgroup too large for the exhaustive check")
    subs = G.all_subgroups(P, cap=64)
    E = _max_elementary_abelian(G, p, P, subs)
    fails = []
    for Q in subs:
        Fq = _max_elementary_abelian(G, p, Q, subs)
        if Q.order * E > P.order * Fq:
            fails.append(f"|Q|={Q.order}: |Q:F|={Q.order // Fq} > |P:E|={P.order // E}")
    return _verdict("lemma_5_2", fails, len(subs), sylow_order=P.order, max_elementary_abelian=E)


def check_knorr(an: Analysis) -> Verdict:
    G, fails, n = an.G, [], 0
    for ba in an.blocks:
        P = ba.block.defect_group
        if not G.is_abelian_subgroup(P):
            continue
        for j, v in enumerate(ba.vertices):
            n += 1
            if not G.are_conjugate(v.vertex, P):
                fails.append(f"block {ba.label}: S_{j} has vertex of order {v.vertex_order}, defect group {P.order}")
    return _verdict("knorr_abelian_defect", fails, n, applicable=n > 0)


def check_vertex_bounds(an: Analysis) -> Verdict:
    """``O_p(G) <= vx(S) <=_G P`` for every simple ``S`` in a block with defect group ``P``."""
    G, fails, n = an.G, [], 0
    Op = G.o_p(an.p)
    for ba in an.blocks:
        for j, v in enumerate(ba.vertices):
            n += 1
            if not Op.issubset(v.vertex):
                fails.append(f"block {ba.label}: O_p(G) not in vertex of S_{j}")
            if not G.is_conjugate_subgroup_leq(v.vertex, ba.block.defect_group):
                fails.append(f"block {ba.label}: vertex of S_{j} not inside the defect group")
    return _verdict("vertex_bounds", fails, n)


CHECKS = (
    check_lower_defect, check_prop_2_1, check_prop_1_1, check_thm_1_2, check_cor_1_3,
    check_thm_3_4_centric, check_thm_4_3, check_cor_4_4, check_lemma_4_2_fong,
    check_lemma_3_2, check_lemma_3_3, check_knorr, check_vertex_bounds,
)


def run_checks(an: Analysis) -> list[Verdict]:
    out = []
    for chk in CHECKS:
        with _Step(an.G, an.p, chk.__name__):
            out.append(chk(an))
    with _Step(an.G, an.p, "check_lemma_5_2"):
        out.append(check_lemma_5_2(an.G, an.p))
    return out

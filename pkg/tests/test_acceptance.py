"""Acceptance criteria 1-10 over the default corpus; one summary line per criterion."""

import json
import math
import subprocess
import sys


from blocklab.harness import (_strict_matching, check_knorr, check_lemma_4_2_fong, check_lemma_5_2,
                              products)
from blocklab.lowerdefect import m1_broue, m1_quotient
from conftest import record_acceptance

RUNTIME_BUDGET_S = 300


def test_criterion_01_lower_defect_oracles(corpus_run):
    analyses, seconds = corpus_run
    bad = []
    for key, an in analyses.items():
        G, p, F = an.G, an.p, an.F
        for ba in an.blocks:
            for Q in an.subgroup_classes:
                if m1_quotient(G, p, F, ba.block, Q) != m1_broue(G, p, F, ba.block, Q):
                    bad.append((key, ba.label, Q.order))
            if ba.lower.total != ba.l or ba.lower.multiplicity(G, ba.block.defect_group) != 1:
                bad.append((key, ba.label, "sum/defect"))
    ok = not bad and seconds < RUNTIME_BUDGET_S
    record_acceptance(1, ok, f"{len(analyses)} (G,p) pairs, mismatches={len(bad)}, corpus time {seconds:.1f}s < {RUNTIME_BUDGET_S}s")
    assert not bad
    assert seconds < RUNTIME_BUDGET_S


def test_criterion_02_cartan_divisors(corpus_run, analysis):
    analyses, _ = corpus_run
    bad = [(k, ba.label) for k, an in analyses.items() for ba in an.blocks
           if ba.divisors.values != ba.lower.order_multiset()]
    s3 = analysis("s3", 3).blocks[0]
    a4 = analysis("a4", 2).blocks[0]
    anchors = (s3.cartan.entries.tolist() == [[2, 1], [1, 2]] and s3.divisors.values == [1, 3]
               and a4.divisors.values == [1, 1, 4])
    record_acceptance(2, not bad and anchors, f"divisor/lower-defect mismatches={len(bad)}, anchors {'ok' if anchors else 'WRONG'}")
    assert not bad and anchors


def test_criterion_03_prop_1_1(corpus_run):
    analyses, _ = corpus_run
    bad = []
    for k, an in analyses.items():
        G = an.G
        for ba in an.blocks:
            for i, Q in enumerate(ba.class_defect):
                j = ba.sigma[i]
                if ba.trace.entries[j, i] == 0 or not G.is_conjugate_subgroup_leq(Q, ba.vertices[j].vertex):
                    bad.append((k, ba.label, i))
            if math.prod(Q.order for Q in ba.class_defect) > math.prod(v.vertex_order for v in ba.vertices):
                bad.append((k, ba.label, "product"))
    record_acceptance(3, not bad, f"violations={len(bad)}")
    assert not bad


def test_criterion_04_thm_1_2(corpus_run):
    analyses, _ = corpus_run
    bad, checked = [], 0
    for k, an in analyses.items():
        G = an.G
        for ba in an.blocks:
            if not ba.block.is_principal_type:
                continue
            P = ba.block.defect_group
            for v in ba.vertices:
                for Q, m in ba.lower.entries:
                    if Q.order < P.order and G.is_conjugate_subgroup_leq(v.vertex, Q) and G.is_conjugate_subgroup_leq(Q, P):
                        checked += 1
                        if m:
                            bad.append((k, ba.label, Q.order))
    record_acceptance(4, not bad, f"pairs checked={checked}, violations={len(bad)}")
    assert not bad


POSITIVE = [("s3", 2), ("q8", 2), ("c6", 2), ("c6", 3)]
NEGATIVE = [("s3", 3), ("a4", 2), ("a5", 2), ("s4", 2)]


def test_criterion_05_cor_1_3(corpus_run):
    analyses, _ = corpus_run
    bad = []
    for k, an in analyses.items():
        lhs, rhs = products(an)
        if lhs > rhs or (lhs == rhs) != an.G.is_p_nilpotent(an.p):
            bad.append(k)
    named_ok = all(products(analyses[k])[0] == products(analyses[k])[1] for k in POSITIVE) and \
        all(products(analyses[k])[0] < products(analyses[k])[1] for k in NEGATIVE)
    record_acceptance(5, not bad and named_ok, f"violations={len(bad)}, named positive/negative cases {'ok' if named_ok else 'WRONG'}")
    assert not bad and named_ok


def test_criterion_06_thm_4_3_cor_4_4(corpus_run):
    analyses, _ = corpus_run
    bad, n = [], 0
    for k, an in analyses.items():
        if not an.G.is_p_solvable(an.p):
            continue
        n += 1
        for ba in an.blocks:
            if _strict_matching(an, ba) is None:
                bad.append((k, ba.label, "matching"))
            det = ba.cartan.determinant()
            vp = math.prod(v.vertex_order for v in ba.vertices)
            if det > vp or (det == vp) != (ba.l == 1):
                bad.append((k, ba.label, "det"))
    record_acceptance(6, not bad and n > 0, f"p-solvable pairs={n}, violations={len(bad)}")
    assert not bad and n > 0


def test_criterion_07_fong(corpus_run):
    analyses, _ = corpus_run
    applicable = 0
    bad = []
    for k, an in analyses.items():
        v = check_lemma_4_2_fong(an)
        if v.status == "not_applicable":
            continue
        applicable += 1
        if v.status != "pass":
            bad.append(k)
    s4 = check_lemma_4_2_fong(analyses[("s4", 3)])
    ok = not bad and applicable >= 1 and s4.status == "pass" and s4.checked > 0
    record_acceptance(7, ok, f"applicable pairs={applicable} (S4 p=3: {s4.status}, {s4.checked} identities), failures={len(bad)}")
    assert ok


def test_criterion_08_lemma_5_2(corpus_run):
    analyses, _ = corpus_run
    bad, pairs = [], 0
    for k, an in analyses.items():
        v = check_lemma_5_2(an.G, an.p)
        pairs += v.checked
        if v.status != "pass":
            bad.append(k)
    record_acceptance(8, not bad, f"(P, Q) pairs checked={pairs}, failures={len(bad)}")
    assert not bad


def test_criterion_09_knorr(corpus_run):
    analyses, _ = corpus_run
    bad, n = [], 0
    for k, an in analyses.items():
        v = check_knorr(an)
        n += v.checked
        if v.status == "fail":
            bad.append(k)
    b0 = analyses[("a5", 2)].blocks[0]
    anchor = len(b0.vertices) == 3 and all(v.vertex_order == 4 for v in b0.vertices) and b0.block.defect_group.order == 4
    record_acceptance(9, not bad and anchor, f"simples checked={n}, failures={len(bad)}, A5 p=2 anchor {'ok' if anchor else 'WRONG'}")
    assert not bad and anchor


def test_criterion_10_determinism(tmp_path):
    outs = []
    for i in range(2):
        path = tmp_path / f"r{i}.json"
        proc = subprocess.run(
            [sys.executable, "-m", "blocklab.cli", "verify", "--corpus", "default", "--seed", "7", "--out", str(path)],
            capture_output=True, text=True, timeout=900,
        )
        assert proc.returncode == 0, proc.stderr + proc.stdout
        outs.append((path.read_bytes(), proc.stdout))
    same = outs[0] == outs[1]
    summary = json.loads(outs[0][0])
    record_acceptance(10, same, f"two seed-7 verify runs byte-identical={same}, entries={len(summary['entries'])}")
    assert same

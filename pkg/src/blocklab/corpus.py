"""Corpus entries and the parallel verification run."""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .constructors import group_from_file, named
from .errors import BlocklabError, ConfigurationError, InvariantViolation
from .gf import prime_factors
from .groups import FiniteGroup

ORDER_CAP = 1000


@dataclass(frozen=True)
class CorpusEntry:
    source: str  # group name, or a path when ``is_file``
    primes: tuple[int, ...] = ()
    is_file: bool = False
    expected: dict = field(default_factory=dict, compare=False, hash=False)

    def build(self) -> FiniteGroup:
        G = group_from_file(self.source) if self.is_file else named(self.source)
        if G.order > ORDER_CAP:
            raise ConfigurationError(f"{self.source}: order {G.order} exceeds the corpus cap {ORDER_CAP}")
        if not G.name:
            G.name = Path(self.source).stem if self.is_file else self.source
        return G

    def resolved_primes(self, G: FiniteGroup) -> tuple[int, ...]:
        return self.primes or tuple(prime_factors(G.order)) or (2,)


DEFAULT_CORPUS = (
    CorpusEntry("trivial", (2,)),
    CorpusEntry("c2"),
    CorpusEntry("c6"),
    CorpusEntry("s3", (2, 3, 5)),
    CorpusEntry("d8"),
    CorpusEntry("q8"),
    CorpusEntry("a4"),
    CorpusEntry("s4"),
    CorpusEntry("sl23"),
    CorpusEntry("c7:c3"),
    CorpusEntry("a5"),
    CorpusEntry("s5"),
)


def load_corpus(spec: str) -> tuple[CorpusEntry, ...]:
    """``"default"`` or a JSON file with a list of ``{"named"|"file": ..., "primes": [...]}``."""
    if spec == "default":
        return DEFAULT_CORPUS
    try:
        data = json.loads(Path(spec).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigurationError(f"cannot read corpus {spec}: {exc}") from exc
    out = []
    base = Path(spec).parent
    for item in data:
        if "named" in item:
            out.append(CorpusEntry(item["named"], tuple(item.get("primes", ())), False, item.get("expected", {})))
        elif "file" in item:
            out.append(CorpusEntry(str(base / item["file"]), tuple(item.get("primes", ())), True, item.get("expected", {})))
        else:
            raise ConfigurationError(f"corpus item needs 'named' or 'file': {item}")
    return tuple(out)


def _run_one(task):
    from .harness import analyze

    entry, p, seed = task
    key = f"{entry.source}:p={p}"
    try:
        G = entry.build()
        an = analyze(G, p, seed)
        return {"key": key, "status": "pass" if an.passed else "fail", "report": an.report()}
    except ConfigurationError as exc:
        return {"key": key, "status": "config_error", "error": str(exc)}
    except InvariantViolation as exc:
        return {"key": key, "status": "invariant_violation", "error": str(exc)}
    except (BlocklabError, ValueError, ArithmeticError) as exc:
        return {"key": key, "status": "invariant_violation", "error": f"{type(exc).__name__}: {exc}"}


def expand(entries, seed: int) -> list[tuple]:
    tasks = []
    for e in entries:
        G = e.build()  # configuration errors surface before any work starts
        for p in e.resolved_primes(G):
            tasks.append((e, p, seed))
    return tasks


def run_corpus(entries, seed: int = 0, jobs: int = 1) -> dict:
    tasks = expand(entries, seed)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_one, tasks))
    else:
        results = [_run_one(t) for t in tasks]
    results.sort(key=lambda r: r["key"])
    counts: dict[str, int] = {}
    verdicts: dict[str, dict[str, int]] = {}
    for r in results:
        counts[r["status"]] = counts.get(r["status"], 0) + 1
        for v in r.get("report", {}).get("verdicts", []):
            per = verdicts.setdefault(v["name"], {})
            per[v["status"]] = per.get(v["status"], 0) + 1
    return {"schema": 1, "seed": seed, "entries": results, "counts": counts, "verdict_counts": verdicts}


def exit_code(summary: dict) -> int:
    c = summary["counts"]
    if c.get("invariant_violation"):
        return 3
    if c.get("config_error"):
        return 2
    if c.get("fail"):
        return 1
    return 0

"""``blocklab`` command line."""

from __future__ import annotations

import argparse
import json
import sys
import xml.etree.ElementTree as ET
from pathlib import Path

from .constructors import group_from_file, named
from .corpus import DEFAULT_CORPUS, ORDER_CAP, exit_code, load_corpus, run_corpus
from .errors import ConfigurationError, InvariantViolation


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=1) + "\n"


def _write(text: str, path: str | None):
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_analyze(args) -> int:
    from .harness import analyze

    G = named(args.named) if args.named else group_from_file(args.file)
    if G.order > ORDER_CAP:
        raise ConfigurationError(f"group order {G.order} exceeds the cap {ORDER_CAP}")
    an = analyze(G, args.prime, args.seed)
    _write(_dump(an.report()), args.out)
    for v in an.verdicts:
        print(f"{v.status:15s} {v.name}", file=sys.stderr)
    return 0 if an.passed else 1


def _junit(summary: dict, path: str):
    suite = ET.Element("testsuite", name="blocklab-verify", tests=str(len(summary["entries"])))
    failures = 0
    for r in summary["entries"]:
        case = ET.SubElement(suite, "testcase", classname="corpus", name=r["key"])
        if r["status"] == "pass":
            continue
        failures += 1
        if "error" in r:
            ET.SubElement(case, "error", message=r["status"]).text = r["error"]
        else:
            bad = [v for v in r["report"]["verdicts"] if v["status"] == "fail"]
            ET.SubElement(case, "failure", message=", ".join(v["name"] for v in bad)).text = json.dumps(bad, sort_keys=True)
    suite.set("failures", str(failures))
    ET.ElementTree(suite).write(path, encoding="unicode", xml_declaration=True)


def cmd_verify(args) -> int:
    entries = load_corpus(args.corpus)
    summary = run_corpus(entries, seed=args.seed, jobs=args.jobs)
    for r in summary["entries"]:
        line = f"{r['status']:20s} {r['key']}"
        if "error" in r:
            line += f"  {r['error']}"
        print(line)
    for name, counts in sorted(summary["verdict_counts"].items()):
        print(f"  {name:24s} " + " ".join(f"{k}={v}" for k, v in sorted(counts.items())))
    if args.out:
        Path(args.out).write_text(_dump(summary))
    if args.junit:
        _junit(summary, args.junit)
    return exit_code(summary)


def cmd_corpus_list(args) -> int:
    for e in DEFAULT_CORPUS:
        G = e.build()
        primes = ",".join(str(p) for p in e.resolved_primes(G))
        print(f"{e.source:10s} order={G.order:<4d} primes={primes}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="blocklab", description="Blocks, lower defect groups and vertices of small group algebras.")
    sub = ap.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="analyze one group at one prime")
    src = a.add_mutually_exclusive_group(required=True)
    src.add_argument("--named")
    src.add_argument("--file")
    a.add_argument("--prime", type=int, required=True)
    a.add_argument("--seed", type=int, default=0)
    a.add_argument("--out")
    a.set_defaults(func=cmd_analyze)

    v = sub.add_parser("verify", help="run every check over a corpus")
    v.add_argument("--corpus", default="default")
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--junit")
    v.add_argument("--out", help="write the full JSON report here")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("corpus", help="corpus utilities")
    csub = c.add_subparsers(dest="corpus_command", required=True)
    cl = csub.add_parser("list")
    cl.set_defaults(func=cmd_corpus_list)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except ConfigurationError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())

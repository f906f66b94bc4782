"""Command-line tools for adequate transversals and spined products.

Exit codes: 0 when every reported check passes, 1 when some check fails,
2 for unreadable input or usage errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import core
from .construction import chen_construct, decompose_and_rebuild
from .corpus import builtin_corpus, load_corpus, run_corpus, write_corpus
from .docio import chen_data, document, parse, serialize
from .errors import SemigroupError
from .report import Check, _jsonable
from .search import search_transversals
from .transversal import analyze_transversal
from .verify import run_verification_suite


def _load(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise SystemExit(_fail(f"cannot read {path}: {exc.strerror}"))
    try:
        return parse(text)
    except SemigroupError as exc:
        raise SystemExit(_fail(f"{path}: {type(exc).__name__}: {exc}"))


def _fail(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return 2


def _subset(arg: str | None, doc, n: int) -> frozenset[int]:
    if arg is None:
        if "S0" not in doc.subsets:
            raise SystemExit(_fail("no --transversal given and the document has no 'subset S0' line"))
        return frozenset(doc.subsets["S0"])
    try:
        members = frozenset(int(t) for t in arg.split(",") if t.strip())
    except ValueError:
        raise SystemExit(_fail(f"bad --transversal {arg!r}: expected comma-separated indices"))
    if not members or any(not 0 <= m < n for m in members):
        raise SystemExit(_fail(f"--transversal members must lie in [0, {n})"))
    return members


def _emit(args, payload, text_lines):
    if args.format == "json":
        print(json.dumps(_jsonable(payload), indent=2, sort_keys=True))
    else:
        print("\n".join(text_lines))


def _row_lines(rows: list[Check]) -> list[str]:
    out = []
    for r in rows:
        line = f"{'PASS' if r.passed else 'FAIL'}  {r.anchor}: {r.check}"
        if not r.passed and r.witness is not None:
            line += f"  witness={json.dumps(_jsonable(r.witness), sort_keys=True)}"
        out.append(line)
    return out


def _classes(rel) -> list[list[int]]:
    return [sorted(c) for c in rel.classes]


# ---------------------------------------------------------------- commands

def cmd_analyze(args) -> int:
    S = _load(args.file).semigroup
    flags = {
        "order": S.order,
        "abundant": core.is_abundant(S),
        "adequate": core.is_adequate(S),
        "left_adequate": core.is_left_adequate(S),
        "right_adequate": core.is_right_adequate(S),
        "regular": core.is_regular(S),
        "inverse": core.is_inverse(S),
    }
    payload = dict(flags, idempotents=sorted(core.idempotents(S)),
                   r_star=_classes(core.r_star(S)), l_star=_classes(core.l_star(S)))
    lines = [f"{k}: {v}" for k, v in flags.items()]
    lines.append(f"idempotents: {payload['idempotents']}")
    lines.append(f"R* classes: {payload['r_star']}")
    lines.append(f"L* classes: {payload['l_star']}")
    _emit(args, payload, lines)
    return 0


def cmd_transversals(args) -> int:
    S = _load(args.file).semigroup
    try:
        found = search_transversals(S, args.max_gen, args.exhaustive, args.up_to_iso)
    except SemigroupError as exc:
        return _fail(str(exc))
    payload = [{"subset": sorted(f.subset), **f.flags} for f in found]
    lines = [f"{','.join(map(str, p['subset']))}  quasi_ideal={p['quasi_ideal']} "
             f"multiplicative={p['multiplicative']} weakly_multiplicative={p['weakly_multiplicative']}"
             for p in payload]
    lines.append(f"{len(found)} transversal(s)")
    _emit(args, payload, lines)
    return 0


def cmd_verify(args) -> int:
    doc = _load(args.file)
    S0 = _subset(args.transversal, doc, doc.semigroup.order)
    rep = run_verification_suite(doc.semigroup, S0, f"{args.file} S0={sorted(S0)}")
    lines = _row_lines(rep.rows) + [f"{rep.instance}: {rep.passed} passed, {rep.failed} failed"]
    _emit(args, rep.to_json(), lines)
    return 0 if rep.ok else 1


def cmd_spined(args) -> int:
    doc = _load(args.file)
    S = doc.semigroup
    S0 = _subset(args.transversal, doc, S.order)
    try:
        an = analyze_transversal(S, S0)
        sp, rows = decompose_and_rebuild(S, an)
    except SemigroupError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    out = document(sp.semigroup, {"T0": sp.embedded_T0}, {"phi": sp.source_iso})
    rows = rows + list(sp.checks)
    if args.format == "json":
        _emit(args, {"document": serialize(out), "rows": [r.to_json() for r in rows]}, [])
    else:
        sys.stdout.write(serialize(out))
    return 0 if all(r.passed for r in rows) else 1


def cmd_chen(args) -> int:
    doc = _load(args.file)
    try:
        res = chen_construct(chen_data(doc))
    except SemigroupError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    out = document(res.semigroup, {"T0": res.transversal})
    rows = list(res.checks)
    if args.format == "json":
        _emit(args, {"document": serialize(out), "rows": [r.to_json() for r in rows]}, [])
    else:
        sys.stdout.write(serialize(out))
    return 0 if all(r.passed for r in rows) else 1


def cmd_corpus_run(args) -> int:
    entries = load_corpus(args.dir) if args.dir else builtin_corpus()
    res = run_corpus(entries, args.max_gen)
    anchor_rows = res.anchor_rows()
    failing = [r for rep in res.reports for r in rep.rows if not r.passed]
    if args.format == "json":
        _emit(args, {"summary": res.summary, "anchors": [r.to_json() for r in anchor_rows],
                     "reports": [rep.to_json() for rep in res.reports],
                     "findings": res.findings}, [])
    else:
        lines = [f"{'instance':34} {'order':>5} {'transv':>6} {'quasi':>5} {'mult':>5}"]
        for s in res.summary:
            lines.append(f"{s['instance']:34} {s['order']:>5} {s['transversals']:>6} "
                         f"{s['quasi_ideal']:>5} {s['multiplicative']:>5}")
        lines.append("")
        lines += _row_lines(anchor_rows)
        for rep in res.reports:
            for r in rep.rows:
                if not r.passed:
                    lines.append(f"  in {rep.instance}: " + _row_lines([r])[0])
        lines.append("")
        for k, v in res.findings.items():
            lines.append(f"{k}: {len(v)}")
        total = sum(len(rep.rows) for rep in res.reports)
        lines.append(f"{len(res.reports)} instances, {total} checks, {len(failing)} failed")
        _emit(args, None, lines)
    return 0 if res.ok and not failing else 1


def cmd_corpus_write(args) -> int:
    for p in write_corpus(args.dir):
        print(p)
    return 0


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("text", "json"), default="text")
    p = argparse.ArgumentParser(prog="spined", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", parents=[fmt], help="classify a semigroup")
    a.add_argument("file")
    a.set_defaults(func=cmd_analyze)

    t = sub.add_parser("transversals", parents=[fmt], help="search for adequate transversals")
    t.add_argument("file")
    t.add_argument("--max-gen", type=int, default=2)
    t.add_argument("--exhaustive", action="store_true", help="all closed subsets (order <= 12)")
    t.add_argument("--up-to-iso", action="store_true")
    t.set_defaults(func=cmd_transversals)

    v = sub.add_parser("verify", parents=[fmt], help="run every applicable check")
    v.add_argument("file")
    v.add_argument("--transversal", help="comma-separated indices (default: subset S0 of the file)")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("spined", parents=[fmt], help="rebuild S as a spined product")
    s.add_argument("file")
    s.add_argument("--transversal")
    s.set_defaults(func=cmd_spined)

    c = sub.add_parser("chen", parents=[fmt], help="left adequate construction from chen sections")
    c.add_argument("file")
    c.set_defaults(func=cmd_chen)

    cp = sub.add_parser("corpus", help="built-in corpus")
    csub = cp.add_subparsers(dest="corpus_command", required=True)
    r = csub.add_parser("run", parents=[fmt], help="verify every corpus instance")
    r.add_argument("--dir", help="load the corpus from a directory instead")
    r.add_argument("--max-gen", type=int, default=2)
    r.set_defaults(func=cmd_corpus_run)
    w = csub.add_parser("write", help="write the corpus files")
    w.add_argument("dir")
    w.set_defaults(func=cmd_corpus_write)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2


if __name__ == "__main__":
    sys.exit(main())

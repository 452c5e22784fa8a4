"""Command-line front end.

Exit codes: 0 success, 1 domain error, 2 usage, I/O or parse error.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import corpus as corpus_mod
from . import decide
from .credal import MomentEvidence, find_bayes_witness, tail_bound_from_moments
from .errors import EpiError, ParseError
from .kbformat import (parse_candidates, parse_decision, parse_kb, parse_query,
                       parse_witness)


class _UsageError(Exception):
    pass


def _num(x):
    return float(f"{x:.6g}")


def _fmt(x):
    return f"{x:.6g}"


def _fmt_interval(lo, hi):
    return f"[{_fmt(lo)}, {_fmt(hi)}]"


def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise _UsageError(f"cannot read {path}: {exc.strerror}") from None


def _diag_list(diags, path=None):
    out = []
    for d in diags:
        entry = d.as_dict()
        if path:
            entry["file"] = path
        out.append(entry)
    return out


def _cmd_prob(args):
    kb = parse_kb(_read(args.kb))
    query = parse_query(args.query)
    result = corpus_mod.assess(kb, query)
    lo, hi = result.interval
    doc = {
        "query": str(query),
        "interval": [_num(lo), _num(hi)],
        "accepted": corpus_mod.accepted(kb, query),
        "thresholds": {k: _num(v) for k, v in kb.thresholds.as_dict().items()},
        "provenance": result.provenance,
        "diagnostics": _diag_list(kb.diagnostics, args.kb),
    }
    text = [_fmt_interval(lo, hi)]
    return doc, text, kb.diagnostics


def _cmd_corpus(args):
    kb = parse_kb(_read(args.kb))
    candidates = parse_candidates(_read(args.candidates))
    rows = []
    text = [f"p = {_fmt(kb.thresholds.p)}"]
    for s in candidates:
        result = corpus_mod.assess(kb, s)
        ok = result.interval.lower >= kb.thresholds.p - corpus_mod.ACCEPT_TOL
        rows.append({"sentence": str(s),
                     "interval": [_num(result.interval.lower), _num(result.interval.upper)],
                     "accepted": ok, "provenance": result.provenance})
        text.append(f"{'accept' if ok else 'reject'}  {_fmt_interval(*result.interval)}  {s}")
    doc = {
        "query": args.candidates,
        "interval": rows,
        "practical_corpus": [r["sentence"] for r in rows if r["accepted"]],
        "thresholds": {k: _num(v) for k, v in kb.thresholds.as_dict().items()},
        "provenance": {r["sentence"]: r["provenance"] for r in rows},
        "diagnostics": _diag_list(kb.diagnostics, args.kb),
    }
    return doc, text, kb.diagnostics


def _cmd_decide(args):
    dp = parse_decision(_read(args.file))
    if args.rule == "satisfice" and args.threshold is None:
        raise _UsageError("--rule satisfice requires --threshold")
    table = decide.assess_acts(dp)
    acts = [{"act": a.act, "eu": [_num(a.eu[0]), _num(a.eu[1])], "regret": _num(a.regret)}
            for a in table]
    if args.rule == "admissible":
        chosen = decide.admissible(dp)
    elif args.rule == "maximin":
        chosen = [decide.gamma_maximin(dp)]
    elif args.rule == "regret":
        chosen = [decide.minimax_regret(dp)]
    else:
        chosen = decide.satisfice(dp, args.threshold)
    text = [f"{a.act}  eu {_fmt_interval(*a.eu)}  regret {_fmt(a.regret)}" for a in table]
    if args.rule == "regret":
        r = next(a.regret for a in table if a.act == chosen[0])
        text.append(f"chosen: {chosen[0]} (regret {_fmt(r)})")
    else:
        text.append("chosen: " + (" ".join(chosen) if chosen else "(none)"))
    doc = {"query": {"file": args.file, "rule": args.rule, "threshold": args.threshold},
           "acts": acts, "chosen": chosen, "thresholds": None, "provenance": None,
           "diagnostics": []}
    return doc, text, ()


def _cmd_witness(args):
    wp = parse_witness(_read(args.file))
    dist = find_bayes_witness(wp.space, wp.marginal, wp.conditional)
    if dist is None:
        witness, text = None, ["infeasible"]
    else:
        witness = {k: _num(v) for k, v in dist.as_dict().items()}
        text = [f"{k} {_fmt(v)}" for k, v in dist.as_dict().items()]
    doc = {"query": args.file, "witness": witness, "feasible": dist is not None,
           "thresholds": None, "provenance": None, "diagnostics": []}
    return doc, text, ()


def _cmd_bound(args):
    value = tail_bound_from_moments(MomentEvidence(args.m1, args.m2), args.t)
    doc = {"query": {"m1": args.m1, "m2": args.m2, "t": args.t},
           "interval": [_num(value), 1.0], "bound": _num(value),
           "thresholds": None, "provenance": "cantelli", "diagnostics": []}
    return doc, [f"P(theta < {_fmt(args.t)}) >= {_fmt(value)}"], ()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="epiprob", description="Interval-valued epistemic probability toolkit.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit one JSON document")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("prob", parents=[common], help="probability interval of a sentence")
    p.add_argument("--kb", required=True)
    p.add_argument("--query", required=True)
    p.set_defaults(func=_cmd_prob)

    p = sub.add_parser("corpus", parents=[common], help="which candidate sentences enter the practical corpus")
    p.add_argument("--kb", required=True)
    p.add_argument("--candidates", required=True, help="file with one sentence per line")
    p.set_defaults(func=_cmd_corpus)

    p = sub.add_parser("decide", parents=[common], help="evaluate a decision problem")
    p.add_argument("--file", required=True)
    p.add_argument("--rule", choices=["admissible", "maximin", "regret", "satisfice"],
                   default="admissible")
    p.add_argument("--threshold", type=float)
    p.set_defaults(func=_cmd_decide)

    p = sub.add_parser("witness", parents=[common], help="find a distribution meeting interval constraints")
    p.add_argument("--file", required=True)
    p.set_defaults(func=_cmd_witness)

    p = sub.add_parser("bound", parents=[common], help="Cantelli lower bound on P(theta < t) from two moments")
    p.add_argument("--m1", type=float, required=True)
    p.add_argument("--m2", type=float, required=True)
    p.add_argument("--t", type=float, required=True)
    p.set_defaults(func=_cmd_bound)
    return parser


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        doc, text, warnings = args.func(args)
    except _UsageError as exc:
        print(f"epiprob: error: {exc}", file=stderr)
        return 2
    except ParseError as exc:
        for d in exc.diagnostics:
            print(f"epiprob: {d}", file=stderr)
        if args.json:
            print(json.dumps({"diagnostics": _diag_list(exc.diagnostics)}, sort_keys=True),
                  file=stdout)
        return 2
    except EpiError as exc:
        print(f"epiprob: error: {exc}", file=stderr)
        if args.json:
            print(json.dumps({"diagnostics": [{"message": str(exc), "severity": "error"}]},
                             sort_keys=True), file=stdout)
        return 1
    for w in warnings:
        print(f"epiprob: {w}", file=stderr)
    if args.json:
        print(json.dumps(doc, sort_keys=True), file=stdout)
    else:
        for line in text:
            print(line, file=stdout)
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""Acceptance of Fly(tweety) before and after learning tweety is an ostrich."""
from pathlib import Path

from epiprob import Not, assess, parse_kb, parse_query, practical_corpus

DATA = Path(__file__).resolve().parent.parent / "data"

fly = parse_query("Fly(tweety)")
for name in ("tweety.kb", "tweety_ostrich.kb"):
    kb = parse_kb((DATA / name).read_text())
    print(f"{name}  (p = {kb.thresholds.p:.3g})")
    for s in (fly, Not(fly)):
        a = assess(kb, s)
        print(f"  P({s}) = {a.interval}  via {a.provenance}")
    print("  accepted:", [str(s) for s in practical_corpus(kb, [fly, Not(fly)])])

"""Each ticket is accepted as a loser; their conjunction is not."""
import argparse

from epiprob import Atom, accepted, parse_kb, prob
from epiprob.logic import conjoin

ap = argparse.ArgumentParser()
ap.add_argument("--tickets", type=int, default=20)
ap.add_argument("--stakes", type=float, default=19)
args = ap.parse_args()

n = args.tickets
lines = [f"stakes {args.stakes}", "class Ticket"]
lines += [f"member t{i} Ticket" for i in range(1, n + 1)]
lines.append(f"stat Loses | Ticket in [{1 - 1 / 100}, {1 - 1 / 100}]")
kb = parse_kb("\n".join(lines) + "\n")

tickets = [Atom("Loses", f"t{i}") for i in range(1, n + 1)]
ok = sum(accepted(kb, t) for t in tickets)
conj = conjoin(tickets)
print(f"p = {kb.thresholds.p:.4g}; {ok}/{n} singletons accepted")
print(f"P(all lose) = {prob(kb, conj)}  accepted: {accepted(kb, conj)}")

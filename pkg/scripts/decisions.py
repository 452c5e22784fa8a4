"""Compare the interval decision rules on a decision file."""
import argparse
from pathlib import Path

from epiprob import (admissible, expectation_interval, gamma_maximin, minimax_regret,
                     parse_decision)
from epiprob.decide import regret

ap = argparse.ArgumentParser()
ap.add_argument("file", nargs="?",
                default=Path(__file__).resolve().parent.parent / "data" / "acts.dp")
dp = parse_decision(Path(ap.parse_args().file).read_text())

for a in dp.acts:
    lo, hi = expectation_interval(dp, a)
    print(f"{a:6s} E[u] in [{lo:.4g}, {hi:.4g}]  max regret {regret(dp, a):.4g}")
print("admissible:", ", ".join(admissible(dp)))
print("gamma-maximin:", gamma_maximin(dp))
print("minimax regret:", minimax_regret(dp))

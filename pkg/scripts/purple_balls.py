"""Conditioning on a surprising observation can leave every Bayesian witness behind.

An urn: most balls are purple (E), most are big (F), and almost no purple
ball is big. The three statements cannot hold together.
"""
from epiprob import Interval, OutcomeSpace, find_bayes_witness

space = OutcomeSpace(("ef", "e_only", "f_only", "neither"))
E, F = {"ef", "e_only"}, {"ef", "f_only"}
marginals = [(E, Interval(.9, 1)), (F, Interval(.95, 1))]

for cap in (.01, .5, .95):
    w = find_bayes_witness(space, marginals, [(F, E, Interval(0, cap))])
    print(f"P(F|E) <= {cap}: " + ("infeasible" if w is None else
                                   ", ".join(f"{k}={v:.3f}" for k, v in w.as_dict().items())))

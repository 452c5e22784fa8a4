"""Interval-valued epistemic probability: credal-set bounds by linear
programming, reference-class direct inference, evidential/practical corpora
and decisions under interval expected utility."""

from .credal import (CredalSet, Distribution, Interval, MomentEvidence, OutcomeSpace,
                     combine, conditional_bounds, find_bayes_witness, lower_upper,
                     sentence_bounds, tail_bound_from_moments)
from .corpus import (EvidentialCorpus, PracticalCorpus, Thresholds, accepted, add_evidence,
                     assess, practical_corpus, prob, thresholds_from_stakes)
from .decide import (DecisionProblem, admissible, dominates, expectation_interval,
                     gamma_maximin, minimax_regret, satisfice)
from .kbformat import format_kb, parse_decision, parse_kb, parse_query, parse_witness
from .logic import And, Atom, Implies, Not, Or, entails, evaluate

__version__ = "0.1.0"

"""Decisions with interval-valued expected utility.

Each act gets an expectation interval over the credal set of state
distributions. Dominance is checked distribution by distribution (one LP on
the utility difference), which is strictly stronger than comparing the
intervals. Three rules choose among the survivors: Gamma-maximin,
minimax regret and satisficing.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .credal import CredalSet, OutcomeSpace

DOMINANCE_TOL = 1e-9


@dataclass(frozen=True)
class DecisionProblem:
    states: OutcomeSpace
    acts: tuple
    utility: Mapping  # act -> tuple of utilities in state order
    beliefs: CredalSet

    def __post_init__(self):
        acts = tuple(self.acts)
        if not acts:
            raise ValueError("a decision problem needs at least one act")
        if len(set(acts)) != len(acts):
            raise ValueError("act names must be unique")
        object.__setattr__(self, "acts", acts)
        table = {}
        for a in acts:
            if a not in self.utility:
                raise ValueError(f"no utilities for act {a!r}")
            row = tuple(float(u) for u in self.utility[a])
            if len(row) != len(self.states):
                raise ValueError(f"act {a!r} needs {len(self.states)} utilities, got {len(row)}")
            table[a] = row
        object.__setattr__(self, "utility", table)
        if self.beliefs.space != self.states:
            raise ValueError("beliefs must be over the problem's states")

    def row(self, act) -> np.ndarray:
        try:
            return np.array(self.utility[act])
        except KeyError:
            raise KeyError(f"unknown act {act!r}") from None


@dataclass(frozen=True)
class ActAssessment:
    act: str
    eu: tuple  # (min, max) expected utility
    regret: float


def expectation_interval(dp: DecisionProblem, act) -> tuple:
    return dp.beliefs.extremes(dp.row(act))


def dominates(dp: DecisionProblem, a1, a2) -> bool:
    """True iff ``a1`` has strictly higher expectation under every member."""
    if a1 == a2:
        return False
    lo, _ = dp.beliefs.extremes(dp.row(a1) - dp.row(a2))
    return lo > DOMINANCE_TOL


def admissible(dp: DecisionProblem) -> list:
    return [a for a in dp.acts if not any(dominates(dp, b, a) for b in dp.acts if b != a)]


def gamma_maximin(dp: DecisionProblem):
    """Act with the greatest lower expectation; first act wins ties."""
    lowers = [expectation_interval(dp, a)[0] for a in dp.acts]
    best = max(lowers)
    return dp.acts[next(i for i, v in enumerate(lowers) if v >= best - DOMINANCE_TOL)]


def regret(dp: DecisionProblem, act) -> float:
    """Worst expected shortfall of ``act`` against any alternative."""
    worst = 0.0
    for other in dp.acts:
        if other == act:
            continue
        _, hi = dp.beliefs.extremes(dp.row(other) - dp.row(act))
        worst = max(worst, hi)
    return worst


def minimax_regret(dp: DecisionProblem):
    regrets = [regret(dp, a) for a in dp.acts]
    best = min(regrets)
    return dp.acts[next(i for i, r in enumerate(regrets) if r <= best + DOMINANCE_TOL)]


def satisfice(dp: DecisionProblem, threshold: float) -> list:
    return [a for a in dp.acts if expectation_interval(dp, a)[0] >= threshold - DOMINANCE_TOL]


def assess_acts(dp: DecisionProblem) -> list:
    return [ActAssessment(a, expectation_interval(dp, a), regret(dp, a)) for a in dp.acts]

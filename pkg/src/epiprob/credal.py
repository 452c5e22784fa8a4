"""Convex sets of distributions over a finite outcome space.

A :class:`CredalSet` is kept in constraint form: linear constraints on the
outcome probabilities on top of the implicit simplex. Every bound below is
one or two linear programs over that region.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

import numpy as np

from . import lp
from .errors import (CapacityError, ConditioningError, DomainError,
                     InfeasibleError, MissingMarginalError)
from .logic import And, Atom, Implies, Not, Or, Sentence, atoms, evaluate_table, truth_table

TOL = 1e-9
CHECK_TOL = 1e-6
MAX_SENTENCE_ATOMS = 12


def _fmt(x):
    return f"{x:.6g}"


@dataclass(frozen=True, order=True)
class Interval:
    """Closed subinterval of [0, 1]."""

    lower: float
    upper: float

    def __post_init__(self):
        lo, hi = float(self.lower), float(self.upper)
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise DomainError("interval endpoints must be finite")
        if not (0.0 <= lo <= hi <= 1.0):
            raise DomainError(f"interval out of range: [{lo}, {hi}]")
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)

    @classmethod
    def clipped(cls, lower, upper, tol=TOL):
        """Build from numerically computed endpoints, absorbing round-off."""
        if lower > upper + tol or lower < -tol or upper > 1 + tol:
            raise DomainError(f"interval out of range: [{lower}, {upper}]")
        lo = min(max(lower, 0.0), 1.0)
        hi = min(max(upper, 0.0), 1.0)
        return cls(min(lo, hi), max(lo, hi))

    @classmethod
    def point(cls, p):
        return cls(p, p)

    @classmethod
    def vacuous(cls):
        return cls(0.0, 1.0)

    def complement(self) -> "Interval":
        return Interval(1.0 - self.upper, 1.0 - self.lower)

    @property
    def width(self):
        return self.upper - self.lower

    def contains(self, x, tol=0.0) -> bool:
        return self.lower - tol <= x <= self.upper + tol

    def issubset(self, other: "Interval", tol=0.0) -> bool:
        return other.lower - tol <= self.lower and self.upper <= other.upper + tol

    def isclose(self, other: "Interval", tol=CHECK_TOL) -> bool:
        return abs(self.lower - other.lower) <= tol and abs(self.upper - other.upper) <= tol

    def __iter__(self):
        yield self.lower
        yield self.upper

    def __str__(self):
        return f"[{_fmt(self.lower)}, {_fmt(self.upper)}]"


@dataclass(frozen=True)
class OutcomeSpace:
    labels: tuple

    def __post_init__(self):
        labels = tuple(self.labels)
        if not labels:
            raise ValueError("outcome space must be nonempty")
        if len(set(labels)) != len(labels):
            raise ValueError("outcome labels must be unique")
        object.__setattr__(self, "labels", labels)

    def __len__(self):
        return len(self.labels)

    def __iter__(self):
        return iter(self.labels)

    def index(self, label) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"unknown outcome {label!r}") from None

    def indicator(self, event) -> np.ndarray:
        v = np.zeros(len(self))
        for label in event:
            v[self.index(label)] = 1.0
        return v

    def complement(self, event) -> frozenset:
        event = set(event)
        for label in event:
            self.index(label)
        return frozenset(l for l in self.labels if l not in event)


@dataclass(frozen=True)
class Distribution:
    space: OutcomeSpace
    probs: tuple

    def __post_init__(self):
        probs = tuple(float(p) for p in self.probs)
        if len(probs) != len(self.space):
            raise ValueError("one probability per outcome is required")
        if min(probs) < -TOL or abs(sum(probs) - 1.0) > TOL:
            raise DomainError(f"not a probability distribution: {probs}")
        object.__setattr__(self, "probs", tuple(max(p, 0.0) for p in probs))

    def __getitem__(self, label):
        return self.probs[self.space.index(label)]

    def prob(self, event) -> float:
        return float(self.space.indicator(event) @ np.array(self.probs))

    def expectation(self, values) -> float:
        return float(np.dot(self.probs, values))

    def as_dict(self):
        return dict(zip(self.space.labels, self.probs))


class CredalSet:
    """Closed convex set of distributions, given by linear constraints.

    ``constraints`` are :class:`epiprob.lp.Constraint` objects whose
    coefficient vectors are indexed by ``space``. Nonnegativity and
    normalisation are implicit. Construction fails with
    :class:`InfeasibleError` if the region is empty.
    """

    def __init__(self, space: OutcomeSpace, constraints: Iterable[lp.Constraint] = ()):
        if not isinstance(space, OutcomeSpace):
            space = OutcomeSpace(tuple(space))
        self.space = space
        self.constraints = tuple(constraints)
        for c in self.constraints:
            if len(c.coeffs) != len(space):
                raise ValueError("constraint length does not match outcome space")
        if not lp.solve(self._program(np.zeros(len(space)))).optimal:
            raise InfeasibleError("credal set is empty")

    # constructors -----------------------------------------------------

    @classmethod
    def simplex(cls, space):
        return cls(space)

    @classmethod
    def from_event_bounds(cls, space, bounds: Iterable):
        """Credal set of all P with ``P(event) in interval`` for each pair."""
        if not isinstance(space, OutcomeSpace):
            space = OutcomeSpace(tuple(space))
        return cls(space, event_bound_constraints(space, bounds))

    @classmethod
    def point_mass(cls, space, probs):
        if not isinstance(space, OutcomeSpace):
            space = OutcomeSpace(tuple(space))
        n = len(space)
        cons = [lp.Constraint(tuple(float(i == j) for j in range(n)), "=", p)
                for i, p in enumerate(probs)]
        return cls(space, cons)

    # internals -------------------------------------------------------

    def simplex_constraints(self):
        return (lp.Constraint((1.0,) * len(self.space), "=", 1.0),) + self.constraints

    def _program(self, objective):
        return lp.LinearProgram(tuple(objective), self.simplex_constraints())

    def extremes(self, values) -> tuple:
        """``(min, max)`` of the expectation of ``values`` over the set."""
        values = np.asarray(values, dtype=float)
        prog = self._program(values)
        lo, hi = lp.solve(prog, "min"), lp.solve(prog, "max")
        if not (lo.optimal and hi.optimal):
            raise InfeasibleError("credal set LP failed; the set should be nonempty")
        return lo.value, hi.value

    def argextreme(self, values, direction="min") -> Distribution:
        out = lp.solve(self._program(np.asarray(values, dtype=float)), direction)
        if not out.optimal:
            raise InfeasibleError("credal set LP failed; the set should be nonempty")
        p = np.clip(out.point, 0.0, None)
        return Distribution(self.space, tuple(p / p.sum()))

    def vertices(self) -> list:
        """Extreme points via exhaustive basis enumeration (small sets only)."""
        pts = lp.enumerate_vertices(self.simplex_constraints(), len(self.space))
        return [Distribution(self.space, tuple(p / p.sum())) for p in pts]

    def contains(self, dist, tol=CHECK_TOL) -> bool:
        x = np.asarray(dist.probs if isinstance(dist, Distribution) else dist)
        return all(c.satisfied(x, tol) for c in self.simplex_constraints()) and bool(
            np.all(x >= -tol))

    def __repr__(self):
        return f"CredalSet({list(self.space.labels)}, {len(self.constraints)} constraints)"


def event_bound_constraints(space: OutcomeSpace, bounds) -> list:
    cons = []
    for event, interval in bounds:
        ind = tuple(space.indicator(event))
        lo, hi = interval
        if lo == hi:
            cons.append(lp.Constraint(ind, "=", lo))
            continue
        if lo > 0:
            cons.append(lp.Constraint(ind, ">=", lo))
        if hi < 1:
            cons.append(lp.Constraint(ind, "<=", hi))
    return cons


def lower_upper(c: CredalSet, event) -> Interval:
    """Lower and upper probability of ``event`` over ``c``."""
    lo, hi = c.extremes(c.space.indicator(event))
    return Interval.clipped(lo, hi)


def conditional_bounds(c: CredalSet, target, given) -> Interval:
    """Bounds on P(target | given) by regular extension.

    Only members with P(given) > 0 take part. Each endpoint is a single LP
    after the Charnes-Cooper substitution ``y = t * P`` with ``y(given) = 1``.
    """
    g = c.space.indicator(given)
    if lower_upper(c, given).upper <= TOL:
        raise ConditioningError("upper probability of the conditioning event is zero")
    joint = c.space.indicator(set(target) & set(given))
    cons = []
    for con in c.simplex_constraints():
        cons.append(lp.Constraint(con.coeffs + (-con.rhs,), con.relation, 0.0))
    cons.append(lp.Constraint(tuple(g) + (0.0,), "=", 1.0))
    prog = lp.LinearProgram(tuple(joint) + (0.0,), cons)
    lo, hi = lp.solve(prog, "min"), lp.solve(prog, "max")
    if not (lo.optimal and hi.optimal):
        raise InfeasibleError("conditional LP failed")
    return Interval.clipped(lo.value, hi.value)


def find_bayes_witness(space, marginal=(), conditional=()) -> Optional[Distribution]:
    """A single distribution meeting every interval constraint, or ``None``.

    ``marginal`` holds ``(event, interval)`` pairs; ``conditional`` holds
    ``(target, given, interval)`` triples, read linearly as
    ``l * P(given) <= P(target & given) <= u * P(given)``.
    """
    if not isinstance(space, OutcomeSpace):
        space = OutcomeSpace(tuple(space))
    n = len(space)
    cons = [lp.Constraint((1.0,) * n, "=", 1.0)]
    cons += event_bound_constraints(space, marginal)
    for target, given, interval in conditional:
        g = space.indicator(given)
        tg = space.indicator(set(target) & set(given))
        lo, hi = interval
        cons.append(lp.Constraint(tuple(tg - lo * g), ">=", 0.0))
        cons.append(lp.Constraint(tuple(tg - hi * g), "<=", 0.0))
    out = lp.solve(lp.LinearProgram((0.0,) * n, cons))
    if not out.optimal:
        return None
    p = np.clip(out.point, 0.0, None)
    return Distribution(space, tuple(p / p.sum()))


def combine(connective: str, i1: Interval, i2: Interval,
            dependence: str = "unknown") -> Interval:
    """Interval for ``A and B`` / ``A or B`` from the two marginals.

    ``unknown`` gives the Frechet bounds, ``independent`` the product rule.
    """
    l1, u1 = i1
    l2, u2 = i2
    if dependence == "independent":
        if connective == "and":
            return Interval.clipped(l1 * l2, u1 * u2)
        if connective == "or":
            return Interval.clipped(1 - (1 - l1) * (1 - l2), 1 - (1 - u1) * (1 - u2))
    elif dependence == "unknown":
        if connective == "and":
            return Interval.clipped(max(0.0, l1 + l2 - 1), min(u1, u2))
        if connective == "or":
            return Interval.clipped(max(l1, l2), min(1.0, u1 + u2))
    else:
        raise ValueError(f"unknown dependence {dependence!r}")
    raise ValueError(f"unknown connective {connective!r}")


def _read_once(s: Sentence) -> bool:
    seen = []

    def walk(node):
        if isinstance(node, Atom):
            seen.append(node)
        elif isinstance(node, Not):
            walk(node.operand)
        elif isinstance(node, (And, Or)):
            walk(node.left)
            walk(node.right)
        elif isinstance(node, Implies):
            walk(node.antecedent)
            walk(node.consequent)

    walk(s)
    return len(seen) == len(set(seen))


def _independent_bounds(marginals, s) -> Interval:
    if isinstance(s, Atom):
        return marginals[s]
    if isinstance(s, Not):
        return _independent_bounds(marginals, s.operand).complement()
    if isinstance(s, And):
        return combine("and", _independent_bounds(marginals, s.left),
                       _independent_bounds(marginals, s.right), "independent")
    if isinstance(s, Or):
        return combine("or", _independent_bounds(marginals, s.left),
                       _independent_bounds(marginals, s.right), "independent")
    # material implication, a -> b == ~a | b
    return combine("or", _independent_bounds(marginals, s.antecedent).complement(),
                   _independent_bounds(marginals, s.consequent), "independent")


def _flatten(s, kind):
    if isinstance(s, kind):
        return _flatten(s.left, kind) + _flatten(s.right, kind)
    return [s]


def _flat_frechet(marginals, s) -> Optional[Interval]:
    """n-ary Frechet bounds for a conjunction/disjunction of distinct literals."""
    for kind in (And, Or):
        if not isinstance(s, kind):
            continue
        parts = _flatten(s, kind)
        lits = []
        for p in parts:
            if isinstance(p, Atom):
                lits.append((p, marginals[p]))
            elif isinstance(p, Not) and isinstance(p.operand, Atom):
                lits.append((p.operand, marginals[p.operand].complement()))
            else:
                return None
        if len({a for a, _ in lits}) != len(lits):
            return None
        ls = [i.lower for _, i in lits]
        us = [i.upper for _, i in lits]
        if kind is And:
            return Interval.clipped(max(0.0, sum(ls) - (len(ls) - 1)), min(us))
        return Interval.clipped(max(ls), min(1.0, sum(us)))
    return None


def sentence_bounds(marginals: Mapping[Atom, Interval], s: Sentence,
                    independents: Iterable = ()) -> Interval:
    """Tightest interval for P(s) given interval marginals of its atoms.

    Without independence information this is an LP over the joint worlds of
    the sentence's atoms. When every pair of atoms in ``s`` concerns two
    distinct individuals declared independent, and each atom occurs once,
    the product rule is applied bottom-up instead. ``independents`` is a
    collection of two-element sets of individual names.
    """
    vocab = atoms(s)
    for a in vocab:
        if a not in marginals:
            raise MissingMarginalError(f"no marginal for atom {a}")

    pairs = {frozenset(p) for p in independents}
    individuals = [a.individual for a in vocab]
    if (pairs and len(set(individuals)) == len(individuals) and _read_once(s)
            and all(frozenset((x, y)) in pairs
                    for i, x in enumerate(individuals) for y in individuals[i + 1:])):
        return _independent_bounds(marginals, s)

    if len(vocab) > MAX_SENTENCE_ATOMS:
        flat = _flat_frechet(marginals, s)
        if flat is not None:
            return flat
        raise CapacityError(
            f"sentence has {len(vocab)} atoms; the joint-world LP allows {MAX_SENTENCE_ATOMS}")

    order, table = truth_table(vocab)
    objective = evaluate_table(s, order, table).astype(float)
    n = len(table)
    cons = [lp.Constraint((1.0,) * n, "=", 1.0)]
    for i, a in enumerate(order):
        lo, hi = marginals[a]
        col = tuple(table[:, i].astype(float))
        if lo == hi:
            cons.append(lp.Constraint(col, "=", lo))
            continue
        if lo > 0:
            cons.append(lp.Constraint(col, ">=", lo))
        if hi < 1:
            cons.append(lp.Constraint(col, "<=", hi))
    prog = lp.LinearProgram(tuple(objective), cons)
    lo, hi = lp.solve(prog, "min"), lp.solve(prog, "max")
    if not (lo.optimal and hi.optimal):
        raise InfeasibleError("joint-world LP failed")
    return Interval.clipped(lo.value, hi.value)


@dataclass(frozen=True)
class MomentEvidence:
    """First and second moments of a limiting frequency."""

    m1: float
    m2: float

    def __post_init__(self):
        if not 0.0 <= self.m1 <= 1.0:
            raise DomainError(f"first moment {self.m1} outside [0, 1]")
        if self.m2 < self.m1 ** 2 - TOL:
            raise DomainError(f"second moment {self.m2} below m1^2 = {self.m1 ** 2}")
        if self.m2 > self.m1 + TOL:
            raise DomainError(f"second moment {self.m2} exceeds m1 = {self.m1}")

    @property
    def variance(self):
        return max(self.m2 - self.m1 ** 2, 0.0)


def tail_bound_from_moments(ev: MomentEvidence, t: float) -> float:
    """Lower bound on P(theta < t) from Cantelli's one-sided inequality."""
    if t <= ev.m1:
        raise DomainError(f"threshold {t} must exceed the mean {ev.m1}")
    var = ev.variance
    if var <= 1e-15:
        return 1.0
    return 1.0 - var / (var + (t - ev.m1) ** 2)

"""Dense two-phase simplex and brute-force vertex enumeration.

Both are sized for desk-scale polytopes: a few dozen constraints and at most
a few thousand variables. The simplex uses Bland's rule throughout, so it
cannot cycle on degenerate programs; speed is not a goal.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import CapacityError, LpInputError

PIVOT_TOL = 1e-9
FEAS_TOL = 1e-9

MAX_VERTEX_DIM = 12
MAX_VERTEX_CONSTRAINTS = 30

RELATIONS = ("<=", "=", ">=")


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple
    relation: str
    rhs: float

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(float(c) for c in self.coeffs))
        object.__setattr__(self, "rhs", float(self.rhs))
        if self.relation not in RELATIONS:
            raise LpInputError(f"unknown relation {self.relation!r}")

    def satisfied(self, x, tol=FEAS_TOL) -> bool:
        lhs = float(np.dot(self.coeffs, x))
        scale = tol * max(1.0, abs(self.rhs))
        if self.relation == "<=":
            return lhs <= self.rhs + scale
        if self.relation == ">=":
            return lhs >= self.rhs - scale
        return abs(lhs - self.rhs) <= scale


@dataclass(frozen=True)
class LinearProgram:
    objective: tuple
    constraints: tuple = ()
    nonneg: bool = True

    def __post_init__(self):
        object.__setattr__(self, "objective", tuple(float(c) for c in self.objective))
        object.__setattr__(self, "constraints", tuple(self.constraints))
        n = len(self.objective)
        if n < 1:
            raise LpInputError("a linear program needs at least one variable")
        values = list(self.objective)
        for c in self.constraints:
            if len(c.coeffs) != n:
                raise LpInputError(
                    f"constraint has {len(c.coeffs)} coefficients, expected {n}")
            values.extend(c.coeffs)
            values.append(c.rhs)
        if not all(math.isfinite(v) for v in values):
            raise LpInputError("NaN or infinite coefficient")

    @property
    def n(self) -> int:
        return len(self.objective)


@dataclass(frozen=True)
class LpOutcome:
    status: str  # "optimal" | "infeasible" | "unbounded"
    value: Optional[float] = None
    point: Optional[np.ndarray] = field(default=None, compare=False)

    @property
    def optimal(self) -> bool:
        return self.status == "optimal"


class _Tableau:
    """Canonical-form tableau: ``rows[i]`` expresses ``basis[i]``."""

    def __init__(self, A, b, basis):
        self.T = np.hstack([A, b[:, None]]).astype(float)
        self.basis = list(basis)

    def pivot(self, r, c):
        T = self.T
        T[r] /= T[r, c]
        col = T[:, c].copy()
        col[r] = 0.0
        T -= np.outer(col, T[r])
        self.basis[r] = c

    def run(self, cost, allowed):
        """Minimise ``cost . x``; returns "optimal" or "unbounded"."""
        T = self.T
        while True:
            cb = cost[self.basis]
            reduced = cost - cb @ T[:, :-1]
            entering = -1
            for j in np.flatnonzero(reduced < -PIVOT_TOL):
                if allowed[j]:
                    entering = int(j)
                    break
            if entering < 0:
                return "optimal"
            column = T[:, entering]
            rows = np.flatnonzero(column > PIVOT_TOL)
            if rows.size == 0:
                return "unbounded"
            ratios = T[rows, -1] / column[rows]
            best = ratios.min()
            ties = rows[ratios <= best + PIVOT_TOL * max(1.0, abs(best))]
            leave = min(ties, key=lambda i: self.basis[i])
            self.pivot(int(leave), entering)


def _standard_form(lp: LinearProgram):
    n = lp.n
    # free variables are split as x = x+ - x-
    width = n if lp.nonneg else 2 * n
    rows, rhs, kinds = [], [], []
    for c in lp.constraints:
        a = np.array(c.coeffs)
        if not lp.nonneg:
            a = np.concatenate([a, -a])
        b, rel = c.rhs, c.relation
        if b < 0:
            a, b = -a, -b
            rel = {"<=": ">=", ">=": "<=", "=": "="}[rel]
        rows.append(a)
        rhs.append(b)
        kinds.append(rel)
    m = len(rows)
    n_slack = sum(k != "=" for k in kinds)
    n_art = sum(k != "<=" for k in kinds)
    A = np.zeros((m, width + n_slack + n_art))
    basis = []
    s = width
    art = width + n_slack
    artificial = []
    for i, (a, rel) in enumerate(zip(rows, kinds)):
        A[i, :width] = a
        if rel == "<=":
            A[i, s] = 1.0
            basis.append(s)
            s += 1
        else:
            if rel == ">=":
                A[i, s] = -1.0
                s += 1
            A[i, art] = 1.0
            basis.append(art)
            artificial.append(art)
            art += 1
    return A, np.array(rhs, dtype=float), basis, width, artificial


def solve(lp: LinearProgram, direction: str = "min") -> LpOutcome:
    """Optimise ``lp.objective`` over the feasible region."""
    if direction not in ("min", "max"):
        raise LpInputError(f"direction must be 'min' or 'max', not {direction!r}")
    c = np.array(lp.objective)
    sign = 1.0 if direction == "min" else -1.0
    if not lp.constraints:
        if lp.nonneg and np.all(sign * c >= 0):
            return LpOutcome("optimal", 0.0, np.zeros(lp.n))
        return LpOutcome("unbounded")

    A, b, basis, width, artificial = _standard_form(lp)
    total = A.shape[1]
    tab = _Tableau(A, b, basis)

    if artificial:
        phase1 = np.zeros(total)
        phase1[artificial] = 1.0
        tab.run(phase1, np.ones(total, dtype=bool))
        infeas = float(phase1[tab.basis] @ tab.T[:, -1])
        if infeas > FEAS_TOL * max(1.0, float(np.abs(b).max())):
            return LpOutcome("infeasible")
        # drive remaining artificials out of the basis; drop redundant rows
        is_art = np.zeros(total, dtype=bool)
        is_art[artificial] = True
        r = 0
        while r < len(tab.basis):
            if is_art[tab.basis[r]]:
                candidates = np.flatnonzero((np.abs(tab.T[r, :-1]) > PIVOT_TOL) & ~is_art)
                if candidates.size:
                    tab.pivot(r, int(candidates[0]))
                else:
                    tab.T = np.delete(tab.T, r, axis=0)
                    del tab.basis[r]
                    continue
            r += 1
        allowed = ~is_art
    else:
        allowed = np.ones(total, dtype=bool)

    cost = np.zeros(total)
    cost[:width] = sign * (c if lp.nonneg else np.concatenate([c, -c]))
    if tab.run(cost, allowed) == "unbounded":
        return LpOutcome("unbounded")

    x = np.zeros(total)
    x[tab.basis] = tab.T[:, -1]
    x = x[:width]
    if lp.nonneg:
        x = np.where(x < 0, 0.0, x)
    else:
        x = x[: lp.n] - x[lp.n:]
    return LpOutcome("optimal", float(c @ x), x)


def enumerate_vertices(constraints: Sequence[Constraint], n: int,
                       nonneg: bool = True) -> list:
    """All vertices of ``{x : constraints, x >= 0 if nonneg}``.

    Exhaustive basis enumeration: every choice of ``n`` linearly independent
    tight constraints (equalities always tight) is solved and kept if
    feasible. Vertices closer than 1e-9 are merged.
    """
    constraints = list(constraints)
    if n > MAX_VERTEX_DIM:
        raise CapacityError(f"dimension {n} exceeds the vertex limit {MAX_VERTEX_DIM}")
    if len(constraints) > MAX_VERTEX_CONSTRAINTS:
        raise CapacityError(
            f"{len(constraints)} constraints exceed the vertex limit {MAX_VERTEX_CONSTRAINTS}")
    for c in constraints:
        if len(c.coeffs) != n:
            raise LpInputError("constraint length does not match dimension")

    eq_rows = [(c.coeffs, c.rhs) for c in constraints if c.relation == "="]
    ineq_rows = [(c.coeffs, c.rhs) for c in constraints if c.relation != "="]
    if nonneg:
        ineq_rows += [(tuple(float(i == j) for j in range(n)), 0.0) for i in range(n)]

    # keep an independent subset of the equalities
    E = np.zeros((0, n))
    e = np.zeros(0)
    for a, rhs in eq_rows:
        trial = np.vstack([E, a])
        if np.linalg.matrix_rank(trial, tol=1e-10) > len(E):
            E, e = trial, np.append(e, rhs)
    k = n - len(E)
    if k < 0:
        return []

    G = np.array([a for a, _ in ineq_rows]).reshape(len(ineq_rows), n)
    h = np.array([r for _, r in ineq_rows])
    if k == 0:
        combos = np.zeros((1, 0), dtype=int)
    else:
        if k > len(ineq_rows):
            return []
        combos = np.array(list(itertools.combinations(range(len(ineq_rows)), k)),
                          dtype=int)

    M = np.concatenate([np.broadcast_to(E, (len(combos),) + E.shape), G[combos]], axis=1)
    rhs = np.concatenate([np.broadcast_to(e, (len(combos), len(e))), h[combos]], axis=1)
    cond_ok = np.abs(np.linalg.det(M)) > 1e-12
    M, rhs = M[cond_ok], rhs[cond_ok]
    if len(M) == 0:
        return []
    pts = np.linalg.solve(M, rhs[..., None])[..., 0]

    feasible = np.ones(len(pts), dtype=bool)
    for c in constraints:
        feasible &= np.array([c.satisfied(p) for p in pts])
    if nonneg:
        feasible &= np.all(pts >= -FEAS_TOL, axis=1)

    out = []
    for p in pts[feasible]:
        p = np.where(np.abs(p) < FEAS_TOL, 0.0, p)
        if not any(np.max(np.abs(p - q)) <= 1e-9 for q in out):
            out.append(p)
    out.sort(key=lambda v: tuple(-v))
    return out

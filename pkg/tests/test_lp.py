import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.optimize import linprog

from epiprob import lp
from epiprob.errors import CapacityError, LpInputError

from oracles import biased_die, random_credal

C = lp.Constraint


def test_min_on_simplex_corner():
    out = lp.solve(lp.LinearProgram((1, 0), [C((1, 1), "=", 1)]), "min")
    assert out.status == "optimal"
    assert out.value == pytest.approx(0, abs=1e-9)
    np.testing.assert_allclose(out.point, [0, 1], atol=1e-9)


def test_infeasible():
    prog = lp.LinearProgram((1, 0), [C((1, 0), ">=", 2), C((1, 1), "=", 1)])
    assert lp.solve(prog).status == "infeasible"


def test_unbounded():
    assert lp.solve(lp.LinearProgram((1, 1), [C((1, -1), "<=", 0)]), "max").status == "unbounded"


def test_free_variables():
    prog = lp.LinearProgram((1, 1), [C((1, 0), "<=", 2), C((0, 1), "<=", 3),
                                      C((1, 0), ">=", -5), C((0, 1), ">=", -1)], nonneg=False)
    assert lp.solve(prog, "max").value == pytest.approx(5)
    assert lp.solve(prog, "min").value == pytest.approx(-6)


def test_biased_die_disjunction_max():
    die = biased_die()
    prog = lp.LinearProgram((1, 1, 0, 0, 0, 0), die.simplex_constraints())
    out = lp.solve(prog, "max")
    # vertex oracle: both generating distributions give 1/3
    assert out.value == pytest.approx(1 / 3, abs=1e-9)


@pytest.mark.parametrize("bad", [math.nan, math.inf])
def test_rejects_non_finite(bad):
    with pytest.raises(LpInputError):
        lp.LinearProgram((1, bad), [C((1, 1), "=", 1)])
    with pytest.raises(LpInputError):
        lp.LinearProgram((1, 1), [C((1, 1), "=", bad)])


def test_rejects_bad_shapes_and_relations():
    with pytest.raises(LpInputError):
        lp.LinearProgram((1, 1), [C((1,), "=", 1)])
    with pytest.raises(LpInputError):
        C((1,), "<", 1)
    with pytest.raises(LpInputError):
        lp.LinearProgram(())


def test_degenerate_and_redundant_constraints():
    # duplicated equality and a constraint tight at the optimum (degenerate)
    cons = [C((1, 1, 1), "=", 1), C((1, 1, 1), "=", 1), C((2, 2, 2), "=", 2),
            C((1, 0, 0), "<=", 0.5), C((1, 1, 0), "<=", 0.5)]
    out = lp.solve(lp.LinearProgram((1, 2, 0), cons), "max")
    assert out.value == pytest.approx(1.0)


def test_vertices_of_simplex():
    vs = lp.enumerate_vertices([C((1, 1, 1), "=", 1)], 3)
    assert sorted(map(tuple, vs)) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]


def test_vertices_of_interval_credal_set():
    vs = lp.enumerate_vertices([C((1, 1), "=", 1), C((1, 0), ">=", .3), C((1, 0), "<=", .7)], 2)
    np.testing.assert_allclose(sorted(map(tuple, vs)), [(.3, .7), (.7, .3)])


def test_vertices_of_biased_die():
    vs = biased_die().vertices()
    got = sorted(tuple(round(p, 9) for p in v.probs) for v in vs)
    sixth = 1 / 6
    expected = sorted([
        tuple(round(p, 9) for p in (sixth + .05, sixth - .05, sixth, sixth, sixth, sixth)),
        tuple(round(p, 9) for p in (sixth - .05, sixth + .05, sixth, sixth, sixth, sixth)),
    ])
    assert got == expected


def test_vertex_caps():
    with pytest.raises(CapacityError):
        lp.enumerate_vertices([], 13)
    with pytest.raises(CapacityError):
        lp.enumerate_vertices([C((1, 1), "<=", 1)] * 31, 2)
    assert lp.enumerate_vertices([C((1, 1), "=", 1), C((1, 0), ">=", 2)], 2) == []


@given(st.integers(0, 2**32 - 1))
def test_solve_agrees_with_vertices(seed):
    rng = np.random.default_rng(seed)
    credal = random_credal(rng)
    n = len(credal.space)
    obj = rng.uniform(-5, 5, n)
    prog = lp.LinearProgram(tuple(obj), credal.simplex_constraints())
    lo, hi = lp.solve(prog, "min"), lp.solve(prog, "max")
    vals = [float(v @ obj) for v in lp.enumerate_vertices(credal.simplex_constraints(), n)]
    assert lo.value <= hi.value + 1e-12
    assert lo.value == pytest.approx(min(vals), abs=1e-6)
    assert hi.value == pytest.approx(max(vals), abs=1e-6)
    for c in credal.simplex_constraints():
        assert c.satisfied(lo.point, 1e-9) and c.satisfied(hi.point, 1e-9)


@given(st.integers(0, 2**32 - 1))
def test_solve_agrees_with_scipy(seed):
    rng = np.random.default_rng(seed)
    credal = random_credal(rng)
    n = len(credal.space)
    obj = rng.uniform(-5, 5, n)
    A_ub, b_ub, A_eq, b_eq = [], [], [], []
    for c in credal.simplex_constraints():
        if c.relation == "=":
            A_eq.append(c.coeffs)
            b_eq.append(c.rhs)
        elif c.relation == "<=":
            A_ub.append(c.coeffs)
            b_ub.append(c.rhs)
        else:
            A_ub.append([-x for x in c.coeffs])
            b_ub.append(-c.rhs)
    ref = linprog(obj, A_ub=A_ub or None, b_ub=b_ub or None, A_eq=A_eq, b_eq=b_eq,
                  bounds=[(0, None)] * n, method="highs")
    ours = lp.solve(lp.LinearProgram(tuple(obj), credal.simplex_constraints()))
    assert ours.value == pytest.approx(ref.fun, abs=1e-6)


@given(st.integers(0, 2**32 - 1), st.floats(0.1, 100))
def test_objective_scaling(seed, scale):
    rng = np.random.default_rng(seed)
    credal = random_credal(rng)
    obj = rng.uniform(-5, 5, len(credal.space))
    cons = credal.simplex_constraints()
    base = lp.solve(lp.LinearProgram(tuple(obj), cons), "max")
    scaled = lp.solve(lp.LinearProgram(tuple(scale * obj), cons), "max")
    assert scaled.value == pytest.approx(scale * base.value, rel=1e-9, abs=1e-9)
    assert float(scale * obj @ base.point) == pytest.approx(scaled.value, rel=1e-9, abs=1e-9)

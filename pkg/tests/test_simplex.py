"""Direct contract tests for the simplex engine on handmade programs."""

import random
from fractions import Fraction

import numpy as np
import pytest

from delsarte.discretize import TorusSpec
from delsarte.realsets import parse_real_set
from delsarte.solver import (
    EXACT,
    FLOAT,
    LinearProgram,
    LPRow,
    ProblemSpec,
    simplex_solve,
    solve,
    solve_discretized,
)


def make_lp(var_bounds, rows, objective, arithmetic=FLOAT, scale=Fraction(1)):
    lift = Fraction if arithmetic == EXACT else float
    return LinearProgram(
        var_labels=tuple(range(len(var_bounds))),
        var_bounds=tuple((lift(lo), lift(hi)) for lo, hi in var_bounds),
        rows=tuple(
            LPRow(
                ("row", k),
                tuple((j, lift(a)) for j, a in coeffs.items()),
                sense,
                lift(rhs),
            )
            for k, (coeffs, sense, rhs) in enumerate(rows)
        ),
        objective=tuple(lift(c) for c in objective),
        objective_scale=scale,
        arithmetic=arithmetic,
    )


@pytest.mark.parametrize("arithmetic", [FLOAT, EXACT])
def test_small_inequality_program(arithmetic):
    # max x + y  s.t.  x + 2y <= 4,  3x + y <= 6,  0 <= x,y <= 5
    lp = make_lp(
        [(0, 5), (0, 5)],
        [({0: 1, 1: 2}, "<=", 4), ({0: 3, 1: 1}, "<=", 6)],
        [1, 1],
        arithmetic,
    )
    raw = simplex_solve(lp)
    assert float(raw.objective) == pytest.approx(2.8)
    assert [float(v) for v in raw.x] == pytest.approx([1.6, 1.2])
    # duals: both rows tight; y solves A^T y = c -> y = (2/5, 1/5)
    assert [float(v) for v in raw.row_duals] == pytest.approx([0.4, 0.2])


@pytest.mark.parametrize("arithmetic", [FLOAT, EXACT])
def test_program_with_equality_and_lower_bounded_row(arithmetic):
    # max 2x + y  s.t.  x + y = 3,  x - y >= -1,  x,y in [0, 3]
    lp = make_lp(
        [(0, 3), (0, 3)],
        [({0: 1, 1: 1}, "=", 3), ({0: 1, 1: -1}, ">=", -1)],
        [2, 1],
        arithmetic,
    )
    raw = simplex_solve(lp)
    assert float(raw.objective) == pytest.approx(6.0)  # x=3, y=0
    assert [float(v) for v in raw.x] == pytest.approx([3.0, 0.0])


@pytest.mark.parametrize("arithmetic", [FLOAT, EXACT])
def test_program_with_negative_lower_bounds(arithmetic):
    # max x  s.t.  x + y <= 1,  x - y <= 1,  x,y in [-1, 1]  -> x = 1
    lp = make_lp(
        [(-1, 1), (-1, 1)],
        [({0: 1, 1: 1}, "<=", 1), ({0: 1, 1: -1}, "<=", 1)],
        [1, 0],
        arithmetic,
    )
    raw = simplex_solve(lp)
    assert float(raw.objective) == pytest.approx(1.0)
    assert float(raw.x[0]) == pytest.approx(1.0)


def test_degenerate_program_terminates():
    # many redundant rows through the optimum, all tight at once
    rows = [({0: 1, 1: k}, "<=", 1) for k in range(12)]
    lp = make_lp([(0, 2), (0, 2)], rows, [1, 0])
    raw = simplex_solve(lp)
    assert float(raw.objective) == pytest.approx(1.0)


def scipy_value(lp: LinearProgram) -> float:
    from scipy.optimize import linprog

    n = lp.num_vars
    a_ub, b_ub, a_eq, b_eq = [], [], [], []
    for row in lp.rows:
        dense = [0.0] * n
        for j, a in row.coeffs:
            dense[j] = float(a)
        if row.sense == "<=":
            a_ub.append(dense)
            b_ub.append(float(row.rhs))
        elif row.sense == ">=":
            a_ub.append([-v for v in dense])
            b_ub.append(-float(row.rhs))
        else:
            a_eq.append(dense)
            b_eq.append(float(row.rhs))
    res = linprog(
        c=[-float(c) for c in lp.objective],
        A_ub=np.array(a_ub) if a_ub else None,
        b_ub=np.array(b_ub) if b_ub else None,
        A_eq=np.array(a_eq) if a_eq else None,
        b_eq=np.array(b_eq) if b_eq else None,
        bounds=[(float(lo), float(hi)) for lo, hi in lp.var_bounds],
        method="highs",
        options={
            "primal_feasibility_tolerance": 1e-10,
            "dual_feasibility_tolerance": 1e-10,
        },
    )
    assert res.success
    return -float(res.fun)


def test_randomized_programs_match_reference_solver():
    rng = random.Random(271828)
    for case in range(40):
        n = rng.randint(2, 7)
        m = rng.randint(1, 9)
        rows = []
        for _ in range(m):
            coeffs = {
                j: rng.randint(-4, 4) for j in rng.sample(range(n), rng.randint(1, n))
            }
            sense = rng.choice(["<=", ">=", "="])
            # keep the box center feasible-ish so feasibility is guaranteed
            center = sum(coeffs.values()) * 0.0
            if sense == "<=":
                rhs = rng.randint(0, 6)
            elif sense == ">=":
                rhs = -rng.randint(0, 6)
            else:
                rhs = 0
            rows.append((coeffs, sense, rhs))
        objective = [rng.randint(-3, 3) for _ in range(n)]
        lp = make_lp([(-1, 1)] * n, rows, objective)
        mine = simplex_solve(lp)
        assert float(mine.objective) == pytest.approx(scipy_value(lp), abs=1e-7), case


def test_torus_scale_battery_against_reference():
    for n_grid in (48, 96, 128):
        torus = TorusSpec(Fraction(8), n_grid)
        for literal, mode in (
            ("[-1,1]", "turan"),
            ("(-1,1)", "delsarte"),
            ("(-2,-1)u(-1,1)u(1,2)", "turan"),
        ):
            sol, _ = solve_discretized(
                parse_real_set(literal), "SAME", torus, mode
            )
            assert sol.certificate_verdict.ok, (n_grid, literal, mode)
            assert scipy_value(sol.lp) == pytest.approx(
                sol.value / float(torus.step), abs=1e-6
            ), (n_grid, literal, mode)


def test_general_mode_with_disjoint_sets_battery():
    rng = random.Random(1618)
    from _generators import random_group, random_symmetric_set

    for _ in range(15):
        group = random_group(rng, 40)
        plus = random_symmetric_set(group, rng, 0.4, ensure_zero=True)
        minus = random_symmetric_set(group, rng, 0.3)
        spec = ProblemSpec.general(group, plus, minus)
        sol = solve(spec)
        assert sol.certificate_verdict.ok
        assert scipy_value(sol.lp) == pytest.approx(
            sol.value / float(group.weight), abs=1e-7
        )

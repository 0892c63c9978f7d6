"""LP/MILP engine tests against closed forms and enumeration oracles."""

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ccgkit.errors import DimensionError
from ccgkit.milp import (BINARY, INTEGER, LinearModel, SolveControls,
                         SolveOutcome, Status, relative_gap, solve_lp,
                         solve_milp)
from ccgkit.milp import _kernel_py
from ccgkit.milp import kernel as active_kernel


def brute_force_milp(model: LinearModel):
    """Enumerate all integer assignments (bounded columns only) and solve
    the continuous remainder by LP. Returns (value, None) or (None, status)
    when infeasible everywhere."""
    ints = model.integer_columns()
    assert len(ints) <= 12, "oracle guard"
    ranges = []
    for j in ints:
        col = model.columns[j]
        ranges.append(range(int(np.ceil(col.lower - 1e-9)),
                            int(np.floor(col.upper + 1e-9)) + 1))
    best = None
    sign = 1.0 if model.sense == "min" else -1.0
    for combo in itertools.product(*ranges):
        trial = LinearModel(model.sense, dict(model.objective),
                            [type(c)(c.lower, c.upper, c.integrality, c.name)
                             for c in model.columns],
                            list(model.rows))
        for j, v in zip(ints, combo):
            trial.columns[j].lower = trial.columns[j].upper = float(v)
        out = solve_lp(trial)
        if out.status is Status.OPTIMAL:
            val = out.incumbent_value
            if best is None or sign * val < sign * best:
                best = val
    return best


# -- LP basics ---------------------------------------------------------------

def test_lp_single_bound():
    model = LinearModel()
    model.add_column(0.0, np.inf, obj=1.0)
    model.add_row({0: 1.0}, ">=", 3.0)
    out = solve_lp(model)
    assert out.status is Status.OPTIMAL
    assert out.incumbent_value == pytest.approx(3.0)


def test_lp_maximize_box():
    model = LinearModel(sense="max")
    model.add_column(0.0, 1.0, obj=20.0 * np.pi)
    out = solve_lp(model)
    assert out.incumbent_value == pytest.approx(20.0 * np.pi)
    assert out.incumbent[0] == pytest.approx(1.0)


def test_lp_simplex_vertex():
    model = LinearModel()
    model.add_column(obj=-1.0)
    model.add_column(obj=-1.0)
    model.add_row({0: 1.0, 1: 1.0}, "<=", 1.0)
    out = solve_lp(model)
    assert out.incumbent_value == pytest.approx(-1.0)


def test_lp_infeasible_and_unbounded():
    model = LinearModel()
    model.add_column(0.0, 1.0, obj=1.0)
    model.add_row({0: 1.0}, ">=", 2.0)
    assert solve_lp(model).status is Status.INFEASIBLE

    model = LinearModel()
    model.add_column(0.0, np.inf, obj=-1.0)
    assert solve_lp(model).status is Status.UNBOUNDED


def test_lp_duals_satisfy_strong_duality():
    rng = np.random.default_rng(5)
    for _ in range(30):
        m, n = int(rng.integers(1, 5)), int(rng.integers(1, 5))
        model = LinearModel()
        for j in range(n):
            model.add_column(0.0, rng.uniform(1, 5), obj=float(rng.normal()))
        A = rng.normal(size=(m, n))
        for i in range(m):
            model.add_row({j: float(A[i, j]) for j in range(n)},
                          "<=" if rng.random() < 0.5 else ">=",
                          float(rng.normal()))
        out = solve_lp(model)
        if out.status is not Status.OPTIMAL:
            continue
        # complementary-slackness-free check: c'x = y'b + bound terms
        y = out.duals
        resid = model.objective_vector() - y @ A  # reduced costs on structurals
        x = out.incumbent
        lows = np.array([c.lower for c in model.columns])
        ups = np.array([c.upper for c in model.columns])
        dual_obj = y @ np.array([r.rhs for r in model.rows]) \
            + np.maximum(resid, 0) @ lows + np.minimum(resid, 0) @ ups
        assert out.incumbent_value == pytest.approx(dual_obj, abs=1e-7)


# -- MILP --------------------------------------------------------------------

def test_milp_knapsack():
    model = LinearModel(sense="max")
    values = [5.0, 4.0, 3.0]
    weights = [4.0, 3.0, 2.0]
    for v in values:
        model.add_column(0.0, 1.0, BINARY, obj=v)
    model.add_row({j: w for j, w in enumerate(weights)}, "<=", 4.0)
    out = solve_milp(model)
    assert out.status is Status.OPTIMAL
    assert out.incumbent_value == pytest.approx(5.0)


def test_milp_matches_enumeration_randomized():
    rng = np.random.default_rng(99)
    for _ in range(60):
        n = int(rng.integers(2, 6))
        m = int(rng.integers(1, 5))
        model = LinearModel()
        for j in range(n):
            lo = float(rng.integers(-2, 2))
            model.add_column(lo, lo + float(rng.integers(1, 4)),
                             INTEGER if rng.random() < 0.7 else "continuous",
                             obj=float(rng.normal()))
        for i in range(m):
            model.add_row({j: float(rng.normal()) for j in range(n)},
                          "<=" if rng.random() < 0.5 else ">=",
                          float(rng.normal() * 2))
        out = solve_milp(model, SolveControls(rel_gap=0.0))
        ref = brute_force_milp(model)
        if ref is None:
            assert out.status is Status.INFEASIBLE
        else:
            assert out.status is Status.OPTIMAL
            assert out.incumbent_value == pytest.approx(ref, abs=1e-6)


def test_milp_nonzero_integer_lower_bounds():
    # regression: branched children carry nonzero lower bounds, which used
    # to desynchronize the tableau refresh
    rng = np.random.default_rng(42)
    for _ in range(40):
        n = int(rng.integers(2, 7))
        m = int(rng.integers(1, 6))
        model = LinearModel()
        for j in range(n):
            lo = float(rng.integers(-3, 2))
            model.add_column(lo, lo + float(rng.integers(1, 6)), INTEGER,
                             obj=float(rng.normal()))
        for i in range(m):
            model.add_row({j: float(rng.normal()) for j in range(n)},
                          "<=" if rng.random() < 0.5 else ">=",
                          float(rng.normal() * 2))
        out = solve_milp(model, SolveControls(rel_gap=0.0))
        ref = brute_force_milp(model)
        if ref is None:
            assert out.status is Status.INFEASIBLE
        else:
            assert out.incumbent_value == pytest.approx(ref, abs=1e-6)


def test_milp_gap_contract():
    rng = np.random.default_rng(7)
    for _ in range(25):
        n = int(rng.integers(3, 8))
        model = LinearModel(sense="max")
        for j in range(n):
            model.add_column(0.0, 1.0, BINARY, obj=float(rng.uniform(1, 10)))
        model.add_row({j: float(rng.uniform(1, 10)) for j in range(n)},
                      "<=", float(rng.uniform(5, 20)))
        out = solve_milp(model, SolveControls(rel_gap=0.3))
        assert out.status in (Status.OPTIMAL, Status.GAP_REACHED)
        if out.status is Status.GAP_REACHED:
            assert relative_gap(out.incumbent_value, out.best_bound) \
                <= 0.3 + 1e-9
        # max problem: bound from above
        assert out.best_bound >= out.incumbent_value - 1e-9


def test_milp_node_and_time_limits():
    model = LinearModel(sense="max")
    rng = np.random.default_rng(3)
    for j in range(14):
        model.add_column(0.0, 1.0, BINARY, obj=float(rng.uniform(1, 2)))
    model.add_row({j: float(rng.uniform(1, 2)) for j in range(14)}, "<=", 9.0)
    out = solve_milp(model, SolveControls(node_limit=1))
    assert out.status in (Status.NODE_LIMIT, Status.OPTIMAL, Status.GAP_REACHED)
    assert out.nodes <= 1
    out = solve_milp(model, SolveControls(time_limit=0.0))
    assert out.status is Status.TIME_LIMIT


def test_model_validation_errors():
    model = LinearModel()
    model.add_column(2.0, 1.0)
    with pytest.raises(DimensionError):
        model.validate()
    model = LinearModel()
    model.add_column(0.0, np.inf, INTEGER)
    with pytest.raises(DimensionError):
        model.validate()
    model = LinearModel()
    model.add_column()
    model.add_row({3: 1.0}, "<=", 0.0)
    with pytest.raises(DimensionError):
        model.validate()


def test_dump_lp_mentions_columns():
    model = LinearModel()
    model.add_column(0.0, 1.0, BINARY, obj=2.0, name="pick")
    model.add_row({0: 1.0}, "<=", 1.0, name="cap")
    text = model.dump_lp()
    assert "pick" in text and "cap" in text and "Integers" in text


# -- kernel equivalence ------------------------------------------------------

@pytest.mark.skipif(not active_kernel.COMPILED,
                    reason="compiled kernel unavailable")
def test_kernels_agree_elementwise():
    from ccgkit.milp import _kernel as compiled
    rng = np.random.default_rng(17)
    for _ in range(300):
        n = int(rng.integers(2, 30))
        d = rng.normal(size=n)
        status = rng.integers(0, 4, size=n).astype(np.int64)
        for bland in (False, True):
            assert compiled.choose_entering(d, status, 1e-9, bland) == \
                _kernel_py.choose_entering(d, status, 1e-9, bland)
        m = int(rng.integers(1, 20))
        col = rng.normal(size=m)
        xb = rng.normal(size=m)
        lb = xb - rng.uniform(0, 2, m)
        ub = xb + rng.uniform(0, 2, m)
        for direction in (1.0, -1.0):
            rc = compiled.ratio_test(col, xb, lb, ub, direction, 1e-9)
            rp = _kernel_py.ratio_test(col, xb, lb, ub, direction, 1e-9)
            assert rc == rp  # bit-identical, including tie handling
        M1 = rng.normal(size=(m, m + 3))
        M2 = M1.copy()
        r = int(rng.integers(0, m))
        j = int(rng.integers(0, m + 2))
        if abs(M1[r, j]) > 1e-6:
            compiled.do_pivot(M1, r, j)
            _kernel_py.do_pivot(M2, r, j)
            assert np.array_equal(M1, M2)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.floats(-10, 10), min_size=1, max_size=6),
       st.floats(0.5, 10))
def test_lp_box_closed_form(costs, width):
    # min c'x over a box solves coordinatewise
    model = LinearModel()
    for c in costs:
        model.add_column(-width, width, obj=c)
    out = solve_lp(model)
    expected = sum(-width * abs(c) for c in costs)
    assert out.incumbent_value == pytest.approx(expected, abs=1e-8)


def test_solve_outcome_has_incumbent_flag():
    out = SolveOutcome(Status.INFEASIBLE)
    assert not out.has_incumbent

"""Decomposition-loop tests: exact loop, inexact loop mechanics via
scripted solvers, decision rule, and the worst-case gap bound."""

import numpy as np
import pytest

from ccgkit.engine import (CSV_HEADER, CcgParams, FiniteMasterBuilder,
                           FiniteOracle, IccgParams, ScenarioRegistry,
                           backtrack_decision, prop2_gap_bound, solve_ccg,
                           solve_iccg, solve_master)
from ccgkit.errors import (DomainError, MasterInfeasible, OracleFailure,
                           ParamError)
from ccgkit.milp import LinearModel, SolveControls, SolveOutcome, Status
from ccgkit.model import TwoStageProblem, solve_extensive_form
from conftest import make_mini, make_toy
from ccgkit.drorsp import DrorspMasterBuilder, DrorspOracle, brute_force_optimum


# -- parameters ----------------------------------------------------------------

def test_param_validation():
    with pytest.raises(ParamError):
        CcgParams(epsilon=0.0)
    with pytest.raises(ParamError):
        CcgParams(epsilon=1.0)
    with pytest.raises(ParamError):
        CcgParams(max_iterations=0)
    with pytest.raises(ParamError, match="epsilon_tilde"):
        IccgParams(epsilon=0.02, epsilon_tilde=0.02)
    # boundary: eps/(1+eps) itself is excluded
    with pytest.raises(ParamError):
        IccgParams(epsilon=0.02, epsilon_tilde=0.02 / 1.02)
    with pytest.raises(ParamError):
        IccgParams(alpha=1.0)
    with pytest.raises(ParamError):
        IccgParams(eps_mp_initial=1.0)
    with pytest.raises(ParamError):
        IccgParams(time_limit_increment=5.0)  # needs master_time_limit
    with pytest.raises(ParamError):
        IccgParams(exploit_frequency=0)
    # zeros are legal: exact masters and a disabled inexact-gap test
    IccgParams(epsilon_tilde=0.0, eps_mp_initial=0.0)


# -- pure decision rule and gap bound -------------------------------------------

def test_backtrack_decision_rule():
    assert backtrack_decision(100.0, 99.0, 50.0, 0.02, 0.015) == "Terminate"
    assert backtrack_decision(100.0, 90.0, 99.0, 0.02, 0.015) == "Exploit"
    assert backtrack_decision(100.0, 90.0, 95.0, 0.02, 0.015) == "Explore"
    assert backtrack_decision(np.inf, 0.0, 5.0, 0.02, 0.015) == "Explore"


def test_prop2_gap_bound_values():
    assert prop2_gap_bound(0.0, [0.0]) == 0.0
    assert prop2_gap_bound(0.015, [0.02]) == \
        pytest.approx(1.0 / (0.985 * 0.98) - 1.0, abs=1e-12)
    assert prop2_gap_bound(0.015, [0.02, 0.016]) == \
        pytest.approx(1.0 / (0.985 * 0.98 * 0.984) - 1.0, abs=1e-12)
    with pytest.raises(DomainError):
        prop2_gap_bound(0.015, [1.0])
    with pytest.raises(DomainError):
        prop2_gap_bound(1.0, [0.1])


# -- scripted-solver harness -----------------------------------------------------

class StubBuilder:
    """Records build calls; the model itself is never inspected by the
    scripted solver."""

    def __init__(self):
        self.calls = []

    def build(self, scenarios, lower_cutoff):
        self.calls.append(([s.id for s in scenarios], lower_cutoff))
        model = LinearModel()
        model.add_column(0.0, 1.0)
        return model

    def extract(self, solution):
        return {"x": np.zeros(1), "delta": 0.0, "first_stage_cost": 0.0}


class ScriptedSolver:
    def __init__(self, outcomes, exact=False):
        self.outcomes = list(outcomes)
        self.exact = exact
        self.controls = []

    def __call__(self, model, controls):
        self.controls.append(controls)
        u, lo = self.outcomes.pop(0)
        gap = (u - lo) / max(abs(u), 1e-12)
        status = Status.OPTIMAL if self.exact else Status.GAP_REACHED
        return SolveOutcome(status, incumbent=np.zeros(model.num_columns),
                            incumbent_value=u, best_bound=lo,
                            rel_gap_achieved=gap)


class ScriptedOracle:
    def __init__(self, answers):
        self.answers = list(answers)

    def query(self, decision):
        xi, val = self.answers.pop(0)
        return np.asarray(xi, dtype=float), val


def test_iccg_exploit_mechanics_scripted():
    builder = StubBuilder()
    solver = ScriptedSolver([(100.0, 90.0), (110.0, 99.9), (109.9, 109.0)])
    oracle = ScriptedOracle([([1.0], 120.0), ([2.0], 111.0), ([3.0], 110.5)])
    params = IccgParams(epsilon=0.02, epsilon_tilde=0.015,
                        eps_mp_initial=0.1, alpha=0.5,
                        master_time_limit=10.0, time_limit_increment=5.0)
    report = solve_iccg(builder, oracle, params, master_solver=solver)

    assert report.converged
    assert report.final_value == pytest.approx(110.5)
    assert report.valid_lower_bound == pytest.approx(109.0)
    assert [r.decision for r in report.iterations] == \
        ["Explore", "Exploit", "Terminate"]
    assert [r.index for r in report.iterations] == [1, 2, 1]
    assert [r.ell for r in report.iterations] == [1, 1, 1]

    # the cutoff handed to each master: initial 0, then U^1, then the
    # restored certified bound L^1 after the backtrack
    assert builder.calls == [([], 0.0), ([0], 100.0), ([], 90.0)]
    # tolerance shrinks by alpha, time limit grows by beta, after Exploit
    assert [c.rel_gap for c in solver.controls] == [0.1, 0.1, 0.05]
    assert [c.time_limit for c in solver.controls] == [10.0, 10.0, 15.0]

    assert len(report.exploit_events) == 1
    ev = report.exploit_events[0]
    assert (ev.ell, ev.j) == (1, 2)
    assert ev.eps_mp_seq == [0.1, 0.1]
    assert not ev.freq_triggered
    assert ev.certified
    # the realized gap respects the worst-case bound for this event
    assert ev.gap_actual <= prop2_gap_bound(0.015, ev.eps_mp_seq) + 1e-9

    csv = report.iterations_csv("r0")
    assert csv.splitlines()[0] == CSV_HEADER
    assert len(csv.splitlines()) == 4


def test_iccg_frequency_override_scripted():
    builder = StubBuilder()
    solver = ScriptedSolver([(100.0, 90.0), (100.0, 95.0),
                             (100.0, 98.0), (100.0, 99.5)])
    oracle = ScriptedOracle([([1.0], 200.0), ([2.0], 200.0),
                             ([3.0], 200.0), ([4.0], 100.0)])
    params = IccgParams(epsilon=0.02, epsilon_tilde=0.001,
                        eps_mp_initial=0.1, alpha=0.5, exploit_frequency=1)
    report = solve_iccg(builder, oracle, params, master_solver=solver)

    assert report.converged
    assert [r.decision for r in report.iterations] == \
        ["Explore", "Explore", "Exploit", "Terminate"]
    ev = report.exploit_events[0]
    assert ev.freq_triggered and (ev.ell, ev.j) == (1, 3)
    # rewind restores the pool and bound of iteration ell
    assert builder.calls[3] == ([], 90.0)


def test_iccg_conservative_mode_scripted():
    builder = StubBuilder()
    solver = ScriptedSolver([(100.0, 90.0), (100.0, 92.0), (93.0, 92.5)])
    oracle = ScriptedOracle([([1.0], 150.0), ([2.0], 101.0), ([3.0], 93.5)])
    params = IccgParams(epsilon=0.02, epsilon_tilde=0.015,
                        eps_mp_initial=0.1, alpha=0.5,
                        conservative_bound_update=True)
    report = solve_iccg(builder, oracle, params, master_solver=solver)

    assert report.converged
    # the anchor follows the index every iteration
    assert all(r.ell == r.index for r in report.iterations)
    # the cutoff carries the solver bound, not the incumbent
    assert builder.calls == [([], 0.0), ([0], 90.0), ([0], 92.0)]
    ev = report.exploit_events[0]
    assert (ev.ell, ev.j) == (2, 2) and ev.eps_mp_seq == [0.1]


def test_iccg_duplicate_explore_is_oracle_failure():
    builder = StubBuilder()
    solver = ScriptedSolver([(50.0, 50.0), (60.0, 60.0)], exact=True)
    oracle = ScriptedOracle([([1.0], 100.0), ([1.0], 100.0)])
    params = IccgParams(epsilon=0.02, epsilon_tilde=0.001)
    with pytest.raises(OracleFailure):
        solve_iccg(builder, oracle, params, master_solver=solver)


def test_iccg_exploitation_cap():
    builder = StubBuilder()
    # every iteration triggers the inexact-gap test without progress
    solver = ScriptedSolver([(100.0, 50.0)] * 10)
    oracle = ScriptedOracle([([1.0], 100.0)] * 10)
    params = IccgParams(epsilon=0.02, epsilon_tilde=0.015,
                        eps_mp_initial=0.5, alpha=0.9, max_exploitations=3)
    report = solve_iccg(builder, oracle, params, master_solver=solver)
    assert report.termination == "ExploitationCap"
    assert report.num_exploits == 3


def test_solve_master_rejects_infeasible():
    model = LinearModel()
    model.add_column(0.0, 1.0, obj=1.0)
    model.add_row({0: 1.0}, ">=", 2.0)
    with pytest.raises(MasterInfeasible):
        solve_master(model, SolveControls(), None)


# -- exact loop ------------------------------------------------------------------

def test_ccg_singleton_closes_after_one_exploration():
    prob = make_toy(np.random.default_rng(0), n_scen=1)
    _, vstar = solve_extensive_form(prob)
    report = solve_ccg(FiniteMasterBuilder(prob), FiniteOracle(prob))
    # one scenario suffices: a single Explore, then LB meets UB exactly
    assert report.converged and report.num_explores == 1
    assert len(report.iterations) <= 2
    assert report.final_value == pytest.approx(vstar, rel=1e-7)
    assert report.valid_lower_bound == pytest.approx(vstar, rel=1e-7)


def test_ccg_bounds_monotone_and_iteration_cap():
    rng = np.random.default_rng(8)
    for _ in range(15):
        prob = make_toy(rng)
        n_scen = len(prob.uncertainty.scenarios)
        report = solve_ccg(FiniteMasterBuilder(prob), FiniteOracle(prob))
        assert report.converged
        assert len(report.iterations) <= n_scen + 1
        lows = [r.L for r in report.iterations]
        ups = [r.U_bar for r in report.iterations]
        assert all(a <= b + 1e-9 for a, b in zip(lows, lows[1:]))
        assert all(a >= b - 1e-9 for a, b in zip(ups, ups[1:]))
        # every Explore added a fresh scenario id
        added = [r.scenario_added for r in report.iterations
                 if r.decision == "Explore"]
        assert len(added) == len(set(added))


def test_iccg_exact_masters_reduce_to_ccg():
    rng = np.random.default_rng(77)
    cases = [make_toy(rng) for _ in range(10)]
    minis = [make_mini(rng, n_surgeries=3, n_ors=2) for _ in range(2)]
    params = IccgParams(epsilon=0.02, epsilon_tilde=0.0, eps_mp_initial=0.0)
    for prob in cases:
        b, o = FiniteMasterBuilder(prob), FiniteOracle(prob)
        exact = solve_ccg(b, o, CcgParams(epsilon=0.02))
        inexact = solve_iccg(b, o, params)
        assert inexact.converged and exact.converged
        assert inexact.final_value == pytest.approx(exact.final_value, rel=1e-9)
        assert [r.scenario_added for r in inexact.iterations] == \
            [r.scenario_added for r in exact.iterations]
    for inst in minis:
        b, o = DrorspMasterBuilder(inst), DrorspOracle(inst)
        exact = solve_ccg(b, o, CcgParams(epsilon=0.02))
        inexact = solve_iccg(b, o, params)
        assert inexact.final_value == pytest.approx(exact.final_value, rel=1e-9)
        assert [r.scenario_added for r in inexact.iterations] == \
            [r.scenario_added for r in exact.iterations]


def test_iccg_bracket_on_toys():
    rng = np.random.default_rng(55)
    for _ in range(10):
        prob = make_toy(rng)
        _, vstar = solve_extensive_form(prob)
        report = solve_iccg(FiniteMasterBuilder(prob), FiniteOracle(prob))
        assert report.converged
        assert report.valid_lower_bound <= vstar + 1e-7
        assert report.final_value >= vstar - 1e-7
        assert report.actual_gap < 0.02


def test_scenario_registry_ids_stable():
    reg = ScenarioRegistry()
    a = reg.get([1.0, 2.0])
    b = reg.get([3.0, 4.0])
    again = reg.get([1.0 + 1e-15, 2.0])
    assert (a.id, b.id) == (0, 1)
    assert again.id == 0 and len(reg) == 2
    assert [s.id for s in reg.all()] == [0, 1]


def test_report_summary_mentions_bounds():
    prob = make_toy(np.random.default_rng(2), n_scen=2)
    report = solve_ccg(FiniteMasterBuilder(prob), FiniteOracle(prob))
    text = report.summary()
    assert "termination=Converged" in text and "value=" in text

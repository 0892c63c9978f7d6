"""Problem statement and reference (brute-force) evaluation oracles."""

from .problem import (FirstStage, Scenario, TwoStageProblem, UncertaintySet,
                      canonical_key, problem_from_json, problem_to_json)
from .reference import (ValidationReport, Violation, build_finite_master,
                        build_recourse_lp, recourse_value,
                        solve_extensive_form, validate_problem,
                        worst_case_cost)

__all__ = [
    "FirstStage", "Scenario", "TwoStageProblem", "UncertaintySet",
    "ValidationReport", "Violation", "build_finite_master",
    "build_recourse_lp", "canonical_key", "problem_from_json",
    "problem_to_json", "recourse_value", "solve_extensive_form",
    "validate_problem", "worst_case_cost",
]

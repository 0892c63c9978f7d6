"""Distributionally robust operating-room scheduling application."""

from .bruteforce import (brute_force_optimum, dual_objective, true_objective,
                         worst_case_expectation)
from .instance import (DrorspFirstStage, DrorspInstance, instance_from_json,
                       instance_to_json, tags_to_durations)
from .master import (DrorspMasterBuilder, build_drorsp_master,
                     extract_first_stage, first_stage_cost)
from .recourse import recourse_overtime
from .subproblem import (DrorspOracle, DrorspScenario, build_subproblem_milp,
                         worst_case_scenario)

__all__ = [
    "DrorspFirstStage", "DrorspInstance", "DrorspMasterBuilder",
    "DrorspOracle", "DrorspScenario", "brute_force_optimum",
    "build_drorsp_master", "build_subproblem_milp", "dual_objective",
    "extract_first_stage", "first_stage_cost", "instance_from_json",
    "instance_to_json", "recourse_overtime", "tags_to_durations",
    "true_objective", "worst_case_expectation", "worst_case_scenario",
]

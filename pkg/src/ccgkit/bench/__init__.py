"""Desk-scale experimental protocol: generation, runner, profiles."""

from .generate import (GenSpec, PERCENTILE_PAIRS, generate_instance,
                       load_surgery_types)
from .profiles import ProfileCurve, curves_to_csv, performance_profile
from .runner import (DEFAULT_WALL_CAP, RESULT_HEADER, ResultRow,
                     rows_from_csv, rows_to_csv, run_experiment)
from .svg import render_profile_svg

__all__ = [
    "DEFAULT_WALL_CAP", "GenSpec", "PERCENTILE_PAIRS", "ProfileCurve",
    "RESULT_HEADER", "ResultRow", "curves_to_csv", "generate_instance",
    "load_surgery_types", "performance_profile", "render_profile_svg",
    "rows_from_csv", "rows_to_csv", "run_experiment",
]

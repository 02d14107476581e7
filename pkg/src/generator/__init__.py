"""Randomised composition-table generation."""

from src.generator.generation import GenOptions, generate_ct
from src.generator.sharding import (
    SurveyResult,
    SurveyRow,
    find_plateau,
    generate_sharded,
    merge_stats,
    merge_tables,
    shard_seeds,
    survey_domains,
)
from src.generator.termination import (
    AllOf,
    AnyOf,
    MaxLoops,
    StallWindow,
    TargetTriads,
    TerminationCondition,
    default_condition,
    is_bounded,
)

__all__ = [
    "AllOf",
    "AnyOf",
    "GenOptions",
    "MaxLoops",
    "StallWindow",
    "SurveyResult",
    "SurveyRow",
    "TargetTriads",
    "TerminationCondition",
    "default_condition",
    "find_plateau",
    "generate_ct",
    "generate_sharded",
    "is_bounded",
    "merge_stats",
    "merge_tables",
    "shard_seeds",
    "survey_domains",
]

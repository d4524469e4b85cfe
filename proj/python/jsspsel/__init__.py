"""Rollout-trained dispatching-rule selection for job-shop scheduling."""

from ._core import (
    RULES,
    Dataset,
    Instance,
    LabelConfig,
    Schedule,
    SelectorModel,
    best_fixed_rule,
    build_dataset,
    feature_names,
    fit_selector,
    generate_instance,
    oracle_fixed,
    rpd,
    run_policy,
    run_rule,
)

__all__ = [
    "RULES",
    "Dataset",
    "Instance",
    "LabelConfig",
    "Schedule",
    "SelectorModel",
    "best_fixed_rule",
    "build_dataset",
    "feature_names",
    "fit_selector",
    "generate_instance",
    "oracle_fixed",
    "rpd",
    "run_policy",
    "run_rule",
]

__version__ = "0.1.0"

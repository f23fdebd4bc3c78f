"""ROC-curve inference for predictive indices estimated in a first stage."""

from ._core import (
    Dataset,
    FittedModel,
    ProcedureConfig,
    RocinfError,
    auc,
    auc_compare,
    coverage_experiment,
    dominance_test,
    draw_sample,
    fit_logit,
    load_csv,
    pointwise_ci,
    select,
    roc_curve,
    t_grid,
    tp_fp,
    true_values,
    uniform_band,
)

__all__ = [
    "Dataset",
    "FittedModel",
    "ProcedureConfig",
    "RocinfError",
    "auc",
    "auc_compare",
    "coverage_experiment",
    "dominance_test",
    "draw_sample",
    "fit_logit",
    "load_csv",
    "pointwise_ci",
    "select",
    "roc_curve",
    "t_grid",
    "tp_fp",
    "true_values",
    "uniform_band",
]

"""AcceleGrad and AdaGrad on seeded regression and classification problems."""

from ._core import (
    ClassificationProblem,
    FiniteSumObjective,
    IoError,
    Loss,
    Objective,
    ParseError,
    ReferenceOptimum,
    RegressionData,
    RegressionProblem,
    UsageError,
    alpha,
    check_weight_properties,
    fit_rate_slope,
    generate_regression_data,
    project_ball,
    record_points,
    reference_optimum,
    run,
    verify,
)

TRACE_HEADER = "iter,evals,f_avg,f_last,eta,S"

__all__ = [
    "ClassificationProblem",
    "FiniteSumObjective",
    "IoError",
    "Loss",
    "Objective",
    "ParseError",
    "ReferenceOptimum",
    "RegressionData",
    "RegressionProblem",
    "TRACE_HEADER",
    "UsageError",
    "alpha",
    "check_weight_properties",
    "fit_rate_slope",
    "generate_regression_data",
    "project_ball",
    "record_points",
    "reference_optimum",
    "run",
    "verify",
]

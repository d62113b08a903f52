"""Expected generalization error of randomized learners and the
information-measure upper bounds built from average joint distributions.

The heavy lifting lives in the C++ extension; this package re-exports it.
"""

from ._core import (  # noqa: F401
    DiscreteDist,
    JointTable,
    LearnerSpec,
    LossTable,
    MCSpec,
    MeanEstimationConfig,
    Metric,
    Point,
    QuadratureSpec,
    ToolkitError,
    align,
    avg_emp_risk,
    avg_kl,
    average_joint,
    dataset_mutual_information,
    discrete_report,
    dv_gap,
    emp_risk_diff,
    gaussian_entropy,
    gaussian_lautum,
    gaussian_mi,
    gaussian_report,
    gen_error_direct,
    gen_error_via_avg,
    is_symmetric,
    js,
    kl,
    lautum_information,
    mutual_information,
    per_sample_joint,
    run_verify,
    true_gen_error_mc,
    true_gen_error_quad,
    tv,
    wasserstein1,
    wasserstein1_1d,
    wasserstein1_lp,
)

__version__ = "0.1.0"

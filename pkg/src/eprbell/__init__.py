"""Singlet-state spin statistics, Bell/CHSH inequalities, joint-distribution
feasibility analysis, and a stochastic hidden-variable simulator."""

from .born import SingletState, singlet_pair_prob, spin_projector
from .errors import (
    EprBellError,
    InconsistentMarginalsError,
    InvalidDirectionError,
    InvalidGeometryError,
    InvalidInputError,
    InvalidModelError,
    QuasiDistributionError,
    UndefinedConditionalError,
)
from .geometry import Direction
from .hvsim import (
    BLOCK_SIZE,
    PartitionSpec,
    SimReport,
    block_rng,
    classify,
    mixture_pair_dist,
    p_c_analytic,
    product_rule_demo,
    sample_lambda,
    sample_pair_given_c,
    simulate,
)
from .information import (
    InfoCurvePoint,
    binary_entropy,
    conditional_entropy,
    info_curve,
    mutual_information,
)
from .inequalities import (
    CovarianceQuad,
    CovarianceTriple,
    InequalityVerdict,
    LocalModel,
    ScanResult,
    bell_1964,
    bell_local_model_covariance,
    bell_pair_inequalities,
    chsh,
    chsh_to_bell_reduction,
    qm_bell_lhs,
    violation_scan,
)
from .joint import (
    ExistenceResult,
    MomentSet3,
    Mu3Interval,
    PairMoments,
    QuadDist,
    QuadFeasibility,
    TripleDist,
    chsh_family_verdicts,
    chsh_split_lhs,
    default_mu3,
    existence_check_3,
    moments_from_pairs,
    mu3_interval,
    qm_triple,
    quad_feasibility,
    quad_pair_marginal,
    triple_conditional,
    triple_from_moments,
    triple_marginal_pair,
)
from .spincore import (
    PairDist,
    apply_property_I,
    covariance,
    local_conditional,
    local_pair_dist,
    qm_conditional,
    qm_marginal,
    qm_pair_dist,
)

__version__ = "0.1.0"

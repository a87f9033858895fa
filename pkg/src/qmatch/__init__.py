"""Optimal pattern-matching measurements for phase-encoded qubit registers.

Two strategies for deciding which of two unknown template states a feature
state matches: a semiclassical machine that first estimates the templates and
then classifies, and a collective machine that measures everything jointly.
Both are built from closed forms, certified against Bayes-optimality
conditions and quadrature oracles, and simulated by seeded Monte Carlo.
"""

from ._mc import backend_name, compiled_available
from .classifier import (
    ClassifierSpec,
    classifier_expected_score,
    classifier_pom,
    delta_w,
    r_n,
    rotation_v,
    score_operator_w,
)
from .core import (
    BasisLabel,
    HermitianOperator,
    POM,
    PureState,
    SpectralDecomposition,
    eigendecompose,
    outer_product,
    phase_state,
    positive_part_projector,
    tensor,
)
from .harness import (
    CurveRow,
    ScoreReport,
    SimulationConfig,
    baseline_k_infinity,
    quadrature_operator,
    score_curve,
    simulate_semiclassical,
    simulate_universal,
)
from .learning import (
    LearningProblem,
    LearningStrategy,
    average_score,
    c_operator,
    covariant_sqrt_pom,
    d_operator,
    discrete_three_pom,
    g_spectral_k1,
    learning_score_operator,
    semiclassical_max_score,
    separable_pom,
    verify_optimality,
)
from .universal import (
    MatchingProblem,
    block_decomposition_k1,
    score_operator_wi,
    universal_average_score,
    universal_pom_k1,
    universal_score_analytic,
    universal_solver_numeric,
)

__version__ = "0.1.0"

__all__ = [
    "BasisLabel",
    "ClassifierSpec",
    "CurveRow",
    "HermitianOperator",
    "LearningProblem",
    "LearningStrategy",
    "MatchingProblem",
    "POM",
    "PureState",
    "ScoreReport",
    "SimulationConfig",
    "SpectralDecomposition",
    "average_score",
    "backend_name",
    "baseline_k_infinity",
    "block_decomposition_k1",
    "c_operator",
    "classifier_expected_score",
    "classifier_pom",
    "compiled_available",
    "covariant_sqrt_pom",
    "d_operator",
    "delta_w",
    "discrete_three_pom",
    "eigendecompose",
    "g_spectral_k1",
    "learning_score_operator",
    "outer_product",
    "phase_state",
    "positive_part_projector",
    "quadrature_operator",
    "r_n",
    "rotation_v",
    "score_curve",
    "score_operator_w",
    "score_operator_wi",
    "semiclassical_max_score",
    "separable_pom",
    "simulate_semiclassical",
    "simulate_universal",
    "tensor",
    "universal_average_score",
    "universal_pom_k1",
    "universal_score_analytic",
    "universal_solver_numeric",
    "verify_optimality",
]

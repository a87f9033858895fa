"""Independent checks and simulations: quadrature oracles, baselines, Monte Carlo."""

from .baselines import CurveRow, baseline_k_infinity, baseline_k_infinity_quadrature, score_curve
from .montecarlo import ScoreReport, SimulationConfig, simulate_semiclassical, simulate_universal
from .quadrature import QuadratureSpec, quadrature_operator, required_points

__all__ = [
    "CurveRow",
    "QuadratureSpec",
    "ScoreReport",
    "SimulationConfig",
    "baseline_k_infinity",
    "baseline_k_infinity_quadrature",
    "quadrature_operator",
    "required_points",
    "score_curve",
    "simulate_semiclassical",
    "simulate_universal",
]

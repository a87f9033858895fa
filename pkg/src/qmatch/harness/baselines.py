"""Score-vs-N reference values: the known-template limit and the comparison curve."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..classifier import r_n, score_operator_w
from ..learning import semiclassical_max_score
from ..universal import MatchingProblem, universal_score_analytic, universal_solver_numeric

#: Numeric curve columns are only offered for small template registers.
CURVE_K_CAP = 3


def baseline_k_infinity(n_inputs: int) -> float:
    """Mean matching score when the template phases are known exactly.

    Reconstructed limit of infinitely many template copies: averaging the
    optimal known-pair score 1/2 + 2 R_N |sin((g1 - g2)/2)| over the pair
    gives 1/2 + 4 R_N / pi.  Upper-bounds both matching strategies at any K.
    """
    return 0.5 + 4.0 * r_n(n_inputs) / math.pi


def baseline_k_infinity_quadrature(n_inputs: int, points: int = 64) -> float:
    """The same limit via Gauss-Legendre average of the operator-level score.

    For each template separation u the optimal known-template score is 1/2
    plus the positive-eigenvalue sum of W(u) - W(0); that function of u is
    smooth inside (0, 2*pi) (the kink sits at the endpoints), so Gauss-
    Legendre on the interval converges to machine precision.
    """
    nodes, weights = np.polynomial.legendre.leggauss(points)
    u = math.pi * (nodes + 1.0)
    w0 = score_operator_w(n_inputs, 0.0).entries
    total = 0.0
    for angle, weight in zip(u, weights):
        diff = score_operator_w(n_inputs, float(angle)).entries - w0
        vals = np.linalg.eigvalsh(diff)
        total += weight * (0.5 + float(vals[vals > 0.0].sum()))
    return total / 2.0  # Legendre weights sum to 2


def known_template_score(n_inputs: int, g1: float, g2: float) -> float:
    """Optimal score against a known template pair, from the operators."""
    diff = score_operator_w(n_inputs, g1).entries - score_operator_w(n_inputs, g2).entries
    vals = np.linalg.eigvalsh(diff)
    return 0.5 + float(vals[vals > 0.0].sum())


@dataclass(frozen=True)
class CurveRow:
    """One row of the score comparison: both strategies plus the K = infinity bound."""

    n_inputs: int
    k_copies: int
    score_semiclassical: Optional[float]
    score_universal: Optional[float]
    score_k_infinity: float


def score_curve(n_range, k_copies: int) -> list[CurveRow]:
    """Score comparison rows for N over n_range at a fixed template size.

    For K = 1 both strategies have closed forms; for 2 <= K <= CURVE_K_CAP the
    collective score comes from the dense solver and the semiclassical column
    is left empty (no analytic strategy is constructed there).
    """
    if k_copies < 1 or k_copies > CURVE_K_CAP:
        raise ValueError("k_copies must be between 1 and %d" % CURVE_K_CAP)
    rows = []
    for n in n_range:
        if k_copies == 1:
            semiclassical = semiclassical_max_score(n)
            universal = universal_score_analytic(n)
        else:
            semiclassical = None
            _, universal = universal_solver_numeric(MatchingProblem(n, k_copies))
        rows.append(
            CurveRow(
                n_inputs=n,
                k_copies=k_copies,
                score_semiclassical=semiclassical,
                score_universal=universal,
                score_k_infinity=baseline_k_infinity(n),
            )
        )
    return rows

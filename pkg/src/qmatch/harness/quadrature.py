"""Uniform-grid phase averages of the score operators, built from definitions.

Every closed-form operator in the package is an average of phase-state
projectors over one to three angles.  The integrands are trigonometric
polynomials, so a uniform grid with enough points per angle reproduces the
continuous average exactly (up to roundoff); these oracles therefore check
the closed forms to near machine precision rather than to a discretization
tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..classifier import ClassifierSpec, classifier_pom, score_operator_w
from ..core import BasisLabel, HermitianOperator, binomial_row
from ..universal import MatchingProblem

_KINDS = ("W_of_g", "G_of_theta", "W_i")
_VARIABLES = frozenset({"f", "g1", "g2"})


@dataclass(frozen=True)
class QuadratureSpec:
    """Grid size per angle and the set of angles being averaged over."""

    points_per_angle: int
    variables: frozenset

    def __post_init__(self):
        variables = frozenset(self.variables)
        if not variables or not variables <= _VARIABLES:
            raise ValueError("variables must be a nonempty subset of {f, g1, g2}")
        if self.points_per_angle < 2:
            raise ValueError("points_per_angle must be >= 2")
        object.__setattr__(self, "variables", variables)


def required_points(n_inputs: int, k_copies: int = 0) -> int:
    """Minimum grid size per angle: 2 (N + 2K + 2), past exactness with margin."""
    return 2 * (n_inputs + 2 * k_copies + 2)


def _phase_table(n_copies: int, angles: np.ndarray) -> np.ndarray:
    """Phase-state amplitudes, one row per angle."""
    k = np.arange(n_copies + 1)
    mags = np.sqrt(binomial_row(n_copies) / 2.0**n_copies)
    return mags * np.exp(1j * np.outer(angles, k))


def _grid(points: int) -> np.ndarray:
    return 2.0 * math.pi * np.arange(points) / points


def _symmetrized(basis: BasisLabel, mat: np.ndarray) -> HermitianOperator:
    return HermitianOperator(basis, (mat + mat.conj().T) / 2.0)


def _quadrature_w(n_inputs: int, angle: float, points: int) -> HermitianOperator:
    grid = _grid(points)
    table = _phase_table(n_inputs, grid)
    weights = 0.5 * (1.0 + np.cos(grid - angle))
    mat = (table.T * weights) @ table.conj() / points
    return _symmetrized(BasisLabel.for_copies(n_inputs), mat)


def _quadrature_g(n_inputs: int, k_copies: int, angle: float, points: int) -> HermitianOperator:
    grid = _grid(points)
    pom = classifier_pom(ClassifierSpec(n_inputs, angle))
    omega1 = pom.elements[0][1].entries
    omega2 = pom.elements[1][1].entries
    traces1 = np.empty(points)
    traces2 = np.empty(points)
    for a, g in enumerate(grid):
        w = score_operator_w(n_inputs, g).entries
        traces1[a] = np.trace(omega1 @ w).real
        traces2[a] = np.trace(omega2 @ w).real
    # The integrand factorizes: the weight for templates (g1, g2) is
    # Tr[Omega_1 W(g1)] + Tr[Omega_2 W(g2)].
    score = traces1[:, None] + traces2[None, :]
    table = _phase_table(k_copies, grid)
    mat = np.einsum(
        "ab,ap,ar,bq,bs->pqrs",
        score.astype(complex),
        table,
        table.conj(),
        table,
        table.conj(),
        optimize=True,
    ) / points**2
    width = k_copies + 1
    mat = mat.reshape(width * width, width * width)
    one = BasisLabel.for_copies(k_copies)
    return _symmetrized(BasisLabel.composite(one, one), mat)


def _quadrature_wi(
    n_inputs: int, k_copies: int, class_index: int, points: int
) -> HermitianOperator:
    if class_index not in (1, 2):
        raise ValueError("class_index must be 1 or 2")
    grid = _grid(points)
    feature = _phase_table(n_inputs, grid)
    template = _phase_table(k_copies, grid)
    width = k_copies + 1
    dim = (n_inputs + 1) * width * width
    mat = np.zeros((dim, dim), dtype=np.complex128)
    # Accumulate over the feature angle to keep the work set small: at fixed
    # f the integrand collapses to an outer product over the (g1, g2) grid.
    pair = np.einsum("bm,cn->bcmn", template, template).reshape(
        points * points, width * width
    )
    for a in range(points):
        joint = (feature[a][None, :, None] * pair[:, None, :]).reshape(
            points * points, dim
        )
        overlap = 0.5 * (1.0 + np.cos(grid[a] - grid))
        if class_index == 1:
            weights = np.repeat(overlap, points)
        else:
            weights = np.tile(overlap, points)
        mat += (joint.conj().T * weights) @ joint
    mat /= points**3
    problem = MatchingProblem(n_inputs, k_copies)
    return _symmetrized(problem.joint_basis(), mat)


def quadrature_operator(
    kind: str,
    *,
    n_inputs: int,
    k_copies: int | None = None,
    angle: float | None = None,
    class_index: int | None = None,
    points_per_angle: int | None = None,
) -> HermitianOperator:
    """Evaluate one of the defining phase averages on a uniform grid.

    kind selects the operator: "W_of_g" (feature score operator at template
    phase ``angle``), "G_of_theta" (learning score operator at guess
    ``angle``; needs k_copies), or "W_i" (collective score operator for
    ``class_index``; needs k_copies).  points_per_angle defaults to
    required_points and may not go below it.
    """
    if kind not in _KINDS:
        raise ValueError("unknown quadrature kind %r" % (kind,))
    if n_inputs < 1:
        raise ValueError("n_inputs must be >= 1")
    k_for_bound = k_copies if kind != "W_of_g" else 0
    if kind != "W_of_g":
        if k_copies is None or k_copies < 1:
            raise ValueError("%s needs k_copies >= 1" % kind)
    minimum = required_points(n_inputs, k_for_bound or 0)
    points = minimum if points_per_angle is None else int(points_per_angle)
    if points < minimum:
        raise ValueError(
            "insufficient grid points: %d per angle, need at least %d" % (points, minimum)
        )
    if kind == "W_of_g":
        if angle is None:
            raise ValueError("W_of_g needs the template phase angle")
        return _quadrature_w(n_inputs, float(angle), points)
    if kind == "G_of_theta":
        if angle is None:
            raise ValueError("G_of_theta needs the guess angle")
        return _quadrature_g(n_inputs, k_copies, float(angle), points)
    if class_index is None:
        raise ValueError("W_i needs class_index")
    return _quadrature_wi(n_inputs, k_copies, class_index, points)

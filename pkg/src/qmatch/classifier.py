"""Binary phase classifier for the feature block.

Given N copies of a qubit feature state with unknown phase f and a pair of
candidate template phases g1 = Theta + theta, g2 = Theta - theta, the
Bayes-optimal two-outcome measurement depends only on the midpoint Theta.
This module builds the score operators, the optimal projector pair, and the
coupling constant that the learning and collective strategies inherit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .core import (
    BasisLabel,
    HermitianOperator,
    POM,
    binomial_row,
    positive_part_projector,
)

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class ClassifierSpec:
    """Feature-block size and template-pair midpoint phase (reduced mod 2*pi)."""

    n_inputs: int
    theta: float

    def __post_init__(self):
        if self.n_inputs < 1:
            raise ValueError("n_inputs must be >= 1")
        object.__setattr__(self, "theta", float(self.theta) % TWO_PI)


def score_operator_w(n_inputs: int, template_phase: float) -> HermitianOperator:
    """Feature-average of |f><f|^(N) weighted by the single-copy overlap with a template.

    Averaging the N-copy phase-state projector against the weight
    |<f|g>|^2 = (1 + cos(f - g))/2 leaves a tridiagonal matrix: diagonal
    C(N, m)/2^(N+1), first off-diagonal sqrt(C(N, m) C(N, m+1)) e^{+-ig}/2^(N+2),
    with e^{+ig} on the lower (m+1, m) side.
    """
    if n_inputs < 1:
        raise ValueError("n_inputs must be >= 1")
    b = binomial_row(n_inputs)
    diag = b / 2.0 ** (n_inputs + 1)
    off = np.sqrt(b[:-1] * b[1:]) / 2.0 ** (n_inputs + 2)
    mat = np.diag(diag).astype(np.complex128)
    lower = off * np.exp(1j * template_phase)
    idx = np.arange(n_inputs)
    mat[idx + 1, idx] = lower
    mat[idx, idx + 1] = lower.conj()
    return HermitianOperator(BasisLabel.for_copies(n_inputs), mat)


def delta_w_reference(n_inputs: int, small_theta: float) -> HermitianOperator:
    """Real-entried representative of the score-difference family.

    This is the difference of the two score operators for a template pair
    symmetric about phase -pi/2, where the off-diagonal phase cancels:
    a symmetric tridiagonal with entries
    sin(small_theta) sqrt(C(N, m) C(N, m+1)) / 2^(N+1).
    Every delta_w(N, Theta, theta) is a diagonal-unitary rotation of it.
    """
    b = binomial_row(n_inputs)
    off = math.sin(small_theta) * np.sqrt(b[:-1] * b[1:]) / 2.0 ** (n_inputs + 1)
    mat = np.zeros((n_inputs + 1, n_inputs + 1), dtype=np.complex128)
    idx = np.arange(n_inputs)
    mat[idx + 1, idx] = off
    mat[idx, idx + 1] = off
    return HermitianOperator(BasisLabel.for_copies(n_inputs), mat)


def delta_w(n_inputs: int, big_theta: float, small_theta: float) -> HermitianOperator:
    """Score-operator difference W(Theta + theta) - W(Theta - theta), closed form.

    Tridiagonal with off-diagonal sin(theta) sqrt(C C) e^{i(Theta + pi/2)} / 2^(N+1)
    on the lower side.  Equals the difference of two score_operator_w calls and
    satisfies delta_w(N, Theta, theta) = V(Theta) delta_w(N, 0, theta) V(Theta)^dag.
    """
    b = binomial_row(n_inputs)
    off = math.sin(small_theta) * np.sqrt(b[:-1] * b[1:]) / 2.0 ** (n_inputs + 1)
    lower = off * np.exp(1j * (big_theta + math.pi / 2.0))
    mat = np.zeros((n_inputs + 1, n_inputs + 1), dtype=np.complex128)
    idx = np.arange(n_inputs)
    mat[idx + 1, idx] = lower
    mat[idx, idx + 1] = lower.conj()
    return HermitianOperator(BasisLabel.for_copies(n_inputs), mat)


def rotation_v(n_inputs: int, angle: float) -> np.ndarray:
    """Diagonal phase unitary diag(e^{i m angle}), m = 0..N, as a plain array.

    Not Hermitian, so it is returned unwrapped; conjugating any member of the
    score-difference family with it shifts the template midpoint by angle.
    """
    m = np.arange(n_inputs + 1)
    return np.diag(np.exp(1j * m * angle))


@lru_cache(maxsize=None)
def _lambda_pair_default(n_inputs: int) -> tuple[HermitianOperator, HermitianOperator]:
    return _lambda_pair(n_inputs, math.pi / 2.0)


def _lambda_pair(n_inputs, reference_angle):
    ref = delta_w_reference(n_inputs, reference_angle)
    lam1 = positive_part_projector(ref, "include_zero")
    lam2 = HermitianOperator(lam1.basis, np.eye(n_inputs + 1) - lam1.entries)
    return lam1, lam2


def lambda_projectors(
    n_inputs: int, reference_angle: float = math.pi / 2.0
) -> tuple[HermitianOperator, HermitianOperator]:
    """Positive/negative spectral projectors of the reference score difference.

    Independent of reference_angle on (0, pi) because the angle only scales
    the eigenvalues; the default pi/2 evaluation is cached per N.
    """
    if not 0.0 < reference_angle < math.pi:
        raise ValueError("reference_angle must lie in (0, pi)")
    if reference_angle == math.pi / 2.0:
        return _lambda_pair_default(n_inputs)
    return _lambda_pair(n_inputs, reference_angle)


def classifier_pom(spec: ClassifierSpec) -> POM:
    """Optimal two-outcome measurement for a template pair with midpoint spec.theta.

    Both projectors are rotations of the fixed reference projectors:
    Omega_j = V(theta + pi/2) Lambda_j V(theta + pi/2)^dag.
    """
    lam1, _ = lambda_projectors(spec.n_inputs)
    v = rotation_v(spec.n_inputs, spec.theta + math.pi / 2.0)
    omega1 = v @ lam1.entries @ v.conj().T
    omega1 = (omega1 + omega1.conj().T) / 2.0
    basis = BasisLabel.for_copies(spec.n_inputs)
    op1 = HermitianOperator(basis, omega1)
    op2 = HermitianOperator(basis, np.eye(spec.n_inputs + 1) - omega1)
    return POM(((1, op1), (2, op2)))


def r_n(n_inputs: int) -> float:
    """Coupling constant of the classifier: the weighted off-diagonal mass of Lambda_1.

    R_N = 2^-(N+1) * sum_m sqrt(C(N, m) C(N, m+1)) <m|Lambda_1|m+1>, which also
    equals half the positive-eigenvalue sum of the reference score difference
    at small_theta = pi/2.  R_1 = R_2 = 1/8; R_N grows slowly toward 1/pi.
    """
    lam1, _ = lambda_projectors(n_inputs)
    b = binomial_row(n_inputs)
    off = np.sqrt(b[:-1] * b[1:])
    upper = np.diagonal(lam1.entries, offset=1).real
    return float(np.sum(off * upper) / 2.0 ** (n_inputs + 1))


def classifier_expected_score(n_inputs: int, g1: float, g2: float, theta: float) -> float:
    """Mean matching score of the midpoint-theta classifier on templates (g1, g2).

    Closed form 1/2 + (sin(g1 - theta) - sin(g2 - theta)) R_N; maximized over
    theta exactly when theta is the midpoint of g1 and g2.
    """
    return 0.5 + (math.sin(g1 - theta) - math.sin(g2 - theta)) * r_n(n_inputs)


def classifier_expected_score_operator(
    n_inputs: int, g1: float, g2: float, theta: float
) -> float:
    """Same expected score evaluated through the operators themselves.

    Computes sum_j Tr[Omega_j(theta) W(g_j)]; used to cross-check the closed
    form against the underlying measurement.
    """
    pom = classifier_pom(ClassifierSpec(n_inputs, theta))
    w1 = score_operator_w(n_inputs, g1)
    w2 = score_operator_w(n_inputs, g2)
    t1 = np.trace(pom.elements[0][1].entries @ w1.entries).real
    t2 = np.trace(pom.elements[1][1].entries @ w2.entries).real
    return float(t1 + t2)

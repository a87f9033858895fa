"""Learning-based semiclassical matching: estimate templates, then classify.

The machine first measures the K-copy template registers to produce a guess
Theta for the template-pair midpoint, then runs the midpoint-Theta feature
classifier.  Averaging the classifier score over feature and template phases
turns template estimation into discrimination of the score operators G(Theta);
this module builds those operators, the optimal estimation measurements for
K = 1, and the Bayes-optimality certificate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .classifier import TWO_PI, r_n
from .core import (
    BasisLabel,
    HermitianOperator,
    POM,
    PureState,
    SpectralDecomposition,
    binomial_row,
)

STRATEGY_KINDS = ("covariant_sqrt", "discrete_three", "separable_four")


@dataclass(frozen=True)
class LearningProblem:
    """Problem sizes plus the Theta guesses a discrete strategy may emit."""

    n_inputs: int
    k_copies: int
    theta_grid: tuple

    def __post_init__(self):
        if self.n_inputs < 1 or self.k_copies < 1:
            raise ValueError("n_inputs and k_copies must be >= 1")
        grid = tuple(float(t) for t in self.theta_grid)
        if not grid:
            raise ValueError("theta_grid must be nonempty")
        reduced = sorted(t % TWO_PI for t in grid)
        if len(reduced) > 1:
            gaps = [b - a for a, b in zip(reduced, reduced[1:])]
            gaps.append(reduced[0] + TWO_PI - reduced[-1])
            if min(gaps) <= 1e-12:
                raise ValueError("theta_grid entries must be distinct mod 2*pi")
        object.__setattr__(self, "theta_grid", grid)


@dataclass(frozen=True)
class LearningStrategy:
    """A template-estimation POM whose element labels are the Theta guesses.

    completion_index marks the element that absorbs the projector onto the
    subspace orthogonal to every guess vector (the triplet-zero/singlet block
    complement for K = 1); None when no completion was needed.
    """

    kind: str
    pom: POM
    completion_index: Optional[int] = None

    def __post_init__(self):
        if self.kind not in STRATEGY_KINDS:
            raise ValueError("unknown strategy kind %r" % (self.kind,))


def template_basis(k_copies: int) -> BasisLabel:
    """Joint basis of the two K-copy template registers."""
    one = BasisLabel.for_copies(k_copies)
    return BasisLabel.composite(one, one)


def c_operator(k_copies: int) -> HermitianOperator:
    """Phase-average of one K-copy template state: diag(C(K, m)) / 2^K."""
    if k_copies < 1:
        raise ValueError("k_copies must be >= 1")
    diag = binomial_row(k_copies) / 2.0**k_copies
    return HermitianOperator(BasisLabel.for_copies(k_copies), np.diag(diag).astype(complex))


def d_operator(k_copies: int, theta: float) -> HermitianOperator:
    """Sine-weighted phase average of one K-copy template state.

    Traceless tridiagonal: (i/2^K) sqrt(C(K, m) C(K, m+1))
    (e^{i theta}|m+1><m| - e^{-i theta}|m><m+1|).  For K = 1, theta = 0 this
    is the Pauli-y matrix over 2.
    """
    if k_copies < 1:
        raise ValueError("k_copies must be >= 1")
    b = binomial_row(k_copies)
    off = np.sqrt(b[:-1] * b[1:]) / 2.0**k_copies
    lower = 1j * off * np.exp(1j * theta)
    mat = np.zeros((k_copies + 1, k_copies + 1), dtype=np.complex128)
    idx = np.arange(k_copies)
    mat[idx + 1, idx] = lower
    mat[idx, idx + 1] = lower.conj()
    return HermitianOperator(BasisLabel.for_copies(k_copies), mat)


def learning_score_operator(problem: LearningProblem, theta: float) -> HermitianOperator:
    """Expected classifier score as an operator on the two template registers.

    G(Theta) = 1/2 C (x) C + (R_N / 2) [D(Theta) (x) C - C (x) D(Theta)].
    Tr G = 1/2 for every Theta, and the score of announcing guess Theta_i on
    outcome i of a POM {mu_i} is sum_i Tr[mu_i G(Theta_i)].
    """
    c = c_operator(problem.k_copies).entries
    d = d_operator(problem.k_copies, theta).entries
    coupling = r_n(problem.n_inputs)
    mat = 0.5 * np.kron(c, c) + 0.5 * coupling * (np.kron(d, c) - np.kron(c, d))
    return HermitianOperator(template_basis(problem.k_copies), mat)


def g_spectral_k1(theta: float, n_inputs: int) -> SpectralDecomposition:
    """Closed-form spectrum of the K = 1 learning score operator.

    With R = R_N and alpha = theta + pi/2, the eigenpairs on the ordered
    product basis (|00>, |01>, |10>, |11>) are:

      (1 + 2R)/8 : (-e^{-i alpha}, 1, -1, e^{i alpha}) / 2
      1/8        : the symmetric combination (0, 1, 1, 0)/sqrt(2)
      1/8        : (e^{-i alpha}, 0, 0, e^{i alpha}) / sqrt(2)
      (1 - 2R)/8 : (e^{-i alpha}, 1, -1, -e^{i alpha}) / 2

    The two middle eigenvectors span the degenerate 1/8 eigenspace: the
    triplet-zero state is a Theta-independent eigenvector, and the second
    vector is annihilated by the sine-weighted drift term.
    """
    coupling = r_n(n_inputs)
    alpha = theta + math.pi / 2.0
    em = np.exp(-1j * alpha)
    ep = np.exp(1j * alpha)
    basis = template_basis(1)
    top = PureState(basis, np.array([-em, 1.0, -1.0, ep]) / 2.0)
    triplet = PureState(basis, np.array([0.0, 1.0, 1.0, 0.0]) / math.sqrt(2.0))
    drift_null = PureState(basis, np.array([em, 0.0, 0.0, ep]) / math.sqrt(2.0))
    bottom = PureState(basis, np.array([em, 1.0, -1.0, -ep]) / 2.0)
    vals = np.array(
        [(1.0 + 2.0 * coupling) / 8.0, 0.125, 0.125, (1.0 - 2.0 * coupling) / 8.0]
    )
    return SpectralDecomposition(vals, (top, triplet, drift_null, bottom))


def _sqrt_pom_vector(theta: float) -> np.ndarray:
    """Square-root-measurement seed vector for guess Theta (squared norm 3)."""
    alpha = theta + math.pi / 2.0
    return np.array(
        [
            -np.exp(-1j * alpha),
            1.0 / math.sqrt(2.0),
            -1.0 / math.sqrt(2.0),
            np.exp(1j * alpha),
        ]
    )


_TRIPLET_ZERO = np.array([0.0, 1.0, 1.0, 0.0]) / math.sqrt(2.0)


def covariant_sqrt_pom(
    theta_grid, kind: str = "covariant_sqrt", completion_index: int = 0
) -> LearningStrategy:
    """Square-root measurement over a uniform grid of K = 1 guess phases.

    Each element is |mu(Theta_i)><mu(Theta_i)| / L; the element picked by
    completion_index also carries the projector onto the triplet-zero state,
    which no guess vector overlaps, so the elements resolve the identity for
    any uniform grid with L >= 3 points.  The completion is score-neutral
    (the triplet-zero expectation of the score operator is Theta-independent),
    making its placement a free choice.
    """
    grid = tuple(float(t) for t in theta_grid)
    n_points = len(grid)
    if n_points < 3:
        raise ValueError("a covariant grid needs at least 3 points to resolve the identity")
    if not 0 <= completion_index < n_points:
        raise ValueError("completion_index must pick one of the grid elements")
    step = TWO_PI / n_points
    for i, t in enumerate(grid):
        dev = (t - grid[0] - i * step) % TWO_PI
        if min(dev, TWO_PI - dev) > 1e-9:
            raise ValueError("theta_grid must be uniform modulo 2*pi")
    basis = template_basis(1)
    completion = np.outer(_TRIPLET_ZERO, _TRIPLET_ZERO)
    elements = []
    for i, t in enumerate(grid):
        vec = _sqrt_pom_vector(t)
        mat = np.outer(vec, vec.conj()) / n_points
        if i == completion_index:
            mat = mat + completion
        elements.append((t, HermitianOperator(basis, mat)))
    return LearningStrategy(kind, POM(tuple(elements)), completion_index=completion_index)


def discrete_three_pom() -> LearningStrategy:
    """Minimal optimal estimation measurement: three guesses a third of a turn apart."""
    return covariant_sqrt_pom((0.0, TWO_PI / 3.0, 2.0 * TWO_PI / 3.0), kind="discrete_three")


def separable_pom() -> LearningStrategy:
    """Product measurement on the two template qubits achieving the optimum.

    Measures the first qubit along (1, +-1)/sqrt(2), the second along
    (1, +-i)/sqrt(2), and maps the four outcomes to diagonal guesses
    -3pi/4, -pi/4, 3pi/4, pi/4.  Elements are rank-1 products, not covariant.
    """
    a = {s: np.array([1.0, s]) / math.sqrt(2.0) for s in (+1.0, -1.0)}
    b = {s: np.array([1.0, s * 1j]) / math.sqrt(2.0) for s in (+1.0, -1.0)}
    basis = template_basis(1)
    guesses = [
        (+1.0, +1.0, -3.0 * math.pi / 4.0),
        (+1.0, -1.0, -math.pi / 4.0),
        (-1.0, +1.0, 3.0 * math.pi / 4.0),
        (-1.0, -1.0, math.pi / 4.0),
    ]
    elements = []
    for sa, sb, label in guesses:
        vec = np.kron(a[sa], b[sb])
        elements.append((label, HermitianOperator(basis, np.outer(vec, vec.conj()))))
    return LearningStrategy("separable_four", POM(tuple(elements)))


def average_score(strategy: LearningStrategy, n_inputs: int) -> float:
    """Mean matching score sum_i Tr[mu_i G(Theta_i)] of a labeled strategy."""
    dim = strategy.pom.basis.dimension
    k_copies = round(math.sqrt(dim)) - 1
    problem = LearningProblem(n_inputs, k_copies, strategy.pom.labels)
    total = 0.0
    for label, op in strategy.pom.elements:
        g = learning_score_operator(problem, float(label))
        total += float(np.trace(op.entries @ g.entries).real)
    return total


@dataclass(frozen=True)
class OptimalityReport:
    """Residuals of the Bayes-optimality (Holevo) conditions.

    psd_margin is the smallest eigenvalue of Gamma - G(Theta) over the guess
    grid (>= 0 at an optimum); commutation_residual is the largest Frobenius
    norm of (Gamma - G(Theta_i)) mu_i (0 at an optimum).
    """

    psd_margin: float
    commutation_residual: float


def verify_optimality(strategy: LearningStrategy, problem: LearningProblem) -> OptimalityReport:
    """Evaluate the optimality conditions of a strategy on its own guess labels.

    Gamma = sum_i mu_i G(Theta_i) is Hermitized before testing; both residuals
    vanish (to roundoff) exactly for Bayes-optimal strategies, so a mislabeled
    or suboptimal POM shows up as a large commutation residual.
    """
    ops = []
    for label, op in strategy.pom.elements:
        g = learning_score_operator(problem, float(label))
        ops.append((op.entries, g.entries))
    gamma = sum(mu @ g for mu, g in ops)
    gamma = (gamma + gamma.conj().T) / 2.0
    margin = math.inf
    residual = 0.0
    for mu, g in ops:
        diff = gamma - g
        margin = min(margin, float(np.linalg.eigvalsh(diff)[0]))
        residual = max(residual, float(np.linalg.norm(diff @ mu)))
    return OptimalityReport(psd_margin=margin, commutation_residual=residual)


def semiclassical_max_score(n_inputs: int) -> float:
    """Best mean score of any estimate-then-classify strategy at K = 1."""
    return 0.5 + r_n(n_inputs) / math.sqrt(2.0)

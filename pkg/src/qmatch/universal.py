"""Collective matching machine: one joint measurement on feature and templates.

Instead of estimating the templates first, the machine measures the
N-copy feature register and both K-copy template registers together with a
two-outcome POM.  The Bayes-optimal measurement is the projector onto the
positive part of the score-difference operator W_1 - W_2; for K = 1 its
spectrum decomposes into independent three-state blocks with closed-form
eigenpairs, giving an analytic maximum score.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    BasisLabel,
    HermitianOperator,
    POM,
    PureState,
    binomial,
    binomial_row,
    positive_part_projector,
)

#: Largest joint dimension (N+1)(K+1)^2 the dense numeric solver will accept.
SOLVER_DIMENSION_CAP = 4096


@dataclass(frozen=True)
class MatchingProblem:
    """Register sizes for a collective matching measurement (binary classes)."""

    n_inputs: int
    k_copies: int
    n_classes: int = 2

    def __post_init__(self):
        if self.n_inputs < 1 or self.k_copies < 1:
            raise ValueError("n_inputs and k_copies must be >= 1")
        if self.n_classes != 2:
            raise ValueError("only binary matching is supported")

    @property
    def joint_dimension(self) -> int:
        return (self.n_inputs + 1) * (self.k_copies + 1) ** 2

    def joint_basis(self) -> BasisLabel:
        feature = BasisLabel.for_copies(self.n_inputs)
        template = BasisLabel.for_copies(self.k_copies)
        return BasisLabel.composite(feature, template, template)


def _joint_index(problem: MatchingProblem, k: int, m: int, n: int) -> int:
    width = problem.k_copies + 1
    return (k * width + m) * width + n


def score_operator_wi(problem: MatchingProblem, class_index: int) -> HermitianOperator:
    """Phase-averaged score operator for announcing the given class.

    W_i is the average of |f f g1 g2> projectors weighted by |<f|g_i>|^2 over
    independent uniform phases.  The diagonal carries the product of binomial
    weights over 2^(N + 2K + 1); choosing class i adds coherences between the
    feature register and template register i only, with weight
    sqrt(C(N,k) C(N,k+1) C(K,m) C(K,m+1)) C(K,n) / 2^(N + 2K + 2).
    """
    if class_index not in (1, 2):
        raise ValueError("class_index must be 1 or 2")
    n, kc = problem.n_inputs, problem.k_copies
    bn = binomial_row(n)
    bk = binomial_row(kc)
    dim = problem.joint_dimension
    mat = np.zeros((dim, dim), dtype=np.complex128)
    diag_scale = 2.0 ** (n + 2 * kc + 1)
    off_scale = 2.0 ** (n + 2 * kc + 2)
    for k in range(n + 1):
        for m in range(kc + 1):
            for nn in range(kc + 1):
                i = _joint_index(problem, k, m, nn)
                mat[i, i] = bn[k] * bk[m] * bk[nn] / diag_scale
    # Coherence between raising the feature register and lowering template i.
    for k in range(n):
        for m in range(kc):
            for nn in range(kc + 1):
                weight = math.sqrt(bn[k] * bn[k + 1] * bk[m] * bk[m + 1]) * bk[nn]
                if class_index == 1:
                    hi = _joint_index(problem, k + 1, m, nn)
                    lo = _joint_index(problem, k, m + 1, nn)
                else:
                    hi = _joint_index(problem, k + 1, nn, m)
                    lo = _joint_index(problem, k, nn, m + 1)
                mat[hi, lo] += weight / off_scale
                mat[lo, hi] += weight / off_scale
    return HermitianOperator(problem.joint_basis(), mat)


def score_difference(problem: MatchingProblem) -> HermitianOperator:
    """W_1 - W_2; its positive part determines the optimal measurement."""
    w1 = score_operator_wi(problem, 1)
    w2 = score_operator_wi(problem, 2)
    return HermitianOperator(problem.joint_basis(), w1.entries - w2.entries)


@dataclass(frozen=True)
class MatchingBlock:
    """One invariant three-state block of the K = 1 score difference.

    The block couples |k+1, 00>, |k, S>, |k-1, 11> (S the two-template
    singlet) and contributes eigenvalues +-magnitude with the stored unit
    eigenvectors on the joint basis.
    """

    k_index: int
    magnitude: float
    plus_vector: PureState
    minus_vector: PureState


@dataclass(frozen=True)
class BlockSolution:
    """All blocks of the K = 1 decomposition plus the dimension of the kernel."""

    blocks: tuple
    kernel_dimension: int


def _k1_joint_vector(problem, components) -> np.ndarray:
    vec = np.zeros(problem.joint_dimension, dtype=np.complex128)
    for (k, m, n), value in components:
        vec[_joint_index(problem, k, m, n)] = value
    return vec


def block_decomposition_k1(n_inputs: int) -> BlockSolution:
    """Closed-form block spectrum of W_1 - W_2 for single-copy templates.

    Block k = 0..N couples the singlet state |k, S> to |k+1, 00> and
    |k-1, 11> (whichever exist).  With b = C(N, .), the interior block has
    magnitude sqrt(2 C(N,k) (C(N,k+1) + C(N,k-1))) / 2^(N+4) and eigenvectors

      |k+-> = (-+ sqrt(c+)|k+1,00> + sqrt(c+ + c-)|k,S> +- sqrt(c-)|k-1,11>)
              / sqrt(2 (c+ + c-)),

    c+- = C(N, k+-1).  Everything orthogonal to the blocks is in the kernel,
    which has dimension 2(N + 1).
    """
    if n_inputs < 1:
        raise ValueError("n_inputs must be >= 1")
    problem = MatchingProblem(n_inputs, 1)
    basis = problem.joint_basis()
    bn = binomial_row(n_inputs)
    inv_sqrt2 = 1.0 / math.sqrt(2.0)
    blocks = []
    for k in range(n_inputs + 1):
        c_plus = bn[k + 1] if k + 1 <= n_inputs else 0.0
        c_minus = bn[k - 1] if k - 1 >= 0 else 0.0
        total = c_plus + c_minus
        magnitude = math.sqrt(2.0 * bn[k] * total) / 2.0 ** (n_inputs + 4)
        singlet = [((k, 0, 1), inv_sqrt2), ((k, 1, 0), -inv_sqrt2)]
        root = math.sqrt(2.0 * total)
        plus_parts = [(idx, val * math.sqrt(total) / root) for idx, val in singlet]
        minus_parts = list(plus_parts)
        if c_plus > 0:
            plus_parts.append(((k + 1, 0, 0), -math.sqrt(c_plus) / root))
            minus_parts.append(((k + 1, 0, 0), math.sqrt(c_plus) / root))
        if c_minus > 0:
            plus_parts.append(((k - 1, 1, 1), math.sqrt(c_minus) / root))
            minus_parts.append(((k - 1, 1, 1), -math.sqrt(c_minus) / root))
        blocks.append(
            MatchingBlock(
                k_index=k,
                magnitude=magnitude,
                plus_vector=PureState(basis, _k1_joint_vector(problem, plus_parts)),
                minus_vector=PureState(basis, _k1_joint_vector(problem, minus_parts)),
            )
        )
    kernel_dim = problem.joint_dimension - 2 * (n_inputs + 1)
    return BlockSolution(blocks=tuple(blocks), kernel_dimension=kernel_dim)


def universal_pom_k1(n_inputs: int, kernel_to: int = 1) -> POM:
    """Optimal two-outcome collective measurement for single-copy templates.

    Sums the plus-eigenvector projectors into the class-1 element and the
    minus projectors into class 2; the kernel of the score difference is
    score-neutral and is assigned to the element picked by kernel_to.
    """
    if kernel_to not in (1, 2):
        raise ValueError("kernel_to must be 1 or 2")
    solution = block_decomposition_k1(n_inputs)
    basis = solution.blocks[0].plus_vector.basis
    dim = basis.dimension
    p_plus = np.zeros((dim, dim), dtype=np.complex128)
    p_minus = np.zeros((dim, dim), dtype=np.complex128)
    for block in solution.blocks:
        p_plus += block.plus_vector.density()
        p_minus += block.minus_vector.density()
    kernel = np.eye(dim) - p_plus - p_minus
    if kernel_to == 1:
        p_plus = p_plus + kernel
    else:
        p_minus = p_minus + kernel
    pi1 = HermitianOperator(basis, (p_plus + p_plus.conj().T) / 2.0)
    pi2 = HermitianOperator(basis, np.eye(dim) - pi1.entries)
    return POM(((1, pi1), (2, pi2)))


def universal_score_analytic(n_inputs: int) -> float:
    """Maximum mean score of the collective machine for single-copy templates.

    1/2 + (sqrt(2)/2^(N+4)) (2 sqrt(N) + sum_{k=1}^{N-1}
    sqrt(C(N,k)) sqrt(C(N,k+1) + C(N,k-1))); the sum of the block magnitudes.
    """
    if n_inputs < 1:
        raise ValueError("n_inputs must be >= 1")
    acc = 2.0 * math.sqrt(n_inputs)
    for k in range(1, n_inputs):
        acc += math.sqrt(binomial(n_inputs, k)) * math.sqrt(
            binomial(n_inputs, k + 1) + binomial(n_inputs, k - 1)
        )
    return 0.5 + math.sqrt(2.0) / 2.0 ** (n_inputs + 4) * acc


def universal_average_score(pom: POM, problem: MatchingProblem) -> float:
    """Mean score sum_i Tr[W_i Pi_i] of a two-outcome collective POM."""
    total = 0.0
    for label, op in pom.elements:
        w = score_operator_wi(problem, int(label))
        total += float(np.trace(w.entries @ op.entries).real)
    return total


def universal_solver_numeric(problem: MatchingProblem) -> tuple[POM, float]:
    """Dense-eigensolver construction of the optimal collective measurement.

    Projects onto the positive part of W_1 - W_2 (kernel included, matching
    universal_pom_k1 with kernel_to=1) and scores it as 1/2 plus the sum of
    positive eigenvalues.  Works for any K with joint dimension up to
    SOLVER_DIMENSION_CAP.
    """
    if problem.joint_dimension > SOLVER_DIMENSION_CAP:
        raise ValueError(
            "joint dimension %d exceeds the dense solver cap %d"
            % (problem.joint_dimension, SOLVER_DIMENSION_CAP)
        )
    diff = score_difference(problem)
    pi1 = positive_part_projector(diff, "include_zero")
    pi2 = HermitianOperator(pi1.basis, np.eye(problem.joint_dimension) - pi1.entries)
    pom = POM(((1, pi1), (2, pi2)))
    eigenvalues = np.linalg.eigvalsh(diff.entries)
    score = 0.5 + float(eigenvalues[eigenvalues > 1e-14].sum())
    return pom, score

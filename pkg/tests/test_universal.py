import numpy as np
import pytest

from qmatch.core import eigendecompose
from qmatch.universal import (
    SOLVER_DIMENSION_CAP,
    MatchingProblem,
    block_decomposition_k1,
    score_difference,
    score_operator_wi,
    universal_average_score,
    universal_pom_k1,
    universal_score_analytic,
    universal_solver_numeric,
)


def test_problem_requires_two_classes():
    with pytest.raises(ValueError):
        MatchingProblem(2, 1, n_classes=3)
    problem = MatchingProblem(2, 1)
    assert problem.joint_dimension == 3 * 2 * 2


def test_wi_trace_is_half():
    for n, k in ((1, 1), (2, 1), (2, 2), (3, 1)):
        problem = MatchingProblem(n, k)
        for c in (1, 2):
            np.testing.assert_allclose(score_operator_wi(problem, c).trace(), 0.5, atol=1e-13)


def test_w2_is_template_swapped_w1():
    # Swapping the two template registers exchanges the class operators.
    problem = MatchingProblem(2, 1)
    m = problem.n_inputs + 1
    d = problem.k_copies + 1
    w1 = score_operator_wi(problem, 1).entries
    w2 = score_operator_wi(problem, 2).entries
    t = w1.reshape(m, d, d, m, d, d).transpose(0, 2, 1, 3, 5, 4).reshape(w1.shape)
    np.testing.assert_allclose(t, w2, atol=1e-15)


def test_score_difference_is_traceless():
    problem = MatchingProblem(3, 1)
    diff = score_difference(problem)
    np.testing.assert_allclose(diff.trace(), 0.0, atol=1e-13)


@pytest.mark.parametrize("n_inputs", [1, 2, 4])
def test_blocks_reproduce_dense_spectrum(n_inputs):
    problem = MatchingProblem(n_inputs, 1)
    diff = score_difference(problem)
    dense = np.sort(np.linalg.eigvalsh(diff.entries))
    solution = block_decomposition_k1(n_inputs)
    collected = []
    for block in solution.blocks:
        collected.extend([block.magnitude, -block.magnitude])
    assert solution.kernel_dimension == problem.joint_dimension - 2 * len(solution.blocks)
    collected.extend([0.0] * solution.kernel_dimension)
    np.testing.assert_allclose(np.sort(collected), dense, atol=1e-13)


def test_block_vectors_are_eigenvectors():
    for n_inputs in (1, 2, 5):
        diff = score_difference(MatchingProblem(n_inputs, 1)).entries
        for block in block_decomposition_k1(n_inputs).blocks:
            for state, val in (
                (block.plus_vector, block.magnitude),
                (block.minus_vector, -block.magnitude),
            ):
                vec = state.amplitudes
                np.testing.assert_allclose(diff @ vec, val * vec, atol=1e-14)


def test_universal_pom_is_projective_pair():
    for n_inputs in (1, 2, 5):
        pom = universal_pom_k1(n_inputs)
        assert pom.labels == (1, 2)
        p1 = pom.elements[0][1].entries
        p2 = pom.elements[1][1].entries
        np.testing.assert_allclose(p1 @ p1, p1, atol=1e-12)
        np.testing.assert_allclose(p1 @ p2, np.zeros_like(p1), atol=1e-12)


def test_kernel_assignment_does_not_change_score():
    for n_inputs in (1, 3):
        problem = MatchingProblem(n_inputs, 1)
        s1 = universal_average_score(universal_pom_k1(n_inputs, kernel_to=1), problem)
        s2 = universal_average_score(universal_pom_k1(n_inputs, kernel_to=2), problem)
        np.testing.assert_allclose(s1, s2, atol=1e-12)


def test_swapping_outcome_labels_gives_complement():
    problem = MatchingProblem(2, 1)
    pom = universal_pom_k1(2)
    swapped = type(pom)(tuple((3 - label, op) for label, op in pom.elements))
    s = universal_average_score(pom, problem)
    np.testing.assert_allclose(universal_average_score(swapped, problem), 1.0 - s, atol=1e-13)


@pytest.mark.parametrize("n_inputs", range(1, 11))
def test_analytic_matches_positive_part_sum(n_inputs):
    problem = MatchingProblem(n_inputs, 1)
    diff = score_difference(problem)
    vals = eigendecompose(diff).eigenvalues
    positive_sum = float(np.sum(vals[vals > 1e-14]))
    np.testing.assert_allclose(
        universal_score_analytic(n_inputs), 0.5 + positive_sum, atol=1e-10
    )


def test_analytic_reference_values():
    np.testing.assert_allclose(universal_score_analytic(1), 0.5883883476483184, atol=1e-12)
    np.testing.assert_allclose(universal_score_analytic(2), 0.6066941738241592, atol=1e-12)


def test_solver_agrees_with_analytic_k1():
    for n_inputs in (1, 2, 5):
        pom, score = universal_solver_numeric(MatchingProblem(n_inputs, 1))
        np.testing.assert_allclose(score, universal_score_analytic(n_inputs), atol=1e-12)
        np.testing.assert_allclose(
            universal_average_score(pom, MatchingProblem(n_inputs, 1)), score, atol=1e-12
        )


def test_solver_k2_regression():
    _, score = universal_solver_numeric(MatchingProblem(2, 2))
    np.testing.assert_allclose(score, 0.6337385230855419, atol=1e-12)


def test_solver_scores_increase_with_copies():
    scores = [
        universal_solver_numeric(MatchingProblem(2, k))[1] for k in (1, 2, 3)
    ]
    assert scores[0] < scores[1] < scores[2]


def test_solver_dimension_cap():
    # (n+1)(k+1)^2 must stay within the configured cap.
    with pytest.raises(ValueError):
        universal_solver_numeric(MatchingProblem(SOLVER_DIMENSION_CAP, 1))

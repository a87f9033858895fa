import numpy as np
import pytest

from qmatch.classifier import score_operator_w
from qmatch.harness.quadrature import QuadratureSpec, quadrature_operator, required_points
from qmatch.learning import LearningProblem, learning_score_operator
from qmatch.universal import MatchingProblem, score_operator_wi


def test_required_points_formula():
    assert required_points(1) == 6
    assert required_points(4) == 12
    assert required_points(2, k_copies=3) == 20


def test_quadrature_spec_validation():
    QuadratureSpec(8, frozenset({"f"}))
    with pytest.raises(ValueError):
        QuadratureSpec(8, frozenset())
    with pytest.raises(ValueError):
        QuadratureSpec(8, frozenset({"f", "h"}))
    with pytest.raises(ValueError):
        QuadratureSpec(1, frozenset({"f"}))


def test_unknown_kind_rejected():
    with pytest.raises(ValueError):
        quadrature_operator("X_of_y", n_inputs=2)


def test_missing_arguments_rejected():
    with pytest.raises(ValueError):
        quadrature_operator("W_of_g", n_inputs=2)  # no angle
    with pytest.raises(ValueError):
        quadrature_operator("G_of_theta", n_inputs=2, angle=0.1)  # no k_copies
    with pytest.raises(ValueError):
        quadrature_operator("W_i", n_inputs=2, k_copies=1)  # no class_index


def test_insufficient_points_rejected():
    with pytest.raises(ValueError, match="insufficient grid points"):
        quadrature_operator("W_of_g", n_inputs=3, angle=0.0, points_per_angle=9)


@pytest.mark.parametrize("n_inputs", [1, 2, 5])
def test_w_quadrature_matches_closed_form(n_inputs):
    for g in (0.0, 0.7, 3.9):
        grid = quadrature_operator("W_of_g", n_inputs=n_inputs, angle=g)
        closed = score_operator_w(n_inputs, g)
        np.testing.assert_allclose(grid.entries, closed.entries, atol=1e-13)


@pytest.mark.parametrize("n_inputs,k_copies", [(1, 1), (2, 1), (2, 2), (3, 2)])
def test_g_quadrature_matches_closed_form(n_inputs, k_copies):
    theta = 1.3
    grid = quadrature_operator(
        "G_of_theta", n_inputs=n_inputs, k_copies=k_copies, angle=theta
    )
    closed = learning_score_operator(LearningProblem(n_inputs, k_copies, (theta,)), theta)
    np.testing.assert_allclose(grid.entries, closed.entries, atol=1e-13)


@pytest.mark.parametrize("n_inputs,k_copies", [(1, 1), (2, 1), (2, 2), (4, 1)])
def test_wi_quadrature_matches_closed_form(n_inputs, k_copies):
    problem = MatchingProblem(n_inputs, k_copies)
    for class_index in (1, 2):
        grid = quadrature_operator(
            "W_i", n_inputs=n_inputs, k_copies=k_copies, class_index=class_index
        )
        closed = score_operator_wi(problem, class_index)
        np.testing.assert_allclose(grid.entries, closed.entries, atol=1e-13)


def test_doubling_the_grid_changes_nothing():
    # The integrands are trigonometric polynomials, so once the grid passes
    # the exactness threshold the answer must sit on a plateau.
    base = required_points(3, 1)
    at_minimum = quadrature_operator(
        "G_of_theta", n_inputs=3, k_copies=1, angle=0.4, points_per_angle=base
    )
    doubled = quadrature_operator(
        "G_of_theta", n_inputs=3, k_copies=1, angle=0.4, points_per_angle=2 * base
    )
    np.testing.assert_allclose(at_minimum.entries, doubled.entries, atol=1e-13)


def test_w_quadrature_hermitian_and_half_trace():
    op = quadrature_operator("W_of_g", n_inputs=4, angle=2.2)
    np.testing.assert_allclose(op.entries, op.entries.conj().T, atol=1e-15)
    np.testing.assert_allclose(op.trace(), 0.5, atol=1e-13)

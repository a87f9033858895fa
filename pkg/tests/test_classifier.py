import math

import numpy as np
import pytest

from qmatch.classifier import (
    ClassifierSpec,
    classifier_expected_score,
    classifier_expected_score_operator,
    classifier_pom,
    delta_w,
    delta_w_reference,
    lambda_projectors,
    r_n,
    rotation_v,
    score_operator_w,
)
from qmatch.core import eigendecompose

TWO_PI = 2 * math.pi


def test_score_operator_single_copy_matrix():
    g = 0.9
    w = score_operator_w(1, g).entries
    expected = np.array(
        [[0.25, np.exp(-1j * g) / 8], [np.exp(1j * g) / 8, 0.25]]
    )
    np.testing.assert_allclose(w, expected, atol=1e-15)


def test_score_operator_two_copies_at_quarter_turn():
    w = score_operator_w(2, math.pi / 2).entries
    np.testing.assert_allclose(np.diag(w).real, [0.125, 0.25, 0.125])
    off = math.sqrt(2.0) / 16.0
    np.testing.assert_allclose(w[1, 0], off * 1j, atol=1e-15)
    np.testing.assert_allclose(w[2, 1], off * 1j, atol=1e-15)


def test_score_operator_trace_is_half():
    rng = np.random.default_rng(5)
    for _ in range(20):
        n = int(rng.integers(1, 12))
        g = float(rng.uniform(0, TWO_PI))
        np.testing.assert_allclose(score_operator_w(n, g).trace(), 0.5, atol=1e-12)


def test_delta_w_is_difference_of_score_operators():
    rng = np.random.default_rng(6)
    for _ in range(20):
        n = int(rng.integers(1, 10))
        big = float(rng.uniform(-TWO_PI, TWO_PI))
        small = float(rng.uniform(0, math.pi))
        direct = (
            score_operator_w(n, big + small).entries
            - score_operator_w(n, big - small).entries
        )
        np.testing.assert_allclose(delta_w(n, big, small).entries, direct, atol=1e-12)


def test_delta_w_vanishes_at_zero_separation():
    np.testing.assert_allclose(delta_w(3, 1.0, 0.0).entries, 0.0, atol=1e-15)


def test_delta_w_rotation_covariance():
    # Conjugating the midpoint-zero operator with the phase rotation V(Theta)
    # shifts the midpoint; the real-entried reference sits a quarter turn away.
    n, big, small = 3, 1.3, 0.6
    target = delta_w(n, big, small).entries
    v_mid = rotation_v(n, big)
    np.testing.assert_allclose(
        v_mid @ delta_w(n, 0.0, small).entries @ v_mid.conj().T, target, atol=1e-14
    )
    v_ref = rotation_v(n, big + math.pi / 2)
    np.testing.assert_allclose(
        v_ref @ delta_w_reference(n, small).entries @ v_ref.conj().T, target, atol=1e-14
    )


def test_delta_w_eigenvalues_scale_with_sine():
    n = 4
    base = np.sort(np.linalg.eigvalsh(delta_w(n, 0.7, math.pi / 2).entries))
    for small in (0.3, 1.0, 1.4):
        vals = np.sort(np.linalg.eigvalsh(delta_w(n, 0.7, small).entries))
        np.testing.assert_allclose(vals, math.sin(small) * base, atol=1e-13)


def test_rotation_v_values_and_group_property():
    v = rotation_v(2, 0.5)
    np.testing.assert_allclose(np.diag(v), np.exp(1j * 0.5 * np.arange(3)))
    a, b = 0.9, -2.2
    np.testing.assert_allclose(
        rotation_v(2, a) @ rotation_v(2, b), rotation_v(2, a + b), atol=1e-14
    )


def test_classifier_spec_reduces_theta():
    spec = ClassifierSpec(2, -math.pi / 2)
    assert 0.0 <= spec.theta < TWO_PI
    np.testing.assert_allclose(spec.theta, 3 * math.pi / 2)
    with pytest.raises(ValueError):
        ClassifierSpec(0, 0.0)


def test_classifier_pom_single_copy_is_circular_projector():
    # At midpoint zero the first outcome projects onto (|0> + i|1>)/sqrt(2).
    pom = classifier_pom(ClassifierSpec(1, 0.0))
    vec = np.array([1.0, 1j]) / math.sqrt(2.0)
    np.testing.assert_allclose(
        pom.elements[0][1].entries, np.outer(vec, vec.conj()), atol=1e-14
    )


def test_classifier_pom_resolves_identity():
    rng = np.random.default_rng(8)
    for _ in range(10):
        n = int(rng.integers(1, 9))
        pom = classifier_pom(ClassifierSpec(n, float(rng.uniform(0, TWO_PI))))
        assert pom.identity_residual() <= 1e-12
        assert pom.psd_margin() >= -1e-12


def test_lambda_projectors_independent_of_reference_angle():
    for n in (1, 2, 5):
        base, _ = lambda_projectors(n)
        for angle in (0.1, 1.0, 3.0):
            lam1, lam2 = lambda_projectors(n, angle)
            np.testing.assert_allclose(lam1.entries, base.entries, atol=1e-12)
            np.testing.assert_allclose(
                lam1.entries + lam2.entries, np.eye(n + 1), atol=1e-14
            )


def test_lambda_projectors_angle_domain():
    with pytest.raises(ValueError):
        lambda_projectors(2, math.pi)


def test_r_n_small_cases_exact():
    np.testing.assert_allclose(r_n(1), 0.125, atol=1e-12)
    np.testing.assert_allclose(r_n(2), 0.125, atol=1e-12)


def test_r_n_matches_positive_eigenvalue_mass():
    # Independent oracle: half the positive-eigenvalue sum of the reference
    # score difference at separation pi/2.
    for n in range(1, 11):
        dec = eigendecompose(delta_w_reference(n, math.pi / 2))
        vals = dec.eigenvalues
        oracle = float(vals[vals > 0].sum()) / 2.0
        np.testing.assert_allclose(r_n(n), oracle, atol=1e-12)


def test_r_n_positive_and_below_limit():
    values = [r_n(n) for n in range(1, 21)]
    assert all(v > 0 for v in values)
    assert all(v < 1.0 / math.pi for v in values)


def test_expected_score_equal_templates_is_chance():
    rng = np.random.default_rng(9)
    for _ in range(5):
        n = int(rng.integers(1, 8))
        g = float(rng.uniform(0, TWO_PI))
        theta = float(rng.uniform(0, TWO_PI))
        np.testing.assert_allclose(
            classifier_expected_score(n, g, g, theta), 0.5, atol=1e-12
        )


def test_expected_score_single_copy_peak():
    np.testing.assert_allclose(
        classifier_expected_score(1, math.pi / 2, -math.pi / 2, 0.0), 0.75, atol=1e-12
    )


def test_expected_score_periodic_in_theta():
    np.testing.assert_allclose(
        classifier_expected_score(3, 1.0, 2.0, 0.4),
        classifier_expected_score(3, 1.0, 2.0, 0.4 + TWO_PI),
        atol=1e-12,
    )


def test_expected_score_formula_matches_operator_route():
    rng = np.random.default_rng(10)
    for _ in range(200):
        n = int(rng.integers(1, 11))
        g1, g2, theta = rng.uniform(0, TWO_PI, size=3)
        np.testing.assert_allclose(
            classifier_expected_score(n, g1, g2, theta),
            classifier_expected_score_operator(n, g1, g2, theta),
            atol=1e-10,
        )


def test_expected_score_maximized_at_midpoint():
    n = 4
    big, small = 0.8, 0.5
    best = classifier_expected_score(n, big + small, big - small, big)
    for off in (-0.4, -0.1, 0.2, 0.7):
        other = classifier_expected_score(n, big + small, big - small, big + off)
        assert other <= best + 1e-12

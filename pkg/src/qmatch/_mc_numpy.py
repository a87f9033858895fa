"""Vectorized NumPy samplers for the matching protocols.

Fallback used when the compiled kernel is not built.  Both backends consume
an identical block of uniform draws per chunk and return the same reduction
tuple (score_sum, score_sqsum, prob_min, unity_dev_max), so a fixed seed
gives a bit-identical report within a backend and statistically identical
results across backends.
"""

from __future__ import annotations

import numpy as np

TWO_PI = 2.0 * np.pi

BACKEND_NAME = "numpy"


def _phase_rows(coeff: np.ndarray, angles: np.ndarray) -> np.ndarray:
    k = np.arange(coeff.shape[0])
    return coeff * np.exp(1j * np.outer(angles, k))


def universal_chunk(uniforms, feat_coeff, t1_coeff, t2_coeff, pi1):
    """Collective-protocol samples: uniforms columns are (f, g1, g2, outcome)."""
    f = TWO_PI * uniforms[:, 0]
    g1 = TWO_PI * uniforms[:, 1]
    g2 = TWO_PI * uniforms[:, 2]
    feature = _phase_rows(feat_coeff, f)
    t1 = _phase_rows(t1_coeff, g1)
    t2 = _phase_rows(t2_coeff, g2)
    m = uniforms.shape[0]
    psi = np.einsum("ak,am,an->akmn", feature, t1, t2).reshape(m, -1)
    p1 = np.einsum("ad,ad->a", psi.conj(), psi @ pi1.T).real
    chosen = np.where(uniforms[:, 3] < p1, g1, g2)
    scores = 0.5 * (1.0 + np.cos(f - chosen))
    prob_min = float(min(p1.min(), 1.0 - p1.max()))
    return float(scores.sum()), float((scores * scores).sum()), prob_min, 0.0


def semiclassical_chunk(uniforms, t1_coeff, t2_coeff, mu, omega1, feat_coeff):
    """Estimate-then-classify samples: uniforms columns are (f, g1, g2, outcome, class)."""
    f = TWO_PI * uniforms[:, 0]
    g1 = TWO_PI * uniforms[:, 1]
    g2 = TWO_PI * uniforms[:, 2]
    t1 = _phase_rows(t1_coeff, g1)
    t2 = _phase_rows(t2_coeff, g2)
    m = uniforms.shape[0]
    psi = np.einsum("am,an->amn", t1, t2).reshape(m, -1)
    n_outcomes = mu.shape[0]
    probs = np.empty((m, n_outcomes))
    for i in range(n_outcomes):
        probs[:, i] = np.einsum("aq,aq->a", psi.conj(), psi @ mu[i].T).real
    cum = np.cumsum(probs, axis=1)
    unity_dev = float(np.max(np.abs(cum[:, -1] - 1.0)))
    picks = np.sum(cum < uniforms[:, 3][:, None], axis=1)
    np.clip(picks, 0, n_outcomes - 1, out=picks)
    feature = _phase_rows(feat_coeff, f)
    q1 = np.empty(m)
    for i in range(n_outcomes):
        mask = picks == i
        if not np.any(mask):
            continue
        sub = feature[mask]
        q1[mask] = np.einsum("ad,ad->a", sub.conj(), sub @ omega1[i].T).real
    chosen = np.where(uniforms[:, 4] < q1, g1, g2)
    scores = 0.5 * (1.0 + np.cos(f - chosen))
    prob_min = float(min(probs.min(), q1.min(), 1.0 - q1.max()))
    return float(scores.sum()), float((scores * scores).sum()), prob_min, unity_dev

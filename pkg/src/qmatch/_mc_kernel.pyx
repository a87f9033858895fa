# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled samplers for the matching protocols.

Same chunk contract as the NumPy fallback: identical uniform-draw layout in,
identical (score_sum, score_sqsum, prob_min, unity_dev_max) reduction out.
The hot loops run without the GIL so chunk workers can overlap.
"""

import numpy as np

from libc.math cimport cos, sin

DEF TWO_PI = 6.283185307179586476925286766559


cdef inline void _phase_row(const double[::1] coeff, double angle,
                            double complex[::1] out, Py_ssize_t n) noexcept nogil:
    cdef double complex step = cos(angle) + 1j * sin(angle)
    cdef double complex acc = 1.0 + 0.0j
    cdef Py_ssize_t k
    for k in range(n):
        out[k] = coeff[k] * acc
        acc = acc * step


def universal_chunk(const double[:, ::1] uniforms,
                    const double[::1] feat_coeff,
                    const double[::1] t1_coeff,
                    const double[::1] t2_coeff,
                    const double complex[:, ::1] pi1):
    """Collective-protocol samples: uniforms columns are (f, g1, g2, outcome)."""
    cdef Py_ssize_t m = uniforms.shape[0]
    cdef Py_ssize_t nf = feat_coeff.shape[0]
    cdef Py_ssize_t n1 = t1_coeff.shape[0]
    cdef Py_ssize_t n2 = t2_coeff.shape[0]
    cdef Py_ssize_t dim = nf * n1 * n2

    ef_arr = np.empty(nf, dtype=np.complex128)
    e1_arr = np.empty(n1, dtype=np.complex128)
    e2_arr = np.empty(n2, dtype=np.complex128)
    psi_arr = np.empty(dim, dtype=np.complex128)
    cdef double complex[::1] ef = ef_arr
    cdef double complex[::1] e1 = e1_arr
    cdef double complex[::1] e2 = e2_arr
    cdef double complex[::1] psi = psi_arr

    cdef double score_sum = 0.0
    cdef double score_sq = 0.0
    cdef double prob_min = 1.0
    cdef double f, g1, g2, p, score, chosen
    cdef double complex row, c
    cdef Py_ssize_t s, k, a, b, d, e, idx

    with nogil:
        for s in range(m):
            f = TWO_PI * uniforms[s, 0]
            g1 = TWO_PI * uniforms[s, 1]
            g2 = TWO_PI * uniforms[s, 2]
            _phase_row(feat_coeff, f, ef, nf)
            _phase_row(t1_coeff, g1, e1, n1)
            _phase_row(t2_coeff, g2, e2, n2)
            idx = 0
            for k in range(nf):
                for a in range(n1):
                    c = ef[k] * e1[a]
                    for b in range(n2):
                        psi[idx] = c * e2[b]
                        idx += 1
            p = 0.0
            for d in range(dim):
                row = 0.0
                for e in range(dim):
                    row = row + pi1[d, e] * psi[e]
                p += (psi[d].conjugate() * row).real
            if p < prob_min:
                prob_min = p
            if 1.0 - p < prob_min:
                prob_min = 1.0 - p
            chosen = g1 if uniforms[s, 3] < p else g2
            score = 0.5 * (1.0 + cos(f - chosen))
            score_sum += score
            score_sq += score * score

    return score_sum, score_sq, prob_min, 0.0


def semiclassical_chunk(const double[:, ::1] uniforms,
                        const double[::1] t1_coeff,
                        const double[::1] t2_coeff,
                        const double complex[:, :, ::1] mu,
                        const double complex[:, :, ::1] omega1,
                        const double[::1] feat_coeff):
    """Estimate-then-classify samples: uniforms columns are (f, g1, g2, outcome, class)."""
    cdef Py_ssize_t m = uniforms.shape[0]
    cdef Py_ssize_t n1 = t1_coeff.shape[0]
    cdef Py_ssize_t n2 = t2_coeff.shape[0]
    cdef Py_ssize_t qdim = n1 * n2
    cdef Py_ssize_t n_outcomes = mu.shape[0]
    cdef Py_ssize_t nf = feat_coeff.shape[0]

    e1_arr = np.empty(n1, dtype=np.complex128)
    e2_arr = np.empty(n2, dtype=np.complex128)
    psi_arr = np.empty(qdim, dtype=np.complex128)
    ef_arr = np.empty(nf, dtype=np.complex128)
    cdef double complex[::1] e1 = e1_arr
    cdef double complex[::1] e2 = e2_arr
    cdef double complex[::1] psi = psi_arr
    cdef double complex[::1] ef = ef_arr

    cdef double score_sum = 0.0
    cdef double score_sq = 0.0
    cdef double prob_min = 1.0
    cdef double unity_dev = 0.0
    cdef double f, g1, g2, p, cum, draw, q, dev, score, chosen
    cdef double complex row, c
    cdef Py_ssize_t s, a, b, d, e, idx, i, pick

    with nogil:
        for s in range(m):
            f = TWO_PI * uniforms[s, 0]
            g1 = TWO_PI * uniforms[s, 1]
            g2 = TWO_PI * uniforms[s, 2]
            _phase_row(t1_coeff, g1, e1, n1)
            _phase_row(t2_coeff, g2, e2, n2)
            idx = 0
            for a in range(n1):
                c = e1[a]
                for b in range(n2):
                    psi[idx] = c * e2[b]
                    idx += 1
            draw = uniforms[s, 3]
            cum = 0.0
            pick = 0
            for i in range(n_outcomes):
                p = 0.0
                for d in range(qdim):
                    row = 0.0
                    for e in range(qdim):
                        row = row + mu[i, d, e] * psi[e]
                    p += (psi[d].conjugate() * row).real
                if p < prob_min:
                    prob_min = p
                cum += p
                if cum < draw:
                    pick += 1
            if pick > n_outcomes - 1:
                pick = n_outcomes - 1
            dev = cum - 1.0
            if dev < 0.0:
                dev = -dev
            if dev > unity_dev:
                unity_dev = dev
            _phase_row(feat_coeff, f, ef, nf)
            q = 0.0
            for d in range(nf):
                row = 0.0
                for e in range(nf):
                    row = row + omega1[pick, d, e] * ef[e]
                q += (ef[d].conjugate() * row).real
            if q < prob_min:
                prob_min = q
            if 1.0 - q < prob_min:
                prob_min = 1.0 - q
            chosen = g1 if uniforms[s, 4] < q else g2
            score = 0.5 * (1.0 + cos(f - chosen))
            score_sum += score
            score_sq += score * score

    return score_sum, score_sq, prob_min, unity_dev

# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled numerical kernels.

Operation order matches ``_pykernels`` exactly; the extension is built
with ``-ffp-contract=off`` so no fused multiply-adds change rounding.
"""

import numpy as np
cimport numpy as cnp
from libc.math cimport isfinite

cnp.import_array()


def convolve(const double[::1] a, const double[::1] b, Py_ssize_t max_degree):
    cdef Py_ssize_t na = a.shape[0], nb = b.shape[0]
    cdef Py_ssize_t k, s, lo, hi
    cdef double acc
    out = np.zeros(max_degree + 1, dtype=np.float64)
    cdef double[::1] o = out
    for k in range(max_degree + 1):
        lo = k - nb + 1
        if lo < 0:
            lo = 0
        hi = k if k < na - 1 else na - 1
        acc = 0.0
        for s in range(lo, hi + 1):
            acc += a[s] * b[k - s]
        o[k] = acc
    return out


cdef inline double _horner(const double[::1] a, double t) noexcept nogil:
    cdef Py_ssize_t k = a.shape[0] - 1
    cdef double acc = a[k]
    k -= 1
    while k >= 0:
        acc = acc * t + a[k]
        k -= 1
    return acc


def horner(const double[::1] a, double t):
    return _horner(a, t)


cdef inline double _coef(const double[::1] f, Py_ssize_t k) noexcept nogil:
    return f[k] if k < f.shape[0] else 0.0


def dtm_recurrence(double lam, double eps, double d,
                   const double[::1] f1, const double[::1] f2, const double[::1] f3,
                   double s0, double i0, double r0, Py_ssize_t degree):
    S_arr = np.zeros(degree + 1, dtype=np.float64)
    I_arr = np.zeros(degree + 1, dtype=np.float64)
    R_arr = np.zeros(degree + 1, dtype=np.float64)
    cdef double[::1] S = S_arr
    cdef double[::1] I = I_arr
    cdef double[::1] R = R_arr
    cdef Py_ssize_t k, i
    cdef double conv, m
    S[0] = s0
    I[0] = i0
    R[0] = r0
    for k in range(degree):
        conv = 0.0
        for i in range(k + 1):
            conv += S[i] * I[k - i]
        m = k + 1.0
        S[k + 1] = (_coef(f1, k) - lam * conv - d * S[k]) / m
        I[k + 1] = (_coef(f2, k) + lam * conv - eps * I[k] - d * R[k]) / m
        R[k + 1] = (_coef(f3, k) + eps * I[k] - d * R[k]) / m
    return S_arr, I_arr, R_arr


cdef inline void _rhs(double lam, double eps, double d,
                      double f1t, double f2t, double f3t,
                      double s, double i, double r, double* out) noexcept nogil:
    cdef double si = lam * s * i
    out[0] = f1t - si - d * s
    out[1] = f2t + si - eps * i - d * r
    out[2] = f3t + eps * i - d * r


def sir_rhs(double lam, double eps, double d, double f1t, double f2t, double f3t,
            double s, double i, double r):
    cdef double out[3]
    _rhs(lam, eps, d, f1t, f2t, f3t, s, i, r, out)
    return (out[0], out[1], out[2])


def rk4_sir(double lam, double eps, double d,
            const double[::1] f1, const double[::1] f2, const double[::1] f3,
            y0, const double[::1] times):
    """Integrate across ``times``; returns (states, index of first
    non-finite sample or -1)."""
    cdef Py_ssize_t n = times.shape[0], k
    out_arr = np.empty((n, 3), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef double s = y0[0], i = y0[1], r = y0[2]
    cdef double t, h, half, tm, te, w, g1, g2, g3
    cdef double k1[3]
    cdef double k2[3]
    cdef double k3[3]
    cdef double k4[3]
    cdef Py_ssize_t bad = -1
    out[0, 0] = s
    out[0, 1] = i
    out[0, 2] = r
    with nogil:
        for k in range(1, n):
            t = times[k - 1]
            h = times[k] - t
            half = 0.5 * h
            tm = t + half
            te = t + h
            _rhs(lam, eps, d, _horner(f1, t), _horner(f2, t), _horner(f3, t),
                 s, i, r, k1)
            g1 = _horner(f1, tm)
            g2 = _horner(f2, tm)
            g3 = _horner(f3, tm)
            _rhs(lam, eps, d, g1, g2, g3,
                 s + half * k1[0], i + half * k1[1], r + half * k1[2], k2)
            _rhs(lam, eps, d, g1, g2, g3,
                 s + half * k2[0], i + half * k2[1], r + half * k2[2], k3)
            _rhs(lam, eps, d, _horner(f1, te), _horner(f2, te), _horner(f3, te),
                 s + h * k3[0], i + h * k3[1], r + h * k3[2], k4)
            w = h / 6.0
            s = s + w * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0])
            i = i + w * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1])
            r = r + w * (k1[2] + 2.0 * k2[2] + 2.0 * k3[2] + k4[2])
            if not (isfinite(s) and isfinite(i) and isfinite(r)):
                bad = k
                break
            out[k, 0] = s
            out[k, 1] = i
            out[k, 2] = r
    if bad >= 0:
        return out_arr[:bad], bad
    return out_arr, -1


def adomian_sum(list s_terms, list i_terms, Py_ssize_t j, Py_ssize_t max_degree):
    """sum_{i=0..j} convolve(s_terms[i], i_terms[j-i]), accumulated in i order."""
    out = np.zeros(max_degree + 1, dtype=np.float64)
    cdef double[::1] o = out
    cdef const double[::1] a
    cdef const double[::1] b
    cdef Py_ssize_t i, k, s, lo, hi, na, nb
    cdef double acc
    for i in range(j + 1):
        a = s_terms[i]
        b = i_terms[j - i]
        na = a.shape[0]
        nb = b.shape[0]
        for k in range(max_degree + 1):
            lo = k - nb + 1
            if lo < 0:
                lo = 0
            hi = k if k < na - 1 else na - 1
            acc = 0.0
            for s in range(lo, hi + 1):
                acc += a[s] * b[k - s]
            o[k] += acc
    return out

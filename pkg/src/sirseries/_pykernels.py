"""Pure-Python versions of the numerical kernels.

Every function here mirrors one in ``_ckernels.pyx`` operation for
operation, so both backends produce bit-identical binary64 results.
"""

import numpy as np


def convolve(a, b, max_degree):
    a = a.tolist()
    b = b.tolist()
    na, nb = len(a), len(b)
    out = [0.0] * (max_degree + 1)
    for k in range(max_degree + 1):
        acc = 0.0
        for s in range(max(0, k - nb + 1), min(k, na - 1) + 1):
            acc += a[s] * b[k - s]
        out[k] = acc
    return np.array(out, dtype=np.float64)


def _horner(a, t):
    acc = a[-1]
    for k in range(len(a) - 2, -1, -1):
        acc = acc * t + a[k]
    return acc


def horner(a, t):
    return _horner(a.tolist(), t)


def _coef(f, k):
    return f[k] if k < len(f) else 0.0


def dtm_recurrence(lam, eps, d, f1, f2, f3, s0, i0, r0, degree):
    f1, f2, f3 = f1.tolist(), f2.tolist(), f3.tolist()
    S = [0.0] * (degree + 1)
    I = [0.0] * (degree + 1)
    R = [0.0] * (degree + 1)
    S[0], I[0], R[0] = s0, i0, r0
    for k in range(degree):
        conv = 0.0
        for i in range(k + 1):
            conv += S[i] * I[k - i]
        m = k + 1.0
        S[k + 1] = (_coef(f1, k) - lam * conv - d * S[k]) / m
        I[k + 1] = (_coef(f2, k) + lam * conv - eps * I[k] - d * R[k]) / m
        R[k + 1] = (_coef(f3, k) + eps * I[k] - d * R[k]) / m
    return (np.array(S, dtype=np.float64), np.array(I, dtype=np.float64),
            np.array(R, dtype=np.float64))


def sir_rhs(lam, eps, d, f1t, f2t, f3t, s, i, r):
    si = lam * s * i
    return (f1t - si - d * s,
            f2t + si - eps * i - d * r,
            f3t + eps * i - d * r)


def _rk4_step(lam, eps, d, f1, f2, f3, t, h, s, i, r):
    half = 0.5 * h
    tm = t + half
    te = t + h
    k1 = sir_rhs(lam, eps, d, _horner(f1, t), _horner(f2, t), _horner(f3, t), s, i, r)
    g1, g2, g3 = _horner(f1, tm), _horner(f2, tm), _horner(f3, tm)
    k2 = sir_rhs(lam, eps, d, g1, g2, g3,
                 s + half * k1[0], i + half * k1[1], r + half * k1[2])
    k3 = sir_rhs(lam, eps, d, g1, g2, g3,
                 s + half * k2[0], i + half * k2[1], r + half * k2[2])
    k4 = sir_rhs(lam, eps, d, _horner(f1, te), _horner(f2, te), _horner(f3, te),
                 s + h * k3[0], i + h * k3[1], r + h * k3[2])
    w = h / 6.0
    return (s + w * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
            i + w * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
            r + w * (k1[2] + 2.0 * k2[2] + 2.0 * k3[2] + k4[2]))


def rk4_sir(lam, eps, d, f1, f2, f3, y0, times):
    """Integrate across ``times``; returns (states, index of first
    non-finite sample or -1)."""
    n = len(times)
    tl = times.tolist()
    f1, f2, f3 = f1.tolist(), f2.tolist(), f3.tolist()
    out = np.empty((n, 3), dtype=np.float64)
    s, i, r = float(y0[0]), float(y0[1]), float(y0[2])
    out[0] = (s, i, r)
    for k in range(1, n):
        t = tl[k - 1]
        s, i, r = _rk4_step(lam, eps, d, f1, f2, f3, t, tl[k] - t, s, i, r)
        if not (abs(s) < np.inf and abs(i) < np.inf and abs(r) < np.inf):
            return out[:k], k
        out[k] = (s, i, r)
    return out, -1


def adomian_sum(s_terms, i_terms, j, max_degree):
    """sum_{i=0..j} convolve(s_terms[i], i_terms[j-i]), accumulated in i order."""
    out = [0.0] * (max_degree + 1)
    for i in range(j + 1):
        conv = convolve(s_terms[i], i_terms[j - i], max_degree).tolist()
        for k in range(max_degree + 1):
            out[k] += conv[k]
    return np.array(out, dtype=np.float64)

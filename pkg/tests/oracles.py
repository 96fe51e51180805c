"""Independent reference computations used by the tests.

Nothing here imports the package: the polynomials are plain lists of
Fractions or floats.
"""

from fractions import Fraction


def brute_convolve(a, b, max_degree):
    out = [0.0] * (max_degree + 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            if i + j <= max_degree:
                out[i + j] += x * y
    return out


def naive_eval(coeffs, t):
    return sum(c * t ** k for k, c in enumerate(coeffs))


def exact(x):
    return x if isinstance(x, Fraction) else Fraction(x)


def poly_mul(a, b, n):
    out = [Fraction(0)] * (n + 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            if i + j <= n:
                out[i + j] += x * y
    return out


def poly_add(*ps):
    n = max(len(p) for p in ps)
    return [sum((p[k] if k < len(p) else Fraction(0)) for p in ps) for k in range(n)]


def poly_scale(p, c):
    return [c * x for x in p]


def poly_integrate(p):
    return [Fraction(0)] + [x / (k + 1) for k, x in enumerate(p)]


def picard_taylor(lam, eps, d, f, x0, n):
    """Exact Taylor coefficients (degree n) by Picard iteration.

    After m iterations the first m coefficients are exact, so n + 1
    sweeps suffice. ``f`` is a triple of coefficient lists.
    """
    lam, eps, d = exact(lam), exact(eps), exact(d)
    f = [[exact(c) for c in fk] for fk in f]
    s0, i0, r0 = (exact(v) for v in x0)
    S, I, R = [s0], [i0], [r0]
    for _ in range(n + 1):
        si = poly_mul(S, I, n)
        dS = poly_add(f[0], poly_scale(si, -lam), poly_scale(S, -d))
        dI = poly_add(f[1], poly_scale(si, lam), poly_scale(I, -eps), poly_scale(R, -d))
        dR = poly_add(f[2], poly_scale(I, eps), poly_scale(R, -d))
        S = poly_add([s0], poly_integrate(dS))[: n + 1]
        I = poly_add([i0], poly_integrate(dI))[: n + 1]
        R = poly_add([r0], poly_integrate(dR))[: n + 1]
    pad = lambda p: p + [Fraction(0)] * (n + 1 - len(p))
    return pad(S), pad(I), pad(R)


def exact_residuals(S, I, R, lam, eps, d, f):
    """Residual polynomials of given coefficient lists, in exact arithmetic."""
    S, I, R = ([exact(c) for c in p] for p in (S, I, R))
    lam, eps, d = exact(lam), exact(eps), exact(d)
    f = [[exact(c) for c in fk] for fk in f]
    deriv = lambda p: [k * p[k] for k in range(1, len(p))] or [Fraction(0)]
    si = poly_mul(S, I, len(S) + len(I))
    e_s = poly_add(deriv(S), poly_scale(f[0], -1), poly_scale(si, lam), poly_scale(S, d))
    e_i = poly_add(deriv(I), poly_scale(f[1], -1), poly_scale(si, -lam),
                   poly_scale(I, eps), poly_scale(R, d))
    e_r = poly_add(deriv(R), poly_scale(f[2], -1), poly_scale(I, -eps), poly_scale(R, d))
    return e_s, e_i, e_r

"""Golden-section search for unimodal one-dimensional functions."""

import math

INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_section_min(f, a, b, tol=1e-12, maxiter=200):
    """Minimize a unimodal f on [a, b]. Returns (argmin, value)."""
    c = b - INVPHI * (b - a)
    d = a + INVPHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(maxiter):
        if abs(b - a) <= tol * max(1.0, abs(a) + abs(b)):
            break
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INVPHI * (b - a)
            fd = f(d)
    if fc <= fd:
        return c, fc
    return d, fd


def golden_section_max(f, a, b, tol=1e-12, maxiter=200):
    x, v = golden_section_min(lambda t: -f(t), a, b, tol, maxiter)
    return x, -v

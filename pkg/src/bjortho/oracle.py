"""Independent brute-force checks used to validate the derivative-based routines.

Nothing here looks at subdifferentials: BJ-orthogonality is tested straight from the
definition by minimizing the convex function l -> ||x + l y||.
"""

import math

import numpy as np

from .norms import E, eta, norms
from .search import golden_section_min

GRID_HALF_WIDTH = 10.0
GRID_STEP = 1e-3


def line_profile_min(spec, x, y, slope=0.0, half_width=GRID_HALF_WIDTH, step=GRID_STEP):
    """min over l in [-w, w] of ||x + l y|| + slope * |l| * ||y||_2 (grid, then golden)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    ny = float(np.linalg.norm(y))
    lams = np.arange(-half_width, half_width + step / 2, step)
    vals = norms(spec, x[None, :] + lams[:, None] * y[None, :]) + slope * np.abs(lams) * ny
    k = int(np.argmin(vals))
    lo = lams[max(k - 1, 0)]
    hi = lams[min(k + 1, len(lams) - 1)]

    def g(t):
        return float(norms(spec, (x + t * y)[None, :])[0]) + slope * abs(t) * ny

    t, v = golden_section_min(g, lo, hi, tol=1e-14)
    return min(v, float(vals[k]), g(0.0)), t


def oracle_orthogonal(spec, x, y, slope=1e-8, rel=1e-12):
    """x perp y from the definition: is l = 0 a minimizer of ||x + l y|| + slope * |l|?

    x is scaled to unit Euclidean length and y to unit norm, so with slope = 0 this is
    the definition itself and a positive slope grants the same slack as a margin
    tolerance on D-(x;y) <= 0 <= D+(x;y).
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    x = x / np.linalg.norm(x)
    if not np.any(y):
        return True
    y = y / float(norms(spec, y[None, :])[0])
    nx = float(norms(spec, x[None, :])[0])
    m, _ = line_profile_min(spec, x, y, slope=slope / np.linalg.norm(y))
    return m >= nx * (1.0 - rel)


def absolute_radon_norm_bisection(a, b, rel=1e-12, maxiter=200):
    """||(a, b)|| for the absolute Radon plane by bisection on the ray scaling t.

    The point (a, b)/t lies inside the unit ball iff its second coordinate is at most the
    boundary height over its first coordinate; that membership is monotone in t.
    """
    A, B = abs(a), abs(b)
    if A == 0 and B == 0:
        return 0.0

    def inside(t):
        u, v = A / t, B / t
        if u > 1.0:
            return False
        height = 1.0 if u <= 1.0 / E else eta(u)
        return v <= height * (1 + 1e-15)

    lo, hi = 0.0, max(A, B) + A + B
    while not inside(hi):
        hi *= 2.0
    for _ in range(maxiter):
        mid = 0.5 * (lo + hi)
        if mid == 0.0 or not inside(mid):
            lo = mid
        else:
            hi = mid
        if hi - lo <= rel * hi:
            break
    return hi


def complex_line_min(spec, x, y, radii=None, angles=720):
    """min over complex l = r e^{it} of ||x + l y|| on a polar grid (realified vectors)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if radii is None:
        radii = np.concatenate([np.geomspace(1e-6, 10.0, 400)])
    best = float(norms(spec, x[None, :])[0])
    for t in np.linspace(0.0, 2 * math.pi, angles, endpoint=False):
        c, s = math.cos(t), math.sin(t)
        ry = np.empty_like(y)
        ry[0::2] = c * y[0::2] - s * y[1::2]
        ry[1::2] = s * y[0::2] + c * y[1::2]
        vals = norms(spec, x[None, :] + radii[:, None] * ry[None, :])
        best = min(best, float(vals.min()))
    return best

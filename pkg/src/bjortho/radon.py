"""Radon planes: Day's gluing, symmetry checks, the absolute and complex planes, and
orthogonality in l2 direct sums."""

import csv
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .core import (
    complex_radon_criterion,
    derivative_interval,
    incoming_probe,
    is_bj_orthogonal,
    is_smooth,
    outgoing_probe,
    bj_equivalent,
)
from .lattice import face_lattice
from .norms import (
    E,
    AbsoluteRadon,
    ComplexRadon,
    DayRadon,
    DirectSumL2,
    Lp,
    analytic_subdifferential,
    difference_quotient,
    is_polyhedral,
    norm_value,
    norms,
    polyhedral_form,
    spec_label,
    subdifferential,
    unit_sphere_samples,
)
from .polytope import ball_vertices
from .tolerances import DEFAULT


def _plane_check(spec):
    if spec.dim != 2 or isinstance(spec, ComplexRadon):
        raise ValueError("a two-dimensional real space is required")


def _reverse_margin(spec, y, x, tols):
    """Signed distance of 0 from [D-(y;x), D+(y;x)] (0 when inside), x Euclid-normalized."""
    x = np.asarray(x, dtype=float)
    lo, hi = derivative_interval(spec, np.asarray(y, float), x / np.linalg.norm(x), tols)
    if lo <= 0 <= hi:
        return 0.0
    return lo if lo > 0 else hi


def _verdict_tol(spec, tols):
    return tols.ortho if analytic_subdifferential(spec) else tols.fd_margin


# --------------------------------------------------------------- mutual pairs


@dataclass
class MutualPair:
    x: np.ndarray
    y: np.ndarray
    margin_xy: float
    margin_yx: float

    def to_dict(self):
        return {"x": self.x.tolist(), "y": self.y.tolist(),
                "margin_xy": self.margin_xy, "margin_yx": self.margin_yx}


def _unit(spec, v):
    v = np.asarray(v, dtype=float)
    return v / float(norm_value(spec, v))


def _kernel_candidates(spec, x, tols):
    sd = subdifferential(spec, x, tols)
    out = []
    for f in sd.vertices:
        f = np.asarray(f, dtype=float)
        out.append(_unit(spec, np.array([-f[1], f[0]])))
    return out


def _certify(spec, x, y, tols):
    a = is_bj_orthogonal(spec, x, y, tols)
    b = is_bj_orthogonal(spec, y, x, tols)
    tol = _verdict_tol(spec, tols)
    if a.margin <= tol and b.margin <= tol:
        return MutualPair(x, y, float(a.margin), float(b.margin))
    return None


def find_mutual_pair_2d(spec, steps=720, tols=DEFAULT):
    """First mutually orthogonal pair met while scanning directions from theta = 0.

    For each x(theta) a line of x-perp is taken from a supporting functional and the
    reverse relation is tested; a sign change of the reverse margin between grid points
    is located by bisection.
    """
    _plane_check(spec)

    def state(t):
        x = _unit(spec, [math.cos(t), math.sin(t)])
        cands = _kernel_candidates(spec, x, tols)
        return x, cands, [_reverse_margin(spec, y, x, tols) for y in cands]

    ts = np.linspace(0.0, math.pi, steps, endpoint=False)
    prev = None
    for t in ts:
        x, cands, ms = state(t)
        for y, m in zip(cands, ms):
            if m == 0.0:
                pair = _certify(spec, x, y, tols)
                if pair is not None:
                    return pair
        if prev is not None and prev[1] * ms[0] < 0:
            a, b, fa = prev[0], t, prev[1]
            for _ in range(100):
                mid = 0.5 * (a + b)
                _, _, mm = state(mid)
                if mm[0] == 0.0:
                    a = b = mid
                    break
                if mm[0] * fa < 0:
                    b = mid
                else:
                    a, fa = mid, mm[0]
            x, cands, _ = state(0.5 * (a + b))
            pair = _certify(spec, x, cands[0], tols)
            if pair is not None:
                return pair
        prev = (t, ms[0])
    raise RuntimeError("no mutually orthogonal pair found within the scan budget")


# ------------------------------------------------------------ Day's construction


@dataclass
class BoundaryCurve2D:
    """Unit sphere of a plane norm as four quadrant arcs (tagged by their source)."""

    spec: object
    arcs: tuple

    def sample(self, count=2000):
        """(theta, x, y) rows on the unit sphere."""
        th = np.linspace(0.0, 2 * math.pi, count, endpoint=False)
        dirs = np.column_stack([np.cos(th), np.sin(th)])
        pts = dirs / norms(self.spec, dirs)[:, None]
        return np.column_stack([th, pts])

    def to_csv(self, path, count=2000):
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["theta", "x", "y"])
            for row in self.sample(count):
                w.writerow([f"{v:.17g}" for v in row])

    def is_convex(self, count=2000, tol=1e-12):
        pts = self.sample(count)[:, 1:]
        d1 = np.roll(pts, -1, axis=0) - pts
        d2 = np.roll(pts, -2, axis=0) - np.roll(pts, -1, axis=0)
        cross = d1[:, 0] * d2[:, 1] - d1[:, 1] * d2[:, 0]
        return bool(np.all(cross >= -tol))

    def is_symmetric(self, count=2000, tol=1e-12):
        pts = self.sample(count)[:, 1:]
        return bool(np.all(np.abs(norms(self.spec, -pts) - 1.0) <= tol))


def day_construction(seed, pair=None, samples=2000, tols=DEFAULT):
    """Radon plane from a 2D seed norm.

    Steps: a mutually orthogonal pair x, y of the seed; coordinates sending x, y to
    (1,0), (0,1); quadrants I and III copy the seed sphere, quadrants II and IV copy the
    dual sphere turned by 90 degrees, so the supporting functionals of x and y land on
    (0,1) and (-1,0). Dual-sphere values come from maximizing the support function over
    the seed sphere.
    """
    _plane_check(seed)
    if pair is None:
        mp = find_mutual_pair_2d(seed, tols=tols)
        pair = (mp.x, mp.y)
    x = _unit(seed, [float(c) for c in pair[0]])
    y = _unit(seed, [float(c) for c in pair[1]])
    spec = DayRadon(seed, (tuple(x), tuple(y)), samples)
    arcs = (("I", "seed"), ("II", "dual"), ("III", "seed"), ("IV", "dual"))
    return BoundaryCurve2D(spec, arcs)


# ---------------------------------------------------------------- symmetry


def _lattice_directions(limit=4):
    dirs = set()
    for i in range(-limit, limit + 1):
        for j in range(-limit, limit + 1):
            if (i, j) == (0, 0) or math.gcd(i, j) != 1:
                continue
            if i < 0 or (i == 0 and j < 0):
                continue
            dirs.add((i, j))
    return sorted(dirs, key=lambda d: (abs(d[0]) + abs(d[1]), -d[0], -d[1]))


@lru_cache(maxsize=32)
def _sphere_grid(spec, samples):
    th = np.linspace(0.0, 2 * math.pi, samples, endpoint=False)
    dirs = np.column_stack([np.cos(th), np.sin(th)])
    return th, dirs / norms(spec, dirs)[:, None]


def dual_norms_2d(spec, G, samples=4096, levels=7, width=33):
    """max of each row g of G over the unit sphere of a plane norm.

    A cached angular grid of sphere points locates the maximum; each zoom level then
    samples `width` angles around the best one and shrinks the bracket 16-fold. All
    rows are refined together so every level costs one vectorized norm call.
    """
    G = np.atleast_2d(np.asarray(G, dtype=float))
    th, pts = _sphere_grid(spec, samples)
    vals = G @ pts.T
    k = np.argmax(vals, axis=1)
    best = vals[np.arange(len(G)), k]
    step = th[1] - th[0]
    lo, hi = th[k] - step, th[k] + step
    frac = np.linspace(0.0, 1.0, width)
    for _ in range(levels):
        t = lo[:, None] + frac[None, :] * (hi - lo)[:, None]
        d = np.column_stack([np.cos(t).ravel(), np.sin(t).ravel()])
        v = (np.repeat(G, width, axis=0) * d).sum(axis=1) / norms(spec, d)
        v = v.reshape(len(G), width)
        j = np.argmax(v, axis=1)
        best = np.maximum(best, v[np.arange(len(G)), j])
        centre = t[np.arange(len(G)), j]
        w = (hi - lo) / (width - 1)
        lo, hi = centre - w, centre + w
    return best


def dual_norm_2d(spec, g, samples=4096):
    return float(dual_norms_2d(spec, [g], samples)[0])


def reverse_gaps(spec, X, Y, samples=4096):
    """1 - |g(y)| / (||g||* ||y||) with g = (-x2, x1) vanishing on x, row by row.

    y perp x iff some supporting functional of y vanishes on x, i.e. iff g / ||g||* (or
    its negative) supports y, i.e. iff the gap is 0. Unlike a derivative test the gap is
    continuous in y, so it is not fooled by y lying a rounding error away from a corner.
    """
    X = np.atleast_2d(np.asarray(X, dtype=float))
    Y = np.atleast_2d(np.asarray(Y, dtype=float))
    G = np.column_stack([-X[:, 1], X[:, 0]])
    return 1.0 - np.abs((G * Y).sum(axis=1)) / (dual_norms_2d(spec, G, samples) * norms(spec, Y))


def reverse_gap(spec, x, y, samples=4096):
    return float(reverse_gaps(spec, [x], [y], samples)[0])


def _display(v):
    """Direction with positive leading entry, made integral when nearly rational."""
    v = np.asarray(v, dtype=float)
    nz = np.abs(v) > 1e-12
    v = v * np.sign(v[np.argmax(nz)])
    z = v / np.abs(v[nz]).min()
    if np.allclose(z, np.round(z), atol=1e-6):
        return [float(c) for c in np.round(z)]
    return [float(c) for c in v]


def verify_radon_symmetry(spec, pair_count=1000, seed=0, tol=1e-6, tols=DEFAULT):
    """For x and y in x-perp, measure how far y is from perp-x (reverse_gap).

    x runs over primitive lattice directions (small first) and then seeded samples;
    y is the line of x-perp cut out by a random supporting functional of x. Polyhedral
    planes are checked exhaustively and exactly over the finitely many direction types.
    """
    _plane_check(spec)
    if is_polyhedral(spec):
        return _exact_symmetry(spec)
    rng = np.random.default_rng(seed)
    xs = [_unit(spec, d) for d in _lattice_directions()]
    xs += unit_sphere_samples(spec, max(pair_count - len(xs), 0), seed)
    xs = xs[:pair_count]
    pairs = []
    for x in xs:
        y = outgoing_probe(spec, x, rng, tols)
        if is_bj_orthogonal(spec, x, y, tols).orthogonal:
            pairs.append((x, y))
    worst, counter = 0.0, None
    if pairs:
        gaps = reverse_gaps(spec, [p[0] for p in pairs], [p[1] for p in pairs])
        worst = float(gaps.max())
        bad = np.flatnonzero(gaps > tol)
        if len(bad):
            x, y = pairs[bad[0]]
            counter = {"x": _display(x), "y": _display(y), "reverse_gap": float(gaps[bad[0]])}
    return {"model": spec_label(spec), "pairs": len(xs), "max_asymmetry": worst, "tol": tol,
            "symmetric": counter is None, "counterexample": counter, "exact": False}


def _exact_directions(spec):
    """Critical directions (ball vertices, kernels of dual vertices) and sector midpoints."""
    poly = polyhedral_form(spec)
    crit = {}
    for v in ball_vertices(poly.dual_vertices):
        crit[math.atan2(v[1], v[0]) % (2 * math.pi)] = v
    for f in poly.dual_vertices:
        for v in ((-f[1], f[0]), (f[1], -f[0])):
            crit[math.atan2(v[1], v[0]) % (2 * math.pi)] = v
    keys = sorted(crit)
    out = [crit[k] for k in keys]
    for a, b in zip(keys, keys[1:] + keys[:1]):
        u, v = crit[a], crit[b]
        out.append((u[0] / norm_value(spec, u) + v[0] / norm_value(spec, v),
                    u[1] / norm_value(spec, u) + v[1] / norm_value(spec, v)))
    return out


def _exact_symmetry(spec):
    dirs = _exact_directions(spec)
    counter = None
    checked = 0
    for x in dirs:
        for y in dirs:
            if bool(is_bj_orthogonal(spec, x, y)):
                checked += 1
                if not is_bj_orthogonal(spec, y, x) and counter is None:
                    counter = {"x": [str(c) for c in x], "y": [str(c) for c in y]}
    return {"model": spec_label(spec), "pairs": checked, "max_asymmetry": 0 if counter is None else None,
            "symmetric": counter is None, "counterexample": counter, "exact": True}


# ------------------------------------------------- Hilbert-isomorphism conditions


def check_gamma0_hilbert_conditions_real(spec, samples=4096, tols=DEFAULT, symmetry_pairs=200):
    """True iff both endpoints of every one-dimensional face are smooth points.

    Flat pieces are exact for polyhedral norms; otherwise three consecutive boundary
    samples count as flat when collinear (1e-9) and the midpoint of the outer two has
    norm one (1e-11); segment endpoints are refined by bisection on the angle.
    """
    _plane_check(spec)
    sym = verify_radon_symmetry(spec, symmetry_pairs, 0)
    if not sym["symmetric"]:
        raise ValueError(f"{spec_label(spec)} failed the symmetry check; not a Radon plane")
    if is_polyhedral(spec):
        lat = face_lattice(spec)
        segs = []
        for f in lat.faces:
            if f.dim == 1:
                ends = [lat.vertices[j] for j in sorted(f.vertex_ids)]
                segs.append({"endpoints": [[str(c) for c in e] for e in ends],
                             "smooth": [is_smooth(spec, e) for e in ends]})
        ok = all(all(s["smooth"]) for s in segs)
        return {"model": spec_label(spec), "verdict": ok, "segments": segs, "exact": True}
    segs = _numeric_flats(spec, samples, tols)
    ok = all(all(s["smooth"]) for s in segs)
    return {"model": spec_label(spec), "verdict": ok, "segments": segs, "exact": False}


def _point(spec, t):
    d = np.array([math.cos(t), math.sin(t)])
    return d / float(norm_value(spec, d))


def _numeric_flats(spec, samples, tols):
    th = np.linspace(0.0, 2 * math.pi, samples, endpoint=False)
    dirs = np.column_stack([np.cos(th), np.sin(th)])
    P = dirs / norms(spec, dirs)[:, None]
    m = len(P)
    flat = np.zeros(m, dtype=bool)
    for k in range(m):
        a, b, c = P[k], P[(k + 1) % m], P[(k + 2) % m]
        u, v = b - a, c - a
        cross = abs(u[0] * v[1] - u[1] * v[0])
        if cross <= tols.flat_collinear and abs(float(norm_value(spec, 0.5 * (a + c))) - 1.0) <= tols.flat_midpoint:
            flat[k] = True
    if flat.all():
        raise ValueError("the whole boundary looks flat")
    segs = []
    k0 = int(np.argmin(flat))
    k = k0
    visited = 0
    while visited < m:
        idx = (k0 + visited) % m
        if flat[idx] and not flat[(idx - 1) % m]:
            run = idx
            while flat[run % m]:
                run += 1
            first, last = idx, (run - 1) % m
            a, c = P[first], P[(last + 2) % m]
            normal = np.array([c[1] - a[1], a[0] - c[0]])
            normal /= np.linalg.norm(normal)
            level = float(normal @ a)

            def on_line(t):
                return abs(float(normal @ _point(spec, t)) - level) <= 1e-12

            t_in, t_out = th[first], th[first] - (th[1] - th[0])
            t_start = _bisect_edge(on_line, t_in, t_out)
            t_in, t_out = th[(last + 2) % m] + (2 * math.pi if (last + 2) >= m else 0), \
                th[(last + 2) % m] + (th[1] - th[0]) + (2 * math.pi if (last + 2) >= m else 0)
            t_end = _bisect_edge(on_line, t_in, t_out)
            ends = [_point(spec, t_start), _point(spec, t_end)]
            segs.append({"endpoints": [e.tolist() for e in ends],
                         "smooth": [smooth_at_scale(spec, e) for e in ends]})
            visited += run - idx
        else:
            visited += 1
    return segs


def smooth_at_scale(spec, p, step=1e-5, jump=1e-3):
    """Boundary smoothness at a point known only approximately.

    One-sided derivatives along the tangent, taken with a step much larger than the
    location error, differ by about curvature * step at a smooth point and by the kink
    angle at a corner.
    """
    p = np.asarray(p, dtype=float)
    tangent = np.array([-p[1], p[0]])
    lo = difference_quotient(spec, p, tangent, step, "-")
    hi = difference_quotient(spec, p, tangent, step, "+")
    return bool(hi - lo <= jump)


def _bisect_edge(inside, t_in, t_out, iters=60):
    if inside(t_out):
        return t_out
    for _ in range(iters):
        mid = 0.5 * (t_in + t_out)
        if inside(mid):
            t_in = mid
        else:
            t_out = mid
    return t_in


# ------------------------------------------------------------------ complex


def complex_radon_orthogonal(a, b, c, d, tols=DEFAULT):
    """(a, b) perp (c, d) in the complex Radon plane over C^2."""
    return complex_radon_criterion(complex(a), complex(b), complex(c), complex(d), tols)


# ---------------------------------------------------------------- direct sums


def direct_sum_l2(left, right):
    return DirectSumL2(left, right)


def fd_interval(spec, u, v, tols=DEFAULT):
    """(D-(u;v), D+(u;v)) from difference quotients at the fine step."""
    return (difference_quotient(spec, u, v, tols.fd_fine, "-"),
            difference_quotient(spec, u, v, tols.fd_fine, "+"))


def _fd_orth(spec, u, v, tol, tols):
    if not np.any(v):
        return True
    lo, hi = fd_interval(spec, u, np.asarray(v, float) / np.linalg.norm(v), tols)
    return max(lo, -hi) <= tol


def verify_direct_sum_lemma(left, right, samples=1000, seed=0, tol=1e-7, tols=DEFAULT):
    """Check (x,0) perp (z,y) iff x perp z, and (z,y) perp (x,0) iff z perp x.

    The sum norm is probed only through difference quotients of its values, the
    summands through their own supporting functionals. z is drawn generically, from
    x-perp, and from perp-x in turn. Also records max |D((x,0);(z,y)) - D(x;z)|.
    """
    total = direct_sum_l2(left, right)
    rng = np.random.default_rng(seed)
    n1, n2 = left.dim, right.dim
    fails, deriv_gap = [], 0.0
    for k in range(samples):
        x = rng.standard_normal(n1)
        y = rng.standard_normal(n2)
        kind = k % 3
        if kind == 0:
            z = rng.standard_normal(n1)
        elif kind == 1:
            z = outgoing_probe(left, x, rng, tols) * rng.uniform(0.2, 3.0)
        else:
            z = incoming_probe(left, x, rng, tols) * rng.uniform(0.2, 3.0)
        xs = np.concatenate([x, np.zeros(n2)])
        zs = np.concatenate([z, y])
        lhs1 = _fd_orth(total, xs, zs, tol, tols)
        lo, hi = derivative_interval(left, x, z / np.linalg.norm(z), tols)
        rhs1 = max(lo, -hi) <= tol
        lhs2 = _fd_orth(total, zs, xs, tol, tols)
        lo2, hi2 = derivative_interval(left, z, x / np.linalg.norm(x), tols)
        rhs2 = max(lo2, -hi2) <= tol
        flo, fhi = fd_interval(total, xs, np.concatenate([z, y]) / np.linalg.norm(z), tols)
        deriv_gap = max(deriv_gap, abs(flo - lo), abs(fhi - hi))
        if lhs1 != rhs1 or lhs2 != rhs2:
            fails.append({"x": x.tolist(), "z": z.tolist(), "y": y.tolist(), "kind": kind,
                          "outgoing": [lhs1, rhs1], "incoming": [lhs2, rhs2]})
    return {"model": spec_label(total), "samples": samples, "failures": len(fails),
            "examples": fails[:5], "max_derivative_gap": deriv_gap, "passed": not fails}


def nonsmooth_counterexample_check(n=1, members=20, seed=0, tols=DEFAULT):
    """A nonsmooth point of AbsoluteRadon (+)2 R^n meeting the graph smoothness test.

    x~ = ((1,0), 0) is nonsmooth; x~-perp and the (0, e_j)-perps meet in R I (+) {0},
    I = {(s,1): |s| <= 1/e}, whose members are BJ-equivalent; and z~-perp for z in I
    cuts that set down to {0}.
    """
    plane = AbsoluteRadon()
    Z = DirectSumL2(plane, Lp(2, n))
    rng = np.random.default_rng(seed)
    xt = np.array([1.0, 0.0] + [0.0] * n)
    basis = [np.concatenate([[0.0, 0.0], np.eye(n)[j]]) for j in range(n)]
    report = {"model": spec_label(Z)}

    report["x_nonsmooth"] = not is_smooth(Z, xt, tols)

    def in_all(w):
        return bool(is_bj_orthogonal(Z, xt, w, tols)) and all(bool(is_bj_orthogonal(Z, b, w, tols)) for b in basis)

    inside = [np.array([s, 1.0] + [0.0] * n) * rng.uniform(0.5, 2.0)
              for s in rng.uniform(-1 / E, 1 / E, members)]
    outside = [np.array([s, 1.0] + [0.0] * n) for s in rng.choice([-1, 1], members) * rng.uniform(1 / E + 1e-3, 3, members)]
    lifted = [np.concatenate([[s, 1.0], rng.standard_normal(n)]) for s in rng.uniform(-1 / E, 1 / E, members)]
    report["intersection_is_FI"] = (all(in_all(w) for w in inside)
                                    and not any(in_all(w) for w in outside)
                                    and not any(in_all(w) for w in lifted))
    pairs = [(inside[i], inside[i + 1]) for i in range(0, min(len(inside) - 1, 6), 2)]
    report["FI_is_BJ_set"] = all(bj_equivalent(Z, a, b, probes=200, seed=seed + i)
                                 for i, (a, b) in enumerate(pairs))
    z_members = [np.array([s, 1.0] + [0.0] * n) for s in rng.uniform(-1 / E, 1 / E, 5)]
    final_zero = True
    for z in z_members:
        if any(bool(is_bj_orthogonal(Z, z, w, tols)) for w in inside):
            final_zero = False
    report["final_intersection_trivial"] = final_zero
    report["passed"] = all(report[k] for k in ("x_nonsmooth", "intersection_is_FI", "FI_is_BJ_set",
                                                "final_intersection_trivial"))
    return report

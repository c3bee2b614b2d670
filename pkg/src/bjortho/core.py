"""Birkhoff-James orthogonality: directional derivatives, verdicts, neighborhoods and
BJ-equivalence. Exact on polyhedral norms, numeric otherwise."""

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .exact import fvec
from .lattice import active_indices, arrangement, face_lattice, relative_interior_points
from .norms import (
    ComplexRadon,
    analytic_subdifferential,
    difference_quotient,
    is_polyhedral,
    norm_value,
    subdifferential,
    unit_sphere_samples,
)
from .tolerances import DEFAULT


def _is_zero(x):
    return all(c == 0 for c in x)


def _fmt(x):
    return [str(c) if isinstance(c, Fraction) else float(c) for c in x]


# ------------------------------------------------------- directional derivative


def directional_derivative(spec, u, v, side, tols=DEFAULT, method="auto", warn=True):
    """One-sided derivative D+(u; v) (side "+") or D-(u; v) (side "-") of the norm.

    Polyhedral norms: exact max / min of f(v) over the subdifferential.
    method="fd": difference quotients at the coarse and fine steps; the fine value is
    returned and a disagreement above tols.fd_flag raises a RuntimeWarning (warn=False
    silences it for internal callers near kinks, where it is expected).
    """
    if side not in ("+", "-"):
        raise ValueError("side must be '+' or '-'")
    if _is_zero(u):
        raise ValueError("directional derivative needs u != 0")
    if method == "auto":
        method = "fd" if not analytic_subdifferential(spec) else "analytic"
    if method == "analytic" or (is_polyhedral(spec) and method != "fd"):
        lo, hi = subdifferential(spec, u, tols).support(v)
        return hi if side == "+" else lo
    coarse = difference_quotient(spec, u, v, tols.fd_coarse, side)
    fine = difference_quotient(spec, u, v, tols.fd_fine, side)
    if warn and abs(coarse - fine) > tols.fd_flag:
        warnings.warn(
            f"difference quotients disagree: {coarse} (t={tols.fd_coarse}) vs {fine} (t={tols.fd_fine})",
            RuntimeWarning,
            stacklevel=2,
        )
    return fine


def derivative_interval(spec, x, y, tols=DEFAULT, method="auto"):
    """(D-(x; y), D+(x; y))."""
    if method == "auto" and analytic_subdifferential(spec):
        return subdifferential(spec, x, tols).support(y)
    return (
        directional_derivative(spec, x, y, "-", tols, method, warn=False),
        directional_derivative(spec, x, y, "+", tols, method, warn=False),
    )


# ----------------------------------------------------------------- verdicts


@dataclass
class OrthoVerdict:
    orthogonal: bool
    margin: object = None
    witness: object = None
    exact: bool = False
    sampled: bool = False
    interval: tuple = field(default=None, repr=False)

    def __bool__(self):
        return self.orthogonal

    def to_dict(self):
        d = {"orthogonal": bool(self.orthogonal)}
        if self.margin is not None:
            d["margin"] = str(self.margin) if isinstance(self.margin, Fraction) else float(self.margin)
        if self.witness is not None:
            d["witness"] = _fmt(self.witness)
        d["exact"] = self.exact
        if self.sampled:
            d["sampled"] = True
        return d


def is_bj_orthogonal(spec, x, y, tols=DEFAULT, method="auto"):
    """x BJ-orthogonal to y: ||x + l y|| >= ||x|| for every scalar l.

    Real models use D-(x;y) <= 0 <= D+(x;y). ComplexRadon uses its explicit criterion
    (method "grid" runs the generic unimodular-grid reduction instead).
    """
    if _is_zero(x):
        raise ValueError("x = 0 is excluded; the loop vertex lives in the orthodigraph")
    if isinstance(spec, ComplexRadon) and method in ("auto", "explicit"):
        a, b = complex(x[0], x[1]), complex(x[2], x[3])
        c, d = complex(y[0], y[1]), complex(y[2], y[3])
        ok = complex_radon_criterion(a, b, c, d, tols)
        return OrthoVerdict(ok)
    if isinstance(spec, ComplexRadon) and method == "grid":
        return complex_orthogonal_grid(spec, x, y, tols)
    if is_polyhedral(spec) and method != "fd":
        sd = subdifferential(spec, x)
        lo, hi = sd.support(y)
        ok = lo <= 0 <= hi
        return OrthoVerdict(ok, margin=max(lo, -hi), witness=sd.pick(y) if ok else None,
                            exact=True, interval=(lo, hi))
    yv = np.asarray(y, dtype=float)
    ny = float(norm_value(spec, yv)) if np.any(yv) else 0.0
    if ny == 0.0:
        sd = subdifferential(spec, x, tols)
        return OrthoVerdict(True, margin=0.0, witness=np.asarray(sd.vertices[0], dtype=float))
    use_fd = method == "fd" or not analytic_subdifferential(spec)
    lo, hi = derivative_interval(spec, x, yv / ny, tols, "fd" if use_fd else "auto")
    margin = max(lo, -hi)
    tol = tols.fd_margin if use_fd else tols.ortho
    ok = margin <= tol
    witness = None
    if ok and not use_fd:
        w = subdifferential(spec, x, tols).pick(yv / ny)
        if w is None:
            w = subdifferential(spec, x, tols).vertices[0]
        witness = np.asarray(w, dtype=float)
    return OrthoVerdict(ok, margin=margin, witness=witness, interval=(lo, hi))


# ------------------------------------------------------------------ complex


def _arg_match(u, v, tol, scale=1.0):
    # Arg(0) matches anything; products below tol * scale count as 0
    if abs(u) <= tol * scale or abs(v) <= tol * scale:
        return True
    d = abs(math.remainder(math.atan2(u.imag, u.real) - math.atan2(v.imag, v.real), 2 * math.pi))
    return d <= tol


def complex_radon_criterion(a, b, c, d, tols=DEFAULT):
    """(a, b) BJ-orthogonal to (c, d) in the complex Radon plane over C^2."""
    from .norms import AbsoluteRadon

    if a == 0 and b == 0:
        raise ValueError("(a, b) must be nonzero")
    real = is_bj_orthogonal(AbsoluteRadon(), (abs(a), -abs(b)), (abs(c), abs(d)), tols)
    scale = math.hypot(abs(a), abs(b)) * math.hypot(abs(c), abs(d))
    return bool(real.orthogonal) and _arg_match(-d * a, c * b, tols.arg, scale)


def _rotate(y, theta):
    """Multiply each complex coordinate of a realified vector by exp(i theta)."""
    y = np.asarray(y, dtype=float)
    c, s = math.cos(theta), math.sin(theta)
    out = np.empty_like(y)
    out[0::2] = c * y[0::2] - s * y[1::2]
    out[1::2] = s * y[0::2] + c * y[1::2]
    return out


def complex_orthogonal_grid(spec, x, y, tols=DEFAULT, grid=720):
    """Generic complex test: x real-orthogonal to exp(i t) y for t on a grid, refined.

    The verdict carries sampled=True since the quantifier over t is approximated.
    """
    from .search import golden_section_max

    sd = subdifferential(spec, x, tols)
    yv = np.asarray(y, dtype=float)
    ny = float(norm_value(spec, yv))
    if ny == 0.0:
        return OrthoVerdict(True, margin=0.0, sampled=True)
    yv = yv / ny

    def margin(t):
        lo, hi = sd.support(_rotate(yv, t))
        return max(lo, -hi)

    thetas = np.linspace(0.0, 2 * np.pi, grid, endpoint=False)
    vals = np.array([margin(t) for t in thetas])
    worst = float(vals.max())
    step = thetas[1] - thetas[0]
    for k in np.argsort(vals)[-3:]:
        if vals[k] > -1e-3:
            _, v = golden_section_max(margin, thetas[k] - step, thetas[k] + step, tol=1e-12)
            worst = max(worst, v)
    return OrthoVerdict(worst <= tols.ortho, margin=worst, sampled=True)


# -------------------------------------------------------------- smoothness


def is_smooth(spec, x, tols=DEFAULT):
    if _is_zero(x):
        raise ValueError("smoothness is defined for x != 0")
    return subdifferential(spec, x, tols).is_singleton


# -------------------------------------------------------------- descriptors


@dataclass(frozen=True)
class NeighborhoodDescriptor:
    """Comparable encoding of x-perp (side "outgoing") or perp-x (side "incoming").

    exact outgoing: canonical projective active set plus the arrangement faces forming
    x-perp (equality compares the faces, i.e. the sets themselves);
    exact incoming: sorted face-class ids z of the face lattice with z perp x;
    numeric: unit normal(s) of the supporting functionals, compared by angle.
    """

    side: str
    mode: str
    key: tuple
    cells: frozenset = None
    tol: float = 1e-8

    def __eq__(self, other):
        if not isinstance(other, NeighborhoodDescriptor):
            return NotImplemented
        if (self.side, self.mode) != (other.side, other.mode):
            return False
        if self.mode == "exact":
            if self.side == "outgoing":
                return self.cells == other.cells
            return self.key == other.key
        return _numeric_same(self.key, other.key, max(self.tol, other.tol))

    def __hash__(self):
        if self.mode == "exact":
            return hash((self.side, self.cells if self.side == "outgoing" else self.key))
        return hash((self.side, self.mode, len(self.key)))

    def fingerprint(self):
        if self.mode == "exact":
            return repr((self.side, self.key))
        return repr((self.side, [tuple(round(float(c), 6) for c in k) for k in self.key]))


def _projective_normal(f):
    f = np.asarray(f, dtype=float)
    f = f / np.linalg.norm(f)
    k = int(np.argmax(np.abs(f) > 1e-12))
    return f if f[k] > 0 else -f


def _numeric_same(a, b, tol):
    if len(a) != len(b):
        return False
    for u, v in zip(a, b):
        cosang = min(1.0, abs(float(np.dot(u, v))))
        if math.acos(cosang) > tol and np.linalg.norm(np.asarray(u) - np.asarray(v)) > tol:
            return False
    return True


def canonical_active(spec, x):
    """Active dual-vertex indices at x, sign-normalized so x and -x agree."""
    poly_active = active_indices(spec, x)
    from .norms import polyhedral_form

    fs = polyhedral_form(spec).dual_vertices
    this = tuple(sorted(fs[k] for k in poly_active))
    other = tuple(sorted(tuple(-c for c in fs[k]) for k in poly_active))
    return max(this, other)


def neighborhood_descriptor(spec, x, side="outgoing", tols=DEFAULT):
    if _is_zero(x):
        raise ValueError("descriptors are defined for x != 0")
    if side not in ("outgoing", "incoming"):
        raise ValueError("side must be 'outgoing' or 'incoming'")
    if is_polyhedral(spec):
        arr = arrangement(spec)
        if side == "outgoing":
            act = active_indices(spec, x)
            return NeighborhoodDescriptor("outgoing", "exact", canonical_active(spec, x),
                                          cells=arr.perp_cells(act))
        lat = face_lattice(spec)
        sign = arr.sign_vector(fvec(x))
        ids = tuple(a for a, b in lat.classes()
                    if arr.condition(lat.faces[a].active_set, sign))
        return NeighborhoodDescriptor("incoming", "exact", ids)
    if side == "incoming":
        raise NotImplementedError("incoming descriptors exist only in exact (polyhedral) mode")
    sd = subdifferential(spec, x, tols)
    if sd.is_singleton:
        key = (_projective_normal(sd.vertices[0]),)
    else:
        key = tuple(np.asarray(f, dtype=float) for f in sd.vertices)
        key += tuple(np.asarray(fr, dtype=float).ravel() * rho for fr, rho in sd.disks)
    return NeighborhoodDescriptor("outgoing", "numeric", key, tol=tols.descriptor_angle)


# --------------------------------------------------------------- probes


def kernel_direction(f, rng=None):
    """A unit vector in Ker f (random when the kernel has dimension >= 2)."""
    f = np.asarray(f, dtype=float)
    _, _, vt = np.linalg.svd(f.reshape(1, -1))
    basis = vt[1:]
    if rng is None or len(basis) == 1:
        v = basis[0]
    else:
        v = basis.T @ rng.standard_normal(len(basis))
    return v / np.linalg.norm(v)


def outgoing_probe(spec, x, rng, tols=DEFAULT):
    """A vector y with x perp y, built from a random supporting functional of x."""
    sd = subdifferential(spec, x, tols)
    verts = [np.asarray(f, dtype=float) for f in sd.vertices]
    w = rng.dirichlet(np.ones(len(verts))) if len(verts) > 1 else np.ones(1)
    f = sum(wi * v for wi, v in zip(w, verts))
    for frame, rho in sd.disks:
        u = rng.standard_normal(frame.shape[0])
        f = f + rho * rng.uniform() * (frame.T @ (u / np.linalg.norm(u)))
    return kernel_direction(f, rng)


def incoming_probe(spec, x, rng, tols=DEFAULT, steps=360):
    """A unit vector z with z perp x, found on a random plane by a sign change of the
    reverse margin (theta -> theta + pi flips its sign, so one always exists)."""
    x = np.asarray(x, dtype=float)
    n = len(x)
    if n == 2:
        u, w = np.array([1.0, 0.0]), np.array([0.0, 1.0])
    else:
        q, _ = np.linalg.qr(rng.standard_normal((n, 2)))
        u, w = q[:, 0], q[:, 1]

    def signed(t):
        z = math.cos(t) * u + math.sin(t) * w
        lo, hi = derivative_interval(spec, z, x, tols)
        if lo <= 0 <= hi:
            return 0.0
        return lo if lo > 0 else hi

    ts = np.linspace(0.0, np.pi, steps + 1)
    vals = [signed(t) for t in ts]
    for k in range(steps):
        if vals[k] == 0.0:
            t = ts[k]
            break
        if vals[k] * vals[k + 1] < 0:
            a, b, fa = ts[k], ts[k + 1], vals[k]
            for _ in range(80):
                mid = 0.5 * (a + b)
                fm = signed(mid)
                if fm == 0.0:
                    a = b = mid
                    break
                if fm * fa < 0:
                    b = mid
                else:
                    a, fa = mid, fm
            t = 0.5 * (a + b)
            break
    else:
        t = ts[-1]
    z = math.cos(t) * u + math.sin(t) * w
    return z / float(norm_value(spec, z))


# ---------------------------------------------------------- BJ-equivalence


def _exact_equivalent(spec, x, y):
    return (neighborhood_descriptor(spec, x, "outgoing") == neighborhood_descriptor(spec, y, "outgoing")
            and neighborhood_descriptor(spec, x, "incoming") == neighborhood_descriptor(spec, y, "incoming"))


def bj_equivalent(spec, x, y, probes=1000, seed=0, tols=DEFAULT):
    """x ~ y iff x-perp = y-perp and perp-x = perp-y.

    Exact for polyhedral norms; otherwise a sampled verdict from seeded probes tested in
    both directions (random directions plus vectors built to lie in x-perp, y-perp,
    perp-x and perp-y).
    """
    if is_polyhedral(spec):
        return _exact_equivalent(spec, fvec(x), fvec(y))
    return _sampled_equivalent(spec, np.asarray(x, float), np.asarray(y, float), probes, seed, tols) is None


def _sampled_equivalent(spec, x, y, probes, seed, tols):
    """None when no probe separates x and y, else the separating probe."""
    rng = np.random.default_rng(seed)
    n = len(x)
    cands = []
    k = max(1, probes // 5)
    for _ in range(k):
        cands.append(rng.standard_normal(n))
        cands.append(outgoing_probe(spec, x, rng, tols))
        cands.append(outgoing_probe(spec, y, rng, tols))
    for _ in range(max(1, probes // 10)):
        cands.append(incoming_probe(spec, x, rng, tols))
        cands.append(incoming_probe(spec, y, rng, tols))
    cands = cands[:probes] if len(cands) > probes else cands
    for z in cands:
        if not np.any(z):
            continue
        if bool(is_bj_orthogonal(spec, x, z, tols)) != bool(is_bj_orthogonal(spec, y, z, tols)):
            return z
        if bool(is_bj_orthogonal(spec, z, x, tols)) != bool(is_bj_orthogonal(spec, z, y, tols)):
            return z
    return None


def _independent(x, y, tol=1e-7):
    x = np.asarray([float(c) for c in x])
    y = np.asarray([float(c) for c in y])
    cosang = abs(x @ y) / (np.linalg.norm(x) * np.linalg.norm(y))
    return math.acos(min(1.0, cosang)) > tol


def is_bj_norm_sampled(spec, sample_count=1000, seed=0, tols=DEFAULT, probes=200):
    """Search for BJ-equivalent, linearly independent pairs.

    Every sample gets a companion pushed along its own orthogonal direction (so flat
    pieces of the sphere are actually probed). Pairs with equal outgoing descriptors are
    then tested on incoming neighborhoods. Polyhedral norms are decided exactly and the
    face classes of the lattice are also enumerated.
    """
    if sample_count < 2:
        raise ValueError("sample_count must be at least 2")
    rng = np.random.default_rng(seed)
    samples = unit_sphere_samples(spec, sample_count, seed)
    points = []
    for s in samples:
        points.append(s)
        step = 0.05 * rng.uniform(0.2, 1.0)
        c = s + step * outgoing_probe(spec, s, rng, tols)
        points.append(c / float(norm_value(spec, c)))
    report = {"model": getattr(spec, "label", str(spec)), "samples": sample_count, "seed": seed}
    if is_polyhedral(spec):
        exact_pts = [fvec(p) for p in points]
        lat = face_lattice(spec)
        for face in lat.faces:
            exact_pts.extend(relative_interior_points(lat, face, 4, rng))
        groups = {}
        for p in exact_pts:
            key = (neighborhood_descriptor(spec, p, "outgoing"), neighborhood_descriptor(spec, p, "incoming"))
            groups.setdefault(key, []).append(p)
        for members in groups.values():
            first = members[0]
            for other in members[1:]:
                if _independent(first, other):
                    report.update(violation=True, pair=[_fmt(first), _fmt(other)], exact=True)
                    return report
        report.update(violation=False, exact=True)
        return report
    buckets = _group_by_outgoing(spec, points, tols)
    checked = 0
    for members in buckets:
        for i in range(len(members)):
            for j in range(i + 1, len(members)):
                p, q = points[members[i]], points[members[j]]
                if not _independent(p, q):
                    continue
                checked += 1
                sep = _sampled_equivalent(spec, p, q, probes, seed + checked, tols)
                if sep is None:
                    report.update(violation=True, pair=[_fmt(p), _fmt(q)], sampled=True)
                    return report
    report.update(violation=False, candidate_pairs=checked, sampled=True)
    return report


def descriptor_labels(spec, points, tols=DEFAULT):
    """Component label per point; equal labels mean equal outgoing descriptors.

    Smooth points are merged when their projective normals agree within
    tols.descriptor_angle (KD-tree over the normals and their negatives); nonsmooth points
    are compared pairwise.
    """
    from scipy.spatial import cKDTree

    descs = [neighborhood_descriptor(spec, p, "outgoing", tols) for p in points]
    smooth = [i for i, d in enumerate(descs) if len(d.key) == 1]
    parent = list(range(len(points)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    if smooth:
        normals = np.array([descs[i].key[0] for i in smooth])
        tree = cKDTree(np.vstack([normals, -normals]))
        m = len(smooth)
        for a, b in tree.query_pairs(r=tols.descriptor_angle):
            ia, ib = smooth[a % m], smooth[b % m]
            if ia != ib:
                parent[find(ia)] = find(ib)
    rest = [i for i, d in enumerate(descs) if len(d.key) != 1]
    for i in rest:
        for j in rest:
            if i < j and descs[i] == descs[j]:
                parent[find(i)] = find(j)
    return [find(i) for i in range(len(points))]


def _group_by_outgoing(spec, points, tols):
    """Indices grouped by (numerically) equal outgoing descriptors."""
    groups = {}
    for i, lab in enumerate(descriptor_labels(spec, points, tols)):
        groups.setdefault(lab, []).append(i)
    return [g for g in groups.values() if len(g) > 1]

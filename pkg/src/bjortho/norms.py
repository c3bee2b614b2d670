"""Concrete finite-dimensional norms, their subdifferentials and JSON specs."""

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from pathlib import Path

import numpy as np

from .exact import dot, fvec, is_exact_vector, to_fraction
from .polytope import ball_vertices, validate_dual_vertices
from .search import golden_section_max
from .tolerances import DEFAULT

E = math.e
XI0 = 1.0 / math.e


class NormSpecError(ValueError):
    pass


# ---------------------------------------------------------------- spec types


@dataclass(frozen=True)
class Lp:
    p: float
    dim: int

    def __post_init__(self):
        if not (self.p >= 1):
            raise NormSpecError(f"Lp requires p >= 1, got {self.p}")
        if self.dim < 1:
            raise NormSpecError("dimension must be positive")

    @property
    def label(self):
        p = "inf" if math.isinf(self.p) else f"{self.p:g}"
        return f"Lp{{{p},{self.dim}}}"


@dataclass(frozen=True)
class Polyhedral:
    dual_vertices: tuple
    name: str = "polyhedral"

    def __post_init__(self):
        dv = tuple(fvec(f) for f in self.dual_vertices)
        object.__setattr__(self, "dual_vertices", dv)
        validate_dual_vertices(dv)

    @property
    def dim(self):
        return len(self.dual_vertices[0])

    @property
    def label(self):
        return self.name


@dataclass(frozen=True)
class AbsoluteRadon:
    dim: int = 2
    label: str = "AbsoluteRadon"


@dataclass(frozen=True)
class BJExampleR3:
    dim: int = 3
    label: str = "BJExampleR3"


@dataclass(frozen=True)
class ComplexRadon:
    """C^2 stored as (Re a, Im a, Re b, Im b)."""

    dim: int = 4
    complex_dim: int = 2
    label: str = "ComplexRadon"


@dataclass(frozen=True)
class DirectSumL2:
    left: object
    right: object

    @property
    def dim(self):
        return self.left.dim + self.right.dim

    @property
    def label(self):
        return f"({self.left.label} (+)2 {self.right.label})"


@dataclass(frozen=True)
class DayRadon:
    """Radon plane glued from a 2D seed and its dual along a mutually orthogonal pair.

    In the coordinates where the pair sits at (1,0), (0,1), quadrants I and III carry
    the seed sphere and quadrants II and IV carry the dual sphere rotated by +90 degrees.
    """

    seed: object
    pair: tuple
    samples: int = 2000
    _m: np.ndarray = field(default=None, compare=False, hash=False, repr=False)
    _minv_t: np.ndarray = field(default=None, compare=False, hash=False, repr=False)
    _polyline: tuple = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if self.seed.dim != 2 or isinstance(self.seed, ComplexRadon):
            raise NormSpecError("Day construction needs a two-dimensional real seed")
        x, y = (tuple(float(c) for c in v) for v in self.pair)
        object.__setattr__(self, "pair", (x, y))
        m = np.array([[x[0], y[0]], [x[1], y[1]]], dtype=float)
        if abs(np.linalg.det(m)) < 1e-12:
            raise NormSpecError("Day pair must be linearly independent")
        object.__setattr__(self, "_m", m)
        object.__setattr__(self, "_minv_t", np.linalg.inv(m).T)
        if is_polyhedral(self.seed):
            verts = np.array(ball_vertices(polyhedral_form(self.seed).dual_vertices), dtype=float)
            object.__setattr__(self, "_polyline", ("vertices", verts))
        else:
            th = np.linspace(0.0, 2 * np.pi, self.samples, endpoint=False)
            dirs = np.column_stack([np.cos(th), np.sin(th)])
            pts = dirs / norms(self.seed, dirs)[:, None]
            object.__setattr__(self, "_polyline", ("curve", th, pts))

    @property
    def dim(self):
        return 2

    @property
    def label(self):
        return f"DayRadon[{self.seed.label}]"

    def seed_support(self, c):
        """max of c.w over the seed unit ball."""
        c = np.asarray(c, dtype=float)
        if self._polyline[0] == "vertices":
            return float(np.max(self._polyline[1] @ c))
        _, th, pts = self._polyline
        vals = pts @ c
        k = int(np.argmax(vals))
        step = th[1] - th[0]

        def h(t):
            d = np.array([math.cos(t), math.sin(t)])
            return float(c @ d) / _norm_float(self.seed, d)

        _, v = golden_section_max(h, th[k] - step, th[k] + step, tol=1e-15)
        return max(float(vals[k]), v)

    def seed_supports(self, C, iters=64):
        """seed_support for every row of C; batched golden refinement on curve seeds."""
        C = np.atleast_2d(np.asarray(C, dtype=float))
        if self._polyline[0] == "vertices":
            return np.max(C @ self._polyline[1].T, axis=1) if len(C) else np.empty(0)
        _, th, pts = self._polyline
        vals = C @ pts.T
        k = np.argmax(vals, axis=1)
        best = vals[np.arange(len(C)), k]
        step = th[1] - th[0]
        lo, hi = th[k] - step, th[k] + step

        def h(t):
            d = np.column_stack([np.cos(t), np.sin(t)])
            return np.einsum("ij,ij->i", C, d) / norms(self.seed, d)

        r = (math.sqrt(5) - 1) / 2
        a, b = lo + (1 - r) * (hi - lo), lo + r * (hi - lo)
        fa, fb = h(a), h(b)
        for _ in range(iters):
            left = fa >= fb
            hi = np.where(left, b, hi)
            lo = np.where(left, lo, a)
            a_new = np.where(left, lo + (1 - r) * (hi - lo), b)
            b_new = np.where(left, a, lo + r * (hi - lo))
            a, b = a_new, b_new
            fa, fb = h(a), h(b)
        return np.maximum(best, np.maximum(fa, fb))

    def value(self, v):
        v = np.asarray(v, dtype=float)
        if v[0] * v[1] >= 0:
            return _norm_float(self.seed, self._m @ v)
        g = np.array([v[1], -v[0]])
        return self.seed_support(self._minv_t @ g)


def hexagonal():
    """Polyhedral norm max(|x|, |y|, |x - y|); unit ball is a hexagon."""
    dv = [(1, 0), (-1, 0), (0, 1), (0, -1), (1, -1), (-1, 1)]
    return Polyhedral(tuple(fvec(f) for f in dv), name="Hexagonal")


def linf(n):
    return Lp(math.inf, n)


def l1(n):
    return Lp(1.0, n)


def is_polyhedral(spec):
    return isinstance(spec, Polyhedral) or (
        isinstance(spec, Lp) and (spec.p == 1 or math.isinf(spec.p))
    )


@lru_cache(maxsize=None)
def polyhedral_form(spec):
    """Polyhedral spec with the same norm (for Lp with p in {1, inf} or Polyhedral)."""
    if isinstance(spec, Polyhedral):
        return spec
    if isinstance(spec, Lp) and math.isinf(spec.p):
        n = spec.dim
        dv = []
        for i in range(n):
            for s in (1, -1):
                dv.append(tuple(Fraction(s if j == i else 0) for j in range(n)))
        return Polyhedral(tuple(dv), name=f"linf{n}")
    if isinstance(spec, Lp) and spec.p == 1:
        n = spec.dim
        dv = [tuple(Fraction(s) for s in signs) for signs in product((1, -1), repeat=n)]
        return Polyhedral(tuple(dv), name=f"l1_{n}")
    raise NormSpecError(f"{spec_label(spec)} is not polyhedral")


def spec_label(spec):
    return getattr(spec, "label", type(spec).__name__)


# ------------------------------------------------------------ AbsoluteRadon


def eta(xi):
    """Boundary curve of the absolute Radon plane on 1/e <= xi <= 1."""
    return -E * xi * np.log(xi)


def eta_prime(xi):
    return -E * (np.log(xi) + 1.0)


def eta_second(xi):
    return -E / xi


def _absolute_radon_float(a, b):
    A, B = abs(a), abs(b)
    if B >= E * A:
        return B
    return A * math.exp(B / (E * A))


def _absolute_radon_grad(A, B):
    """Gradient of the absolute Radon norm at (A, B) with A, B >= 0, not both 0."""
    if B >= E * A:
        return 0.0, 1.0
    r = B / (E * A)
    w = math.exp(r)
    return w * (1.0 - r), w / E


# ----------------------------------------------------------------- norm value


def _check_dim(spec, x):
    if len(x) != spec.dim:
        raise ValueError(f"vector of length {len(x)} for a space of dimension {spec.dim}")


def _norm_float(spec, x):
    x = np.asarray(x, dtype=float)
    if isinstance(spec, Lp):
        return float(np.linalg.norm(x, ord=spec.p))
    if isinstance(spec, Polyhedral):
        f = np.array(spec.dual_vertices, dtype=float)
        return float(np.max(np.abs(f @ x)))
    if isinstance(spec, AbsoluteRadon):
        return _absolute_radon_float(x[0], x[1])
    if isinstance(spec, BJExampleR3):
        r = math.hypot(x[0], x[1])
        z = abs(x[2])
        if z <= r:
            return math.sqrt(2.0) * math.sqrt(r * r + z * z)
        return r + z
    if isinstance(spec, ComplexRadon):
        return _absolute_radon_float(math.hypot(x[0], x[1]), math.hypot(x[2], x[3]))
    if isinstance(spec, DirectSumL2):
        n = spec.left.dim
        return math.hypot(_norm_float(spec.left, x[:n]), _norm_float(spec.right, x[n:]))
    if isinstance(spec, DayRadon):
        return spec.value(x)
    raise NormSpecError(f"unknown spec {spec!r}")


def norm_value(spec, x):
    """The norm of x. Exact (Fraction) for polyhedral specs given exact input."""
    _check_dim(spec, x)
    if is_polyhedral(spec) and is_exact_vector(x):
        xs = fvec(x)
        if isinstance(spec, Lp) and math.isinf(spec.p):
            return max(abs(c) for c in xs)
        if isinstance(spec, Lp):
            return sum(abs(c) for c in xs)
        return max(abs(dot(f, xs)) for f in spec.dual_vertices)
    return _norm_float(spec, x)


def norms(spec, X):
    """Vectorized float norms of the rows of X."""
    X = np.atleast_2d(np.asarray(X, dtype=float))
    if X.shape[1] != spec.dim:
        raise ValueError("dimension mismatch")
    if isinstance(spec, Lp):
        return np.linalg.norm(X, ord=spec.p, axis=1)
    if isinstance(spec, Polyhedral):
        f = np.array(spec.dual_vertices, dtype=float)
        return np.max(np.abs(X @ f.T), axis=1)
    if isinstance(spec, (AbsoluteRadon, ComplexRadon)):
        if isinstance(spec, AbsoluteRadon):
            A, B = np.abs(X[:, 0]), np.abs(X[:, 1])
        else:
            A, B = np.hypot(X[:, 0], X[:, 1]), np.hypot(X[:, 2], X[:, 3])
        flat = B >= E * A
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            curve = A * np.exp(np.where(flat, 0.0, B / (E * np.where(A > 0, A, 1.0))))
        return np.where(flat, B, curve)
    if isinstance(spec, BJExampleR3):
        r = np.hypot(X[:, 0], X[:, 1])
        z = np.abs(X[:, 2])
        inside = np.sqrt(2.0) * np.sqrt(r * r + z * z)
        return np.where(z <= r, inside, r + z)
    if isinstance(spec, DirectSumL2):
        n = spec.left.dim
        return np.hypot(norms(spec.left, X[:, :n]), norms(spec.right, X[:, n:]))
    if isinstance(spec, DayRadon):
        out = np.empty(len(X))
        seedside = X[:, 0] * X[:, 1] >= 0
        out[seedside] = norms(spec.seed, X[seedside] @ spec._m.T)
        G = np.column_stack([X[~seedside, 1], -X[~seedside, 0]]) @ spec._minv_t.T
        out[~seedside] = spec.seed_supports(G)
        return out
    return np.array([_norm_float(spec, row) for row in X])


# ------------------------------------------------------------ subdifferential


class Subdifferential:
    """The set of supporting functionals at a basepoint.

    Numeric sets are stored as conv(vertices) + sum of disks, each disk given by an
    orthonormal frame (rows) and a radius; this covers points, segments, the disks
    met at the cone tips of BJExampleR3 and at b = 0 in ComplexRadon, and products
    of these in direct sums.
    """

    def __init__(self, kind, vertices, basepoint, disks=()):
        self.kind = kind
        self.vertices = tuple(vertices)
        self.basepoint = basepoint
        self.disks = tuple(disks)
        if not self.vertices:
            raise ValueError("empty subdifferential")

    @property
    def exact(self):
        return self.kind == "exact_polytope"

    @property
    def is_singleton(self):
        if self.exact:
            return len(self.vertices) == 1
        return len(self.vertices) == 1 and not self.disks

    def support(self, v):
        """(min, max) of f(v) over the set."""
        if self.exact:
            vs = fvec(v)
            vals = [dot(f, vs) for f in self.vertices]
            return min(vals), max(vals)
        v = np.asarray(v, dtype=float)
        vals = np.array([np.dot(f, v) for f in self.vertices])
        spread = sum(rho * np.linalg.norm(frame @ v) for frame, rho in self.disks)
        return float(vals.min() - spread), float(vals.max() + spread)

    def pick(self, v):
        """A member f with f(v) = 0 if one exists, else None."""
        lo, hi = self.support(v)
        if self.exact:
            if lo > 0 or hi < 0:
                return None
            vs = fvec(v)
            neg_f = min(self.vertices, key=lambda f: dot(f, vs))
            pos_f = max(self.vertices, key=lambda f: dot(f, vs))
            a, b = dot(neg_f, vs), dot(pos_f, vs)
            if a == b:
                return neg_f
            t = b / (b - a)
            return tuple(t * p + (1 - t) * q for p, q in zip(neg_f, pos_f))
        return self._pick_numeric(np.asarray(v, dtype=float), lo, hi)

    def _pick_numeric(self, v, lo, hi):
        if lo > 0 or hi < 0:
            return None
        verts = [np.asarray(f, dtype=float) for f in self.vertices]
        vals = [float(f @ v) for f in verts]
        lo_f, hi_f = verts[int(np.argmin(vals))].copy(), verts[int(np.argmax(vals))].copy()
        for frame, rho in self.disks:
            w = frame @ v
            nw = np.linalg.norm(w)
            if nw > 0:
                d = rho * (frame.T @ (w / nw))
                lo_f, hi_f = lo_f - d, hi_f + d
        a, b = float(lo_f @ v), float(hi_f @ v)
        if b - a <= 0:
            return lo_f
        t = b / (b - a)
        return t * lo_f + (1 - t) * hi_f

    def endpoints(self):
        return self.vertices

    def __repr__(self):
        return f"Subdifferential({self.kind}, {len(self.vertices)} vertices, {len(self.disks)} disks)"


def _numeric(kind_hint, vertices, basepoint, disks=()):
    vertices = [np.asarray(v, dtype=float) for v in vertices]
    if disks:
        kind = "numeric_disk" if len(vertices) == 1 and len(disks) == 1 else "numeric_set"
    elif len(vertices) == 1:
        kind = "numeric_singleton"
    elif len(vertices) == 2:
        kind = "numeric_segment"
    else:
        kind = kind_hint
    return Subdifferential(kind, vertices, basepoint, disks)


def subdifferential(spec, x, tols=DEFAULT):
    """Supporting functionals f of x: f(x) = ||x|| and dual norm of f equal to 1."""
    _check_dim(spec, x)
    if is_polyhedral(spec):
        xs = fvec(x)
        if all(c == 0 for c in xs):
            raise ValueError("subdifferential at 0 is the whole dual ball; unsupported")
        poly = polyhedral_form(spec)
        vals = [dot(f, xs) for f in poly.dual_vertices]
        m = max(vals)
        active = [f for f, val in zip(poly.dual_vertices, vals) if val == m]
        return Subdifferential("exact_polytope", active, xs)
    xv = np.asarray(x, dtype=float)
    if not np.any(xv):
        raise ValueError("subdifferential at 0 is the whole dual ball; unsupported")
    if isinstance(spec, Lp):
        p = spec.p
        nrm = np.linalg.norm(xv, ord=p)
        g = np.sign(xv) * np.abs(xv / nrm) ** (p - 1)
        return _numeric("numeric_singleton", [g], xv)
    if isinstance(spec, AbsoluteRadon):
        a, b = xv
        A, B = abs(a), abs(b)
        sa, sb = np.sign(a), np.sign(b)
        if B <= tols.seam * A:
            n1, n2 = _absolute_radon_grad(A, 0.0)
            return _numeric("numeric_segment", [(sa * n1, -n2), (sa * n1, n2)], xv)
        n1, n2 = _absolute_radon_grad(A, B)
        return _numeric("numeric_singleton", [(sa * n1, sb * n2)], xv)
    if isinstance(spec, BJExampleR3):
        r = math.hypot(xv[0], xv[1])
        z = xv[2]
        if r <= tols.seam * abs(z):
            frame = np.array([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]])
            return _numeric("numeric_disk", [(0.0, 0.0, np.sign(z))], xv, [(frame, 1.0)])
        if abs(z) <= r:
            g = math.sqrt(2.0) * xv / np.linalg.norm(xv)
        else:
            g = np.array([xv[0] / r, xv[1] / r, np.sign(z)])
        return _numeric("numeric_singleton", [g], xv)
    if isinstance(spec, ComplexRadon):
        a = complex(xv[0], xv[1])
        b = complex(xv[2], xv[3])
        A, B = abs(a), abs(b)
        ahat = a / A if A > 0 else 0.0
        if B <= tols.seam * A:
            n1, n2 = _absolute_radon_grad(A, 0.0)
            center = (n1 * ahat.real, n1 * ahat.imag, 0.0, 0.0)
            frame = np.array([[0.0, 0.0, 1.0, 0.0], [0.0, 0.0, 0.0, 1.0]])
            return _numeric("numeric_disk", [center], xv, [(frame, n2)])
        bhat = b / B
        n1, n2 = _absolute_radon_grad(A, B)
        g = (n1 * ahat.real, n1 * ahat.imag, n2 * bhat.real, n2 * bhat.imag) if A > 0 else (
            0.0, 0.0, n2 * bhat.real, n2 * bhat.imag)
        return _numeric("numeric_singleton", [g], xv)
    if isinstance(spec, DirectSumL2):
        return _direct_sum_subdifferential(spec, xv, tols)
    if isinstance(spec, DayRadon):
        return fd_subdifferential_2d(spec, xv, tols)
    raise NormSpecError(f"unknown spec {spec!r}")


def _as_numeric(sd):
    if sd.exact:
        return [np.array([float(c) for c in f]) for f in sd.vertices], []
    return [np.asarray(f, dtype=float) for f in sd.vertices], list(sd.disks)


def _direct_sum_subdifferential(spec, xv, tols):
    n = spec.left.dim
    u, w = xv[:n], xv[n:]
    nu, nw = _norm_float(spec.left, u), _norm_float(spec.right, w)
    total = math.hypot(nu, nw)
    parts = []
    for sub_spec, part, size in ((spec.left, u, nu), (spec.right, w, nw)):
        if size == 0:
            parts.append(([np.zeros(len(part))], []))
        else:
            verts, disks = _as_numeric(subdifferential(sub_spec, part, tols))
            c = size / total
            parts.append(([c * f for f in verts], [(fr, c * rho) for fr, rho in disks]))
    (lv, ld), (rv, rd) = parts
    vertices = [np.concatenate([p, q]) for p in lv for q in rv]
    disks = []
    for fr, rho in ld:
        disks.append((np.hstack([fr, np.zeros((fr.shape[0], len(w)))]), rho))
    for fr, rho in rd:
        disks.append((np.hstack([np.zeros((fr.shape[0], n)), fr]), rho))
    return _numeric("numeric_set", vertices, xv, disks)


def difference_quotient(spec, u, v, t, side):
    """(||u + s t v|| - ||u||) / (s t) for s = +1 or -1, with Euclidean-normalized u, v."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    nu, nv = np.linalg.norm(u), np.linalg.norm(v)
    if nv == 0:
        return 0.0
    uu, vv = u / nu, v / nv
    s = 1.0 if side == "+" else -1.0
    base = _norm_float(spec, uu)
    return nv * (_norm_float(spec, uu + s * t * vv) - base) / (s * t)


def fd_subdifferential_2d(spec, x, tols=DEFAULT):
    """Subdifferential of a 2D norm from one-sided derivatives in the rotated direction."""
    x = np.asarray(x, dtype=float)
    rot = np.array([-x[1], x[0]])
    nx2 = float(x @ x)
    size = _norm_float(spec, x)
    hi = difference_quotient(spec, x, rot, tols.fd_fine, "+")
    lo = difference_quotient(spec, x, rot, tols.fd_fine, "-")
    alpha = size / nx2
    if hi - lo <= tols.fd_smooth_gap:
        beta = 0.5 * (hi + lo) / nx2
        return _numeric("numeric_singleton", [alpha * x + beta * rot], x)
    return _numeric("numeric_segment", [alpha * x + lo / nx2 * rot, alpha * x + hi / nx2 * rot], x)


def analytic_subdifferential(spec):
    """False for models whose supporting functionals come from finite differences."""
    if isinstance(spec, DayRadon):
        return False
    if isinstance(spec, DirectSumL2):
        return analytic_subdifferential(spec.left) and analytic_subdifferential(spec.right)
    return True


# ----------------------------------------------------------------- sampling


def unit_sphere_samples(spec, count, seed):
    """Seeded unit vectors: Gaussian directions rescaled to norm one."""
    if count < 1:
        raise ValueError("count must be at least 1")
    rng = np.random.default_rng(seed)
    dirs = rng.standard_normal((count, spec.dim))
    dirs /= np.linalg.norm(dirs, axis=1)[:, None]
    out = dirs / norms(spec, dirs)[:, None]
    return [row for row in out]


# ------------------------------------------------------------------ parsing


def _parse_p(p):
    if isinstance(p, str):
        if p.strip().lower() in ("inf", "infinity", "∞"):
            return math.inf
        return float(to_fraction(p))
    if p is None:
        raise NormSpecError("missing p")
    return float(p)


def _parse_rational(c):
    if isinstance(c, bool):
        raise NormSpecError("booleans are not coordinates")
    if isinstance(c, float):
        return Fraction(str(c))
    try:
        return to_fraction(c)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise NormSpecError(f"bad rational literal {c!r}") from exc


def spec_from_dict(d):
    if not isinstance(d, dict) or "type" not in d:
        raise NormSpecError("norm spec must be an object with a 'type' field")
    t = d["type"]
    try:
        if t == "lp":
            return Lp(_parse_p(d.get("p")), int(d["dim"]))
        if t == "polyhedral":
            dv = tuple(tuple(_parse_rational(c) for c in f) for f in d["dual_vertices"])
            return Polyhedral(dv, name=d.get("name", "polyhedral"))
        if t == "hexagonal":
            return hexagonal()
        if t == "absolute_radon":
            return AbsoluteRadon()
        if t == "bj_example_r3":
            return BJExampleR3()
        if t == "complex_radon":
            return ComplexRadon()
        if t == "direct_sum_l2":
            return DirectSumL2(spec_from_dict(d["left"]), spec_from_dict(d["right"]))
        if t == "day_radon":
            seed = spec_from_dict(d["seed"])
            if "pair" in d:
                return DayRadon(seed, tuple(tuple(float(c) for c in v) for v in d["pair"]))
            from .radon import day_construction

            return day_construction(seed).spec
    except NormSpecError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise NormSpecError(f"malformed {t!r} spec: {exc}") from exc
    raise NormSpecError(f"unknown spec type {t!r}")


def parse_norm_spec(source):
    """Parse a norm spec from a path, a JSON string or an already-decoded dict."""
    if isinstance(source, dict):
        return spec_from_dict(source)
    if isinstance(source, Path) or (isinstance(source, str) and not source.lstrip().startswith("{")):
        text = Path(source).read_text()
    else:
        text = source
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise NormSpecError(f"malformed JSON: {exc}") from exc
    return spec_from_dict(d)


def spec_to_dict(spec):
    if isinstance(spec, Lp):
        return {"type": "lp", "p": "inf" if math.isinf(spec.p) else spec.p, "dim": spec.dim}
    if isinstance(spec, Polyhedral):
        if spec.name == "Hexagonal":
            return {"type": "hexagonal"}
        return {
            "type": "polyhedral",
            "name": spec.name,
            "dual_vertices": [[str(c) for c in f] for f in spec.dual_vertices],
        }
    if isinstance(spec, AbsoluteRadon):
        return {"type": "absolute_radon"}
    if isinstance(spec, BJExampleR3):
        return {"type": "bj_example_r3"}
    if isinstance(spec, ComplexRadon):
        return {"type": "complex_radon"}
    if isinstance(spec, DirectSumL2):
        return {"type": "direct_sum_l2", "left": spec_to_dict(spec.left), "right": spec_to_dict(spec.right)}
    if isinstance(spec, DayRadon):
        return {"type": "day_radon", "seed": spec_to_dict(spec.seed), "pair": [list(v) for v in spec.pair]}
    raise NormSpecError(f"unknown spec {spec!r}")

"""Orthodigraphs and the graph-only recovery procedures.

Exact mode works on polyhedral norms: vertices are projective face classes and every
outgoing neighborhood x-perp is stored as a set of faces of the hyperplane arrangement
(a bitmask), so intersections, containments and line counts are finite and exact.
Sampled mode works on seeded projective sample points with numeric verdicts.
"""

import hashlib
import math
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .core import descriptor_labels, is_bj_orthogonal, is_smooth, neighborhood_descriptor
from .lattice import arrangement, face_lattice
from .norms import (
    Lp,
    analytic_subdifferential,
    is_polyhedral,
    spec_label,
    subdifferential,
    unit_sphere_samples,
)
from .tolerances import DEFAULT

INF = math.inf


def _mask(ids):
    m = 0
    for i in ids:
        m |= 1 << i
    return m


@dataclass
class Vertex:
    index: int
    label: str
    representative: object
    smooth: bool
    face_ids: tuple = ()


@dataclass
class OrthoDigraph:
    """Directed graph x -> y iff x perp y.

    adjacency[i, j] is the edge relation on the listed vertices. With gamma0=True the
    zero vector is appended as the last vertex: it carries the only loop and is joined
    to every vertex in both directions (x perp 0 and 0 perp y always hold).
    """

    spec: object
    mode: str
    vertices: list
    adjacency: np.ndarray
    gamma0: bool = False
    seed: int = None
    tols: object = DEFAULT
    perp_masks: list = field(default=None, repr=False)    # exact: x-perp as arrangement faces
    subdiffs: list = field(default=None, repr=False)      # sampled: supporting functionals

    @property
    def dim(self):
        return self.spec.dim

    @property
    def size(self):
        return len(self.vertices) + (1 if self.gamma0 else 0)

    @property
    def zero_index(self):
        return len(self.vertices) if self.gamma0 else None

    def has_edge(self, i, j):
        return bool(self.adjacency[i, j])

    def out_neighbors(self, i):
        return [int(j) for j in np.flatnonzero(self.adjacency[i])]

    def in_neighbors(self, j):
        return [int(i) for i in np.flatnonzero(self.adjacency[:, j])]

    def out_degree(self, i):
        return int(self.adjacency[i].sum())

    def edge_count(self):
        return int(self.adjacency.sum())

    def loops(self):
        return [i for i in range(self.size) if self.adjacency[i, i]]

    def arrangement(self):
        return arrangement(self.spec)


# ------------------------------------------------------------------ building


def build_orthodigraph(spec, mode="exact", sample_count=None, seed=0, gamma0=False, tols=DEFAULT):
    if mode == "exact":
        if not is_polyhedral(spec):
            raise ValueError("exact mode needs a polyhedral norm")
        g = _build_exact(spec, tols)
    elif mode == "sampled":
        if sample_count is None or sample_count < 1:
            raise ValueError("sampled mode needs sample_count >= 1")
        g = _build_sampled(spec, sample_count, seed, tols)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    if gamma0:
        _attach_zero(g)
    return g


def _attach_zero(g):
    n = len(g.vertices)
    adj = np.zeros((n + 1, n + 1), dtype=bool)
    adj[:n, :n] = g.adjacency
    adj[n, :] = True
    adj[:, n] = True
    g.adjacency = adj
    g.gamma0 = True


def _build_exact(spec, tols):
    lat = face_lattice(spec)
    arr = arrangement(spec)
    vertices, masks = [], []
    for k, (a, b) in enumerate(lat.classes()):
        face = lat.faces[a]
        rep = face.representative
        vertices.append(Vertex(k, f"F{a}" if a == b else f"F{a}|F{b}", rep, is_smooth(spec, rep), (a, b)))
        masks.append(_mask(arr.perp_cells(face.active_set)))
    cell_of = [arr.face_of(v.representative) for v in vertices]
    m = len(vertices)
    adj = np.zeros((m, m), dtype=bool)
    for i in range(m):
        for j in range(m):
            adj[i, j] = bool(masks[i] >> cell_of[j] & 1)
    return OrthoDigraph(spec, "exact", vertices, adj, tols=tols, perp_masks=masks)


def _merge_projective(points, angle):
    """Union-find over P and -P: directions within the given angle become one vertex."""
    from scipy.spatial import cKDTree

    P = np.array([p / np.linalg.norm(p) for p in points])
    m = len(P)
    parent = list(range(m))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    tree = cKDTree(np.vstack([P, -P]))
    for a, b in sorted(tree.query_pairs(r=angle)):
        ia, ib = a % m, b % m
        if ia != ib:
            ra, rb = find(ia), find(ib)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    return sorted({find(i) for i in range(m)})


def _build_sampled(spec, count, seed, tols):
    pts = unit_sphere_samples(spec, count, seed)
    keep = _merge_projective(pts, tols.merge_angle)
    reps = [pts[i] for i in keep]
    sds = [subdifferential(spec, p, tols) for p in reps]
    vertices = [Vertex(k, f"s{keep[k]}", p, sd.is_singleton) for k, (p, sd) in enumerate(zip(reps, sds))]
    m = len(reps)
    P = np.array(reps)
    adj = np.zeros((m, m), dtype=bool)
    if analytic_subdifferential(spec):
        for i, sd in enumerate(sds):
            if sd.is_singleton:
                vals = P @ np.asarray(sd.vertices[0], dtype=float)
                adj[i] = np.abs(vals) / np.linalg.norm(P, axis=1) <= tols.ortho
            else:
                for j in range(m):
                    lo, hi = sd.support(P[j] / np.linalg.norm(P[j]))
                    adj[i, j] = max(lo, -hi) <= tols.ortho
    else:
        for i in range(m):
            for j in range(m):
                if i != j:
                    adj[i, j] = bool(is_bj_orthogonal(spec, P[i], P[j], tols))
    np.fill_diagonal(adj, False)
    return OrthoDigraph(spec, "sampled", vertices, adj, seed=seed, tols=tols, subdiffs=sds)


# ------------------------------------------------------- neighborhood algebra


def _exact_count(arr_masks, mask):
    """Projective lines in a set of arrangement faces: int or inf."""
    rays, big = arr_masks
    if mask & big:
        return INF
    return bin(mask & rays).count("1") // 2


def _arr_masks(graph):
    arr = graph.arrangement()
    return _mask(arr.rays), _mask(arr.big), 1 << arr.origin




def _numeric_rank(rows, tol=1e-9):
    if not len(rows):
        return 0
    s = np.linalg.svd(np.atleast_2d(np.array(rows, dtype=float)), compute_uv=False)
    return int((s > tol * max(1.0, s[0])).sum())


def _null_basis(rows, n, tol=1e-9):
    if not len(rows):
        return np.eye(n)
    A = np.atleast_2d(np.array(rows, dtype=float))
    _, s, vt = np.linalg.svd(A)
    r = int((s > tol * max(1.0, s[0])).sum())
    return vt[r:]


def numeric_line_count(graph, members, tols=None):
    """Projective lines in the intersection of x-perp over sampled vertices.

    Supported when every member is smooth, or exactly one is not (its supporting set is
    restricted to the common kernel of the others).
    """
    tols = tols or graph.tols
    n = graph.dim
    sds = [graph.subdiffs[i] for i in members]
    rough = [sd for sd in sds if not sd.is_singleton]
    if len(rough) > 1:
        raise NotImplementedError("line counting with several nonsmooth members")
    basis = _null_basis([np.asarray(sd.vertices[0], float) for sd in sds if sd.is_singleton], n)
    d = len(basis)
    if not rough:
        return {0: 0, 1: 1}.get(d, INF)
    if d == 0:
        return 0
    sd = rough[0]
    if d == 1:
        lo, hi = sd.support(basis[0])
        return 1 if max(lo, -hi) <= tols.ortho else 0
    if d >= 3:
        return INF
    centers = [basis @ np.asarray(f, float) for f in sd.vertices]
    disks = [(np.asarray(fr, float) @ basis.T, rho) for fr, rho in sd.disks]
    if _numeric_rank(centers + [rho * row for fr, rho in disks for row in fr]) > 1:
        return INF
    # the restricted functionals lie on one line R u: either u-perp (one line) or all of K
    u = max(centers, key=np.linalg.norm)
    nu = np.linalg.norm(u)
    if nu <= tols.ortho:
        return INF
    u = u / nu
    coeffs = [float(c @ u) for c in centers]
    spread = sum(rho * float(np.linalg.norm(fr @ u)) for fr, rho in disks)
    if min(coeffs) - spread <= 0 <= max(coeffs) + spread:
        return INF
    return 1


class _Perp:
    """Intersections of outgoing neighborhoods for either graph mode."""

    def __init__(self, graph):
        self.g = graph
        if graph.mode == "exact":
            self.rays, self.big, self.origin = _arr_masks(graph)
            self.full = (1 << len(graph.arrangement().signs)) - 1

    def meet(self, members):
        if self.g.mode != "exact":
            return tuple(members)
        m = self.full
        for i in members:
            m &= self.g.perp_masks[i]
        return m

    def count(self, members):
        if self.g.mode == "exact":
            return _exact_count((self.rays, self.big), self.meet(members))
        return numeric_line_count(self.g, list(members))

    def trivial(self, members):
        """Only the zero vector survives (empty set of projective points)."""
        if self.g.mode == "exact":
            return self.meet(members) & ~self.origin == 0
        return self.count(members) == 0


# -------------------------------------------------------------------- dimension


@dataclass
class DimensionResult:
    value: object
    gamma0_value: object
    gamma_value: object
    witness: tuple
    qualifier: str = "exact"

    def to_dict(self):
        def enc(v):
            return "infinite" if v == INF else v

        return {"dim": enc(self.value), "gamma0": enc(self.gamma0_value), "gamma": enc(self.gamma_value),
                "witness": list(self.witness), "qualifier": self.qualifier}


def digraph_dimension(graph, budget=500000):
    """Smallest number of vertices whose outgoing neighborhoods meet only in 0.

    Exact mode: subsets of size k < n are certified nonempty (each x-perp contains the
    kernel of a supporting functional and k kernels meet in a nonzero subspace); from
    k = n on, subsets are searched with smooth classes first. The Gamma_0 count
    (intersection = {0}) and the Gamma count (no projective point left) are computed
    separately.
    """
    n = graph.dim
    if graph.mode == "sampled":
        return _sampled_dimension(graph)
    perp = _Perp(graph)
    m = len(graph.vertices)
    order = sorted(range(m), key=lambda i: (not graph.vertices[i].smooth, i))
    tried = 0
    for k in range(n, m + 1):
        for combo in combinations(order, k):
            tried += 1
            if tried > budget:
                raise RuntimeError(f"subset budget {budget} exhausted at size {k}")
            meet = perp.meet(combo)
            gamma0 = meet == perp.origin
            gamma = meet & ~perp.origin == 0
            if gamma0 or gamma:
                if gamma0 != gamma:
                    raise AssertionError("the two dimension conventions disagree")
                return DimensionResult(k, k, k, tuple(sorted(combo)))
    return DimensionResult(INF, INF, INF, ())


def _sampled_dimension(graph):
    """Sampled estimate: a family of smooth vertices with independent supporting
    functionals meets only in 0; fewer than n vertices never do."""
    n = graph.dim
    chosen, rows = [], []
    for i, sd in enumerate(graph.subdiffs):
        if not sd.is_singleton:
            continue
        g = np.asarray(sd.vertices[0], float)
        if _numeric_rank(rows + [g]) > len(rows):
            rows.append(g)
            chosen.append(i)
            if len(rows) == n:
                break
    if len(rows) < n:
        return DimensionResult(INF, INF, INF, tuple(chosen), "sampled")
    if numeric_line_count(graph, chosen) != 0:
        raise AssertionError("independent kernels failed to meet trivially")
    k = len(chosen)
    return DimensionResult(k, k, k, tuple(chosen), "sampled")


# ----------------------------------------------------------- smooth vertices


def classify_smooth_vertices_2d(graph):
    """Vertices whose outgoing neighborhood is a single projective line."""
    if graph.dim != 2:
        raise ValueError("two-dimensional classifier needs a 2D space")
    perp = _Perp(graph)
    return {i for i in range(len(graph.vertices)) if perp.count([i]) == 1}


def classify_smooth_vertices_nd(graph, budget=2000000):
    """Smooth vertices of Gamma for n >= 3 from the graph alone.

    x is smooth iff some (n-2)-tuple T has x-perp meeting the T-perps in exactly one line
    and, for each element t of T in turn, with R = T minus t and
    Omega = {y : x-perp, y-perp, R-perps meet in exactly one line},
    the sets x-perp, R-perps and y-perp for y in Omega meet only in 0.
    """
    n = graph.dim
    if n < 3:
        raise ValueError("use classify_smooth_vertices_2d for planes")
    perp = _Perp(graph)
    m = len(graph.vertices)
    order = sorted(range(m), key=lambda i: (not graph.vertices[i].smooth, i))
    smooth = set()
    work = [0]

    for x in range(m):
        final_cache = {}

        def final_empty(rest):
            if rest not in final_cache:
                omega = []
                for y in range(m):
                    work[0] += 1
                    if perp.count((x, y) + rest) == 1:
                        omega.append(y)
                final_cache[rest] = perp.trivial((x,) + rest + tuple(omega))
            return final_cache[rest]

        for tup in combinations(order, n - 2):
            work[0] += 1
            if work[0] > budget:
                raise RuntimeError(f"tuple search budget {budget} exhausted")
            if perp.count((x,) + tup) != 1:
                continue
            if all(final_empty(tuple(sorted(tup[:k] + tup[k + 1:]))) for k in range(n - 2)):
                smooth.add(x)
                break
    return smooth


def classify_smooth_vertices(graph):
    if graph.dim == 2:
        return classify_smooth_vertices_2d(graph)
    return classify_smooth_vertices_nd(graph)


# ---------------------------------------------------------------- maximal faces


def find_maximal_faces(graph):
    """Vertex sets F, maximal with: some z has z-perp inside every x-perp (x in F).

    For each z the largest such F is S_z = {x : z-perp within x-perp}; the answers are
    the inclusion-maximal S_z.
    """
    if graph.mode != "exact":
        raise ValueError("maximal faces need an exact-quotient graph")
    masks = graph.perp_masks
    m = len(masks)
    cands = set()
    for z in range(m):
        cands.add(frozenset(x for x in range(m) if masks[z] & ~masks[x] == 0))
    maximal = [s for s in cands if not any(s < t for t in cands)]
    return sorted(maximal, key=lambda s: sorted(s))


def facet_class_sets(graph):
    """Projective facet classes of the face lattice as sets of graph vertices."""
    lat = face_lattice(graph.spec)
    index = {}
    for v in graph.vertices:
        for fid in v.face_ids:
            index[fid] = v.index
    out = set()
    for facet in lat.facets():
        out.add(frozenset(index[f.id] for f in lat.faces if f.vertex_ids <= facet.vertex_ids))
    return sorted(out, key=lambda s: sorted(s))


# ------------------------------------------------------------------ spans


@dataclass
class SpanResult:
    basis: np.ndarray
    dim: int
    omega_min: int
    witnesses: list
    max_principal_angle: float

    def to_dict(self):
        return {"dim": self.dim, "omega_min": self.omega_min, "witness_count": len(self.witnesses),
                "basis": self.basis.tolist(), "max_principal_angle": self.max_principal_angle}


def span_from_graph(spec, S, witness_budget=64, seed=0, tols=DEFAULT):
    """span(S) recovered as the intersection of x-perp over all x with x -> S.

    Witnesses x are produced from random functionals g vanishing on S through the inverse
    duality map of the Lp norm, then admitted only if x perp s holds for every s in S.
    """
    if not isinstance(spec, Lp) or not (1 < spec.p < math.inf):
        raise ValueError("span recovery needs a smooth Lp norm (1 < p < inf)")
    S = [np.asarray(s, dtype=float) for s in S]
    if not S:
        raise ValueError("S must be nonempty")
    n = spec.dim
    rng = np.random.default_rng(seed)
    ann = _null_basis(S, n)
    q = spec.p / (spec.p - 1)
    witnesses, grads = [], []
    for _ in range(witness_budget):
        if len(ann) == 0:
            break
        g = ann.T @ rng.standard_normal(len(ann))
        x = np.sign(g) * np.abs(g) ** (q - 1)
        if not all(is_bj_orthogonal(spec, x, s, tols) for s in S):
            continue
        witnesses.append(x)
        grads.append(np.asarray(subdifferential(spec, x, tols).vertices[0], float))
    if len(ann) and not witnesses:
        raise RuntimeError("no witnesses found within the sample budget")
    basis = _null_basis(grads, n, tol=1e-9)
    omega = 0
    rows = []
    for gr in grads:
        if _numeric_rank(rows + [gr]) > len(rows):
            rows.append(gr)
            omega += 1
    direct = np.linalg.svd(np.array(S))[2][: _numeric_rank(S)]
    angle = _max_principal_angle(basis, direct)
    return SpanResult(basis, len(basis), omega, witnesses, angle)


def _max_principal_angle(a, b):
    if len(a) != len(b):
        return math.pi / 2
    if len(a) == 0:
        return 0.0
    qa, _ = np.linalg.qr(np.asarray(a).T)
    qb, _ = np.linalg.qr(np.asarray(b).T)
    s = np.linalg.svd(qa.T @ qb, compute_uv=False)
    return float(math.acos(min(1.0, float(s.min()))))


# ----------------------------------------------------- sup-norm recognition


def recognize_sup_norm(graph):
    """Sup norm (up to a linear bijection) iff the smooth vertices have exactly dim
    distinct outgoing neighborhoods."""
    dim = digraph_dimension(graph).value
    if graph.mode == "exact":
        smooth = classify_smooth_vertices(graph)
        count = len({graph.perp_masks[i] for i in smooth})
    else:
        smooth = [i for i, v in enumerate(graph.vertices) if v.smooth]
        labels = descriptor_labels(graph.spec, [graph.vertices[i].representative for i in smooth], graph.tols)
        count = len(set(labels))
    return {"is_sup_norm": count == dim, "smooth_neighborhood_count": count, "dim": dim,
            "mode": graph.mode}


# --------------------------------------------------------------- polyhedrality


def polyhedrality_verdict(spec, budgets=(100, 1000, 10000), seed=0, tols=DEFAULT):
    """Exact: number of distinct outgoing neighborhoods over face classes.
    Numeric: distinct descriptors among N samples for increasing N; "polyhedral-like"
    iff the largest two budgets give the same count."""
    if is_polyhedral(spec):
        g = build_orthodigraph(spec, "exact", tols=tols)
        return {"model": spec_label(spec), "mode": "exact", "count": len(set(g.perp_masks)),
                "finite": True}
    counts = {}
    for N in budgets:
        pts = unit_sphere_samples(spec, N, seed)
        counts[N] = len(set(descriptor_labels(spec, pts, tols)))
    big = sorted(budgets)
    saturated = len(big) >= 2 and counts[big[-1]] == counts[big[-2]]
    return {"model": spec_label(spec), "mode": "sampled", "counts": counts,
            "verdict": "polyhedral-like" if saturated else "not polyhedral"}


# -------------------------------------------------------------- fingerprints


def graph_fingerprint(graph):
    """Isomorphism invariants; equal fingerprints are necessary for isomorphic graphs."""
    m = len(graph.vertices)
    smooth = classify_smooth_vertices(graph) if graph.mode == "exact" else {
        i for i, v in enumerate(graph.vertices) if v.smooth}
    degrees = sorted((i in smooth, graph.out_degree(i)) for i in range(m))
    dim = digraph_dimension(graph).value
    faces = len(find_maximal_faces(graph)) if graph.mode == "exact" else None
    return {
        "dim": "infinite" if dim == INF else dim,
        "smooth_classes": len(smooth),
        "nonsmooth_classes": m - len(smooth),
        "out_degrees": [[bool(s), d] for s, d in degrees],
        "maximal_faces": faces,
    }


def _descriptor_hash(graph, i):
    v = graph.vertices[i]
    if graph.mode == "exact":
        text = str(sorted(f for f in neighborhood_descriptor(graph.spec, v.representative).key))
    else:
        text = neighborhood_descriptor(graph.spec, v.representative, "outgoing", graph.tols).fingerprint()
    return hashlib.sha1(text.encode()).hexdigest()[:8]


def export_dot(graph, path=None, max_vertices=10000):
    """DOT text of the graph (written to path when given); deterministic."""
    if graph.size > max_vertices:
        raise ValueError(f"graph has {graph.size} vertices, more than {max_vertices}")
    lines = [f'digraph "{spec_label(graph.spec)}" {{']
    for v in graph.vertices:
        flag = "smooth" if v.smooth else "nonsmooth"
        lines.append(f'  v{v.index} [label="{v.label}\\n{flag}\\n{_descriptor_hash(graph, v.index)}"];')
    if graph.gamma0:
        lines.append('  zero [label="0"];')
    names = [f"v{i}" for i in range(len(graph.vertices))] + (["zero"] if graph.gamma0 else [])
    for i in range(graph.size):
        for j in range(graph.size):
            if graph.adjacency[i, j]:
                lines.append(f"  {names[i]} -> {names[j]};")
    lines.append("}")
    text = "\n".join(lines) + "\n"
    if path is not None:
        with open(path, "w") as fh:
            fh.write(text)
    return text


__all__ = [
    "OrthoDigraph", "Vertex", "DimensionResult", "SpanResult", "build_orthodigraph",
    "digraph_dimension", "classify_smooth_vertices_2d", "classify_smooth_vertices_nd",
    "classify_smooth_vertices", "find_maximal_faces", "facet_class_sets", "span_from_graph",
    "recognize_sup_norm", "polyhedrality_verdict", "graph_fingerprint", "export_dot",
    "numeric_line_count",
]

"""Face lattice of a polyhedral unit ball and the central hyperplane arrangement of
its facet functionals.

For a polyhedral norm every set x-perp is a union of faces of the arrangement of
hyperplanes Ker f (f a dual vertex): membership of y in x-perp depends only on the
signs f(y). Intersections, containments and projective line counts of such sets
are therefore finite computations over the arrangement's faces.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exact import canonical_direction, dot, neg, nullspace, rank
from .norms import NormSpecError, polyhedral_form
from .polytope import affine_rank, ball_vertices, facet_vertex_sets

MAX_LATTICE_DIM = 4


@dataclass(frozen=True)
class Face:
    id: int
    dim: int
    active_set: frozenset
    representative: tuple
    vertex_ids: frozenset
    boundary_face_ids: tuple


@dataclass(frozen=True)
class FaceLattice:
    spec: object
    vertices: tuple
    faces: tuple
    antipode: tuple

    @property
    def n(self):
        return self.spec.dim

    def classes(self):
        """Projective face classes as (face id, antipodal face id), smaller id first."""
        out = []
        for f in self.faces:
            a = self.antipode[f.id]
            if f.id <= a:
                out.append((f.id, a))
        return out

    def facets(self):
        return [f for f in self.faces if f.dim == self.n - 1]

    def counts_by_dim(self):
        counts = {}
        for f in self.faces:
            counts[f.dim] = counts.get(f.dim, 0) + 1
        return dict(sorted(counts.items()))


@lru_cache(maxsize=None)
def _lattice(poly):
    n = poly.dim
    if n > MAX_LATTICE_DIM:
        raise NormSpecError(f"face lattice limited to dimension <= {MAX_LATTICE_DIM}, got {n}")
    fs = poly.dual_vertices
    verts = ball_vertices(fs)
    vsets = set(s for s in facet_vertex_sets(fs) if s)
    frontier = set(vsets)
    while frontier:
        new = set()
        for a in frontier:
            for b in vsets:
                c = a & b
                if c and c not in vsets:
                    new.add(c)
        vsets |= new
        frontier = new
    keyed = sorted(vsets, key=lambda s: (affine_rank([verts[j] for j in s]), sorted(s)))
    index = {s: i for i, s in enumerate(keyed)}
    vindex = {v: j for j, v in enumerate(verts)}
    faces = []
    for i, s in enumerate(keyed):
        pts = [verts[j] for j in sorted(s)]
        rep = tuple(sum(c) / len(pts) for c in zip(*pts))
        active = frozenset(k for k, f in enumerate(fs) if dot(f, rep) == 1)
        boundary = tuple(index[t] for t in keyed if t < s)
        faces.append(Face(i, affine_rank(pts), active, rep, frozenset(s), boundary))
    antipode = tuple(index[frozenset(vindex[neg(verts[j])] for j in s)] for s in keyed)
    return FaceLattice(poly, verts, tuple(faces), antipode)


def face_lattice(spec):
    """All proper faces of the polyhedral unit ball with exact representatives."""
    return _lattice(polyhedral_form(spec))


def _sgn(v):
    return (v > 0) - (v < 0)


@dataclass(frozen=True)
class Arrangement:
    normals: tuple          # one canonical normal per hyperplane
    functional_map: tuple   # dual vertex index -> (hyperplane index, sign)
    signs: tuple            # sign vector of each face
    dims: tuple             # dimension of each face
    origin: int
    rays: frozenset         # faces of dimension 1
    big: frozenset          # faces of dimension >= 2

    def sign_vector(self, y):
        return tuple(_sgn(dot(nrm, y)) for nrm in self.normals)

    def face_of(self, y):
        return self._index()[self.sign_vector(y)]

    def _index(self):
        idx = getattr(self, "_idx", None)
        if idx is None:
            idx = {s: i for i, s in enumerate(self.signs)}
            object.__setattr__(self, "_idx", idx)
        return idx

    def condition(self, active, sign):
        """Does a point with this sign vector lie in x-perp for x with these active functionals?"""
        vals = [s * sign[h] for h, s in (self.functional_map[k] for k in active)]
        return min(vals) <= 0 <= max(vals)

    def perp_cells(self, active):
        """Faces making up x-perp for a point whose active functional indices are given."""
        return frozenset(i for i, s in enumerate(self.signs) if self.condition(active, s))

    def line_count(self, cells):
        """Projective lines in a symmetric union of faces: an int or math.inf."""
        if cells & self.big:
            return float("inf")
        return len(cells & self.rays) // 2

    def ray_vector(self, face_id):
        """Exact nonzero vector spanning a one-dimensional face."""
        sign = self.signs[face_id]
        rows = [self.normals[h] for h, s in enumerate(sign) if s == 0]
        (v,) = nullspace(rows, len(self.normals[0]))
        for h, s in enumerate(sign):
            if s != 0:
                if _sgn(dot(self.normals[h], v)) != s:
                    v = neg(v)
                break
        return v


def _enumerate(normals, n):
    m = len(normals)

    def closure(z):
        rows = [normals[i] for i in z]
        r = rank(rows, n)
        return frozenset(j for j in range(m) if j in z or rank(rows + [normals[j]], n) == r)

    memo = {}

    def cells_of(z):
        if z in memo:
            return memo[z]
        rows = [normals[i] for i in z]
        d = n - rank(rows, n)
        if d == 0:
            res = [tuple(0 for _ in range(m))]
        else:
            basis = nullspace(rows, n)
            found = set()
            for i in range(m):
                if i in z:
                    continue
                zi = closure(z | {i})
                tv = max(basis, key=lambda b: abs(dot(normals[i], b)))
                for tau in cells_of(zi):
                    for s in (1, -1):
                        sig = list(tau)
                        for j in zi - z:
                            sig[j] = _sgn(s * dot(normals[j], tv))
                        found.add(tuple(sig))
            res = sorted(found)
        memo[z] = res
        return res

    cells_of(closure(frozenset()))
    faces = {}
    for z, cells in memo.items():
        d = n - rank([normals[i] for i in z], n)
        for sig in cells:
            faces[sig] = d
    return faces


@lru_cache(maxsize=None)
def _arrangement(poly):
    n = poly.dim
    normals = []
    fmap = []
    for f in poly.dual_vertices:
        c = canonical_direction(f)
        lead = next(a for a in f if a != 0)
        if c not in normals:
            normals.append(c)
        fmap.append((normals.index(c), 1 if lead > 0 else -1))
    faces = _enumerate(normals, n)
    order = sorted(faces, key=lambda s: (faces[s], s))
    dims = tuple(faces[s] for s in order)
    origin = order.index(tuple(0 for _ in normals))
    return Arrangement(
        normals=tuple(normals),
        functional_map=tuple(fmap),
        signs=tuple(order),
        dims=dims,
        origin=origin,
        rays=frozenset(i for i, d in enumerate(dims) if d == 1),
        big=frozenset(i for i, d in enumerate(dims) if d >= 2),
    )


def arrangement(spec):
    return _arrangement(polyhedral_form(spec))


def active_indices(spec, x):
    """Indices of dual vertices attaining the norm at x (exact)."""
    from .exact import fvec

    poly = polyhedral_form(spec)
    xs = fvec(x)
    vals = [dot(f, xs) for f in poly.dual_vertices]
    m = max(vals)
    if m == 0:
        raise ValueError("zero vector has no active functionals")
    return frozenset(k for k, v in enumerate(vals) if v == m)


def relative_interior_points(lattice, face, count, rng):
    """Random exact points in the relative interior of a face (positive vertex weights)."""
    pts = [lattice.vertices[j] for j in sorted(face.vertex_ids)]
    out = []
    for _ in range(count):
        w = [Fraction(int(rng.integers(1, 10))) for _ in pts]
        total = sum(w)
        out.append(tuple(sum(wi * p[c] for wi, p in zip(w, pts)) / total for c in range(len(pts[0]))))
    return out

"""Vertices and facets of a symmetric polyhedral unit ball {x : f(x) <= 1 for f in F}."""

from functools import lru_cache
from itertools import combinations

from .exact import dot, neg, rank, solve, sub


@lru_cache(maxsize=None)
def ball_vertices(dual_vertices):
    """Exact vertices of the ball cut out by the functionals (tuple of Fraction tuples)."""
    fs = list(dual_vertices)
    n = len(fs[0])
    negs = {f: neg(f) for f in fs}
    found = {}
    for combo in combinations(range(len(fs)), n):
        rows = [fs[i] for i in combo]
        if any(negs[a] == b for a, b in combinations(rows, 2)):
            continue
        v = solve(rows, [1] * n)
        if v is None or v in found:
            continue
        if all(dot(f, v) <= 1 for f in fs):
            found[v] = True
    return tuple(sorted(found))


def affine_rank(points):
    """Dimension of the affine hull of a nonempty point set."""
    pts = list(points)
    if len(pts) <= 1:
        return 0
    base = pts[0]
    return rank([sub(p, base) for p in pts[1:]])


@lru_cache(maxsize=None)
def facet_vertex_sets(dual_vertices):
    """For each functional, the indices of ball vertices where it equals 1."""
    verts = ball_vertices(dual_vertices)
    return tuple(
        frozenset(j for j, v in enumerate(verts) if dot(f, v) == 1) for f in dual_vertices
    )


def validate_dual_vertices(dual_vertices):
    """Raise ValueError unless the functionals are symmetric, spanning and irredundant."""
    fs = list(dual_vertices)
    if not fs:
        raise ValueError("no dual vertices given")
    n = len(fs[0])
    if any(len(f) != n for f in fs):
        raise ValueError("dual vertices have inconsistent lengths")
    if len(set(fs)) != len(fs):
        raise ValueError("duplicate dual vertices")
    present = set(fs)
    for f in fs:
        if all(c == 0 for c in f):
            raise ValueError("zero functional among dual vertices")
        if neg(f) not in present:
            raise ValueError(f"dual vertices are not symmetric: -{f} missing")
    if rank(fs, n) != n:
        raise ValueError("dual vertices do not span the dual space")
    verts = ball_vertices(tuple(fs))
    for f, vset in zip(fs, facet_vertex_sets(tuple(fs))):
        if not vset or affine_rank([verts[j] for j in vset]) != n - 1:
            raise ValueError(f"dual vertex {f} is redundant (inside the hull of the others)")

import hashlib
from fractions import Fraction

import numpy as np
import pytest

from bjortho.core import is_bj_orthogonal, is_smooth, neighborhood_descriptor
from bjortho.graph import (
    build_orthodigraph,
    classify_smooth_vertices,
    classify_smooth_vertices_2d,
    classify_smooth_vertices_nd,
    digraph_dimension,
    export_dot,
    facet_class_sets,
    find_maximal_faces,
    graph_fingerprint,
    polyhedrality_verdict,
    recognize_sup_norm,
    span_from_graph,
)
from bjortho.lattice import active_indices, face_lattice, relative_interior_points
from bjortho.norms import AbsoluteRadon, Lp, Polyhedral, hexagonal, l1, linf
from bjortho.suite import random_linear_image_of_linf

F = Fraction
EXACT = [linf(2), linf(3), l1(3), hexagonal(), linf(4), l1(4)]


def _vertex_of(graph, x):
    lat = face_lattice(graph.spec)
    act = active_indices(graph.spec, x)
    face = next(f.id for f in lat.faces if f.active_set == act)
    return next(v.index for v in graph.vertices if face in v.face_ids)


def test_face_lattice_counts():
    assert face_lattice(linf(2)).counts_by_dim() == {0: 4, 1: 4}
    assert face_lattice(hexagonal()).counts_by_dim() == {0: 6, 1: 6}
    assert face_lattice(l1(3)).counts_by_dim() == {0: 6, 1: 12, 2: 8}
    assert face_lattice(linf(3)).counts_by_dim() == {0: 8, 1: 12, 2: 6}
    assert len(face_lattice(linf(2)).classes()) == 4
    assert len(face_lattice(hexagonal()).classes()) == 6


def test_square_worked_example():
    g = build_orthodigraph(linf(2), "exact")
    edge_x = _vertex_of(g, (F(1), F(0)))     # edge x = 1
    edge_y = _vertex_of(g, (F(0), F(1)))     # edge y = 1
    c_plus = _vertex_of(g, (F(1), F(1)))
    c_minus = _vertex_of(g, (F(1), F(-1)))
    # the edge classes only reach each other; each corner reaches every other class
    assert g.out_neighbors(edge_x) == [edge_y]
    assert g.out_neighbors(edge_y) == [edge_x]
    assert set(g.out_neighbors(c_plus)) == {edge_x, edge_y, c_minus}
    assert set(g.out_neighbors(c_minus)) == {edge_x, edge_y, c_plus}
    assert g.edge_count() == 8 and g.loops() == []


def test_gamma0_zero_vertex():
    g = build_orthodigraph(hexagonal(), "exact", gamma0=True)
    z = g.zero_index
    assert g.loops() == [z]
    assert all(g.has_edge(z, i) and g.has_edge(i, z) for i in range(g.size))
    assert digraph_dimension(g).value == 2


@pytest.mark.parametrize("spec", EXACT[:4], ids=str)
def test_quotient_consistency(spec):
    g = build_orthodigraph(spec, "exact")
    lat = face_lattice(spec)
    rng = np.random.default_rng(0)
    faces = lat.faces
    arr = g.arrangement()
    for _ in range(1000):
        fx, fy = faces[rng.integers(len(faces))], faces[rng.integers(len(faces))]
        x = relative_interior_points(lat, fx, 1, rng)[0]
        y = relative_interior_points(lat, fy, 1, rng)[0]
        i, j = _vertex_of(g, x), _vertex_of(g, y)
        # edges use the target's representative; x-perp may cut through a face
        assert g.has_edge(i, j) == is_bj_orthogonal(spec, x, g.vertices[j].representative).orthogonal
        # the stored x-perp decides every point, not only representatives
        inside = bool(g.perp_masks[i] >> arr.face_of(y) & 1)
        assert inside == is_bj_orthogonal(spec, x, y).orthogonal


@pytest.mark.parametrize("spec", EXACT[:4], ids=str)
def test_face_class_descriptors_well_defined(spec):
    lat = face_lattice(spec)
    rng = np.random.default_rng(1)
    for face in lat.faces:
        a, b = relative_interior_points(lat, face, 2, rng)
        assert neighborhood_descriptor(spec, a) == neighborhood_descriptor(spec, b)


def test_sampled_euclidean_out_degrees():
    g = build_orthodigraph(Lp(2, 2), "sampled", 100, seed=3)
    assert len(g.vertices) == 100
    reps = np.array([np.asarray(v.representative, float) for v in g.vertices])
    cos = np.abs(reps @ reps.T) / np.outer(np.linalg.norm(reps, axis=1), np.linalg.norm(reps, axis=1))
    for i in range(100):
        assert g.out_degree(i) == int(np.sum(cos[i] <= 1e-8))


def test_sampled_requires_points():
    with pytest.raises(ValueError):
        build_orthodigraph(Lp(2, 2), "sampled", 0)
    with pytest.raises(ValueError):
        build_orthodigraph(Lp(2, 2), "exact")


@pytest.mark.parametrize("spec", EXACT, ids=str)
def test_dimension_exact(spec):
    d = digraph_dimension(build_orthodigraph(spec, "exact"))
    assert d.value == spec.dim
    assert d.gamma0_value == d.gamma_value == spec.dim


@pytest.mark.parametrize("p", [2, 4])
@pytest.mark.parametrize("n", [2, 3, 4])
def test_dimension_sampled(p, n):
    g = build_orthodigraph(Lp(p, n), "sampled", 150, seed=n)
    assert digraph_dimension(g).value == n


@pytest.mark.parametrize("spec", EXACT, ids=str)
def test_smooth_classifier_matches_ground_truth(spec):
    g = build_orthodigraph(spec, "exact")
    truth = {v.index for v in g.vertices if is_smooth(spec, v.representative)}
    fn = classify_smooth_vertices_2d if spec.dim == 2 else classify_smooth_vertices_nd
    assert fn(g) == truth
    assert classify_smooth_vertices(g) == truth


def test_sampled_smooth_vertices():
    g = build_orthodigraph(Lp(2, 2), "sampled", 100, seed=0)
    assert all(v.smooth for v in g.vertices)


@pytest.mark.parametrize("spec,count", [(linf(3), 3), (l1(3), 4), (hexagonal(), 3), (linf(2), 2), (l1(4), 8)],
                         ids=str)
def test_maximal_faces_are_facet_classes(spec, count):
    g = build_orthodigraph(spec, "exact")
    faces = find_maximal_faces(g)
    assert len(faces) == count
    assert faces == facet_class_sets(g)


def test_recognize_sup_norm():
    for n in (2, 3, 4):
        r = recognize_sup_norm(build_orthodigraph(linf(n), "exact"))
        assert r == {"is_sup_norm": True, "smooth_neighborhood_count": n, "dim": n, "mode": "exact"}
    assert recognize_sup_norm(build_orthodigraph(l1(3), "exact"))["smooth_neighborhood_count"] == 4
    r = recognize_sup_norm(build_orthodigraph(hexagonal(), "exact"))
    assert not r["is_sup_norm"] and r["smooth_neighborhood_count"] == 3
    parallelogram = Polyhedral(((F(1), F(0)), (F(-1), F(0)), (F(1), F(1)), (F(-1), F(-1))))
    assert recognize_sup_norm(build_orthodigraph(parallelogram, "exact"))["is_sup_norm"]
    for seed in range(3):
        image, _ = random_linear_image_of_linf(3, seed)
        assert recognize_sup_norm(build_orthodigraph(image, "exact"))["is_sup_norm"]
    for p in (2, 4):
        r = recognize_sup_norm(build_orthodigraph(Lp(p, 3), "sampled", 100, seed=1))
        assert not r["is_sup_norm"] and r["smooth_neighborhood_count"] > 3


def test_polyhedrality():
    assert polyhedrality_verdict(linf(2))["count"] == 4
    assert polyhedrality_verdict(hexagonal())["count"] == 6
    r = polyhedrality_verdict(Lp(2, 2), seed=0)
    assert r["counts"][10000] > 9000 and r["verdict"] == "not polyhedral"
    r = polyhedrality_verdict(AbsoluteRadon(), budgets=(100, 1000), seed=0)
    assert r["counts"][100] < r["counts"][1000]


def test_fingerprints():
    sq = graph_fingerprint(build_orthodigraph(linf(2), "exact"))
    hx = graph_fingerprint(build_orthodigraph(hexagonal(), "exact"))
    parallelogram = Polyhedral(((F(1), F(0)), (F(-1), F(0)), (F(1), F(1)), (F(-1), F(-1))))
    pg = graph_fingerprint(build_orthodigraph(parallelogram, "exact"))
    assert sq != hx
    assert sq == pg
    a = graph_fingerprint(build_orthodigraph(Lp(2, 2), "sampled", 100, seed=1))
    b = graph_fingerprint(build_orthodigraph(Lp(2, 2), "sampled", 100, seed=2))
    assert a == b


def test_dot_export(tmp_path):
    g = build_orthodigraph(linf(2), "exact")
    text = export_dot(g, tmp_path / "a.dot")
    export_dot(build_orthodigraph(linf(2), "exact"), tmp_path / "b.dot")
    assert (tmp_path / "a.dot").read_bytes() == (tmp_path / "b.dot").read_bytes()
    body = (tmp_path / "a.dot").read_text()
    assert body.count("[label=") == 4
    g0 = build_orthodigraph(linf(2), "exact", gamma0=True)
    body0 = export_dot(g0)
    assert 'zero [label="0"]' in body0 and "zero -> zero;" in body0
    assert hashlib.sha1(body.encode()).hexdigest() == hashlib.sha1(export_dot(g).encode()).hexdigest()
    assert text is None or text == body


def test_span_from_graph():
    r = span_from_graph(Lp(2, 3), [(1.0, 0.0, 0.0)])
    assert r.dim == 1 and r.omega_min == 2
    r = span_from_graph(Lp(2, 3), [(1.0, 0.0, 0.0), (0.0, 1.0, 0.0)])
    assert r.dim == 2 and r.omega_min == 1
    r = span_from_graph(Lp(4, 3), [(1.0, 1.0, 0.0)])
    assert r.dim == 1
    b = np.asarray(r.basis, float).ravel()
    b = b / np.linalg.norm(b)
    assert abs(abs(b @ np.array([1.0, 1.0, 0.0]) / np.sqrt(2)) - 1.0) <= 1e-6

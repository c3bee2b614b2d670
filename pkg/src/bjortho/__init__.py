"""Birkhoff-James orthogonality in finite-dimensional normed spaces."""

from .core import (
    NeighborhoodDescriptor,
    OrthoVerdict,
    bj_equivalent,
    directional_derivative,
    is_bj_norm_sampled,
    is_bj_orthogonal,
    is_smooth,
    neighborhood_descriptor,
)
from .graph import (
    OrthoDigraph,
    build_orthodigraph,
    classify_smooth_vertices_2d,
    classify_smooth_vertices_nd,
    digraph_dimension,
    export_dot,
    find_maximal_faces,
    graph_fingerprint,
    polyhedrality_verdict,
    recognize_sup_norm,
    span_from_graph,
)
from .lattice import FaceLattice, face_lattice
from .norms import (
    AbsoluteRadon,
    BJExampleR3,
    ComplexRadon,
    DayRadon,
    DirectSumL2,
    Lp,
    NormSpecError,
    Polyhedral,
    Subdifferential,
    hexagonal,
    l1,
    linf,
    norm_value,
    parse_norm_spec,
    subdifferential,
    unit_sphere_samples,
)
from .radon import (
    BoundaryCurve2D,
    MutualPair,
    check_gamma0_hilbert_conditions_real,
    complex_radon_orthogonal,
    day_construction,
    direct_sum_l2,
    find_mutual_pair_2d,
    nonsmooth_counterexample_check,
    verify_direct_sum_lemma,
    verify_radon_symmetry,
)
from .tolerances import DEFAULT, Tolerances

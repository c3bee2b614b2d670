"""Orthodigraphs of a few polyhedral planes and spaces: what the graph alone recovers.

Run: python3 demos/orthodigraphs.py   (DOT files land in demos/out/)
"""

from pathlib import Path

from bjortho import (
    build_orthodigraph,
    digraph_dimension,
    export_dot,
    find_maximal_faces,
    graph_fingerprint,
    hexagonal,
    l1,
    linf,
    recognize_sup_norm,
)
from bjortho.graph import classify_smooth_vertices

OUT = Path(__file__).resolve().parent / "out"


def main():
    OUT.mkdir(exist_ok=True)
    print(f"{'model':<12}{'classes':>8}{'edges':>7}{'dim':>5}{'smooth':>8}{'faces':>7}  sup norm")
    for spec in (linf(2), hexagonal(), linf(3), l1(3), linf(4)):
        g = build_orthodigraph(spec, "exact")
        rec = recognize_sup_norm(g)
        print(f"{spec.label:<12}{len(g.vertices):>8}{g.edge_count():>7}{digraph_dimension(g).value:>5}"
              f"{len(classify_smooth_vertices(g)):>8}{len(find_maximal_faces(g)):>7}  {rec['is_sup_norm']}")
    square = build_orthodigraph(linf(2), "exact", gamma0=True)
    export_dot(square, OUT / "square_gamma0.dot")
    export_dot(build_orthodigraph(hexagonal(), "exact"), OUT / "hexagon.dot")
    print("square fingerprint:", graph_fingerprint(build_orthodigraph(linf(2), "exact")))
    print("DOT files written to", OUT)


if __name__ == "__main__":
    main()

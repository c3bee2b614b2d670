"""Command-line front end.

Every command prints JSON lines (one object per check) that echo the seed and the
tolerances in force. Exit codes: 0 orthogonal / all passed, 1 not orthogonal / a check
failed, 2 bad input or other error.
"""

import argparse
import json
import sys
from fractions import Fraction

import numpy as np

from . import graph as G
from . import radon as R
from .core import is_bj_orthogonal
from .norms import NormSpecError, is_polyhedral, parse_norm_spec, spec_label, spec_to_dict
from .suite import CRITERIA, run_suite
from .tolerances import DEFAULT


DEFAULT_SAMPLES = 200


class UsageError(Exception):
    pass


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [_jsonable(v) for v in items]
    if isinstance(obj, Fraction):
        return str(obj)  # rationals travel as "p/q" strings, as in spec files
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return _jsonable(float(obj))
    if isinstance(obj, float):
        return "infinite" if obj == float("inf") else obj + 0.0
    return obj


def _strip_timing(obj):
    if isinstance(obj, dict):
        return {k: _strip_timing(v) for k, v in obj.items() if k != "seconds"}
    if isinstance(obj, list):
        return [_strip_timing(v) for v in obj]
    return obj


def parse_vector(text, exact):
    """'1,1/2,0' -> tuple. Exact specs get Fractions (decimals convert exactly);
    numeric specs take floats and reject rational literals."""
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if not parts:
        raise UsageError(f"empty vector {text!r}")
    out = []
    for p in parts:
        if "/" in p and not exact:
            raise UsageError(f"rational literal {p!r} given for a numeric norm; use a decimal")
        try:
            out.append(Fraction(p) if exact else float(p))
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"bad coordinate {p!r}") from exc
    return tuple(out)


def parse_tols(items):
    overrides = {}
    for item in items or ():
        key, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"--tol expects KEY=VALUE, got {item!r}")
        try:
            overrides[key.strip()] = float(value)
        except ValueError as exc:
            raise UsageError(f"bad tolerance value {value!r}") from exc
    try:
        return DEFAULT.with_overrides(overrides)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from exc


class Runner:
    def __init__(self, args):
        self.args = args
        self.tols = parse_tols(args.tol)
        self.out = open(args.out, "w") if getattr(args, "out", None) else sys.stdout
        self.failed = False

    def emit(self, check, **fields):
        rec = {"check": check, **fields, "seed": self.args.seed, "tolerances": self.tols.as_dict()}
        self.out.write(json.dumps(_jsonable(rec), sort_keys=True) + "\n")

    def spec(self):
        if not self.args.spec:
            raise UsageError("--spec is required")
        return parse_norm_spec(self.args.spec)

    def mode(self, spec):
        mode = self.args.mode or ("exact" if is_polyhedral(spec) else "sampled")
        if mode == "exact" and not is_polyhedral(spec):
            raise UsageError(f"{spec_label(spec)} is not polyhedral; use --mode sampled")
        return mode

    def graph(self, spec, gamma0=False):
        mode = self.mode(spec)
        count = self.args.samples or (DEFAULT_SAMPLES if mode == "sampled" else None)
        return G.build_orthodigraph(spec, mode, count, seed=self.args.seed,
                                    gamma0=gamma0, tols=self.tols), mode

    def summary(self, title, rows):
        if self.args.quiet:
            return
        width = max(len(str(k)) for k, _ in rows)
        print(title, file=sys.stderr)
        for k, v in rows:
            print(f"  {str(k):<{width}}  {v}", file=sys.stderr)


# ------------------------------------------------------------------ commands


def cmd_bj(r):
    spec = r.spec()
    exact = is_polyhedral(spec)
    if r.args.x is None or r.args.y is None:
        raise UsageError("bj needs --x and --y")
    x, y = parse_vector(r.args.x, exact), parse_vector(r.args.y, exact)
    if len(x) != spec.dim or len(y) != spec.dim:
        raise UsageError(f"vectors must have {spec.dim} coordinates")
    if not any(x):
        raise UsageError("x = 0 is excluded")
    v = is_bj_orthogonal(spec, x, y, r.tols, r.args.method)
    r.emit("bj", model=spec_label(spec), x=x, y=y, **v.to_dict())
    r.failed = not v.orthogonal


def cmd_graph(r):
    spec = r.spec()
    g, mode = r.graph(spec, gamma0=r.args.gamma0)
    if r.args.dot:
        G.export_dot(g, r.args.dot)
    fp = G.graph_fingerprint(g)
    r.emit("graph", model=spec_label(spec), mode=mode, vertices=g.size, edges=g.edge_count(),
           loops=g.loops(), fingerprint=fp, spec=spec_to_dict(spec))
    r.summary(f"orthodigraph of {spec_label(spec)} ({mode})",
              [("vertices", g.size), ("edges", g.edge_count()), ("dim", fp["dim"])])


def cmd_dim(r):
    spec = r.spec()
    g, mode = r.graph(spec)
    d = G.digraph_dimension(g)
    agree = d.gamma0_value == d.gamma_value
    r.emit("dim", model=spec_label(spec), mode=mode, **d.to_dict(), conventions_agree=agree)
    r.failed = not agree
    r.summary("dimension", [("model", spec_label(spec)), ("dim", d.to_dict()["dim"])])


def cmd_smooth(r):
    spec = r.spec()
    g, mode = r.graph(spec)
    if mode == "exact":
        smooth = G.classify_smooth_vertices(g)
    else:
        smooth = {i for i, v in enumerate(g.vertices) if v.smooth}
    labels = [g.vertices[i].label for i in sorted(smooth)] if mode == "exact" else None
    r.emit("smooth", model=spec_label(spec), mode=mode, classes=len(g.vertices),
           smooth=len(smooth), smooth_labels=labels)
    r.summary("smooth vertices", [("classes", len(g.vertices)), ("smooth", len(smooth))])


def cmd_faces(r):
    spec = r.spec()
    g, mode = r.graph(spec)
    if mode != "exact":
        raise UsageError("faces needs a polyhedral norm (exact mode)")
    faces = G.find_maximal_faces(g)
    named = [[g.vertices[i].label for i in sorted(f)] for f in faces]
    r.emit("faces", model=spec_label(spec), count=len(faces), faces=named)
    r.summary("maximal faces", [(k, ", ".join(f)) for k, f in enumerate(named)])


def cmd_recognize(r):
    spec = r.spec()
    g, _ = r.graph(spec)
    res = G.recognize_sup_norm(g)
    r.emit("recognize", model=spec_label(spec), is_sup_norm=res["is_sup_norm"],
           count=res["smooth_neighborhood_count"], dim=res["dim"], mode=res["mode"])
    r.summary("sup-norm recognition", [("is_sup_norm", res["is_sup_norm"]),
                                       ("count", res["smooth_neighborhood_count"]), ("dim", res["dim"])])


def cmd_polyhedral(r):
    spec = r.spec()
    res = G.polyhedrality_verdict(spec, seed=r.args.seed, tols=r.tols)
    r.emit("polyhedral", **res)


def cmd_radon(r):
    spec = r.spec()
    if spec.dim != 2:
        raise UsageError("radon checks need a plane norm")
    count = r.args.samples or 1000
    sym = R.verify_radon_symmetry(spec, count, r.args.seed, r.tols.radon, r.tols)
    r.emit("radon_symmetry", **sym)
    rows = [("symmetric", sym["symmetric"]), ("max asymmetry", sym["max_asymmetry"])]
    if sym["symmetric"]:
        h = R.check_gamma0_hilbert_conditions_real(spec, tols=r.tols)
        r.emit("hilbert_conditions", **h)
        rows.append(("hilbert conditions", h["verdict"]))
    r.summary(f"Radon checks for {spec_label(spec)}", rows)


def cmd_day(r):
    spec = r.spec()
    curve = R.day_construction(spec, tols=r.tols)
    if r.args.csv:
        curve.to_csv(r.args.csv, r.args.samples or 2000)
    r.emit("day", seed_model=spec_label(spec), model=spec_label(curve.spec),
           pair=[list(v) for v in curve.spec.pair], convex=curve.is_convex(),
           symmetric=curve.is_symmetric(), spec=spec_to_dict(curve.spec))


def cmd_suite(r):
    ids = sorted(CRITERIA) if r.args.all or not r.args.criterion else sorted(set(r.args.criterion))
    unknown = [i for i in ids if i not in CRITERIA]
    if unknown:
        raise UsageError(f"unknown criteria {unknown}")
    records = run_suite(ids, seed=r.args.seed, jobs=r.args.jobs)
    rows = []
    for rec in records:
        timing = rec.get("seconds")
        if not r.args.timings:
            rec = _strip_timing(rec)
        r.emit("criterion", **rec)
        rows.append((f"{rec['id']:>2} {rec['name']}", ("PASS" if rec["passed"] else "FAIL")
                     + (f"  {timing:.2f}s" if timing is not None else "")))
    r.failed = not all(rec["passed"] for rec in records)
    r.emit("suite", passed=not r.failed, total=len(records),
           failures=[rec["id"] for rec in records if not rec["passed"]])
    r.summary("acceptance suite", rows)


COMMANDS = {
    "bj": (cmd_bj, "BJ-orthogonality verdict for x and y"),
    "graph": (cmd_graph, "build the orthodigraph; fingerprint and optional DOT export"),
    "dim": (cmd_dim, "dimension read off the orthodigraph"),
    "smooth": (cmd_smooth, "smooth vertices of the orthodigraph"),
    "faces": (cmd_faces, "maximal faces from the orthodigraph (polyhedral norms)"),
    "recognize": (cmd_recognize, "is the norm a sup norm up to a linear bijection"),
    "polyhedral": (cmd_polyhedral, "count distinct outgoing neighborhoods"),
    "radon": (cmd_radon, "Radon symmetry and Hilbert-plane conditions (plane norms)"),
    "day": (cmd_day, "Radon plane built from a plane seed norm"),
    "suite": (cmd_suite, "run the acceptance criteria"),
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--spec", help="norm spec: JSON file path or inline JSON")
    common.add_argument("--mode", choices=("exact", "sampled"))
    common.add_argument("--samples", type=int, default=None)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--tol", action="append", metavar="KEY=V", help="tolerance override")
    common.add_argument("--out", help="write JSON lines here instead of stdout")
    common.add_argument("--quiet", action="store_true", help="no summary table on stderr")

    p = argparse.ArgumentParser(prog="bjortho", description="Birkhoff-James orthogonality toolkit")
    sub = p.add_subparsers(dest="command", required=True)
    parsers = {name: sub.add_parser(name, parents=[common], help=h) for name, (_, h) in COMMANDS.items()}
    parsers["bj"].add_argument("--x")
    parsers["bj"].add_argument("--y")
    parsers["bj"].add_argument("--method", default="auto", choices=("auto", "explicit", "grid", "fd"))
    parsers["graph"].add_argument("--dot", help="write the graph in DOT format")
    parsers["graph"].add_argument("--gamma0", action="store_true", help="include the zero vertex")
    parsers["day"].add_argument("--csv", help="write the boundary curve as (theta, x, y) rows")
    s = parsers["suite"]
    s.add_argument("--all", action="store_true")
    s.add_argument("--criterion", type=int, action="append", help="run only this criterion (repeatable)")
    s.add_argument("--jobs", type=int, default=1, help="worker processes")
    s.add_argument("--timings", action="store_true", help="include wall-clock times in the report")
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        runner = Runner(args)
        try:
            COMMANDS[args.command][0](runner)
        finally:
            if runner.out is not sys.stdout:
                runner.out.close()
    except (UsageError, NormSpecError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 1 if runner.failed else 0


if __name__ == "__main__":
    sys.exit(main())

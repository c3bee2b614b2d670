"""The acceptance checks, one function per criterion.

Every check takes a seed and returns a record {id, name, passed, details}. The CLI runs
them (optionally in a process pool); tests/test_acceptance.py runs each as one test.
"""

import hashlib
import time
from fractions import Fraction

import numpy as np

from .core import bj_equivalent, is_bj_norm_sampled, is_bj_orthogonal, is_smooth, neighborhood_descriptor
from .graph import (
    build_orthodigraph,
    classify_smooth_vertices,
    digraph_dimension,
    facet_class_sets,
    find_maximal_faces,
    polyhedrality_verdict,
    recognize_sup_norm,
)
from .norms import (
    XI0,
    AbsoluteRadon,
    BJExampleR3,
    Lp,
    Polyhedral,
    eta,
    eta_prime,
    eta_second,
    hexagonal,
    is_polyhedral,
    l1,
    linf,
    spec_label,
    subdifferential,
)
from .oracle import oracle_orthogonal
from .radon import (
    check_gamma0_hilbert_conditions_real,
    day_construction,
    nonsmooth_counterexample_check,
    verify_direct_sum_lemma,
    verify_radon_symmetry,
)
from .tolerances import DEFAULT


def item_seed(master, name):
    """Per-item seed derived from (master seed, item name); independent of run order."""
    h = hashlib.sha256(f"{master}:{name}".encode()).digest()
    return int.from_bytes(h[:4], "little")


def _record(cid, name, passed, **details):
    return {"id": cid, "name": name, "passed": bool(passed), "details": details}


# ------------------------------------------------------------- 1. oracle


def oracle_pairs(spec, count, seed):
    """Seeded (x, y) pairs mixing generic directions with near-boundary cases.

    Polyhedral: small integer vectors (exact arithmetic, many exactly orthogonal pairs).
    Others: generic y, y in the kernel of a supporting functional of x, that kernel
    direction pushed by 1e-2, plus model-specific structured points.
    """
    rng = np.random.default_rng(seed)
    n = spec.dim
    pairs = []
    if is_polyhedral(spec):
        while len(pairs) < count:
            x = tuple(int(c) for c in rng.integers(-3, 4, n))
            y = tuple(int(c) for c in rng.integers(-3, 4, n))
            if any(x):
                pairs.append((tuple(Fraction(c) for c in x), tuple(Fraction(c) for c in y)))
        return pairs
    structured = []
    if isinstance(spec, AbsoluteRadon):
        for s in np.linspace(-0.6, 0.6, 25):
            structured.append((np.array([1.0, 0.0]), np.array([s, 1.0])))
            structured.append((np.array([s, 1.0]), np.array([1.0, 0.0])))
    if isinstance(spec, BJExampleR3):
        for _ in range(30):
            eps = 10.0 ** rng.uniform(-6, -1)
            x = np.array([eps * rng.standard_normal(), eps * rng.standard_normal(), rng.choice([-1.0, 1.0])])
            structured.append((x, rng.standard_normal(3)))
            structured.append((x, np.array([rng.standard_normal(), rng.standard_normal(), 0.5 * rng.uniform(-1, 1)])))
    pairs.extend(structured[: count // 5])
    while len(pairs) < count:
        x = rng.standard_normal(n)
        kind = len(pairs) % 3
        if kind == 0:
            y = rng.standard_normal(n)
        else:
            sd = subdifferential(spec, x)
            f = sd.vertices[0] if sd.is_singleton else sd.pick(rng.standard_normal(n))
            f = np.asarray(sd.vertices[0] if f is None else f, float)
            basis = np.linalg.svd(f.reshape(1, -1))[2][1:]
            y = basis.T @ rng.standard_normal(len(basis))
            if kind == 2:
                y = y + 1e-2 * rng.standard_normal(n)
        pairs.append((x, y))
    return pairs


ORACLE_MODELS = (linf(2), linf(3), l1(3), hexagonal(), Lp(2, 2), Lp(4, 2), BJExampleR3(), AbsoluteRadon())


def criterion_oracle_equivalence(seed=0, pairs_per_model=1000, tol=1e-7):
    t0 = time.time()
    tols = DEFAULT.with_overrides({"ortho": tol})
    per_model, bad = {}, []
    for spec in ORACLE_MODELS:
        pairs = oracle_pairs(spec, pairs_per_model, item_seed(seed, spec_label(spec)))
        dis = orth = 0
        for x, y in pairs:
            v = bool(is_bj_orthogonal(spec, x, y, tols))
            o = oracle_orthogonal(spec, [float(c) for c in x], [float(c) for c in y], slope=tol)
            orth += v
            if v != o:
                dis += 1
                if len(bad) < 5:
                    bad.append({"model": spec_label(spec), "x": [float(c) for c in x],
                                "y": [float(c) for c in y], "verdict": v, "oracle": o})
        per_model[spec_label(spec)] = {"pairs": len(pairs), "orthogonal": orth, "disagreements": dis}
    elapsed = time.time() - t0
    total = sum(m["disagreements"] for m in per_model.values())
    return _record(1, "BJ-oracle equivalence", total == 0 and elapsed < 60.0,
                   models=per_model, disagreements=total, examples=bad, seconds=round(elapsed, 2),
                   tolerance=tol)


# ----------------------------------------------------------- 2. dimension


def criterion_dimension(seed=0, samples=200):
    rows = []
    for n in (2, 3, 4):
        for spec in (linf(n), l1(n)):
            d = digraph_dimension(build_orthodigraph(spec, "exact"))
            rows.append((spec_label(spec), "exact", n, d.value, d.gamma0_value == d.gamma_value))
        for p in (2, 4):
            spec = Lp(p, n)
            g = build_orthodigraph(spec, "sampled", samples, seed=item_seed(seed, spec_label(spec)))
            d = digraph_dimension(g)
            rows.append((spec_label(spec), "sampled", n, d.value, d.gamma0_value == d.gamma_value))
    ok = all(val == n and agree for _, _, n, val, agree in rows)
    return _record(2, "Dimension formula", ok,
                   results=[{"model": m, "mode": mode, "expected": n, "dim": val} for m, mode, n, val, _ in rows])


# ------------------------------------------------------- 3. sup norm


def random_linear_image_of_linf(n, seed):
    """Polyhedral spec of x -> ||A x||_inf for a random invertible integer matrix A."""
    rng = np.random.default_rng(seed)
    while True:
        A = rng.integers(-3, 4, (n, n))
        if round(abs(np.linalg.det(A))) != 0:
            break
    rows = [tuple(int(c) for c in r) for r in A]
    dual = rows + [tuple(-c for c in r) for r in rows]
    return Polyhedral(tuple(tuple(Fraction(c) for c in f) for f in dual), name="linear image of Lp{inf,3}"), A


def criterion_sup_norm(seed=0, samples=200):
    image, A = random_linear_image_of_linf(3, item_seed(seed, "image"))
    cases = [(linf(2), True), (linf(3), True), (linf(4), True), (image, True),
             (l1(3), False), (hexagonal(), False)]
    results = []
    for spec, want in cases:
        r = recognize_sup_norm(build_orthodigraph(spec, "exact"))
        results.append({"model": spec_label(spec), "expected": want, **r})
    lp = Lp(2, 3)
    r = recognize_sup_norm(build_orthodigraph(lp, "sampled", samples, seed=item_seed(seed, "lp")))
    results.append({"model": spec_label(lp), "expected": False, **r})
    ok = all(r["is_sup_norm"] == r["expected"] for r in results)
    ok = ok and results[4]["smooth_neighborhood_count"] == 4 and results[5]["smooth_neighborhood_count"] == 3
    ok = ok and results[-1]["smooth_neighborhood_count"] > 3
    return _record(3, "Sup-norm recognition", ok, results=results, image_matrix=A.tolist())


# --------------------------------------------------- 4. smooth vertices


def criterion_smooth_classification(seed=0, samples=200):
    results = []
    for spec in (linf(3), l1(3), hexagonal()):
        g = build_orthodigraph(spec, "exact")
        got = classify_smooth_vertices(g)
        truth = {v.index for v in g.vertices if is_smooth(spec, v.representative)}
        results.append({"model": spec_label(spec), "classes": len(g.vertices), "smooth": len(got),
                        "misclassified": len(got ^ truth)})
    g = build_orthodigraph(Lp(2, 3), "sampled", samples, seed=item_seed(seed, "lp"))
    got = classify_smooth_vertices(g)
    results.append({"model": "Lp{2,3}", "classes": len(g.vertices), "smooth": len(got),
                    "misclassified": len(g.vertices) - len(got)})
    return _record(4, "Smooth-vertex classification", all(r["misclassified"] == 0 for r in results),
                   results=results)


# ------------------------------------------------------- 5. maximal faces


def criterion_maximal_faces(seed=0):
    results = []
    for spec, want in ((linf(3), 3), (l1(3), 4), (hexagonal(), 3)):
        g = build_orthodigraph(spec, "exact")
        faces = find_maximal_faces(g)
        results.append({"model": spec_label(spec), "expected": want, "found": len(faces),
                        "match_facets": faces == facet_class_sets(g)})
    ok = all(r["found"] == r["expected"] and r["match_facets"] for r in results)
    return _record(5, "Maximal faces", ok, results=results)


# --------------------------------------------------------- 6. Radon


def criterion_radon_symmetry(seed=0, pairs=1000, tol=1e-6):
    ar = verify_radon_symmetry(AbsoluteRadon(), pairs, item_seed(seed, "absolute"), tol)
    hx = verify_radon_symmetry(hexagonal())
    lp = verify_radon_symmetry(Lp(4, 2), pairs, item_seed(seed, "lp4"), tol)
    day = day_construction(linf(2))
    dy = verify_radon_symmetry(day.spec, pairs, item_seed(seed, "day"), tol)
    lp_ok = (not lp["symmetric"]) and lp["counterexample"]["x"] == [2.0, 1.0] \
        and lp["counterexample"]["y"] == [1.0, -8.0]
    ok = ar["symmetric"] and ar["max_asymmetry"] <= tol and hx["symmetric"] and hx["exact"] \
        and lp_ok and dy["symmetric"] and dy["max_asymmetry"] <= tol
    return _record(6, "Radon symmetry", ok, absolute_radon=ar, hexagonal=hx, lp4=lp,
                   day_linf2=dy, day_pair=[list(v) for v in day.spec.pair])


# ----------------------------------------------------- 7. absolute Radon


def criterion_absolute_radon(seed=0, points=100):
    rng = np.random.default_rng(item_seed(seed, "xi"))
    fixed = {"eta(1/e)": abs(eta(XI0) - 1.0), "eta(1)": abs(eta(1.0)), "eta'(1/e)": abs(eta_prime(XI0))}
    xis = rng.uniform(XI0, 1.0, points)
    ode = np.abs(xis ** 2 * eta_second(xis) - xis * eta_prime(xis) + eta(xis))
    alpha = XI0 / xis
    functional = np.abs(eta(alpha) + alpha * eta_prime(xis))
    spec = AbsoluteRadon()
    worst = 0.0
    mutual = 0
    for xi in rng.uniform(XI0, 1.0, points):
        al = XI0 / xi
        x = np.array([xi, eta(xi)])
        y = np.array([al, al * eta_prime(xi)])
        f = is_bj_orthogonal(spec, x, y)
        b = is_bj_orthogonal(spec, y, x)
        worst = max(worst, f.margin, b.margin)
        mutual += f.margin <= 1e-8 and b.margin <= 1e-8
    ok = max(fixed.values()) <= 1e-12 and ode.max() <= 1e-12 and mutual == points
    return _record(7, "AbsoluteRadon analytics", ok, fixed={k: float(v) for k, v in fixed.items()},
                   ode_max=float(ode.max()), reflection_identity_max=float(functional.max()),
                   mutual_pairs=int(mutual), worst_margin=float(worst))


# ------------------------------------------------ 8. Hilbert conditions


def criterion_hilbert_conditions(seed=0):
    ar = check_gamma0_hilbert_conditions_real(AbsoluteRadon())
    hx = check_gamma0_hilbert_conditions_real(hexagonal())
    return _record(8, "Hilbert-isomorphism conditions", ar["verdict"] and not hx["verdict"],
                   absolute_radon=ar["verdict"], hexagonal=hx["verdict"],
                   absolute_radon_segments=ar["segments"])


# ------------------------------------------------ 9. BJ-equivalence


def criterion_bj_equivalence(seed=0, samples=1000):
    spec = linf(3)
    x = (Fraction(1), Fraction(1, 2), Fraction(0))
    y = (Fraction(1), Fraction(1, 3), Fraction(0))
    same_out = neighborhood_descriptor(spec, x, "outgoing") == neighborhood_descriptor(spec, y, "outgoing")
    same_in = neighborhood_descriptor(spec, x, "incoming") == neighborhood_descriptor(spec, y, "incoming")
    independent = x[1] != y[1]
    cube = is_bj_norm_sampled(spec, 200, item_seed(seed, "cube"))
    r3 = is_bj_norm_sampled(BJExampleR3(), samples, item_seed(seed, "r3"))
    lp = is_bj_norm_sampled(Lp(2, 3), samples, item_seed(seed, "lp"))
    ok = same_out and same_in and independent and bj_equivalent(spec, x, y) \
        and cube["violation"] and not r3["violation"] and not lp["violation"]
    return _record(9, "BJ-equivalence counterexample", ok, equal_outgoing=same_out, equal_incoming=same_in,
                   linf3=cube, bj_example_r3=r3, lp23=lp)


# --------------------------------------------------- 10. direct sums


def criterion_direct_sum(seed=0, samples=1000, tol=1e-7):
    r = verify_direct_sum_lemma(AbsoluteRadon(), Lp(2, 1), samples, item_seed(seed, "sum"), tol)
    ex = nonsmooth_counterexample_check(seed=item_seed(seed, "example"))
    return _record(10, "Direct-sum orthogonality", r["passed"] and ex["passed"], lemma=r, example=ex)


# ------------------------------------------------- 11. polyhedrality


def criterion_polyhedrality(seed=0):
    exact = {}
    for spec in (linf(2), hexagonal(), linf(3), l1(3)):
        exact[spec_label(spec)] = polyhedrality_verdict(spec)["count"]
    lp = polyhedrality_verdict(Lp(2, 2), seed=item_seed(seed, "lp"))
    counts = lp["counts"]
    growing = counts[100] < counts[1000] < counts[10000]
    ok = exact["Lp{inf,2}"] == 4 and exact["Hexagonal"] == 6 and growing \
        and counts[10000] > 0.9 * 10000 and lp["verdict"] == "not polyhedral"
    return _record(11, "Polyhedrality", ok, exact_counts=exact, lp22_counts=counts, lp22_verdict=lp["verdict"])


CRITERIA = {
    1: criterion_oracle_equivalence,
    2: criterion_dimension,
    3: criterion_sup_norm,
    4: criterion_smooth_classification,
    5: criterion_maximal_faces,
    6: criterion_radon_symmetry,
    7: criterion_absolute_radon,
    8: criterion_hilbert_conditions,
    9: criterion_bj_equivalence,
    10: criterion_direct_sum,
    11: criterion_polyhedrality,
}


def run_criterion(cid, seed=0):
    t0 = time.time()
    rec = CRITERIA[cid](seed=seed)
    rec["seconds"] = round(time.time() - t0, 2)
    return rec


def run_suite(ids=None, seed=0, jobs=1):
    ids = sorted(ids or CRITERIA)
    if jobs <= 1:
        return [run_criterion(i, seed) for i in ids]
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(run_criterion, ids, [seed] * len(ids)))

"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line."""

import pytest

from bjortho import suite

SEED = 0


@pytest.fixture
def report(capsys):
    def emit(rec, measure):
        with capsys.disabled():
            status = "PASS" if rec["passed"] else "FAIL"
            print(f"\n[acceptance {rec['id']:>2}] {status}  {rec['name']}: {measure}")
    return emit


def test_01_oracle_equivalence(report):
    rec = suite.run_criterion(1, SEED)
    d = rec["details"]
    report(rec, f"{d['disagreements']} disagreements over {sum(m['pairs'] for m in d['models'].values())} "
                f"pairs at margin tol {d['tolerance']:g}; {d['seconds']:.1f}s (budget 60s)")
    assert d["disagreements"] == 0, d["examples"]
    assert d["seconds"] < 60.0
    assert rec["passed"]


def test_02_dimension(report):
    rec = suite.run_criterion(2, SEED)
    rows = rec["details"]["results"]
    bad = [r for r in rows if r["dim"] != r["expected"]]
    report(rec, f"{len(rows) - len(bad)}/{len(rows)} models with dim == n (integer match)")
    assert rec["passed"], bad


def test_03_sup_norm(report):
    rec = suite.run_criterion(3, SEED)
    rows = rec["details"]["results"]
    summary = ", ".join(f"{r['model']}:{r['smooth_neighborhood_count']}/{r['dim']}" for r in rows)
    report(rec, f"count/dim {summary}")
    assert rec["passed"], rows


def test_04_smooth_classification(report):
    rec = suite.run_criterion(4, SEED)
    rows = rec["details"]["results"]
    report(rec, f"{sum(r['misclassified'] for r in rows)} misclassified classes (exact zero required)")
    assert rec["passed"], rows


def test_05_maximal_faces(report):
    rec = suite.run_criterion(5, SEED)
    rows = rec["details"]["results"]
    report(rec, ", ".join(f"{r['model']}:{r['found']} (want {r['expected']})" for r in rows))
    assert rec["passed"], rows


def test_06_radon_symmetry(report):
    rec = suite.run_criterion(6, SEED)
    d = rec["details"]
    report(rec, f"AbsoluteRadon {d['absolute_radon']['max_asymmetry']:.2e}, "
                f"Day(Lp{{inf,2}}) {d['day_linf2']['max_asymmetry']:.2e} (tol 1e-06); "
                f"Hexagonal exact={d['hexagonal']['symmetric']}; Lp{{4,2}} counterexample "
                f"{d['lp4']['counterexample']}")
    assert rec["passed"], d


def test_07_absolute_radon_analytics(report):
    rec = suite.run_criterion(7, SEED)
    d = rec["details"]
    report(rec, f"identities max {max(d['fixed'].values()):.1e}, ODE max {d['ode_max']:.1e} (tol 1e-12); "
                f"{d['mutual_pairs']}/100 mutual pairs, worst margin {d['worst_margin']:.1e} (tol 1e-08)")
    assert rec["passed"], d


def test_08_hilbert_conditions(report):
    rec = suite.run_criterion(8, SEED)
    d = rec["details"]
    report(rec, f"AbsoluteRadon {d['absolute_radon']} (want True), Hexagonal {d['hexagonal']} (want False)")
    assert rec["passed"], d


def test_09_bj_equivalence(report):
    rec = suite.run_criterion(9, SEED)
    d = rec["details"]
    report(rec, f"descriptors equal out/in {d['equal_outgoing']}/{d['equal_incoming']}; violations "
                f"Lp{{inf,3}} {d['linf3']['violation']}, BJExampleR3 {d['bj_example_r3']['violation']}, "
                f"Lp{{2,3}} {d['lp23']['violation']}")
    assert rec["passed"], d


def test_10_direct_sum(report):
    rec = suite.run_criterion(10, SEED)
    d = rec["details"]
    report(rec, f"{d['lemma']['failures']} failures in {d['lemma']['samples']} checks at tol 1e-07; "
                f"example assertions {d['example']['passed']}")
    assert rec["passed"], d


def test_11_polyhedrality(report):
    rec = suite.run_criterion(11, SEED)
    d = rec["details"]
    report(rec, f"exact counts {d['exact_counts']}; Lp{{2,2}} counts {d['lp22_counts']} (need > 9000 at 10^4)")
    assert rec["passed"], d

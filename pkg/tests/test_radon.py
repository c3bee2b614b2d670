import csv
import math

import numpy as np
import pytest

from bjortho.core import directional_derivative, is_bj_orthogonal, is_smooth
from bjortho.norms import XI0, AbsoluteRadon, DayRadon, Lp, hexagonal, linf, norms
from bjortho.oracle import oracle_orthogonal
from bjortho.radon import (
    check_gamma0_hilbert_conditions_real,
    complex_radon_orthogonal,
    day_construction,
    direct_sum_l2,
    find_mutual_pair_2d,
    nonsmooth_counterexample_check,
    verify_direct_sum_lemma,
    verify_radon_symmetry,
)


def _mutual(spec, x, y):
    return bool(is_bj_orthogonal(spec, x, y)) and bool(is_bj_orthogonal(spec, y, x))


def test_mutual_pairs():
    mp = find_mutual_pair_2d(Lp(2, 2))
    assert abs(np.dot(mp.x, mp.y)) <= 1e-9
    # the corner diagonals of the square are mutually orthogonal (line oracle confirms)
    assert oracle_orthogonal(linf(2), (1.0, 1.0), (1.0, -1.0))
    assert oracle_orthogonal(linf(2), (1.0, -1.0), (1.0, 1.0))
    for spec in (linf(2), hexagonal(), Lp(4, 2), AbsoluteRadon()):
        mp = find_mutual_pair_2d(spec)
        assert _mutual(spec, mp.x, mp.y)


def test_absolute_radon_mutual_family():
    spec = AbsoluteRadon()
    for xi in np.linspace(XI0 + 1e-3, 1 - 1e-3, 25):
        x = (xi, -math.e * xi * math.log(xi))
        a = XI0 / xi
        y = (a, a * (-math.e * (math.log(xi) + 1)))
        assert _mutual(spec, x, y)
        assert oracle_orthogonal(spec, x, y) and oracle_orthogonal(spec, y, x)


def test_absolute_radon_nonsmooth_structure():
    spec = AbsoluteRadon()
    th = np.linspace(0, 2 * math.pi, 721)[:-1]
    dirs = np.column_stack([np.cos(th), np.sin(th)])
    pts = dirs / norms(spec, dirs)[:, None]
    rough = [p for p in pts if not is_smooth(spec, p)]
    assert len(rough) == 2
    assert np.allclose(sorted(abs(p[0]) for p in rough), [1.0, 1.0])
    # (1,0)-perp is the line field through the flat top {(s,1): |s| <= 1/e}
    for s in (0.0, 0.2, -0.36, XI0 - 1e-9):
        assert is_bj_orthogonal(spec, (1.0, 0.0), (s, 1.0))
    for s in (0.38, -0.5, 1.0):
        assert not is_bj_orthogonal(spec, (1.0, 0.0), (s, 1.0))
        assert not oracle_orthogonal(spec, (1.0, 0.0), (s, 1.0))


def test_day_construction_from_euclidean_is_circle():
    curve = day_construction(Lp(2, 2))
    rows = curve.sample(500)
    assert np.allclose(np.hypot(rows[:, 1], rows[:, 2]), 1.0, atol=1e-12)


@pytest.mark.parametrize("seed", [linf(2), Lp(4, 2), AbsoluteRadon()], ids=str)
def test_day_construction_is_radon(seed):
    curve = day_construction(seed)
    assert curve.is_convex() and curve.is_symmetric()
    r = verify_radon_symmetry(curve.spec, 1000, seed=0)
    assert r["symmetric"] and r["max_asymmetry"] <= 1e-6


def test_day_construction_square_diagonals():
    curve = day_construction(linf(2), pair=((1, 1), (1, -1)))
    assert isinstance(curve.spec, DayRadon)
    assert verify_radon_symmetry(curve.spec, 500, seed=1)["symmetric"]


def test_day_square_equals_hexagon():
    spec = day_construction(linf(2)).spec
    rng = np.random.default_rng(0)
    X = rng.standard_normal((500, 2))
    assert np.allclose(norms(spec, X), norms(hexagonal(), X), rtol=1e-12)


def test_boundary_csv(tmp_path):
    curve = day_construction(linf(2))
    curve.to_csv(tmp_path / "c.csv", count=50)
    with open(tmp_path / "c.csv") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["theta", "x", "y"] and len(rows) == 51


def test_radon_symmetry_reports():
    r = verify_radon_symmetry(AbsoluteRadon(), 1000, seed=0)
    assert r["symmetric"] and r["max_asymmetry"] <= 1e-6
    r = verify_radon_symmetry(hexagonal())
    assert r["symmetric"] and r["exact"]
    r = verify_radon_symmetry(Lp(4, 2), 1000, seed=0)
    assert not r["symmetric"]
    assert r["counterexample"]["x"] == [2.0, 1.0] and r["counterexample"]["y"] == [1.0, -8.0]
    assert not verify_radon_symmetry(linf(2))["symmetric"]


def test_hilbert_conditions():
    r = check_gamma0_hilbert_conditions_real(AbsoluteRadon())
    assert r["verdict"] and len(r["segments"]) == 2
    for seg in r["segments"]:
        for p in seg["endpoints"]:
            assert abs(abs(p[0]) - XI0) <= 1e-6 and abs(abs(p[1]) - 1.0) <= 1e-9
    assert not check_gamma0_hilbert_conditions_real(hexagonal())["verdict"]
    r = check_gamma0_hilbert_conditions_real(Lp(2, 2))
    assert r["verdict"] and r["segments"] == []
    with pytest.raises(ValueError):
        check_gamma0_hilbert_conditions_real(Lp(4, 2))


def test_complex_radon_orthogonal_examples():
    assert complex_radon_orthogonal(1, 0, 0, 1)
    assert complex_radon_orthogonal(1, 0, 0.2 + 0.1j, 1)
    assert complex_radon_orthogonal(1, 0, 1 / math.e, 1)
    assert not complex_radon_orthogonal(1, 0, 0.5, 1)


def test_euclidean_direct_sum():
    spec = direct_sum_l2(Lp(2, 2), Lp(2, 1))
    rng = np.random.default_rng(3)
    X = rng.standard_normal((200, 3))
    assert np.allclose(norms(spec, X), np.linalg.norm(X, axis=1), rtol=1e-13)
    for _ in range(100):
        x, y = rng.standard_normal(3), rng.standard_normal(3)
        y = y - (x @ y) / (x @ x) * x if rng.random() < 0.5 else y
        assert is_bj_orthogonal(spec, x, y).orthogonal == (abs(x @ y) <= 1e-9 * np.linalg.norm(x) * np.linalg.norm(y))


def test_direct_sum_derivative_identity():
    left = AbsoluteRadon()
    spec = direct_sum_l2(left, Lp(2, 1))
    rng = np.random.default_rng(4)
    for _ in range(200):
        x = rng.standard_normal(2)
        y, z = rng.standard_normal(2), rng.standard_normal()
        for side in "+-":
            lifted = directional_derivative(spec, (*x, 0.0), (*y, z), side, method="fd", warn=False)
            plain = directional_derivative(left, x, y, side)
            assert lifted == pytest.approx(plain, abs=1e-6)


def test_direct_sum_lemma():
    r = verify_direct_sum_lemma(AbsoluteRadon(), Lp(2, 1), samples=300, seed=2)
    assert r["passed"] and r["failures"] == 0


def test_nonsmooth_counterexample():
    r = nonsmooth_counterexample_check()
    assert r["x_nonsmooth"] and r["intersection_is_FI"]
    assert r["FI_is_BJ_set"] and r["final_intersection_trivial"] and r["passed"]

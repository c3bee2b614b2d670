import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bjortho.norms import (
    E,
    XI0,
    AbsoluteRadon,
    BJExampleR3,
    ComplexRadon,
    DirectSumL2,
    Lp,
    NormSpecError,
    Polyhedral,
    eta,
    eta_prime,
    eta_second,
    hexagonal,
    l1,
    linf,
    norm_value,
    norms,
    parse_norm_spec,
    spec_from_dict,
    spec_to_dict,
    subdifferential,
    unit_sphere_samples,
)
from bjortho.oracle import absolute_radon_norm_bisection

FLOAT_MODELS = [Lp(2, 3), Lp(4, 2), Lp(1.5, 3), AbsoluteRadon(), BJExampleR3(), ComplexRadon(),
                DirectSumL2(AbsoluteRadon(), Lp(2, 1))]
EXACT_MODELS = [linf(2), linf(3), l1(3), hexagonal()]


def test_norm_value_examples():
    assert norm_value(linf(3), (1, -2, 0.5)) == 2
    assert norm_value(linf(3), (Fraction(1), Fraction(-2), Fraction(1, 2))) == Fraction(2)
    assert norm_value(BJExampleR3(), (1, 0, 0)) == pytest.approx(math.sqrt(2), rel=1e-12)
    assert norm_value(AbsoluteRadon(), (1 / E, 1)) == pytest.approx(1.0, rel=1e-12)
    assert norm_value(AbsoluteRadon(), (2 / E, 2)) == pytest.approx(2.0, rel=1e-12)


def test_absolute_radon_matches_bisection_oracle():
    # bisection on the ray scaling, frozen
    frozen = {(0.5, 0.8): 0.9007386998637231, (0.9, 0.3): 1.017415883087597,
              (-0.2, 1.5): 1.5, (3.0, 1.0): 3.391386276958656}
    for (a, b), want in frozen.items():
        assert norm_value(AbsoluteRadon(), (a, b)) == pytest.approx(want, rel=1e-11)
    rng = np.random.default_rng(5)
    for a, b in rng.standard_normal((200, 2)):
        assert norm_value(AbsoluteRadon(), (a, b)) == pytest.approx(absolute_radon_norm_bisection(a, b), rel=1e-11)


def test_bj_example_r3_branches_agree_on_cone():
    spec = BJExampleR3()
    rng = np.random.default_rng(2)
    for th in rng.uniform(0, 2 * math.pi, 50):
        r = rng.uniform(0.1, 3)
        for z in (r, -r):
            p = (r * math.cos(th), r * math.sin(th), z)
            inside = math.sqrt(2) * math.sqrt(r * r + z * z)
            outside = r + abs(z)
            assert inside == pytest.approx(outside, rel=1e-12)
            assert norm_value(spec, p) == pytest.approx(outside, rel=1e-12)
    assert norm_value(spec, (0.3, 0.4, 2.0)) == pytest.approx(2.5)
    assert norm_value(spec, (0.3, 0.4, 0.2)) == pytest.approx(math.sqrt(2) * math.sqrt(0.29))


@pytest.mark.parametrize("spec", FLOAT_MODELS + EXACT_MODELS, ids=lambda s: type(s).__name__ + str(s.dim))
def test_triangle_inequality_and_homogeneity(spec):
    rng = np.random.default_rng(11)
    X = rng.standard_normal((10000, spec.dim))
    Y = rng.standard_normal((10000, spec.dim))
    nx, ny, nxy = norms(spec, X), norms(spec, Y), norms(spec, X + Y)
    assert np.all(nxy <= nx + ny + 1e-10)
    t = rng.uniform(-5, 5, 10000)
    assert np.allclose(norms(spec, t[:, None] * X), np.abs(t) * nx, rtol=1e-10, atol=0)


@given(st.lists(st.integers(-20, 20), min_size=3, max_size=3), st.fractions(-5, 5))
@settings(max_examples=60, deadline=None)
def test_exact_homogeneity(v, t):
    x = tuple(Fraction(c) for c in v)
    for spec in (linf(3), l1(3)):
        assert norm_value(spec, tuple(t * c for c in x)) == abs(t) * norm_value(spec, x)


@pytest.mark.parametrize("spec", FLOAT_MODELS + EXACT_MODELS, ids=lambda s: type(s).__name__ + str(s.dim))
def test_supporting_functionals(spec):
    rng = np.random.default_rng(3)
    probes = rng.standard_normal((1000, spec.dim))
    pnorm = norms(spec, probes)
    for x in rng.standard_normal((15, spec.dim)):
        if spec in EXACT_MODELS:
            x = tuple(Fraction(int(round(4 * c)), 2) for c in x)
            if not any(x):
                continue
        sd = subdifferential(spec, x)
        for f in sd.vertices:
            if sd.exact:
                assert sum(a * b for a, b in zip(f, x)) == norm_value(spec, x)
            else:
                assert np.dot(f, np.asarray(x, float)) == pytest.approx(float(norm_value(spec, x)), abs=1e-9)
            fv = np.asarray([float(c) for c in f])
            assert np.all(probes @ fv <= pnorm + 1e-9)


def test_subdifferential_examples():
    sd = subdifferential(linf(3), (Fraction(1), Fraction(1, 2), Fraction(0)))
    assert sd.exact and set(sd.vertices) == {(1, 0, 0)}
    sd = subdifferential(linf(2), (Fraction(1), Fraction(1)))
    assert set(sd.vertices) == {(1, 0), (0, 1)}
    # a smooth point of the cone seam: the gradient points along (0,-1,1)
    x = np.array([0.0, -1.0, 1.0])
    sd = subdifferential(BJExampleR3(), x / norm_value(BJExampleR3(), x))
    assert sd.is_singleton
    assert np.allclose(sd.vertices[0], [0.0, -1.0, 1.0], atol=1e-9)
    # the poles carry a disk of functionals
    assert not subdifferential(BJExampleR3(), (0.0, 0.0, 1.0)).is_singleton


def test_eta_analytics():
    assert eta(XI0) == pytest.approx(1.0, abs=1e-12)
    assert abs(eta(1.0)) <= 1e-12
    assert abs(eta_prime(XI0)) <= 1e-12
    xi = np.linspace(XI0, 1.0, 100)
    assert np.max(np.abs(xi ** 2 * eta_second(xi) - xi * eta_prime(xi) + eta(xi))) <= 1e-12
    alpha = XI0 / xi
    assert np.max(np.abs(eta(alpha) + alpha * eta_prime(xi))) <= 1e-12


def test_parse_norm_spec():
    assert parse_norm_spec('{"type":"lp","p":2,"dim":3}') == Lp(2, 3)
    sq = parse_norm_spec({"type": "polyhedral", "dual_vertices": [["1", "0"], ["-1", "0"], ["0", "1"], ["0", "-1"]]})
    assert isinstance(sq, Polyhedral)
    assert norm_value(sq, (Fraction(1), Fraction(-3, 2))) == Fraction(3, 2)
    with pytest.raises(NormSpecError):
        parse_norm_spec({"type": "polyhedral", "dual_vertices": [["1", "0"], ["0", "1"]]})
    with pytest.raises(NormSpecError):
        parse_norm_spec("{not json")
    with pytest.raises(NormSpecError):
        parse_norm_spec({"type": "lp", "p": 0.5, "dim": 2})
    with pytest.raises(NormSpecError):
        parse_norm_spec({"kind": "lp"})


@pytest.mark.parametrize("spec", FLOAT_MODELS + EXACT_MODELS, ids=lambda s: type(s).__name__ + str(s.dim))
def test_spec_round_trip(spec):
    back = spec_from_dict(spec_to_dict(spec))
    rng = np.random.default_rng(0)
    X = rng.standard_normal((20, spec.dim))
    assert np.allclose(norms(back, X), norms(spec, X), rtol=1e-14)


def test_unit_sphere_samples():
    a = unit_sphere_samples(Lp(2, 2), 4, seed=7)
    b = unit_sphere_samples(Lp(2, 2), 4, seed=7)
    assert len(a) == 4
    assert np.array_equal(np.asarray(a), np.asarray(b))
    assert np.allclose(np.linalg.norm(np.asarray(a), axis=1), 1.0, atol=1e-12)
    pts = unit_sphere_samples(AbsoluteRadon(), 100, seed=1)
    assert np.max(np.abs(norms(AbsoluteRadon(), np.asarray(pts)) - 1.0)) <= 1e-10

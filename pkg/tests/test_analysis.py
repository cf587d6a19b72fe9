"""Point evaluation, variable substitution, and boundary gain scans."""

import numpy as np
import pytest

from nullrank import DISCRETE, PoleEvaluationError, make_system
from nullrank.analysis import (
    BilinearMap,
    bilinear,
    evalfr,
    peak_gain,
    random_bilinear_map,
)

from conftest import random_system


def test_bilinear_map_rejects_degenerate_coefficients():
    with pytest.raises(ValueError):
        BilinearMap(1.0, 2.0, 2.0, 4.0)  # a*d == b*c
    with pytest.raises(ValueError):
        BilinearMap(0.0, 0.0, 0.0, 0.0)


def test_bilinear_map_apply_and_affine_flag():
    g = BilinearMap(2.0, 1.0, 0.0, 1.0)
    assert g.is_affine
    assert g.apply(3.0) == 7.0
    h = BilinearMap(0.0, 1.0, 1.0, 0.0)  # delta -> 1/delta
    assert not h.is_affine
    assert h.apply(4.0) == 0.25


def test_random_bilinear_map_is_seed_deterministic():
    g1 = random_bilinear_map(42)
    g2 = random_bilinear_map(42)
    assert (g1.a, g1.b, g1.c, g1.d) == (g2.a, g2.b, g2.c, g2.d)
    assert abs(g1.a * g1.d - g1.b * g1.c) > 0.1
    aff = random_bilinear_map(7, affine=True)
    assert aff.c == 0.0 and aff.d == 1.0


def test_evalfr_matches_dense_inverse(rng):
    for _ in range(20):
        sys = random_system(rng)
        lam = complex(rng.standard_normal(), rng.standard_normal())
        T = lam * sys.E - sys.A
        want = sys.D + sys.C @ np.linalg.solve(T, sys.B.astype(complex))
        got = evalfr(sys, lam)
        assert np.allclose(got, want, rtol=1e-10, atol=1e-12)


def test_evalfr_integrator_value():
    # G(lam) = 1/lam
    sys = make_system([[0.0]], [[1.0]], [[1.0]], [[1.0]], [[0.0]])
    assert evalfr(sys, 2.0) == pytest.approx(0.5)
    assert evalfr(sys, 1j).item() == pytest.approx(-1j)


def test_evalfr_static_system_returns_feedthrough():
    empty = np.zeros((0, 0))
    sys = make_system(empty, empty, np.zeros((0, 2)), np.zeros((2, 0)),
                      [[1.0, 2.0], [3.0, 4.0]])
    out = evalfr(sys, 123.0)
    assert out.dtype == complex
    assert np.array_equal(out.real, sys.D)


def test_evalfr_raises_at_poles():
    sys = make_system(np.diag([1.0, 2.0]), np.eye(2), np.ones((2, 1)),
                      np.ones((1, 2)), [[0.0]])
    with pytest.raises(PoleEvaluationError):
        evalfr(sys, 1.0)
    evalfr(sys, 1.5)  # between the poles is fine


def test_bilinear_matches_composition(rng):
    for k in range(40):
        sys = random_system(rng)
        bmap = random_bilinear_map(rng, affine=(k % 4 == 0))
        mapped = bilinear(sys, bmap)
        for _ in range(3):
            delta = complex(rng.standard_normal(), rng.standard_normal())
            lam = bmap.apply(delta)
            try:
                want = evalfr(sys, lam)
                got = evalfr(mapped, delta)
            except PoleEvaluationError:
                continue
            scale = max(1.0, np.linalg.norm(want))
            assert np.linalg.norm(got - want) <= 1e-9 * scale


def test_bilinear_order_bookkeeping(rng):
    sys = random_system(rng, n=4, m=2, p=3)  # dense E, generically nonsingular
    affine = bilinear(sys, BilinearMap(2.0, -1.0, 0.0, 1.0))
    assert affine.n == sys.n
    general = bilinear(sys, BilinearMap(0.0, 1.0, 1.0, 0.0))
    assert general.n == sys.n + sys.m
    assert general.timing == sys.timing


def test_bilinear_affine_map_on_singular_e_uses_augmented_form():
    # E singular forces the order-(n + m) realization even for affine maps.
    sys = make_system(np.eye(2), np.diag([1.0, 0.0]), np.ones((2, 1)),
                      np.ones((1, 2)), [[0.0]])
    mapped = bilinear(sys, BilinearMap(1.0, 1.0, 0.0, 1.0))
    assert mapped.n == 3
    got = evalfr(mapped, 1.5)
    want = evalfr(sys, 2.5)
    assert np.allclose(got, want, atol=1e-12)


def test_bilinear_static_system_passthrough():
    empty = np.zeros((0, 0))
    sys = make_system(empty, empty, np.zeros((0, 1)), np.zeros((1, 0)), [[7.0]])
    mapped = bilinear(sys, BilinearMap(0.0, 1.0, 1.0, 0.0))
    assert mapped.n == 0
    assert np.array_equal(mapped.D, sys.D)


def test_bilinear_variable_flip_inverts_an_integrator():
    # G(lam) = 1/lam composed with lam = 1/delta gives delta.
    sys = make_system([[0.0]], [[1.0]], [[1.0]], [[1.0]], [[0.0]])
    flipped = bilinear(sys, BilinearMap(0.0, 1.0, 1.0, 0.0))
    assert evalfr(flipped, 3.0).item() == pytest.approx(3.0)
    assert evalfr(flipped, -0.25).item() == pytest.approx(-0.25)


def test_peak_gain_zero_and_static_systems(rng):
    zero = make_system(np.diag([-1.0, -2.0]), np.eye(2), np.ones((2, 1)),
                       np.zeros((1, 2)), [[0.0]])
    assert peak_gain(zero) == 0.0
    empty = np.zeros((0, 0))
    static = make_system(empty, empty, np.zeros((0, 2)), np.zeros((2, 0)),
                         [[3.0, 0.0], [0.0, 4.0]])
    assert peak_gain(static) == pytest.approx(4.0)


def test_peak_gain_sees_a_known_resonance():
    # G(s) = 1/(s + 1): gain 1 at s = 0, decaying along the axis.
    sys = make_system([[-1.0]], [[1.0]], [[1.0]], [[1.0]], [[0.0]])
    assert peak_gain(sys) == pytest.approx(1.0, rel=1e-6)


def test_peak_gain_discrete_grid(rng):
    sys = random_system(rng, timing=DISCRETE)
    value = peak_gain(sys)
    assert value >= 0.0
    assert peak_gain(sys) == value  # fixed default seed: deterministic


def test_peak_gain_raises_when_no_point_is_evaluable():
    sys = make_system(np.zeros((1, 1)), np.zeros((1, 1)), [[1.0]], [[1.0]],
                      [[0.0]])
    with pytest.raises(PoleEvaluationError):
        peak_gain(sys)

"""Closed-form kernels, weights, derivative weights, and growth bounds."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mehler import (
    bergman_weight,
    bergman_weight_dt,
    bound_eval,
    compact_bound,
    hermite_eval,
    integrate_plane,
    integrate_rn,
    mehler_kernel,
    mehler_kernel_log,
    mehler_spectral,
    reproducing_kernel,
    reproducing_kernel_spectral,
    sobolev_embed_bound,
    special_heat_kernel,
    stft_bound,
    tempered_bound,
    twisted_bergman_weight,
)
from mehler.quadrature import PlaneGrid


def test_heat_kernel_at_origin():
    got = mehler_kernel(0.5, 0.0, 0.0)
    assert got == pytest.approx((2 * math.pi * math.sinh(1.0)) ** -0.5, rel=1e-14)


def test_heat_kernel_symmetry(rng):
    z = rng.uniform(-2, 2, 10) + 1j * rng.uniform(-1, 1, 10)
    w = rng.uniform(-2, 2, 10) + 1j * rng.uniform(-1, 1, 10)
    assert np.allclose(mehler_kernel(0.4, z, w), mehler_kernel(0.4, w, z), rtol=1e-14)


def test_heat_kernel_matches_spectral_sum_real_pairs(rng):
    # independent spectral oracle on real pairs
    z = rng.uniform(-2, 2, 10)
    w = rng.uniform(-2, 2, 10)
    closed = mehler_kernel(0.3, z, w)
    spectral = mehler_spectral(0.3, z, w, truncation=48)
    assert np.max(np.abs(closed - spectral) / np.abs(closed)) < 1e-8


def test_heat_kernel_matches_spectral_sum_complex(rng):
    # The truncated sum carries a tail ~ e^{(|Im z|+|Im w|) sqrt(2N) - 2Nt},
    # which must stay below 1e-8 relative to the smallest kernel value over
    # the box; that fixes how far off the real axis N = 48 can certify.
    for t, re_box, im_box in ((0.5, 2.0, 1.0), (0.3, 1.0, 0.3)):
        z = rng.uniform(-re_box, re_box, 20) + 1j * rng.uniform(-im_box, im_box, 20)
        w = rng.uniform(-re_box, re_box, 20) + 1j * rng.uniform(-im_box, im_box, 20)
        closed = mehler_kernel(t, z, w)
        spectral = mehler_spectral(t, z, w, truncation=48)
        assert np.max(np.abs(closed - spectral) / np.abs(closed)) < 1e-8


def test_heat_kernel_truncation_tail_visible_off_axis(rng):
    # at |Im| = 2 and t = 0.3 the N = 48 tail is demonstrably non-negligible:
    # the same points converge once the truncation is raised
    z = np.array([1.5 - 1.9j])
    w = np.array([0.8 + 1.9j])
    closed = mehler_kernel(0.3, z, w)
    coarse = mehler_spectral(0.3, z, w, truncation=48)
    fine = mehler_spectral(0.3, z, w, truncation=140)
    assert np.abs(closed - coarse) / np.abs(closed) > 1e-8
    assert np.abs(closed - fine) / np.abs(closed) < 1e-10


def test_heat_kernel_eigenfunction_integral(gh128):
    # integral of K_t(x, u) h_0(u) du = e^{-t} h_0(x)
    x, t = 1.0, 0.3
    val = integrate_rn(
        lambda u: mehler_kernel(t, np.full_like(u, x), u) * hermite_eval(0, u)[0],
        gh128,
        1,
    )
    expected = math.exp(-t) * math.pi**-0.25 * math.exp(-0.5)
    assert val == pytest.approx(expected, rel=1e-12)


def test_heat_kernel_log_matches_linear():
    for z, w in [(0.5 + 0.5j, -0.2), (2.0 + 1.5j, 1.0 - 0.7j)]:
        lin = complex(mehler_kernel(0.4, z, w))
        log = mehler_kernel_log(0.4, z, w).value()
        assert abs(log - lin) / abs(lin) < 1e-12


def test_heat_kernel_rejects_bad_time():
    with pytest.raises(ValueError):
        mehler_kernel(0.0, 0.0, 0.0)


def test_weight_values():
    assert bergman_weight(0.25, 0j) == pytest.approx(
        2.0 / math.sqrt(math.sinh(1.0)), rel=1e-14
    )
    ratio = bergman_weight(0.25, 1j) / bergman_weight(0.25, 0j)
    assert ratio == pytest.approx(math.exp(-1.0 / math.tanh(0.5)), rel=1e-13)


def test_weight_even_symmetry(rng):
    pts = rng.uniform(-3, 3, (10, 2))
    for x, y in pts:
        base = bergman_weight(0.3, complex(x, y))
        assert bergman_weight(0.3, complex(-x, y)) == pytest.approx(base, rel=1e-14)
        assert bergman_weight(0.3, complex(x, -y)) == pytest.approx(base, rel=1e-14)


def test_weight_derivative_order_zero_is_weight():
    z = 0.4 + 0.9j
    assert bergman_weight_dt(0.3, 0, z) == pytest.approx(
        bergman_weight(0.3, z), rel=1e-14
    )


def test_weight_derivative_hand_value():
    # d^2/dt^2 [2 (sinh 4t)^{-1/2}] at t = 1/4:
    # -16 (sinh 1)^{-1/2} + 24 cosh(1)^2 (sinh 1)^{-5/2}
    expected = -16 * math.sinh(1.0) ** -0.5 + 24 * math.cosh(1.0) ** 2 * math.sinh(
        1.0
    ) ** -2.5
    assert bergman_weight_dt(0.25, 1, 0j) == pytest.approx(expected, rel=1e-13)


def test_weight_derivative_matches_finite_differences():
    z, t, h = 0.7 + 0.4j, 0.3, 1e-3
    fd = (
        -bergman_weight(t + 2 * h, z)
        + 16 * bergman_weight(t + h, z)
        - 30 * bergman_weight(t, z)
        + 16 * bergman_weight(t - h, z)
        - bergman_weight(t - 2 * h, z)
    ) / (12 * h * h)
    assert bergman_weight_dt(t, 1, z) == pytest.approx(fd, rel=1e-5)


def test_weight_derivative_spectral_identity(calibration_025, bergman_grid_025):
    # integral of |Phi_k|^2 d^{2m}/dt^{2m} U_t equals
    # kappa^{-1} 2^{2m} (2k+1)^{2m} e^{2(2k+1)t}
    t = 0.25
    kappa = calibration_025.kappa
    X, Y, W = bergman_grid_025.nodes()
    Z = X + 1j * Y
    ladder = hermite_eval(3, Z)
    for m in (1, 2):
        weight = bergman_weight_dt(t, m, Z)
        for k in range(4):
            val = float(np.sum(W * np.abs(ladder[k]) ** 2 * weight).real)
            lam = 2 * k + 1
            expected = 2.0 ** (2 * m) * lam ** (2 * m) * math.exp(2 * lam * t) / kappa
            assert val == pytest.approx(expected, rel=1e-5)


def test_reproducing_kernel_order_zero():
    got = reproducing_kernel(0.3, 0, 0.0, 0.0)
    assert got == pytest.approx((2 * math.pi * math.sinh(1.2)) ** -0.5, rel=1e-13)


def test_reproducing_kernel_matches_spectral(rng):
    z, w = 1.0 + 0.5j, -0.3 + 0.0j
    got = reproducing_kernel(0.3, 0, z, w)
    ref = reproducing_kernel_spectral(0.3, 0, z, w, truncation=48)
    assert abs(got - ref) / abs(got) < 1e-8


def test_reproducing_kernel_diagonal_closed_form(rng):
    # the diagonal closed form written directly:
    # (2 pi)^{-1/2} (sinh 4t)^{-1/2} e^{-coth(4t)(z^2 + conj(z)^2)/2}
    # e^{|z|^2 / sinh 4t}
    for t in (0.3, 0.5):
        for _ in range(5):
            z = complex(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5))
            got = reproducing_kernel(t, 0, z, z)
            s4, c4 = math.sinh(4 * t), 1.0 / math.tanh(4 * t)
            expo = -0.5 * c4 * (z * z + np.conj(z) * np.conj(z)) + abs(z) ** 2 / s4
            ref = (2 * math.pi * s4) ** -0.5 * np.exp(expo)
            assert abs(got - ref) / abs(ref) < 1e-10


def test_reproducing_kernel_positive_order_two_routes():
    # shifted-time integral vs the spectral sum with (2 lam)^{-2m}
    for m in (1, 2):
        for z, w in [(0.0, 0.0), (1.0 + 0.5j, -0.3), (0.5j, 0.7)]:
            got = reproducing_kernel(0.3, m, z, w)
            ref = reproducing_kernel_spectral(0.3, m, z, w, truncation=64)
            assert abs(got - ref) / abs(ref) < 1e-7


def test_reproducing_kernel_negative_order():
    # distribution-order kernels: plain spectral sums with lam^{2|m|}
    got = reproducing_kernel(0.3, -1, 0.0, 0.0, truncation=48)
    k = np.arange(49)
    lam = 2 * k + 1
    h0 = hermite_eval(48, 0.0)
    ref = np.sum(lam**2 * np.exp(-2.0 * lam * 0.3) * h0**2)
    assert got == pytest.approx(ref, rel=1e-13)


@given(
    st.floats(min_value=-3, max_value=3),
    st.floats(min_value=-3, max_value=3),
    st.floats(min_value=0.05, max_value=1.5),
)
@settings(max_examples=100, deadline=None)
def test_weight_exponent_identity(x, y, t):
    # -coth(4t)(x^2-y^2) + cosech(4t)(x^2+y^2) = -x^2 tanh 2t + y^2 coth 2t
    lhs = -(x * x - y * y) / math.tanh(4 * t) + (x * x + y * y) / math.sinh(4 * t)
    rhs = -x * x * math.tanh(2 * t) + y * y / math.tanh(2 * t)
    assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-12)


def test_twisted_heat_kernel_values():
    got = special_heat_kernel(0.5, [0j, 0j])
    assert got == pytest.approx(1.0 / (2 * math.pi * math.sinh(0.5)), rel=1e-14)
    # real point with x^2 + u^2 = 2
    got2 = special_heat_kernel(0.5, [1.0 + 0j, 1.0 + 0j])
    expected = (
        1.0 / (2 * math.pi * math.sinh(0.5)) * math.exp(-0.5 / math.tanh(0.5))
    )
    assert got2 == pytest.approx(expected, rel=1e-13)


def test_twisted_heat_kernel_depends_on_square_only(rng):
    t = 0.5
    base = special_heat_kernel(t, [math.sqrt(2.0) + 0j, 0j])
    for theta in rng.uniform(0, 2 * math.pi, 5):
        p = [math.sqrt(2.0) * math.cos(theta) + 0j, math.sqrt(2.0) * math.sin(theta) + 0j]
        assert special_heat_kernel(t, p) == pytest.approx(base, rel=1e-13)


def test_twisted_weight_values():
    got = twisted_bergman_weight(0.5, 0, 0j, 0j)
    assert got == pytest.approx(2.0 / (math.pi * math.sinh(1.0)), rel=1e-14)
    # independent of (x, u) on the real section
    for x, u in [(1.0, 0.0), (0.0, 2.0), (1.5, -0.5)]:
        got2 = twisted_bergman_weight(0.5, 0, complex(x, 0.0), complex(u, 0.0))
        assert got2 == pytest.approx(got, rel=1e-14)


def test_twisted_weight_derivative_matches_finite_differences():
    z, w, t, h = 0.3 + 0.5j, -0.2 + 0.4j, 0.4, 1e-3
    fd = (
        -twisted_bergman_weight(t + 2 * h, 0, z, w)
        + 16 * twisted_bergman_weight(t + h, 0, z, w)
        - 30 * twisted_bergman_weight(t, 0, z, w)
        + 16 * twisted_bergman_weight(t - h, 0, z, w)
        - twisted_bergman_weight(t - 2 * h, 0, z, w)
    ) / (12 * h * h)
    assert twisted_bergman_weight(t, 1, z, w) == pytest.approx(fd, rel=1e-5)


def test_bound_sobolev_embed_normalization():
    b = sobolev_embed_bound(0.3, 0)
    assert bound_eval(b, 0.0, 0.0) == pytest.approx(1.0)
    assert not b.on_modulus


def test_bound_tempered_value():
    b = tempered_bound(0.3, 1)
    got = bound_eval(b, 1.0, 1.0)
    expected = 9.0 * math.exp(-math.tanh(0.6) + 1.0 / math.tanh(0.6))
    assert got == pytest.approx(expected, rel=1e-13)


def test_bound_compact_value():
    b = compact_bound(0.5, 0.5)
    got = bound_eval(b, 2.0, 0.0)
    expected = math.exp(-0.5 / math.tanh(1.0) * 4.0) * math.exp(
        0.5 * 2.0 / math.sinh(1.0)
    )
    assert got == pytest.approx(expected, rel=1e-13)
    assert b.on_modulus


def test_bound_stft_is_modulus_kind():
    b = stft_bound(2.0, 1)
    assert b.on_modulus
    assert bound_eval(b, 0.0, 0.0) == pytest.approx(1.0)


def test_bound_rejects_bad_parameters():
    with pytest.raises(ValueError):
        sobolev_embed_bound(0.0, 1)
    with pytest.raises(ValueError):
        stft_bound(-1.0, 0)
    with pytest.raises(ValueError):
        compact_bound(0.5, -0.1)


def test_probe_integral_matches_orthogonality_scale():
    # integral of |Phi_1|^2 U_t over C equals kappa^{-1} e^{2(2+1)t}
    t = 0.25
    grid = PlaneGrid(boxes=((-9.0, 9.0, -9.0, 9.0),), resolution=128)

    def g(x, y):
        z = x + 1j * y
        return np.abs(hermite_eval(1, z)[1]) ** 2 * bergman_weight(t, z)

    val = integrate_plane(g, grid)
    expected = math.sqrt(2 * math.pi) * math.exp(6 * t)
    assert val == pytest.approx(expected, rel=1e-9)

"""Heat transform: modes, calibration, weighted norms, envelopes."""

import math

import numpy as np
import pytest

from mehler import (
    Bump,
    Dirac,
    Gaussian,
    HermiteBasis,
    PolyGaussian,
    bergman_norm,
    calibrate_weight,
    compact_bound,
    default_bergman_grid,
    envelope_ratio,
    expand,
    integrate_rn,
    mehler_kernel,
    recover_coefficients,
    reproduce,
    schwartz_image_check,
    semigroup_apply,
    semigroup_handle,
    sobolev_embed_bound,
    sobolev_norm,
    tempered_bound,
)
from mehler.quadrature import PlaneGrid
from mehler.spectral import CoefficientList, eval_test_function

PI14 = math.pi ** -0.25


def test_eigenfunction_both_modes(gh128):
    expected = math.exp(-0.3) * PI14
    for mode in ("spectral", "kernel"):
        got = semigroup_apply(HermiteBasis((0,)), 0.3, [0.0], mode=mode, rule=gh128)
        assert got == pytest.approx(expected, rel=1e-10)


def test_point_mass_image_is_kernel_slice():
    got = semigroup_apply(Dirac(0.5), 0.5, [0.0], mode="kernel")
    expected = complex(mehler_kernel(0.5, 0.0, 0.5))
    assert got == pytest.approx(expected, rel=1e-14)
    base = (2 * math.pi * math.sinh(1.0)) ** -0.5
    assert expected.real == pytest.approx(
        base * math.exp(-0.125 / math.tanh(1.0)), rel=1e-12
    )


def test_mode_agreement_on_gaussian(gh128):
    z = 1.0 + 1.0j
    spectral = semigroup_apply(
        Gaussian(1.0), 0.4, [z], mode="spectral", truncation=48, rule=gh128
    )
    kernel = semigroup_apply(Gaussian(1.0), 0.4, [z], mode="kernel", rule=gh128)
    assert abs(spectral - kernel) / abs(kernel) < 1e-8


def test_mode_agreement_random_points(rng, gh128):
    pts = rng.uniform(-1.5, 1.5, (20, 2))
    for f in (Gaussian(2.0), PolyGaussian((0.5, 1.0), 1.0)):
        for x, y in pts:
            z = complex(x, y)
            a = semigroup_apply(f, 0.25, [z], mode="spectral", truncation=48, rule=gh128)
            b = semigroup_apply(f, 0.25, [z], mode="kernel", rule=gh128)
            assert abs(a - b) / (1e-30 + abs(b)) < 1e-7


def test_kernel_mode_bump_support_quadrature(gh128):
    got = semigroup_apply(Bump(1.0), 0.4, [0.3 + 0.2j], mode="kernel", rule=gh128)
    assert np.isfinite(got.real) and np.isfinite(got.imag)
    spectral = semigroup_apply(
        Bump(1.0), 0.4, [0.3 + 0.2j], mode="spectral", truncation=48, rule=gh128
    )
    # bump expansions converge slowly; modes agree to quadrature/truncation level
    assert abs(got - spectral) / abs(got) < 1e-5


def test_calibration_constant(calibration_025):
    assert calibration_025.kappa == pytest.approx((2 * math.pi) ** -0.5, rel=1e-7)
    assert calibration_025.spread < 1e-5
    assert calibration_025.max_offdiagonal < 1e-9


def test_calibration_time_independent(calibration_025):
    grid = default_bergman_grid(0.4, resolution=128)
    cal2 = calibrate_weight(0.4, 1, [(k,) for k in range(5)], grid)
    assert cal2.kappa == pytest.approx(calibration_025.kappa, rel=1e-5)


def test_bergman_norm_probe_value(bergman_grid_025, gh128):
    handle = semigroup_handle(HermiteBasis((0,)), 0.25, "spectral", rule=gh128)
    raw = bergman_norm(handle, 0.25, 0, bergman_grid_025)
    assert raw == pytest.approx(math.sqrt(2 * math.pi), rel=1e-9)


def test_bergman_norm_calibrated_isometry(bergman_grid_025, calibration_025, gh128):
    handle = semigroup_handle(HermiteBasis((0,)), 0.25, "spectral", rule=gh128)
    val = bergman_norm(handle, 0.25, 0, bergman_grid_025, kappa=calibration_025.kappa)
    assert val == pytest.approx(1.0, abs=1e-6)


def test_bergman_norm_order_one_eigenfunction(gh128):
    t = 0.3
    grid = default_bergman_grid(t, resolution=128, degree_margin=14)
    cal = calibrate_weight(t, 1, [(k,) for k in range(5)], grid)
    handle = semigroup_handle(HermiteBasis((1,)), t, "spectral", rule=gh128)
    val = bergman_norm(handle, t, 1, grid, kappa=cal.kappa)
    assert val == pytest.approx(36.0, abs=1e-4 * 36)


@pytest.mark.parametrize("m", [1, 2])
def test_derivative_weight_identity(m, gh128):
    t = 0.3
    grid = default_bergman_grid(t, resolution=128, degree_margin=14)
    cal = calibrate_weight(t, 1, [(k,) for k in range(5)], grid)
    for k in range(4):
        handle = semigroup_handle(HermiteBasis((k,)), t, "spectral", rule=gh128)
        val = bergman_norm(handle, t, m, grid, kappa=cal.kappa)
        expected = 2.0 ** (2 * m) * (2 * k + 1) ** (2 * m)
        assert val == pytest.approx(expected, rel=1e-4)


def test_isometry_six_functions_two_times(gh128):
    fns = [
        HermiteBasis((0,)),
        HermiteBasis((1,)),
        HermiteBasis((2,)),
        HermiteBasis((3,)),
        Gaussian(1.0),
        PolyGaussian((1.0, 0.0, 0.5), 1.0),
    ]
    for t in (0.25, 0.5):
        grid = default_bergman_grid(t, resolution=128)
        cal = calibrate_weight(t, 1, [(k,) for k in range(5)], grid)
        for f in fns:
            handle = semigroup_handle(f, t, "spectral", truncation=48, rule=gh128)
            img = bergman_norm(handle, t, 0, grid, kappa=cal.kappa)
            ref = integrate_rn(
                lambda x: np.abs(eval_test_function(f, x)) ** 2, gh128, 1
            )
            assert abs(img - ref) <= 1e-5


def test_reproduce_eigenfunction(bergman_grid_025, calibration_025, gh128):
    handle = semigroup_handle(HermiteBasis((0,)), 0.25, "spectral", rule=gh128)
    got = reproduce(handle, 0.25, [0.0], bergman_grid_025, kappa=calibration_025.kappa)
    assert got == pytest.approx(math.exp(-0.25) * PI14, abs=1e-6)


def test_reproduce_matches_direct_evaluation(gh128):
    t = 0.3
    grid = default_bergman_grid(t, resolution=128)
    cal = calibrate_weight(t, 1, [(k,) for k in range(5)], grid)
    handle = semigroup_handle(HermiteBasis((2,)), t, "spectral", rule=gh128)
    z = 1.0 + 0.5j
    got = reproduce(handle, t, [z], grid, kappa=cal.kappa)
    ref = handle.eval([z])
    assert abs(got - ref) / abs(ref) < 1e-6


def test_reproduce_zero_function(bergman_grid_025, calibration_025):
    from mehler.spectral import zero_handle

    got = reproduce(zero_handle(), 0.25, [0.5], bergman_grid_025, calibration_025.kappa)
    assert got == 0


def test_reproducing_property_ten_points(rng, gh128):
    t = 0.3
    grid = default_bergman_grid(t, resolution=128)
    cal = calibrate_weight(t, 1, [(k,) for k in range(5)], grid)
    pts = rng.uniform(-1.5, 1.5, (10, 2))
    for k in range(4):
        handle = semigroup_handle(HermiteBasis((k,)), t, "spectral", rule=gh128)
        for x, y in pts:
            z = complex(x, y)
            direct = handle.eval([z])
            got = reproduce(handle, t, [z], grid, kappa=cal.kappa)
            assert abs(got - direct) <= 1e-5 * (1 + abs(direct))


def _trap_grid(box=(-8.0, 8.0, -6.0, 6.0), res=65):
    return PlaneGrid(boxes=(box,), resolution=res, kind="trapezoid")


def test_envelope_ground_state_spot_value(gh128):
    handle = semigroup_handle(HermiteBasis((0,)), 0.3, "spectral", rule=gh128)
    rep = envelope_ratio(handle, sobolev_embed_bound(0.3, 0), _trap_grid())
    expected = math.exp(-0.6) / math.sqrt(math.pi)
    assert rep.sup_ratio == pytest.approx(expected, rel=1e-2)
    assert rep.stable
    assert rep.argmax == pytest.approx((0.0, 0.0), abs=1e-9)


def test_envelope_point_mass_tempered(gh128):
    handle = semigroup_handle(Dirac(0.0), 0.5, "kernel")
    rep = envelope_ratio(handle, tempered_bound(0.5, 0), _trap_grid())
    expected = 1.0 / (2 * math.pi * math.sinh(1.0))
    assert rep.sup_ratio == pytest.approx(expected, rel=1e-2)
    assert rep.stable


def test_envelope_point_mass_compact(gh128):
    handle = semigroup_handle(Dirac(0.5), 0.5, "kernel")
    rep = envelope_ratio(handle, compact_bound(0.5, 0.5), _trap_grid())
    expected = (2 * math.pi * math.sinh(1.0)) ** -0.5 * math.exp(
        -0.125 / math.tanh(1.0)
    )
    assert rep.sup_ratio == pytest.approx(expected, rel=1e-2)
    assert rep.stable


def test_sobolev_embedding_envelopes_finite_stable(gh128):
    grid = _trap_grid()
    for k in range(4):
        handle = semigroup_handle(HermiteBasis((k,)), 0.3, "spectral", rule=gh128)
        for m in range(4):
            rep = envelope_ratio(handle, sobolev_embed_bound(0.3, m), grid)
            assert math.isfinite(rep.sup_ratio) and rep.sup_ratio > 0
            assert rep.stable


def test_schwartz_image_check_multiple_orders(gh128):
    reports = schwartz_image_check(
        HermiteBasis((3,)), 0.3, [0, 1, 2, 3], _trap_grid(), rule=gh128
    )
    assert len(reports) == 4
    for rep in reports:
        assert math.isfinite(rep.sup_ratio) and rep.sup_ratio > 0
        assert rep.stable
    reports2 = schwartz_image_check(Gaussian(2.0), 0.4, [2], _trap_grid(), rule=gh128)
    assert reports2[0].stable


def test_tempered_envelope_for_coefficient_growth(gh128):
    # coefficients growing like lam^p: the order-(p+1) bound is finite
    t0 = 0.3
    grid = PlaneGrid(boxes=((-8.0, 8.0, -5.0, 5.0),), resolution=65, kind="trapezoid")
    for p in (1, 2):
        entries = tuple(((k,), float((2 * k + 1) ** p)) for k in range(49))
        f = CoefficientList(1, 48, entries)
        handle = semigroup_handle(f, t0, "spectral", truncation=48, rule=gh128)
        rep = envelope_ratio(handle, tempered_bound(t0, p + 1), grid)
        assert math.isfinite(rep.sup_ratio) and rep.sup_ratio > 0
        assert rep.stable


def test_roundtrip_coefficient_recovery(gh128):
    f = PolyGaussian((0.7, -0.4, 0.2), 1.0)
    e = expand(f, 24, rule=gh128, dimension=1)
    handle = semigroup_handle(f, 0.3, "spectral", truncation=24, rule=gh128)
    back = recover_coefficients(handle, 0.3, 24, gh128)
    assert np.allclose(back.values, e.values, atol=1e-9)


def test_sobolev_image_isometry_nontrivial_input(gh128):
    # order-m transfer for a function with an infinite expansion
    t, m = 0.25, 1
    grid = default_bergman_grid(t, resolution=128, degree_margin=14)
    cal = calibrate_weight(t, 1, [(k,) for k in range(5)], grid)
    f = Gaussian(2.0)
    e = expand(f, 48, rule=gh128, dimension=1)
    handle = semigroup_handle(f, t, "spectral", truncation=48, rule=gh128)
    val = bergman_norm(handle, t, m, grid, kappa=cal.kappa)
    ref = 4.0 * sobolev_norm(e, m) ** 2
    assert val == pytest.approx(ref, rel=1e-6)

"""Quadrature rules, plane grids, and their exactness guarantees."""

import math

import numpy as np
import pytest

from mehler import (
    PlaneGrid,
    QuadratureError,
    bergman_weight,
    gauss_hermite_rule,
    gaussian_box,
    hermite_eval,
    integrate_plane,
    integrate_plane_refined,
    integrate_rn,
)

SQRT_PI = math.sqrt(math.pi)


def double_factorial(n: int) -> int:
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def test_one_point_rule():
    rule = gauss_hermite_rule(1)
    assert rule.nodes == pytest.approx([0.0])
    assert rule.weights == pytest.approx([SQRT_PI])


def test_two_point_rule():
    rule = gauss_hermite_rule(2)
    assert sorted(rule.nodes) == pytest.approx([-1 / math.sqrt(2), 1 / math.sqrt(2)])
    assert rule.weights == pytest.approx([SQRT_PI / 2, SQRT_PI / 2])


def test_weight_sums():
    for q in (4, 64, 128, 512):
        rule = gauss_hermite_rule(q)
        assert abs(rule.weights.sum() - SQRT_PI) < 1e-12


def test_tenth_moment_q64():
    rule = gauss_hermite_rule(64)
    got = float(np.sum(rule.weights * rule.nodes**10))
    exact = double_factorial(9) * SQRT_PI / 2**5
    assert abs(got - exact) / exact < 1e-10


@pytest.mark.parametrize("q", [8, 16, 32])
def test_even_moment_exactness(q):
    rule = gauss_hermite_rule(q)
    for m in range(min(8, q)):
        got = float(np.sum(rule.weights * rule.nodes ** (2 * m)))
        exact = double_factorial(2 * m - 1) * SQRT_PI / 2**m
        assert abs(got - exact) / exact < 1e-11


def test_order_bounds():
    with pytest.raises(ValueError):
        gauss_hermite_rule(0)
    with pytest.raises(ValueError):
        gauss_hermite_rule(513)


def test_integrate_normalization(gh64):
    val = integrate_rn(lambda x: hermite_eval(0, x)[0] ** 2, gh64, 1)
    assert val == pytest.approx(1.0, abs=1e-12)


def test_integrate_orthogonality(gh64):
    val = integrate_rn(
        lambda x: hermite_eval(5, x)[3] * hermite_eval(5, x)[5], gh64, 1
    )
    assert abs(val) < 1e-10


def test_integrate_two_dimensional_gaussian():
    rule = gauss_hermite_rule(32)
    val = integrate_rn(lambda x, u: np.exp(-(x**2) - u**2), rule, 2)
    assert val == pytest.approx(math.pi, abs=1e-10)


def test_integrate_rejects_nonfinite(gh64):
    def bad(x):
        out = np.ones_like(x)
        out[np.argmax(x)] = np.nan
        return out

    with pytest.raises(QuadratureError) as err:
        integrate_rn(bad, gh64, 1)
    assert err.value.node is not None


def test_plane_constant():
    grid = PlaneGrid(boxes=((-1.0, 1.0, -1.0, 1.0),), resolution=16)
    val = integrate_plane(lambda x, y: np.ones_like(x), grid)
    assert val == pytest.approx(4.0, abs=1e-13)
    assert grid.total_weight == pytest.approx(4.0)


def test_plane_gaussian():
    grid = PlaneGrid(boxes=((-6.0, 6.0, -6.0, 6.0),), resolution=96)
    val = integrate_plane(lambda x, y: np.exp(-(x**2) - y**2), grid)
    assert val == pytest.approx(math.pi, abs=1e-9)


def test_plane_weighted_basis_probe():
    # integral of |Phi_0(x+iy)|^2 U_t(x+iy) over C at t = 0.25: the weighted
    # normalization integral, closed form sqrt(2 pi) e^{2t} by completing
    # the square.
    grid = PlaneGrid(boxes=((-8.0, 8.0, -8.0, 8.0),), resolution=128)

    def g(x, y):
        z = x + 1j * y
        h0 = hermite_eval(0, z)[0]
        return np.abs(h0) ** 2 * bergman_weight(0.25, z)

    val = integrate_plane(g, grid)
    expected = math.sqrt(2 * math.pi) * math.exp(0.5)
    assert val == pytest.approx(expected, abs=1e-6)


def test_box_growth_convergence():
    # enlarging a Gaussian-decay box from 6 to 8 half-widths changes nothing
    base = gaussian_box(1.0, 1.0, drop=math.exp(-36))
    big = gaussian_box(1.0, 1.0, drop=math.exp(-64))
    g = lambda x, y: np.exp(-(x**2) - y**2)  # noqa: E731
    v1 = integrate_plane(g, PlaneGrid(boxes=(base,), resolution=128))
    v2 = integrate_plane(g, PlaneGrid(boxes=(big,), resolution=128))
    assert abs(v1 - v2) / abs(v2) < 1e-8


def test_refinement_error_estimates_decrease():
    grid8 = PlaneGrid(boxes=((-6.0, 6.0, -6.0, 6.0),), resolution=8)
    g = lambda x, y: np.exp(-(x**2) - y**2)  # noqa: E731
    _, err8 = integrate_plane_refined(g, grid8)
    _, err16 = integrate_plane_refined(g, grid8.refine(2))
    _, err32 = integrate_plane_refined(g, grid8.refine(4))
    assert err8 > err16 > err32


def test_degenerate_box_rejected():
    with pytest.raises(ValueError):
        PlaneGrid(boxes=((1.0, -1.0, 0.0, 1.0),), resolution=8)
    with pytest.raises(ValueError):
        PlaneGrid(boxes=((0.0, 1.0, 2.0, 2.0),), resolution=8)


def test_plane_rejects_nonfinite():
    grid = PlaneGrid(boxes=((-1.0, 1.0, -1.0, 1.0),), resolution=8)

    def bad(x, y):
        out = np.ones_like(x)
        out[0] = np.inf
        return out

    with pytest.raises(QuadratureError):
        integrate_plane(bad, grid)


def test_trapezoid_total_weight_and_refine():
    grid = PlaneGrid(boxes=((-2.0, 2.0, -1.0, 1.0),), resolution=33, kind="trapezoid")
    assert grid.total_weight == pytest.approx(8.0)
    X, Y, W = grid.nodes()
    assert W.sum() == pytest.approx(8.0)
    assert 0.0 in set(np.round(X, 12))  # odd resolution hits the midpoint
    fine = grid.refine(2)
    assert fine.resolution == 65  # node nesting preserved


def test_four_dimensional_grid_nodes():
    grid = PlaneGrid(
        boxes=((-1.0, 1.0, -1.0, 1.0), (-2.0, 2.0, -1.0, 1.0)), resolution=4
    )
    X, Y, U, V, W = grid.nodes()
    assert len(X) == 4**4
    assert W.sum() == pytest.approx(grid.total_weight)

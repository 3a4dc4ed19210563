"""Acceptance criteria, one test per criterion, each printing a verdict line.

Every criterion runs at its stated tolerance against the shared suite
implementation (the same code the `mehler suite` command executes), so a
green run here certifies the deliverable end to end.  Run with `pytest -s
tests/test_acceptance.py` to see the per-criterion lines.
"""

import pytest

from mehler.suite import (
    SuiteConfig,
    check_bridge,
    check_compact_support,
    check_complex_orthogonality,
    check_derivative_weight_identity,
    check_intertwine,
    check_isometry,
    check_mehler_spectral,
    check_orthonormality,
    check_projection_algebra,
    check_reproducing,
    check_schwartz_envelopes,
    check_sobolev_envelopes,
    check_tempered_envelope,
    check_twisted_isometry,
    check_twisted_sobolev,
    run_suite,
)

CONFIG = SuiteConfig()


def _report(criterion: str, result) -> None:
    print(
        f"acceptance {criterion}: {result.status.upper()} "
        f"(metric={result.metric:.3e}, tol={result.tol:.1e}) {result.details}"
    )
    assert result.status == "pass", f"{criterion}: {result.details}"


def test_acceptance_01_hermite_orthonormality():
    # max_{j,k<=30} |<h_j, h_k> - delta| <= 1e-10 under a 64-point rule
    result = check_orthonormality(CONFIG)
    _report("01-hermite-orthonormality", result)
    assert result.tol == 1e-10


def test_acceptance_02_mehler_spectral_bridge():
    # closed form vs N=48 spectral sum, rel <= 1e-8, 20 pairs, t in {0.3, 0.5}
    result = check_mehler_spectral(CONFIG)
    _report("02-mehler-spectral-bridge", result)
    assert result.tol == 1e-8


def test_acceptance_03_heat_isometry():
    # |kappa ||e^{-tH}f||^2 - ||f||^2| <= 1e-5, six functions, two times,
    # kappa = (2 pi)^{-1/2} and t-independent to 1e-5
    result = check_isometry(CONFIG)
    _report("03-heat-isometry", result)
    assert result.tol == 1e-5
    assert "kappa=0.398942" in result.details


def test_acceptance_04_complex_orthogonality():
    # diagonal ratios flat to 1e-5 over |alpha| <= 4; off-diagonals <= 1e-9
    result = check_complex_orthogonality(CONFIG)
    _report("04-complex-orthogonality", result)
    assert result.tol == 1e-9


def test_acceptance_05_derivative_weight_identity():
    # kappa int |F|^2 d^{2m}U_t = 2^{2m} sum lam^{2m} |c|^2, m in {1,2}, rel 1e-4
    result = check_derivative_weight_identity(CONFIG)
    _report("05-derivative-weight-identity", result)
    assert result.tol == 1e-4


def test_acceptance_06_reproducing_property():
    # |reproduce(F,t,z) - F(z)| <= 1e-5 (1 + |F(z)|), 10 points, k <= 3
    result = check_reproducing(CONFIG)
    _report("06-reproducing-property", result)
    assert result.tol == 1e-5


def test_acceptance_07_growth_envelopes():
    # finite refinement-stable envelopes for f in {h0..h3, Gaussian(1)},
    # m <= 3, plus the closed-form spot value e^{-0.6}/sqrt(pi) within 1%
    embedding = check_sobolev_envelopes(CONFIG)
    _report("07a-sobolev-embedding-envelopes", embedding)
    image = check_schwartz_envelopes(CONFIG)
    _report("07b-schwartz-image-envelopes", image)
    assert image.tol == 1e-2


def test_acceptance_08_intertwining():
    # exactly one sign convention passes at 1e-6; composed relation at 1e-5
    result = check_intertwine(CONFIG)
    _report("08-intertwining-relations", result)
    assert result.tol == 1e-6
    assert "validated a=+coth(t)/2" in result.details


def test_acceptance_09_twisted_isometry_and_sobolev():
    # kappa*-calibrated isometry within 1e-4; order-1 identity within 1e-3;
    # eigen-relation within 1e-6
    iso = check_twisted_isometry(CONFIG)
    _report("09a-twisted-isometry", iso)
    assert iso.tol == 1e-4
    sob = check_twisted_sobolev(CONFIG)
    _report("09b-twisted-sobolev-identity", sob)
    assert sob.tol == 1e-3


def test_acceptance_10_projection_algebra():
    # (2 pi)^{-1} phi_k x phi_j = delta_kj phi_k at 5 points to 1e-6;
    # 13-term reconstruction of the Gaussian at the origin to 1e-4
    result = check_projection_algebra(CONFIG)
    _report("10-projection-algebra", result)
    assert result.tol == 1e-6


def test_acceptance_11_tempered_envelope():
    # point-mass image passes the order-0 tempered bound with closed-form
    # sup (2 pi sinh 2t)^{-1} within 1%
    result = check_tempered_envelope(CONFIG)
    _report("11-tempered-envelope", result)
    assert result.tol == 1e-2


def test_acceptance_12_stft_bridge():
    # bridge residual <= 1e-6 for 5 functions with c = (a^2-1)^{1/4};
    # envelopes finite for a in {0.5, 2}
    result = check_bridge(CONFIG)
    _report("12-stft-bridge", result)
    assert result.tol == 1e-6


def test_acceptance_13_compact_support():
    # exact radius: closed-form sup ~ 0.312297 within 1%; understated
    # radius: sup grows >= 10x when the box half-width doubles
    result = check_compact_support(CONFIG)
    _report("13-compact-support", result)
    assert result.tol == 1e-2
    assert "growth" in result.details


def test_acceptance_14_determinism():
    # identical config and seed give byte-identical reports modulo timing
    a = run_suite(CONFIG).to_json(include_timing=False).encode()
    b = run_suite(CONFIG).to_json(include_timing=False).encode()
    status = "PASS" if a == b else "FAIL"
    print(f"acceptance 14-determinism: {status} (bytes={len(a)})")
    assert a == b

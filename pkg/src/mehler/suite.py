"""End-to-end verification suite: every identity, isometry, and envelope.

``run_suite`` executes a fixed registry of checks against a
:class:`SuiteConfig` and returns a :class:`SuiteReport`.  Each check is
isolated (one failure never aborts the rest), deterministic given the
config seed, and carries a theorem tag so the report doubles as a coverage
map of the verified statements.  Reports serialize to JSON with stable key
order; two runs with the same config produce byte-identical output apart
from the timing fields.
"""

import json
import math
import time
import zlib
from dataclasses import dataclass, field

import numpy as np

from .indices import oscillator_eigenvalue
from .kernels import (
    mehler_kernel,
    mehler_spectral,
    schwartz_image_bound,
    sobolev_embed_bound,
    tempered_bound,
)
from .quadrature import PlaneGrid, gauss_hermite_rule
from .semigroup import (
    bergman_norm,
    calibrate_weight,
    default_bergman_grid,
    envelope_ratio,
    reproduce,
    semigroup_handle,
)
from .special import (
    Gaussian2n,
    SpecialEigenHandle,
    SpecialHermiteBasis,
    bergman_norm_special,
    calibrate_weight_special,
    composed_intertwine_residual,
    default_special_grid,
    default_twisted_grid,
    intertwine_check,
    laguerre_profile,
    laguerre_project,
    special_envelope,
    special_hermite_eval,
    special_semigroup_apply,
)
from .specfun import hermite_eval, laguerre_function_entire
from .spectral import (
    CoefficientList,
    Dirac,
    Gaussian,
    HermiteBasis,
    PolyGaussian,
    expand,
    sobolev_norm,
)
from .stft import bridge_residual, compact_growth_check, pw_envelope

SCHEMA = "1"


class ConfigError(ValueError):
    """Raised on structurally invalid suite configuration."""


DEFAULT_TOLERANCES: dict[str, float] = {
    "hermite-orthonormality": 1e-10,
    "mehler-spectral-bridge": 1e-8,
    "heat-isometry": 1e-5,
    "complex-orthogonality": 1e-9,
    "derivative-weight-identity": 1e-4,
    "reproducing-property": 1e-5,
    "sobolev-embedding-envelopes": 0.05,
    "schwartz-image-envelopes": 0.01,
    "intertwining-relations": 1e-6,
    "twisted-isometry": 1e-4,
    "twisted-sobolev-identity": 1e-3,
    "projection-algebra": 1e-6,
    "tempered-envelope": 0.01,
    "stft-bridge": 1e-6,
    "compact-support": 0.01,
    "sobolev-image-isometry": 1e-4,
    "twisted-schwartz-envelope": 0.05,
    "twisted-plain-envelope": 0.05,
    "determinism": 0.0,
}


@dataclass(frozen=True)
class SuiteConfig:
    """Serializable configuration of the verification suite."""

    n: int = 1
    N: int = 48
    quad: int = 128
    t: tuple[float, ...] = (0.3, 0.5)
    m: tuple[int, ...] = (0, 1, 2)
    grid_box: tuple[float, float, float, float] = (-8.0, 8.0, -6.0, 6.0)
    grid_res: int = 128
    tol: dict = field(default_factory=dict)
    seed: int = 12345

    def __post_init__(self):
        object.__setattr__(self, "t", tuple(float(v) for v in self.t))
        object.__setattr__(self, "m", tuple(int(v) for v in self.m))
        object.__setattr__(self, "grid_box", tuple(float(v) for v in self.grid_box))
        self.validate()

    def validate(self) -> None:
        if self.n != 1:
            raise ConfigError("the verification suite runs at dimension n = 1")
        if not 0 <= self.N <= 128:
            raise ConfigError("N must be in [0, 128]")
        if not 1 <= self.quad <= 512:
            raise ConfigError("quad must be in [1, 512]")
        if not self.t or any(v <= 0 for v in self.t):
            raise ConfigError("t must be a non-empty list of positive reals")
        if self.grid_res < 2:
            raise ConfigError("grid resolution must be >= 2")
        b = self.grid_box
        if len(b) != 4 or b[0] >= b[1] or b[2] >= b[3]:
            raise ConfigError(f"degenerate grid box {b}")
        for key in self.tol:
            if key not in DEFAULT_TOLERANCES:
                raise ConfigError(f"unknown tolerance key {key!r}")

    def tolerance(self, name: str) -> float:
        return float(self.tol.get(name, DEFAULT_TOLERANCES[name]))

    @property
    def special_res(self) -> int:
        return max(16, self.grid_res // 4)

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "n": self.n,
            "N": self.N,
            "quad": self.quad,
            "t": list(self.t),
            "m": list(self.m),
            "grid": {"box": list(self.grid_box), "res": self.grid_res},
            "tol": dict(sorted(self.tol.items())),
            "seed": self.seed,
        }

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "SuiteConfig":
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        if str(data.get("schema", SCHEMA)) != SCHEMA:
            raise ConfigError(f"unsupported schema {data.get('schema')!r}")
        known = {"schema", "n", "N", "quad", "t", "m", "grid", "tol", "seed"}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config keys {sorted(unknown)}")
        grid = data.get("grid", {})
        try:
            return cls(
                n=int(data.get("n", 1)),
                N=int(data.get("N", 48)),
                quad=int(data.get("quad", 128)),
                t=tuple(data.get("t", (0.3, 0.5))),
                m=tuple(data.get("m", (0, 1, 2))),
                grid_box=tuple(grid.get("box", (-8.0, 8.0, -6.0, 6.0))),
                grid_res=int(grid.get("res", 128)),
                tol={str(k): float(v) for k, v in data.get("tol", {}).items()},
                seed=int(data.get("seed", 12345)),
            )
        except (TypeError, ValueError) as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(f"malformed config: {exc}") from exc

    @classmethod
    def from_json(cls, text: str) -> "SuiteConfig":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config is not valid JSON: {exc}") from exc
        return cls.from_dict(data)


@dataclass
class CheckResult:
    """Outcome of one verification check."""

    name: str
    theorem: str
    status: str  # pass | fail | skipped
    metric: float
    tol: float
    details: str = ""
    seconds: float = 0.0

    def to_dict(self, include_timing: bool = True) -> dict:
        out = {
            "name": self.name,
            "theorem": self.theorem,
            "status": self.status,
            "metric": self.metric,
            "tol": self.tol,
            "details": self.details,
        }
        if include_timing:
            out["seconds"] = round(self.seconds, 3)
        return out


@dataclass
class SuiteReport:
    config: SuiteConfig
    checks: list[CheckResult]

    @property
    def summary(self) -> dict:
        counts = {"pass": 0, "fail": 0, "skipped": 0}
        for c in self.checks:
            counts[c.status] += 1
        return counts

    @property
    def failed(self) -> bool:
        return self.summary["fail"] > 0

    def to_dict(self, include_timing: bool = True) -> dict:
        return {
            "schema": SCHEMA,
            "config": self.config.to_dict(),
            "checks": [c.to_dict(include_timing) for c in self.checks],
            "summary": self.summary,
        }

    def to_json(self, indent: int | None = 2, include_timing: bool = True) -> str:
        return json.dumps(self.to_dict(include_timing), indent=indent, sort_keys=True)

    def lines(self) -> list[str]:
        out = []
        for c in self.checks:
            out.append(
                f"[{c.status.upper():7s}] {c.name} ({c.theorem}): "
                f"metric={c.metric:.3e} tol={c.tol:.1e} {c.details}"
            )
        s = self.summary
        out.append(f"summary: {s['pass']} pass, {s['fail']} fail, {s['skipped']} skipped")
        return out


def _rng_for(config: SuiteConfig, name: str) -> np.random.Generator:
    return np.random.default_rng(config.seed ^ zlib.crc32(name.encode()))


def _result(name, theorem, metric, tol, ok_extra=True, details=""):
    status = "pass" if (metric <= tol and ok_extra) else "fail"
    return CheckResult(name, theorem, status, float(metric), float(tol), details)


# ---------------------------------------------------------------------------
# Individual checks
# ---------------------------------------------------------------------------


def check_orthonormality(config: SuiteConfig) -> CheckResult:
    """Gram matrix of h_0..h_30 under a 64-point rule vs the identity."""
    name, theorem = "hermite-orthonormality", "eq. (2.1)"
    rule = gauss_hermite_rule(64)
    ladder = hermite_eval(30, rule.nodes)
    w = rule.weights * np.exp(rule.nodes**2)
    gram = (ladder * w) @ ladder.T
    metric = float(np.max(np.abs(gram - np.eye(31))))
    return _result(name, theorem, metric, config.tolerance(name))


def check_mehler_spectral(config: SuiteConfig) -> CheckResult:
    """Closed-form heat kernel vs the truncated spectral sum.

    The sampling box shrinks with t: the truncated sum carries a tail of
    size ~ e^{(|Im z|+|Im w|) sqrt(2N) - 2Nt}, which must stay below 1e-8
    relative to the smallest kernel value over the box.
    """
    name, theorem = "mehler-spectral-bridge", "Thm 2.1"
    rng = _rng_for(config, name)
    worst = 0.0
    for t in config.t:
        re_box, im_box = (1.0, 0.3) if t < 0.4 else (2.0, 1.0)
        z = rng.uniform(-re_box, re_box, 20) + 1j * rng.uniform(-im_box, im_box, 20)
        w = rng.uniform(-re_box, re_box, 20) + 1j * rng.uniform(-im_box, im_box, 20)
        closed = mehler_kernel(t, z, w)
        spectral = mehler_spectral(t, z, w, truncation=config.N)
        worst = max(worst, float(np.max(np.abs(closed - spectral) / np.abs(closed))))
    return _result(
        name, theorem, worst, config.tolerance(name), details=f"N={config.N}"
    )


def _isometry_test_functions():
    return [
        HermiteBasis((0,)),
        HermiteBasis((1,)),
        HermiteBasis((2,)),
        HermiteBasis((3,)),
        Gaussian(1.0),
        PolyGaussian((1.0, 0.0, 0.5), 1.0),
    ]


def _l2_norm_squared(f, rule) -> float:
    from .quadrature import integrate_rn
    from .spectral import eval_test_function

    return float(
        integrate_rn(lambda x: np.abs(eval_test_function(f, x)) ** 2, rule, 1)
    )


def check_isometry(config: SuiteConfig) -> CheckResult:
    """Calibrated Bergman norm of the image vs the L^2 norm of the input."""
    name, theorem = "heat-isometry", "Thm 2.1"
    rule = gauss_hermite_rule(config.quad)
    times = [0.25] + [t for t in config.t if t != 0.25]
    kappas = []
    worst = 0.0
    for t in times:
        grid = default_bergman_grid(t, resolution=config.grid_res)
        cal = calibrate_weight(t, 1, [(k,) for k in range(5)], grid)
        kappas.append(cal.kappa)
        for f in _isometry_test_functions():
            handle = semigroup_handle(f, t, "spectral", truncation=config.N, rule=rule)
            img = bergman_norm(handle, t, 0, grid, kappa=cal.kappa)
            ref = _l2_norm_squared(f, rule)
            worst = max(worst, abs(img - ref))
    kappa_spread = max(kappas) / min(kappas) - 1.0
    expected = (2 * math.pi) ** -0.5
    kappa_dev = abs(kappas[0] / expected - 1.0)
    details = f"kappa={kappas[0]:.8f} spread={kappa_spread:.2e}"
    ok = kappa_spread <= 1e-5 and kappa_dev <= 1e-5
    return _result(name, theorem, worst, config.tolerance(name), ok, details)


def check_complex_orthogonality(config: SuiteConfig) -> CheckResult:
    """Weighted orthogonality of the complexified basis: flat diagonal
    ratios over |alpha| <= 4 and vanishing off-diagonals."""
    name, theorem = "complex-orthogonality", "eq. (2.1)"
    t = config.t[0]
    grid = default_bergman_grid(t, resolution=max(config.grid_res, 160))
    cal = calibrate_weight(t, 1, [(k,) for k in range(5)], grid)
    ok = cal.spread <= 1e-5
    details = f"diag spread={cal.spread:.2e}"
    return _result(name, theorem, cal.max_offdiagonal, config.tolerance(name), ok, details)


def check_derivative_weight_identity(config: SuiteConfig) -> CheckResult:
    """Derivative-weight norms vs the spectral form with the 2^{2m} factor."""
    name, theorem = "derivative-weight-identity", "Prop 2.2"
    t = config.t[0]
    rule = gauss_hermite_rule(config.quad)
    grid = default_bergman_grid(t, resolution=config.grid_res, degree_margin=14)
    cal = calibrate_weight(t, 1, [(k,) for k in range(5)], grid)
    orders = tuple(m for m in config.m if m >= 1) or (1, 2)
    worst = 0.0
    for m in orders:
        for k in range(4):
            handle = semigroup_handle(
                HermiteBasis((k,)), t, "spectral", truncation=config.N, rule=rule
            )
            val = bergman_norm(handle, t, m, grid, kappa=cal.kappa)
            lam = 2 * k + 1
            ref = 2.0 ** (2 * m) * lam ** (2 * m)
            worst = max(worst, abs(val - ref) / ref)
    return _result(name, theorem, worst, config.tolerance(name))


def check_reproducing(config: SuiteConfig) -> CheckResult:
    """Reproducing identity on heat images of the first basis functions."""
    name, theorem = "reproducing-property", "Thm 4.1"
    t = config.t[0]
    rng = _rng_for(config, name)
    rule = gauss_hermite_rule(config.quad)
    grid = default_bergman_grid(t, resolution=config.grid_res)
    cal = calibrate_weight(t, 1, [(k,) for k in range(5)], grid)
    pts = rng.uniform(-1.5, 1.5, (10, 2))
    worst = 0.0
    for k in range(4):
        handle = semigroup_handle(
            HermiteBasis((k,)), t, "spectral", truncation=config.N, rule=rule
        )
        for x, y in pts:
            z = complex(x, y)
            direct = handle.eval([z])
            repro = reproduce(handle, t, [z], grid, kappa=cal.kappa)
            worst = max(worst, abs(repro - direct) / (1.0 + abs(direct)))
    return _result(name, theorem, worst, config.tolerance(name))


def _envelope_grid(config: SuiteConfig, resolution: int | None = None) -> PlaneGrid:
    """Sup-hunting grid: uniform nodes, odd count, so symmetric boxes hit
    their midpoint (where several closed-form suprema sit) exactly."""
    res = resolution or max(48, config.grid_res // 2)
    if res % 2 == 0:
        res += 1
    return PlaneGrid(boxes=(config.grid_box,), resolution=res, kind="trapezoid")


def check_sobolev_envelopes(config: SuiteConfig) -> CheckResult:
    """Finite, refinement-stable envelopes of basis images, orders <= 3."""
    name, theorem = "sobolev-embedding-envelopes", "Thm 4.1"
    t = config.t[0]
    rule = gauss_hermite_rule(config.quad)
    grid = _envelope_grid(config)
    worst_change = 0.0
    all_finite = True
    for k in range(4):
        handle = semigroup_handle(
            HermiteBasis((k,)), t, "spectral", truncation=config.N, rule=rule
        )
        for m in range(4):
            rep = envelope_ratio(handle, sobolev_embed_bound(t, m), grid)
            all_finite &= math.isfinite(rep.sup_ratio) and rep.sup_ratio > 0
            worst_change = max(worst_change, rep.refinement_change)
    return _result(
        name, theorem, worst_change, config.tolerance(name), all_finite,
        "max refinement change of sup over f=h0..h3, m<=3",
    )


def check_schwartz_envelopes(config: SuiteConfig) -> CheckResult:
    """Rapid-decrease image envelopes plus the closed-form spot value
    sup = e^{-2t} / sqrt(pi) for the ground state at order 0, t = 0.3."""
    name, theorem = "schwartz-image-envelopes", "Thm 4.2"
    rule = gauss_hermite_rule(config.quad)
    grid = _envelope_grid(config)
    stable = True
    for m in range(4):
        handle = semigroup_handle(
            Gaussian(1.0), 0.4, "spectral", truncation=config.N, rule=rule
        )
        rep = envelope_ratio(handle, schwartz_image_bound(0.4, m), grid)
        stable &= rep.stable and math.isfinite(rep.sup_ratio)
    handle0 = semigroup_handle(
        HermiteBasis((0,)), 0.3, "spectral", truncation=config.N, rule=rule
    )
    rep0 = envelope_ratio(handle0, schwartz_image_bound(0.3, 0), grid)
    expected = math.exp(-0.6) / math.sqrt(math.pi)
    spot_dev = abs(rep0.sup_ratio / expected - 1.0)
    details = f"spot sup={rep0.sup_ratio:.6f} expected={expected:.6f}"
    return _result(name, theorem, spot_dev, config.tolerance(name), stable, details)


def check_intertwine(config: SuiteConfig) -> CheckResult:
    """First-order intertwining relations: exactly one sign convention
    passes, and the composed coordinate-product relation holds."""
    name, theorem = "intertwining-relations", "Lemma 4.3"
    tol = config.tolerance(name)
    times = (0.4, 0.5)
    worst_valid = 0.0
    other_min = math.inf
    composed = 0.0
    for t in times:
        fns = [Gaussian2n(1.0 / math.tanh(t)), Gaussian2n(1.0), SpecialHermiteBasis((0,), (0,))]
        for f in fns:
            rep_p = intertwine_check(f, t, +1)
            rep_m = intertwine_check(f, t, -1)
            worst_valid = max(worst_valid, rep_p.residual)
            other_min = min(other_min, rep_m.residual)
        composed = max(composed, composed_intertwine_residual(Gaussian2n(1.0), t))
    exactly_one = other_min > max(100 * tol, 1e-3) and composed <= 1e-5
    details = (
        f"validated a=+coth(t)/2; other-sign min residual={other_min:.2e}; "
        f"composed={composed:.2e}"
    )
    return _result(name, theorem, worst_valid, tol, exactly_one, details)


def check_twisted_isometry(config: SuiteConfig) -> CheckResult:
    """Calibrated twisted isometry plus the eigen-relation pointwise."""
    name, theorem = "twisted-isometry", "Thm 3.1"
    t = 0.4
    grid4 = default_special_grid(t, resolution=max(32, config.special_res))
    cal = calibrate_weight_special(t, None, grid4)
    handle = SpecialEigenHandle((0,), (0,), t)
    iso = bergman_norm_special(handle, t, 0, grid4, kappa_star=cal.kappa)
    metric = abs(iso - 1.0)

    rng = _rng_for(config, name)
    grid2 = default_twisted_grid(t)
    pts_real = rng.uniform(-1.5, 1.5, (10, 2))
    pts_cplx = rng.uniform(-1.0, 1.0, (5, 4))
    eigen_worst = 0.0
    for ab in [((0,), (0,)), ((0,), (1,))]:
        f = SpecialHermiteBasis(*ab)
        lam = oscillator_eigenvalue(ab[1])
        for row in pts_real:
            z, w = float(row[0]), float(row[1])
            got = special_semigroup_apply(f, t, z, w, "kernel", grid2)
            ref = math.exp(-lam * t) * special_hermite_eval(*ab, z, w)
            eigen_worst = max(eigen_worst, abs(got - ref) / (1.0 + abs(ref)))
        for row in pts_cplx:
            z, w = complex(row[0], row[1]), complex(row[2], row[3])
            got = special_semigroup_apply(f, t, z, w, "kernel", grid2)
            ref = math.exp(-lam * t) * special_hermite_eval(*ab, z, w)
            eigen_worst = max(eigen_worst, abs(got - ref) / (1.0 + abs(ref)))
    ok = eigen_worst <= 1e-6 and cal.spread <= 1e-3
    details = f"kappa*={cal.kappa:.6f} eigen residual={eigen_worst:.2e}"
    return _result(name, theorem, metric, config.tolerance(name), ok, details)


def check_twisted_sobolev(config: SuiteConfig) -> CheckResult:
    """Order-1 twisted Sobolev identity on an eigenfunction image."""
    name, theorem = "twisted-sobolev-identity", "Thm 3.2"
    t = 0.4
    grid4 = default_special_grid(t, resolution=max(32, config.special_res))
    cal = calibrate_weight_special(t, None, grid4)
    handle = SpecialEigenHandle((0,), (1,), t)
    val = bergman_norm_special(handle, t, 1, grid4, kappa_star=cal.kappa)
    ref = 4.0 * 9.0
    return _result(
        name, theorem, abs(val - ref) / ref, config.tolerance(name),
        details=f"value={val:.6f} expected={ref}",
    )


def check_projection_algebra(config: SuiteConfig) -> CheckResult:
    """Twisted projection algebra and eigenspace reconstruction."""
    name, theorem = "projection-algebra", "Thm 3.1"
    grid = default_twisted_grid(0.4)
    pts = [(0.0, 0.0), (0.4, -0.7), (1.0, 0.3), (-0.6, -0.2), (0.8, 0.9)]
    worst = 0.0
    for k, j in [(0, 0), (1, 1), (0, 1), (2, 1), (2, 2)]:
        for x, u in pts:
            got = laguerre_project(laguerre_profile(k), j, x, u, grid)
            ref = (
                laguerre_function_entire(k, x * x + u * u, 1) if k == j else 0.0
            )
            worst = max(worst, abs(got - ref))
    recon = sum(
        laguerre_project(Gaussian2n(1.0), k, 0.0, 0.0, grid) for k in range(13)
    )
    recon_err = abs(recon - 1.0)
    ok = recon_err <= 1e-4
    details = f"reconstruction error at origin={recon_err:.2e}"
    return _result(name, theorem, worst, config.tolerance(name), ok, details)


def check_tempered_envelope(config: SuiteConfig) -> CheckResult:
    """Point-mass image against the tempered bound: closed-form sup
    (2 pi sinh 2t)^{-1}; polynomially growing coefficients against the
    bound one order up."""
    name, theorem = "tempered-envelope", "Thm 5.1"
    rule = gauss_hermite_rule(config.quad)
    worst_dev = 0.0
    for t in config.t:
        handle = semigroup_handle(Dirac(0.0), t, "kernel")
        grid = _envelope_grid(config)
        rep = envelope_ratio(handle, tempered_bound(t, 0), grid)
        expected = 1.0 / (2 * math.pi * math.sinh(2 * t))
        worst_dev = max(worst_dev, abs(rep.sup_ratio / expected - 1.0))
    stable = True
    t0 = config.t[0]
    grow_grid = PlaneGrid(boxes=((-8.0, 8.0, -5.0, 5.0),), resolution=65, kind="trapezoid")
    for p in (1, 2):
        entries = tuple(
            (((k,)), float((2 * k + 1) ** p)) for k in range(config.N + 1)
        )
        f = CoefficientList(1, config.N, entries)
        handle = semigroup_handle(f, t0, "spectral", truncation=config.N, rule=rule)
        rep = envelope_ratio(handle, tempered_bound(t0, p + 1), grow_grid)
        stable &= rep.stable and math.isfinite(rep.sup_ratio)
    return _result(name, theorem, worst_dev, config.tolerance(name), stable)


def check_bridge(config: SuiteConfig) -> CheckResult:
    """Heat-transform / windowed-transform bridge and the transform's
    growth envelopes on both sides of the window-width threshold."""
    name, theorem = "stft-bridge", "Thm 5.3"
    rule = gauss_hermite_rule(config.quad)
    fns = [
        HermiteBasis((0,)),
        HermiteBasis((1,)),
        HermiteBasis((2,)),
        Gaussian(1.0),
        Dirac(0.3),
    ]
    worst = 0.0
    for t in config.t:
        for f in fns:
            rep = bridge_residual(f, t, rule=rule, truncation=config.N)
            worst = max(worst, rep.max_residual)
    grid = PlaneGrid(boxes=((-6.0, 6.0, -4.0, 4.0),), resolution=49, kind="trapezoid")
    stable = True
    for a in (0.5, 2.0):
        rep = pw_envelope(HermiteBasis((0,)), a, 0, grid, rule=rule)
        stable &= rep.stable and math.isfinite(rep.sup_ratio) and rep.sup_ratio > 0
    return _result(name, theorem, worst, config.tolerance(name), stable)


def check_compact_support(config: SuiteConfig) -> CheckResult:
    """Point-mass compact-support envelope: exact radius passes with the
    closed-form sup; an understated radius blows up under box growth."""
    name, theorem = "compact-support", "Thm 5.4"
    t = 0.5
    grid = PlaneGrid(boxes=((-14.0, 14.0, -6.0, 6.0),), resolution=97, kind="trapezoid")
    good = compact_growth_check(Dirac(0.5), t, grid)
    expected = (2 * math.pi * math.sinh(1.0)) ** -0.5 * math.exp(
        -0.25 / (2 * math.tanh(1.0))
    )
    metric = abs(good.sup_ratio / expected - 1.0)
    bad = compact_growth_check(Dirac(0.5), t, grid, radius=0.3)
    bad_wide = compact_growth_check(Dirac(0.5), t, grid.widen(2.0), radius=0.3)
    growth = bad_wide.sup_ratio / bad.sup_ratio
    ok = good.stable and growth >= 10.0
    details = f"sup={good.sup_ratio:.6f} violation growth x{growth:.1f}"
    return _result(name, theorem, metric, config.tolerance(name), ok, details)


def check_sobolev_image_isometry(config: SuiteConfig) -> CheckResult:
    """Order-m image isometry for a non-eigenfunction input: the
    calibrated derivative-weight norm equals 2^{2m} times the squared
    oscillator Sobolev norm."""
    name, theorem = "sobolev-image-isometry", "Thm 2.3"
    t, m = 0.25, 1
    rule = gauss_hermite_rule(config.quad)
    grid = default_bergman_grid(t, resolution=config.grid_res, degree_margin=14)
    cal = calibrate_weight(t, 1, [(k,) for k in range(5)], grid)
    f = Gaussian(2.0)
    e = expand(f, config.N, rule=rule, dimension=1)
    handle = semigroup_handle(f, t, "spectral", truncation=config.N, rule=rule)
    val = bergman_norm(handle, t, m, grid, kappa=cal.kappa)
    ref = 2.0 ** (2 * m) * sobolev_norm(e, m) ** 2
    return _result(
        name, theorem, abs(val - ref) / ref, config.tolerance(name),
        details=f"value={val:.8f} expected={ref:.8f}",
    )


def _special_envelope_grid() -> PlaneGrid:
    return PlaneGrid(boxes=((-6.0, 6.0, -6.0, 6.0), (-6.0, 6.0, -6.0, 6.0)), resolution=16)


def check_special_schwartz_envelope(config: SuiteConfig) -> CheckResult:
    """Twisted rapid-decrease envelope with the full polynomial denominator."""
    name, theorem = "twisted-schwartz-envelope", "Thm 4.4"
    rep = special_envelope(
        SpecialHermiteBasis((0,), (0,)), 0.5, 1, _special_envelope_grid(),
        kind="special-schwartz",
    )
    ok = math.isfinite(rep.sup_ratio) and rep.sup_ratio > 0 and rep.stable
    return _result(
        name, theorem, rep.refinement_change, config.tolerance(name), ok,
        f"sup={rep.sup_ratio:.6e}",
    )


def check_special_plain_envelope(config: SuiteConfig) -> CheckResult:
    """Twisted image envelope with the (1 + y^2 + v^2) denominator."""
    name, theorem = "twisted-plain-envelope", "eq. (4.7)"
    rep = special_envelope(
        SpecialHermiteBasis((0,), (0,)), 0.5, 0, _special_envelope_grid(),
        kind="special-plain",
    )
    ok = math.isfinite(rep.sup_ratio) and rep.sup_ratio > 0 and rep.stable
    return _result(
        name, theorem, rep.refinement_change, config.tolerance(name), ok,
        f"sup={rep.sup_ratio:.6e}",
    )


def check_determinism(config: SuiteConfig) -> CheckResult:
    """Identical seeds reproduce a representative check byte-for-byte."""
    name, theorem = "determinism", "harness"
    a = check_mehler_spectral(config).to_dict(include_timing=False)
    b = check_mehler_spectral(config).to_dict(include_timing=False)
    sa = json.dumps(a, sort_keys=True)
    sb = json.dumps(b, sort_keys=True)
    metric = 0.0 if sa == sb else 1.0
    return _result(name, theorem, metric, config.tolerance(name))


CHECKS = [
    check_orthonormality,
    check_mehler_spectral,
    check_isometry,
    check_complex_orthogonality,
    check_derivative_weight_identity,
    check_reproducing,
    check_sobolev_envelopes,
    check_schwartz_envelopes,
    check_intertwine,
    check_twisted_isometry,
    check_twisted_sobolev,
    check_projection_algebra,
    check_tempered_envelope,
    check_bridge,
    check_compact_support,
    check_sobolev_image_isometry,
    check_special_schwartz_envelope,
    check_special_plain_envelope,
    check_determinism,
]

REQUIRED_THEOREMS = frozenset(
    {
        "Thm 2.1",
        "Thm 2.3",
        "Thm 3.1",
        "Thm 3.2",
        "Thm 4.1",
        "Thm 4.2",
        "Thm 4.4",
        "Thm 5.1",
        "Thm 5.3",
        "Thm 5.4",
        "Prop 2.2",
        "Lemma 4.3",
        "eq. (2.1)",
        "eq. (4.7)",
    }
)


def run_suite(config: SuiteConfig | None = None) -> SuiteReport:
    """Run every registered check under the config; per-check isolation."""
    config = config or SuiteConfig()
    config.validate()
    results: list[CheckResult] = []
    for fn in CHECKS:
        start = time.perf_counter()
        try:
            res = fn(config)
        except Exception as exc:  # isolation: a crash is a failed check
            doc = (fn.__doc__ or fn.__name__).strip().splitlines()[0]
            res = CheckResult(
                name=fn.__name__.removeprefix("check_").replace("_", "-"),
                theorem="",
                status="fail",
                metric=float("inf"),
                tol=0.0,
                details=f"error: {exc!r} ({doc})",
            )
        res.seconds = time.perf_counter() - start
        results.append(res)
    return SuiteReport(config=config, checks=results)

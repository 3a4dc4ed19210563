"""Special Hermite functions, twisted convolution, and the twisted semigroup.

The special Hermite functions are built from the Hermite basis by the
oscillatory integral

    Phi_{ab}(x, u) = (2 pi)^{-n/2} int e^{i x.xi}
                     Phi_a(xi + u/2) Phi_b(xi - u/2) dxi,

an orthonormal basis of L^2(C^n) and eigenfunctions of the twisted
Laplacian with eigenvalue 2|b| + n.  Substituting complex (z, w) for
(x, u) keeps the xi-integral on the real line, where the Gaussian decay of
the Hermite factors persists, so the same quadrature evaluates the entire
extension to C^{2n}.

Twisted convolution

    (f x g)(x, u) = int f(x', u') g(x - x', u - u')
                    e^{-i (x' u - x u')/2} dx' du'

diagonalizes on Laguerre functions: (2 pi)^{-n} f x phi_k projects onto the
k-th eigenspace, and the twisted heat semigroup is the damped sum of those
projections.  Its convolution kernel here is the spectrally normalized
profile (2 pi)^{-n} (2 sinh t)^{-n} exp(-coth(t) q / 4) (q the bilinear
square).  The variant normalized as (2 pi sinh t)^{-n}, exposed by
:func:`mehler.kernels.special_heat_kernel`, is 2^n times this one; it is
what the weight on C^{2n} is built from, and the weight calibration
constant kappa* absorbs exactly that factor (kappa* ~ 2^{-n}).

Intertwining relations: with a = coth(t)/2 and b = i/2, the validated
first-order relations are

    e^{-tL}[(d/dx - a x) f] = (-a z + b w) e^{-tL} f
    e^{-tL}[(d/du - a u) f] = -(b z + a w) e^{-tL} f

(the u-direction multiplier differs in sign from the x-direction one; this
is forced by the phase convention of the twisted convolution).  The check
runs both relations under both signs of a and records which sign passes.
"""

import math
from dataclasses import dataclass

import numpy as np

from .indices import MultiIndex, as_index, multi_indices, oscillator_eigenvalue
from .kernels import special_plain_bound, special_schwartz_bound
from .quadrature import PlaneGrid, QuadRule, gauss_hermite_rule
from .semigroup import EnvelopeReport, CalibrationResult
from .specfun import hermite_eval, laguerre_ladder
from .taylor import TaylorScalar
from . import taylor

_BLOCK = 2048


# ---------------------------------------------------------------------------
# Phase-space test functions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SpecialHermiteBasis:
    """The basis member Phi_{alpha beta}."""

    alpha: MultiIndex
    beta: MultiIndex

    def __post_init__(self):
        object.__setattr__(self, "alpha", as_index(self.alpha))
        object.__setattr__(self, "beta", as_index(self.beta))
        if len(self.alpha) != len(self.beta):
            raise ValueError("alpha and beta must have the same dimension")

    @property
    def dimension(self) -> int:
        return len(self.alpha)


@dataclass(frozen=True)
class Gaussian2n:
    """exp(-a (x^2 + u^2)/2) on R^{2n}; entire in the obvious way."""

    a: float

    def __post_init__(self):
        if self.a <= 0:
            raise ValueError("Gaussian width parameter must be positive")


@dataclass(frozen=True)
class PolyGaussian2n:
    """sum c_{jk} x^j u^k exp(-a (x^2+u^2)/2) on R^2 (one complex variable).

    ``terms`` maps (j, k) powers to complex coefficients.  Closed under the
    first-order intertwining operators, which is its purpose.
    """

    terms: tuple[tuple[tuple[int, int], complex], ...]
    a: float = 0.5

    def __post_init__(self):
        terms = tuple(
            ((int(j), int(k)), complex(c)) for (j, k), c in dict(self.terms).items()
        )
        object.__setattr__(self, "terms", terms)
        if self.a <= 0:
            raise ValueError("PolyGaussian2n width parameter must be positive")


@dataclass(frozen=True)
class SampledGrid:
    """Samples on a tensor grid in R^2 with bilinear interpolation.

    Real-argument evaluation only; complexified operations refuse it.
    """

    xs: tuple[float, ...]
    us: tuple[float, ...]
    values: tuple[tuple[float, ...], ...]


TwistedFunction = SpecialHermiteBasis | Gaussian2n | PolyGaussian2n | SampledGrid


# ---------------------------------------------------------------------------
# Special Hermite evaluation
# ---------------------------------------------------------------------------


def _phi1(a: int, b: int, z, w, rule: QuadRule):
    """One-dimensional Phi_{ab}(z, w), broadcast over arrays z, w."""
    xi = rule.nodes
    cw = rule.weights * np.exp(xi**2)
    z = np.asarray(z)
    w = np.asarray(w)
    zx = z[..., None]
    wx = w[..., None]
    kmax = max(a, b)
    hp = hermite_eval(kmax, xi + wx / 2.0)
    hm = hermite_eval(kmax, xi - wx / 2.0)
    integrand = np.exp(1j * zx * xi) * hp[a] * hm[b]
    return (2.0 * math.pi) ** -0.5 * np.sum(cw * integrand, axis=-1)


def special_hermite_eval(alpha, beta, z, w, rule: QuadRule | None = None):
    """Phi_{alpha beta} at (z, w) in C^{2n}; coordinates broadcast.

    For n > 1 the defining integral factorizes, so the value is the product
    of one-dimensional factors.  ``rule`` should have order >= 64; the
    integrand is a polynomial times exp(-xi^2) on the real line, which the
    compensated Gauss-Hermite rule integrates essentially exactly for
    bounded |Re z|.
    """
    alpha = as_index(alpha)
    beta = as_index(beta)
    if len(alpha) != len(beta):
        raise ValueError("alpha and beta must have the same dimension")
    rule = rule or gauss_hermite_rule(64)
    if rule.order < 64:
        raise ValueError("rule order must be >= 64 for the defining integral")
    n = len(alpha)
    if n == 1:
        return _phi1(alpha[0], beta[0], z, w, rule)
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    if z.shape[-1] != n or w.shape[-1] != n:
        raise ValueError(f"expected trailing coordinate axis of length {n}")
    val = 1.0
    for j in range(n):
        val = val * _phi1(alpha[j], beta[j], z[..., j], w[..., j], rule)
    return val


def special_hermite_matrix(a: int, b: int, Z, W, rule: QuadRule):
    """Phi_{ab} on the product of a flat Z-plane array and a flat W-plane
    array, returned as a (len(Z), len(W)) matrix.

    Exploits separability of the defining integral: the z-dependence enters
    only through e^{i z xi}, so the matrix is a single matmul.
    """
    xi = rule.nodes
    cw = rule.weights * np.exp(xi**2)
    Z = np.asarray(Z, dtype=complex).ravel()
    W = np.asarray(W, dtype=complex).ravel()
    kmax = max(a, b)
    hp = hermite_eval(kmax, xi[:, None] + W[None, :] / 2.0)
    hm = hermite_eval(kmax, xi[:, None] - W[None, :] / 2.0)
    B = cw[:, None] * hp[a] * hm[b]
    A = np.exp(1j * Z[:, None] * xi[None, :])
    return (2.0 * math.pi) ** -0.5 * (A @ B)


# ---------------------------------------------------------------------------
# Closed-form twisted profiles
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HeatProfile:
    """Spectrally normalized twisted heat kernel profile.

    (2 pi)^{-n} (2 sinh t)^{-n} exp(-coth(t) (z^2 + w^2)/4); this is the
    profile whose twisted convolution reproduces the damped eigenspace sum.
    """

    t: float
    dimension: int = 1

    def __post_init__(self):
        if self.t <= 0:
            raise ValueError("t must be positive")

    def __call__(self, z, w):
        q = np.asarray(z) ** 2 + np.asarray(w) ** 2
        pref = ((2.0 * math.pi) * (2.0 * math.sinh(self.t))) ** (-self.dimension)
        return pref * np.exp(-0.25 / math.tanh(self.t) * q)


@dataclass(frozen=True)
class LaguerreProfile:
    """phi_k as an entire function of (z, w) through the bilinear square."""

    k: int
    dimension: int = 1

    def __call__(self, z, w):
        q = np.asarray(z) ** 2 + np.asarray(w) ** 2
        lad = laguerre_ladder(self.k, self.dimension - 1, q / 2.0)
        return lad[self.k] * np.exp(-q / 4.0)


def heat_profile(t: float, dimension: int = 1) -> HeatProfile:
    return HeatProfile(t, dimension)


def laguerre_profile(k: int, dimension: int = 1) -> LaguerreProfile:
    return LaguerreProfile(k, dimension)


@dataclass(frozen=True)
class GaussianImage:
    """Closed form of the twisted heat image of Gaussian2n(a) (n = 1).

    Obtained by completing the square in the defining convolution integral;
    used as an independent oracle for the quadrature routes.
    """

    a: float
    t: float

    def __call__(self, z, w):
        z = np.asarray(z, dtype=complex)
        w = np.asarray(w, dtype=complex)
        g = 0.25 / math.tanh(self.t)
        pref = (2.0 * math.pi) ** -1 * (2.0 * math.sinh(self.t)) ** -1
        kap = 0.5 * self.a + g
        ex = np.exp(-g * (z**2 + w**2))
        ix = np.exp((2 * g * z - 0.5j * w) ** 2 / (4 * kap))
        iu = np.exp((2 * g * w + 0.5j * z) ** 2 / (4 * kap))
        return pref * (math.pi / kap) * ex * ix * iu


# ---------------------------------------------------------------------------
# Pointwise evaluation of twisted functions
# ---------------------------------------------------------------------------


def twisted_eval(f, X, U, rule: QuadRule | None = None):
    """Values of f at real phase-space points (vectorized)."""
    X = np.asarray(X)
    U = np.asarray(U)
    if isinstance(f, SpecialHermiteBasis):
        if f.dimension != 1:
            raise ValueError("vectorized evaluation is one-dimensional")
        return special_hermite_eval(f.alpha, f.beta, X, U, rule)
    if isinstance(f, Gaussian2n):
        return np.exp(-0.5 * f.a * (X**2 + U**2))
    if isinstance(f, PolyGaussian2n):
        acc = np.zeros(np.broadcast(X, U).shape, dtype=complex)
        for (j, k), c in f.terms:
            acc += c * X**j * U**k
        return acc * np.exp(-0.5 * f.a * (X**2 + U**2))
    if isinstance(f, SampledGrid):
        return _sampled_eval(f, X, U)
    if callable(f):
        return f(X, U)
    raise TypeError(f"cannot evaluate {type(f).__name__}")


def twisted_eval_entire(g, Z, W, rule: QuadRule | None = None):
    """Values of g at complexified phase-space points; refuses members
    without an entire form."""
    if isinstance(g, SampledGrid):
        raise ValueError("sampled data has no entire continuation")
    if isinstance(g, (Gaussian2n, PolyGaussian2n, SpecialHermiteBasis)):
        return twisted_eval(g, np.asarray(Z, dtype=complex), np.asarray(W, dtype=complex), rule)
    if callable(g):
        return g(np.asarray(Z, dtype=complex), np.asarray(W, dtype=complex))
    raise TypeError(f"cannot evaluate {type(g).__name__}")


def _sampled_eval(f: SampledGrid, X, U):
    xs = np.asarray(f.xs)
    us = np.asarray(f.us)
    vals = np.asarray(f.values)
    X = np.clip(np.asarray(X, dtype=float), xs[0], xs[-1])
    U = np.clip(np.asarray(U, dtype=float), us[0], us[-1])
    i = np.clip(np.searchsorted(xs, X) - 1, 0, len(xs) - 2)
    j = np.clip(np.searchsorted(us, U) - 1, 0, len(us) - 2)
    tx = (X - xs[i]) / (xs[i + 1] - xs[i])
    tu = (U - us[j]) / (us[j + 1] - us[j])
    return (
        vals[i, j] * (1 - tx) * (1 - tu)
        + vals[i + 1, j] * tx * (1 - tu)
        + vals[i, j + 1] * (1 - tx) * tu
        + vals[i + 1, j + 1] * tx * tu
    )


# ---------------------------------------------------------------------------
# Twisted convolution and the twisted semigroup
# ---------------------------------------------------------------------------


def default_twisted_grid(t: float = 0.4, resolution: int = 96) -> PlaneGrid:
    """Integration grid for twisted convolutions at desk scale."""
    h = math.sqrt(34.5 / (0.25 + 0.25 / math.tanh(t))) + 3.0
    return PlaneGrid(boxes=((-h, h, -h, h),), resolution=resolution)


def twisted_conv(
    f,
    g,
    z,
    w,
    grid: PlaneGrid,
    rule: QuadRule | None = None,
) -> complex:
    """(f x g)(z, w) for a real or complexified phase-space point.

    The integration runs over the real plane grid; for complex (z, w) the
    displaced factor g and the phase use the entire continuation, so g must
    have one (closed forms and basis members do; sampled data does not).
    """
    X, U, Wt = grid.nodes()
    fv = twisted_eval(f, X, U, rule)
    gv = twisted_eval_entire(g, z - X, w - U, rule)
    phase = np.exp(-0.5j * (X * w - z * U))
    return complex(np.sum(Wt * fv * gv * phase))


def special_semigroup_apply(
    f,
    t: float,
    z,
    w,
    mode: str = "kernel",
    grid: PlaneGrid | None = None,
    rule: QuadRule | None = None,
    truncation: int = 24,
) -> complex:
    """Twisted heat semigroup applied to f, evaluated at (z, w) in C^2.

    Kernel mode convolves with the spectrally normalized heat profile;
    spectral mode sums the damped Laguerre projections up to ``truncation``.
    Both agree, and on basis members reproduce the eigenvalue damping
    e^{-(2|beta|+n) t}.
    """
    if t <= 0:
        raise ValueError("t must be positive")
    grid = grid or default_twisted_grid(t)
    if mode == "kernel":
        return twisted_conv(f, heat_profile(t), z, w, grid, rule)
    if mode != "spectral":
        raise ValueError(f"unknown mode {mode!r}")
    X, U, Wt = grid.nodes()
    fv = twisted_eval(f, X, U, rule)
    phase = np.exp(-0.5j * (X * w - z * U))
    base = Wt * fv * phase
    q = (z - X) ** 2 + (w - U) ** 2
    lad = laguerre_ladder(truncation, 0, q / 2.0)
    damp = np.exp(-q / 4.0)
    total = 0j
    for k in range(truncation + 1):
        term = np.sum(base * lad[k] * damp)
        total += math.exp(-(2 * k + 1) * t) * term
    return complex(total / (2.0 * math.pi))


def laguerre_project(f, k: int, z, w, grid: PlaneGrid, rule: QuadRule | None = None) -> complex:
    """Eigenspace projection (2 pi)^{-n} (f x phi_k) at a real point."""
    if k < 0:
        raise ValueError("k must be >= 0")
    val = twisted_conv(f, laguerre_profile(k), z, w, grid, rule)
    return val / (2.0 * math.pi)


# ---------------------------------------------------------------------------
# Expansions over the special Hermite basis
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SpecialExpansion:
    """Coefficients d_{ab} over pairs |alpha|, |beta| <= truncation."""

    dimension: int
    truncation: int
    pairs: tuple[tuple[MultiIndex, MultiIndex], ...]
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=complex)
        if len(self.pairs) != len(vals):
            raise ValueError("pairs/values length mismatch")
        object.__setattr__(self, "values", vals)

    @classmethod
    def pair_list(cls, dimension: int, truncation: int):
        idx = multi_indices(dimension, truncation)
        return tuple((a, b) for a in idx for b in idx)

    def coefficient(self, alpha, beta) -> complex:
        key = (as_index(alpha), as_index(beta))
        try:
            return complex(self.values[self.pairs.index(key)])
        except ValueError:
            return 0j


def special_expand(
    f,
    truncation: int,
    grid: PlaneGrid,
    rule: QuadRule | None = None,
) -> SpecialExpansion:
    """d_{ab} = (f, Phi_ab)_{L^2(C)} by plane quadrature (n = 1)."""
    pairs = SpecialExpansion.pair_list(1, truncation)
    X, U, Wt = grid.nodes()
    fv = twisted_eval(f, X, U, rule)
    vals = []
    for a, b in pairs:
        basis = special_hermite_eval(a, b, X, U, rule)
        vals.append(np.sum(Wt * fv * np.conj(basis)))
    return SpecialExpansion(1, truncation, pairs, np.asarray(vals))


def laguerre_sobolev_norm(e: SpecialExpansion, m: int) -> float:
    """sqrt( sum (2|beta|+n)^{2m} |d_{ab}|^2 )."""
    lam = np.array(
        [oscillator_eigenvalue(b, e.dimension) for _, b in e.pairs], dtype=float
    )
    return float(np.sqrt(np.sum(lam ** (2 * m) * np.abs(e.values) ** 2)))


# ---------------------------------------------------------------------------
# Intertwining relations
# ---------------------------------------------------------------------------


def _as_polygauss(f) -> PolyGaussian2n | None:
    if isinstance(f, PolyGaussian2n):
        return f
    if isinstance(f, Gaussian2n):
        return PolyGaussian2n((((0, 0), 1.0),), f.a)
    if isinstance(f, SpecialHermiteBasis) and f.alpha == (0,) and f.beta == (0,):
        return PolyGaussian2n((((0, 0), (2.0 * math.pi) ** -0.5),), 0.5)
    return None


def _pg_combine(terms: dict, key, coeff):
    if coeff != 0:
        terms[key] = terms.get(key, 0j) + coeff


def pg_dx(f: PolyGaussian2n) -> PolyGaussian2n:
    """d/dx of a polynomial Gaussian, exactly."""
    out: dict = {}
    for (j, k), c in f.terms:
        if j > 0:
            _pg_combine(out, (j - 1, k), j * c)
        _pg_combine(out, (j + 1, k), -f.a * c)
    return PolyGaussian2n(tuple(out.items()), f.a)


def pg_du(f: PolyGaussian2n) -> PolyGaussian2n:
    out: dict = {}
    for (j, k), c in f.terms:
        if k > 0:
            _pg_combine(out, (j, k - 1), k * c)
        _pg_combine(out, (j, k + 1), -f.a * c)
    return PolyGaussian2n(tuple(out.items()), f.a)


def pg_mul_x(f: PolyGaussian2n) -> PolyGaussian2n:
    return PolyGaussian2n(tuple(((j + 1, k), c) for (j, k), c in f.terms), f.a)


def pg_mul_u(f: PolyGaussian2n) -> PolyGaussian2n:
    return PolyGaussian2n(tuple(((j, k + 1), c) for (j, k), c in f.terms), f.a)


def pg_scale(f: PolyGaussian2n, s: complex) -> PolyGaussian2n:
    return PolyGaussian2n(tuple(((j, k), s * c) for (j, k), c in f.terms), f.a)


def pg_add(f: PolyGaussian2n, g: PolyGaussian2n) -> PolyGaussian2n:
    if f.a != g.a:
        raise ValueError("mismatched Gaussian rates")
    out: dict = {}
    for (j, k), c in f.terms:
        _pg_combine(out, (j, k), c)
    for (j, k), c in g.terms:
        _pg_combine(out, (j, k), c)
    return PolyGaussian2n(tuple(out.items()), f.a)


@dataclass(frozen=True)
class _FiniteDiffFunction:
    """4th-order central difference of a twisted function (step 1e-3)."""

    f: object
    which: str  # "x" or "u"
    rule: QuadRule | None = None
    step: float = 1e-3

    def __call__(self, X, U):
        h = self.step
        if self.which == "x":
            shifts = [(2 * h, 0), (h, 0), (-h, 0), (-2 * h, 0)]
        else:
            shifts = [(0, 2 * h), (0, h), (0, -h), (0, -2 * h)]
        c = [-1.0, 8.0, -8.0, 1.0]
        acc = 0.0
        for (dx, du), cc in zip(shifts, c):
            acc = acc + cc * twisted_eval(self.f, X + dx, U + du, self.rule)
        return acc / (12 * h)


def _derivative_op(f, which: str, a_coef: float, rule):
    """(d/dx - a x) f or (d/du - a u) f, analytic when f is closed form."""
    pg = _as_polygauss(f)
    if pg is not None:
        d = pg_dx(pg) if which == "x" else pg_du(pg)
        mul = pg_mul_x(pg) if which == "x" else pg_mul_u(pg)
        return pg_add(d, pg_scale(mul, -a_coef))
    base = _FiniteDiffFunction(f, which, rule)
    if which == "x":
        return lambda X, U: base(X, U) - a_coef * X * twisted_eval(f, X, U, rule)
    return lambda X, U: base(X, U) - a_coef * U * twisted_eval(f, X, U, rule)


@dataclass(frozen=True)
class IntertwineReport:
    """Residuals of the first-order intertwining relations."""

    convention: int
    a_value: float
    residual_x: float
    residual_u: float
    points: tuple

    @property
    def residual(self) -> float:
        return max(self.residual_x, self.residual_u)

    def passes(self, tol: float = 1e-6) -> bool:
        return self.residual <= tol


_DEFAULT_POINTS = (
    (0.7 + 0.3j, -0.4 + 0.6j),
    (0.2 - 0.5j, 1.0 + 0.2j),
    (-1.1 + 0.4j, 0.3 - 0.7j),
    (0.5, -0.8),
    (1.2 + 0.1j, 0.9 + 0.5j),
)


def intertwine_check(
    f,
    t: float,
    convention: int = +1,
    grid: PlaneGrid | None = None,
    rule: QuadRule | None = None,
    points=_DEFAULT_POINTS,
) -> IntertwineReport:
    """Residuals of both first-order relations under a sign convention.

    ``convention`` selects a = convention * coth(t)/2 (the two candidate
    conventions differ in this sign).  For each test point the relation
    residual |LHS - RHS| / (1 + |RHS|) is evaluated with the left side
    computed through the semigroup quadrature and the right side through
    the coordinate multipliers; the report keeps the max over points.
    """
    if convention not in (+1, -1):
        raise ValueError("convention must be +1 or -1")
    if t <= 0:
        raise ValueError("t must be positive")
    grid = grid or default_twisted_grid(t)
    a = convention * 0.5 / math.tanh(t)
    b = 0.5j

    fx = _derivative_op(f, "x", a, rule)
    fu = _derivative_op(f, "u", a, rule)

    res_x = 0.0
    res_u = 0.0
    for z, w in points:
        Ef = twisted_conv(f, heat_profile(t), z, w, grid, rule)
        lhs_x = twisted_conv(fx, heat_profile(t), z, w, grid, rule)
        rhs_x = (-a * z + b * w) * Ef
        res_x = max(res_x, abs(lhs_x - rhs_x) / (1.0 + abs(rhs_x)))
        lhs_u = twisted_conv(fu, heat_profile(t), z, w, grid, rule)
        rhs_u = -(b * z + a * w) * Ef
        res_u = max(res_u, abs(lhs_u - rhs_u) / (1.0 + abs(rhs_u)))
    return IntertwineReport(
        convention=convention,
        a_value=a,
        residual_x=res_x,
        residual_u=res_u,
        points=tuple(points),
    )


def composed_intertwine_residual(
    f,
    t: float,
    grid: PlaneGrid | None = None,
    rule: QuadRule | None = None,
    points=_DEFAULT_POINTS,
) -> float:
    """Residual of the composed relation e^{-tL}(T f) = z w e^{-tL} f.

    T is assembled from the validated first-order relations: with
    D_x = d/dx - a x, D_u = d/du - a u and d = a^2 + b^2, the operators
    Z = (-a D_x - b D_u)/d and W = (b D_x - a D_u)/d extract the z and w
    coordinate multipliers, and T = Z o W.
    """
    if t <= 0:
        raise ValueError("t must be positive")
    grid = grid or default_twisted_grid(t)
    pg = _as_polygauss(f)
    if pg is None:
        raise ValueError("the composed check needs a closed-form test function")
    a = 0.5 / math.tanh(t)
    b = 0.5j
    det = a * a + b * b

    def op_zw(g: PolyGaussian2n, c_x: complex, c_u: complex) -> PolyGaussian2n:
        dx = pg_add(pg_dx(g), pg_scale(pg_mul_x(g), -a))
        du = pg_add(pg_du(g), pg_scale(pg_mul_u(g), -a))
        return pg_scale(pg_add(pg_scale(dx, c_x), pg_scale(du, c_u)), 1.0 / det)

    Wf = op_zw(pg, b, -a)
    Tf = op_zw(Wf, -a, -b)

    res = 0.0
    for z, w in points:
        Ef = twisted_conv(pg, heat_profile(t), z, w, grid, rule)
        lhs = twisted_conv(Tf, heat_profile(t), z, w, grid, rule)
        rhs = z * w * Ef
        res = max(res, abs(lhs - rhs) / (1.0 + abs(rhs)))
    return res


# ---------------------------------------------------------------------------
# Weighted norms on C^{2n} and envelopes
# ---------------------------------------------------------------------------


class SpecialHandle:
    """An evaluable entire function on C^{2n} (n = 1)."""

    def eval_pair(self, z: complex, w: complex) -> complex:
        raise NotImplementedError

    def eval_matrix(self, Z: np.ndarray, W: np.ndarray) -> np.ndarray:
        """Values on the product of flat Z-plane and W-plane arrays."""
        raise NotImplementedError


@dataclass(frozen=True)
class SpecialEigenHandle(SpecialHandle):
    """Twisted heat image of a basis member: e^{-(2|b|+n)t} Phi_ab."""

    alpha: MultiIndex
    beta: MultiIndex
    time: float
    rule: QuadRule | None = None

    def __post_init__(self):
        object.__setattr__(self, "alpha", as_index(self.alpha))
        object.__setattr__(self, "beta", as_index(self.beta))
        if self.time <= 0:
            raise ValueError("time must be positive")

    def _damp(self) -> float:
        lam = oscillator_eigenvalue(self.beta)
        return math.exp(-lam * self.time)

    def eval_pair(self, z, w) -> complex:
        val = special_hermite_eval(self.alpha, self.beta, z, w, self.rule)
        return complex(self._damp() * val)

    def eval_matrix(self, Z, W) -> np.ndarray:
        rule = self.rule or gauss_hermite_rule(64)
        return self._damp() * special_hermite_matrix(
            self.alpha[0], self.beta[0], Z, W, rule
        )


@dataclass(frozen=True)
class ClosedFormSpecialHandle(SpecialHandle):
    """Wraps a vectorized closed form fn(Z, W)."""

    fn: object
    label: str = ""

    def eval_pair(self, z, w) -> complex:
        return complex(self.fn(np.asarray(z, dtype=complex), np.asarray(w, dtype=complex)))

    def eval_matrix(self, Z, W) -> np.ndarray:
        Z = np.asarray(Z, dtype=complex).ravel()
        W = np.asarray(W, dtype=complex).ravel()
        return self.fn(Z[:, None], W[None, :])


def special_image_handle(f, t: float, rule: QuadRule | None = None) -> SpecialHandle:
    """Image of a twisted test function under the twisted heat semigroup,
    in a form evaluable on 4-dimensional grids."""
    if isinstance(f, SpecialHermiteBasis):
        return SpecialEigenHandle(f.alpha, f.beta, t, rule)
    if isinstance(f, Gaussian2n):
        return ClosedFormSpecialHandle(GaussianImage(f.a, t), label="gaussian-image")
    raise ValueError(
        "4-D scans support basis members and Gaussians; other members are "
        "available pointwise through special_semigroup_apply"
    )


def default_special_grid(t: float = 0.4, resolution: int = 40, drop: float = 1e-12) -> PlaneGrid:
    """Grid over C^2 sized for |Phi_ab|^2 W_t integrands (n = 1).

    The weighted integrand decays like exp(-(u-y)^2/2 - (coth 2t - 1) y^2)
    in the (u, y) pair and symmetrically in (x, v), so the real-part boxes
    must be wider than the imaginary-part boxes by the shear.
    """
    budget = -math.log(drop)
    c = 1.0 / math.tanh(2 * t) - 1.0
    h_im = math.sqrt(budget / c) + 1.5
    h_re = math.sqrt(budget * (1 + 2 * c) / c) + 1.5
    box_z = (-h_re, h_re, -h_im, h_im)
    box_w = (-h_re, h_re, -h_im, h_im)
    return PlaneGrid(boxes=(box_z, box_w), resolution=resolution)


def _plane_nodes(grid: PlaneGrid, which: int):
    x, wx = grid.axis(2 * which)
    y, wy = grid.axis(2 * which + 1)
    X = np.repeat(x, len(y))
    Y = np.tile(y, len(x))
    W = np.repeat(wx, len(y)) * np.tile(wy, len(x))
    return X, Y, W


def _twisted_weight_block(t: float, m: int, Yb, Ub, Xb, Vb):
    """d^{2m}/dt^{2m} W_t on an (len(b), Mw) block, dimension 1."""
    cross = Yb[:, None] * Ub[None, :] - Xb[:, None] * Vb[None, :]
    yv2 = np.add.outer(Yb**2, Vb**2)
    envelope = 4.0 * np.exp(cross)
    if m == 0:
        pref = 1.0 / (2.0 * math.pi * math.sinh(2 * t))
        return envelope * pref * np.exp(-(1.0 / math.tanh(2 * t)) * yv2)
    T = TaylorScalar.variable(t, 2 * m)
    pref = taylor.sinh(T * 2.0).power(-1.0) * (2.0 * math.pi) ** -1
    series = pref * (taylor.coth(T * 2.0) * (-yv2)).exp()
    return envelope * series.derivative(2 * m)


def bergman_norm_special(
    handle: SpecialHandle,
    t: float,
    m: int,
    grid: PlaneGrid,
    kappa_star: float = 1.0,
) -> float:
    """kappa* int |F|^2 d^{2m}/dt^{2m} W_t over C^2 (n = 1 only).

    The 4-dimensional quadrature is evaluated in blocks over the z-plane
    to bound memory; the weight derivative uses jet arithmetic blockwise.
    """
    if grid.ncoords != 2:
        raise ValueError("need a two-coordinate grid over C^2")
    if m < 0:
        raise ValueError("m must be >= 0")
    Xz, Yz, Wz = _plane_nodes(grid, 0)
    Uw, Vw, Ww = _plane_nodes(grid, 1)
    Zc = Xz + 1j * Yz
    Wc = Uw + 1j * Vw
    total = 0.0
    for lo in range(0, len(Zc), _BLOCK):
        hi = min(lo + _BLOCK, len(Zc))
        F = handle.eval_matrix(Zc[lo:hi], Wc)
        weight = _twisted_weight_block(t, m, Yz[lo:hi], Uw, Xz[lo:hi], Vw)
        block = np.abs(F) ** 2 * weight
        total += float(np.sum((Wz[lo:hi] @ block) * Ww))
    return kappa_star * total


def calibrate_weight_special(
    t: float,
    pairs: list[tuple] | None,
    grid: PlaneGrid,
    rule: QuadRule | None = None,
) -> CalibrationResult:
    """Calibration constant kappa* of the twisted Bergman weight (n = 1).

    Diagonal probes integrate |Phi_ab|^2 W_t; ratios
    e^{2(2|b|+n)t} / integral must be flat over (a, b); off-diagonals must
    vanish.  kappa* comes out near 2^{-n}: the weight is built from the
    (2 pi sinh t)^{-n}-normalized profile, 2^n times the spectral one.
    """
    if pairs is None:
        pairs = [((0,), (0,)), ((0,), (1,)), ((1,), (0,)), ((1,), (1,))]
    pairs = [(as_index(a), as_index(b)) for a, b in pairs]
    rule = rule or gauss_hermite_rule(64)

    ratios: dict = {}
    for a, b in pairs:
        handle = SpecialEigenHandle(a, b, t, rule)
        # strip the eigen-damping: integrate |Phi_ab|^2 W_t itself
        raw = bergman_norm_special(handle, t, 0, grid) / handle._damp() ** 2
        lam = oscillator_eigenvalue(b)
        ratios[(a, b)] = math.exp(2 * lam * t) / raw

    max_off = 0.0
    probe_offdiag = [(pairs[0], p) for p in pairs[1:3]]
    Xz, Yz, Wz = _plane_nodes(grid, 0)
    Uw, Vw, Ww = _plane_nodes(grid, 1)
    Zc = Xz + 1j * Yz
    Wc = Uw + 1j * Vw
    for (a1, b1), (a2, b2) in probe_offdiag:
        acc = 0j
        for lo in range(0, len(Zc), _BLOCK):
            hi = min(lo + _BLOCK, len(Zc))
            F1 = special_hermite_matrix(a1[0], b1[0], Zc[lo:hi], Wc, rule)
            F2 = special_hermite_matrix(a2[0], b2[0], Zc[lo:hi], Wc, rule)
            weight = _twisted_weight_block(t, 0, Yz[lo:hi], Uw, Xz[lo:hi], Vw)
            acc += np.sum((Wz[lo:hi])[:, None] * F1 * np.conj(F2) * weight * Ww[None, :])
        max_off = max(max_off, abs(acc))

    vals = np.array(list(ratios.values()))
    if vals.max() / vals.min() - 1.0 > 1e-2:
        raise RuntimeError("twisted calibration ratios vary beyond 1e-2")
    kappa = float(np.exp(np.mean(np.log(vals))))
    return CalibrationResult(
        kappa=kappa, ratios=ratios, max_offdiagonal=float(max_off), t=t, dimension=1
    )


def special_envelope(
    f,
    t: float,
    m: int,
    grid: PlaneGrid,
    kind: str = "special-schwartz",
    rule: QuadRule | None = None,
    stability_threshold: float = 0.05,
) -> EnvelopeReport:
    """Sup of |e^{-tL}f|^2 / bound over a C^2 grid (n = 1).

    ``kind`` selects the full polynomial denominator ("special-schwartz")
    or the plain variant with the (1 + y^2 + v^2) denominator
    ("special-plain").
    """
    if grid.ncoords != 2:
        raise ValueError("need a two-coordinate grid over C^2")
    if kind == "special-schwartz":
        bound = special_schwartz_bound(t, m)
    elif kind == "special-plain":
        bound = special_plain_bound(t, m)
    else:
        raise ValueError(f"unknown envelope kind {kind!r}")
    if f is None:
        return EnvelopeReport(0.0, (0.0, 0.0, 0.0, 0.0), bound, grid, True, 0.0)
    handle = special_image_handle(f, t, rule)

    def scan(g: PlaneGrid):
        Xz, Yz, _ = _plane_nodes(g, 0)
        Uw, Vw, _ = _plane_nodes(g, 1)
        Zc = Xz + 1j * Yz
        Wc = Uw + 1j * Vw
        best = -math.inf
        arg = (0.0, 0.0, 0.0, 0.0)
        for lo in range(0, len(Zc), _BLOCK):
            hi = min(lo + _BLOCK, len(Zc))
            F = handle.eval_matrix(Zc[lo:hi], Wc)
            logb = bound.log_eval(
                Xz[lo:hi, None], Yz[lo:hi, None], Uw[None, :], Vw[None, :]
            )
            with np.errstate(divide="ignore"):
                lr = 2.0 * np.log(np.abs(F)) - logb
            i, j = np.unravel_index(int(np.argmax(lr)), lr.shape)
            if lr[i, j] > best:
                best = float(lr[i, j])
                arg = (
                    float(Xz[lo + i]),
                    float(Yz[lo + i]),
                    float(Uw[j]),
                    float(Vw[j]),
                )
        return (math.exp(best) if best > -math.inf else 0.0), arg

    sup_coarse, _ = scan(grid)
    sup_fine, argmax = scan(grid.refine(2))
    stable = (
        sup_fine == sup_coarse == 0.0
        or abs(sup_fine - sup_coarse) / max(sup_fine, 1e-300) < stability_threshold
    )
    return EnvelopeReport(sup_fine, argmax, bound, grid, stable, sup_coarse)

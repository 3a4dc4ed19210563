"""Closed-form kernels, Bergman weights, and pointwise growth bounds.

The heat kernel of the oscillator -Delta + |x|^2 has the closed form

    K_t(z, w) = (2 pi sinh 2t)^{-n/2}
                exp(-coth(2t) (z^2 + w^2)/2 + z.w / sinh 2t),

entire and symmetric in (z, w) (z^2 means the bilinear square).  The image
of L^2 under the heat transform sits inside entire functions square
integrable against the Bergman weight

    U_t(x+iy) = 2^n (sinh 4t)^{-n/2} exp(tanh(2t) x^2 - coth(2t) y^2);

its 2m-th time derivatives weight the holomorphic Sobolev norms and are
computed exactly with truncated Taylor arithmetic.  Reproducing kernels of
the weighted spaces come from the closed form at doubled time (order 0),
from an integral over shifted times (positive orders), or from the spectral
sum (negative orders).

Note on constants: with U_t as normalized here, the complexified basis
orthogonality holds only up to a fixed multiplicative factor; the
calibration in :mod:`mehler.semigroup` determines that factor
((2 pi)^{-n/2}) and the weighted-norm routines accept it explicitly.  The
same applies to the twisted weight below via its own calibration.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import taylor
from .quadrature import gauss_legendre_rule
from .specfun import LogComplex, hermite_eval, _wrap_phase
from .taylor import TaylorScalar

# ---------------------------------------------------------------------------
# Heat kernel
# ---------------------------------------------------------------------------


def _coord_arrays(z, dimension):
    """Split array input into per-coordinate arrays (last axis = coords)."""
    z = np.asarray(z, dtype=complex)
    if dimension == 1:
        return [z]
    if z.shape[-1] != dimension:
        raise ValueError(f"last axis must have length {dimension}")
    return [z[..., j] for j in range(dimension)]


def mehler_kernel(t: float, z, w, dimension: int = 1):
    """Oscillator heat kernel K_t(z, w), entire in both arguments.

    Vectorized elementwise for dimension 1; for higher dimension the last
    axis of ``z``/``w`` indexes coordinates.
    """
    if t <= 0:
        raise ValueError("t must be positive")
    zs = _coord_arrays(z, dimension)
    ws = _coord_arrays(w, dimension)
    s2t = math.sinh(2 * t)
    c2t = math.cosh(2 * t) / s2t
    expo = sum(-0.5 * c2t * (a * a + b * b) + a * b / s2t for a, b in zip(zs, ws))
    pref = (2.0 * math.pi * s2t) ** (-0.5 * dimension)
    return pref * np.exp(expo)


def mehler_kernel_log(t: float, z, w, dimension: int = 1) -> LogComplex:
    """Scalar log-domain heat kernel (never overflows)."""
    if t <= 0:
        raise ValueError("t must be positive")
    zs = [complex(v) for v in np.atleast_1d(np.asarray(z, dtype=complex))]
    ws = [complex(v) for v in np.atleast_1d(np.asarray(w, dtype=complex))]
    if len(zs) != dimension or len(ws) != dimension:
        raise ValueError("dimension mismatch")
    s2t = math.sinh(2 * t)
    c2t = math.cosh(2 * t) / s2t
    expo = sum(
        -0.5 * c2t * (a * a + b * b) + a * b / s2t for a, b in zip(zs, ws)
    )
    log_pref = -0.5 * dimension * math.log(2.0 * math.pi * s2t)
    return LogComplex(log_pref + expo.real, _wrap_phase(expo.imag))


def mehler_spectral(t: float, z, w, truncation: int = 48, dimension: int = 1):
    """Spectral sum sum_k e^{-(2k+n)t} h_k(z) h_k(w) (dimension 1 only).

    The independent cross-check for the closed form; truncated at
    ``truncation`` with geometric tail e^{-2t} per step.
    """
    if dimension != 1:
        raise ValueError("spectral cross-check is one-dimensional")
    hz = hermite_eval(truncation, np.asarray(z, dtype=complex))
    hw = hermite_eval(truncation, np.asarray(w, dtype=complex))
    k = np.arange(truncation + 1)
    damp = np.exp(-(2 * k + 1) * t)
    return np.tensordot(damp, hz * hw, axes=(0, 0))


# ---------------------------------------------------------------------------
# Bergman weight and its time derivatives
# ---------------------------------------------------------------------------


def bergman_weight(t: float, z, dimension: int = 1):
    """Weight U_t(x+iy) = 2^n (sinh 4t)^{-n/2} e^{tanh(2t) x^2 - coth(2t) y^2}."""
    if t <= 0:
        raise ValueError("t must be positive")
    zs = _coord_arrays(z, dimension)
    x2 = sum(a.real**2 for a in zs)
    y2 = sum(a.imag**2 for a in zs)
    log_pref = dimension * math.log(2.0) - 0.5 * dimension * math.log(math.sinh(4 * t))
    return np.exp(log_pref + math.tanh(2 * t) * x2 - (1.0 / math.tanh(2 * t)) * y2)


def bergman_weight_dt(t: float, m: int, z, dimension: int = 1):
    """2m-th time derivative of U_t at fixed z (signed), by jet arithmetic.

    m = 0 reduces to the plain weight.  Vectorized over z.
    """
    if t <= 0:
        raise ValueError("t must be positive")
    if m < 0:
        raise ValueError("m must be >= 0")
    if m == 0:
        return bergman_weight(t, z, dimension)
    zs = _coord_arrays(z, dimension)
    x2 = sum(np.asarray(a.real, dtype=float) ** 2 for a in zs)
    y2 = sum(np.asarray(a.imag, dtype=float) ** 2 for a in zs)
    T = TaylorScalar.variable(t, 2 * m)
    sinh4 = taylor.sinh(T * 4.0)
    pref = sinh4.power(-0.5 * dimension) * (2.0**dimension)
    th = taylor.tanh(T * 2.0)
    ch = taylor.coth(T * 2.0)
    series = pref * (th * x2 - ch * y2).exp()
    return series.derivative(2 * m)


# ---------------------------------------------------------------------------
# Reproducing kernels of the weighted (Sobolev) Bergman spaces
# ---------------------------------------------------------------------------


def _integral_upper_limit(t: float, m: int, dimension: int, tail: float = 1e-16) -> float:
    """S with s^{2m-1} e^{-2 n (t+s)} below ``tail`` for s >= S."""
    S = 1.0
    for _ in range(60):
        val = S ** (2 * m - 1) * math.exp(-2 * dimension * (t + S))
        if val < tail:
            break
        S *= 1.25
    return S


def reproducing_kernel(
    t: float,
    m: int,
    z,
    w,
    dimension: int = 1,
    truncation: int = 48,
    quad_points: int = 96,
):
    """Reproducing kernel of the order-m weighted space at time t.

    m = 0:   closed form, the heat kernel at doubled time with the first
             argument conjugated.
    m > 0:   1/(2m-1)! * int_0^S s^{2m-1} K^{(0)}_{t+s}(z, w) ds with the
             tail cut where s^{2m-1} e^{-2n(t+s)} < 1e-16 (Gauss-Legendre).
             Equals the spectral sum with factors (2 lam)^{-2m} e^{-2 lam t}.
    m < 0:   spectral sum sum_alpha lam^{2|m|} e^{-2 lam t}
             Phi_alpha(conj z) Phi_alpha(w), truncated at ``truncation``.
    """
    if t <= 0:
        raise ValueError("t must be positive")
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    if m == 0:
        return mehler_kernel(2 * t, np.conj(z), w, dimension)
    if m > 0:
        S = _integral_upper_limit(t, m, dimension)
        rule = gauss_legendre_rule(quad_points, 0.0, S)
        total = 0.0 + 0.0j
        for s_i, w_i in zip(rule.nodes, rule.weights):
            total += (
                w_i
                * s_i ** (2 * m - 1)
                * mehler_kernel(2 * (t + s_i), np.conj(z), w, dimension)
            )
        return total / math.factorial(2 * m - 1)
    # m < 0: distribution-order kernel via the spectral sum
    if dimension != 1:
        raise ValueError("negative-order kernels are one-dimensional at desk scale")
    k = np.arange(truncation + 1)
    lam = 2 * k + 1
    hz = hermite_eval(truncation, np.conj(z))
    hw = hermite_eval(truncation, w)
    coef = lam ** (2 * abs(m)) * np.exp(-2.0 * lam * t)
    return np.tensordot(coef, hz * hw, axes=(0, 0))


def reproducing_kernel_spectral(
    t: float, m: int, z, w, dimension: int = 1, truncation: int = 48
):
    """Spectral evaluation of the order-m kernel (dimension 1).

    For m > 0 this includes the (2 lam)^{-2m} scaling that the shifted-time
    integral produces, so the two routes agree directly.
    """
    if dimension != 1:
        raise ValueError("spectral route is one-dimensional")
    k = np.arange(truncation + 1)
    lam = (2 * k + 1).astype(float)
    if m > 0:
        coef = (2.0 * lam) ** (-2 * m) * np.exp(-2.0 * lam * t)
    else:
        coef = lam ** (-2 * m) * np.exp(-2.0 * lam * t)
    hz = hermite_eval(truncation, np.conj(np.asarray(z, dtype=complex)))
    hw = hermite_eval(truncation, np.asarray(w, dtype=complex))
    return np.tensordot(coef, hz * hw, axes=(0, 0))


# ---------------------------------------------------------------------------
# Twisted heat kernel and weight
# ---------------------------------------------------------------------------


def special_heat_kernel(t: float, p, dimension: int = 1):
    """Closed form (2 pi sinh t)^{-n} exp(-coth(t) q / 4) where q is the
    bilinear square of the C^{2n} argument ``p`` (last axis length 2n).

    The twisted semigroup itself convolves with the spectrally normalized
    profile (see :func:`mehler.special.heat_profile`), which is 2^{-n}
    times this one; the weight on C^{2n} uses this normalization, and its
    calibration constant absorbs the mismatch.
    """
    if t <= 0:
        raise ValueError("t must be positive")
    p = np.asarray(p, dtype=complex)
    if dimension == 1 and (p.ndim == 0 or p.shape[-1] != 2):
        raise ValueError("p must have a trailing axis of length 2n")
    if p.shape[-1] != 2 * dimension:
        raise ValueError(f"last axis must have length {2 * dimension}")
    q = np.sum(p * p, axis=-1)
    return special_heat_from_square(t, q, dimension)


def special_heat_from_square(t: float, q, dimension: int = 1):
    """Same kernel as a function of the bilinear square ``q``."""
    if t <= 0:
        raise ValueError("t must be positive")
    pref = (2.0 * math.pi * math.sinh(t)) ** (-dimension)
    return pref * np.exp(-0.25 / math.tanh(t) * np.asarray(q, dtype=complex))


def twisted_bergman_weight(t: float, m: int, z, w, dimension: int = 1):
    """Weight on C^{2n}: 4^n e^{uy - vx} p_{2t}(2y, 2v), and its 2m-th time
    derivative for m > 0 (signed).  ``z = x + iy``, ``w = u + iv``,
    elementwise for dimension 1 or with a trailing coordinate axis.
    """
    if t <= 0:
        raise ValueError("t must be positive")
    if m < 0:
        raise ValueError("m must be >= 0")
    zs = _coord_arrays(z, dimension)
    ws = _coord_arrays(w, dimension)
    cross = sum(u.real * a.imag - u.imag * a.real for a, u in zip(zs, ws))
    y2 = sum(np.asarray(a.imag, dtype=float) ** 2 for a in zs)
    v2 = sum(np.asarray(u.imag, dtype=float) ** 2 for u in ws)
    envelope = (4.0**dimension) * np.exp(cross)
    if m == 0:
        s2t = math.sinh(2 * t)
        pref = (2.0 * math.pi * s2t) ** (-dimension)
        return envelope * pref * np.exp(-(1.0 / math.tanh(2 * t)) * (y2 + v2))
    T = TaylorScalar.variable(t, 2 * m)
    sinh2 = taylor.sinh(T * 2.0)
    pref = sinh2.power(-float(dimension)) * (2.0 * math.pi) ** (-dimension)
    series = pref * (taylor.coth(T * 2.0) * (-(y2 + v2))).exp()
    return envelope * series.derivative(2 * m)


# ---------------------------------------------------------------------------
# Growth bounds
# ---------------------------------------------------------------------------

_SQUARED_KINDS = frozenset(
    {"sobolev-embed", "schwartz-image", "tempered", "special-schwartz", "special-plain"}
)
_MODULUS_KINDS = frozenset({"pw-stft", "compact"})


@dataclass(frozen=True)
class BoundSpec:
    """A pointwise growth bound, evaluated in log-domain.

    Kinds on |F|^2: ``sobolev-embed`` and ``schwartz-image``
    (1+x^2+y^2)^{-2m} e^{-x^2 tanh 2t + y^2 coth 2t}; ``tempered``
    (1+|z|^2)^{+2m} e^{-x^2 tanh 2t + y^2 coth 2t}; ``special-schwartz``
    e^{vx-uy} e^{coth 4t (y^2+v^2)} / (1+x^2+y^2+u^2+v^2)^{2m};
    ``special-plain`` the same with denominator (1+y^2+v^2)^{2m}.

    Kinds on |F|: ``pw-stft`` (1+x^2+y^2)^m e^{y^2/(2a)}; ``compact``
    e^{-coth(2t)(x^2-y^2)/2} e^{R|x|/sinh 2t}.
    """

    kind: str
    t: float = 0.0
    m: int = 0
    a: float = 0.0
    radius: float = 0.0

    def __post_init__(self):
        if self.kind not in _SQUARED_KINDS | _MODULUS_KINDS:
            raise ValueError(f"unknown bound kind {self.kind!r}")
        if self.kind in {"sobolev-embed", "schwartz-image", "tempered",
                         "special-schwartz", "special-plain", "compact"} and self.t <= 0:
            raise ValueError("this bound kind requires t > 0")
        if self.kind == "pw-stft" and self.a <= 0:
            raise ValueError("pw-stft bound requires a > 0")

    @property
    def on_modulus(self) -> bool:
        """True when the bound is stated on |F| rather than |F|^2."""
        return self.kind in _MODULUS_KINDS

    def log_eval(self, X, Y, U=None, V=None) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        Y = np.asarray(Y, dtype=float)
        if self.kind in ("sobolev-embed", "schwartz-image"):
            r2 = X**2 + Y**2
            return (
                -2 * self.m * np.log1p(r2)
                - math.tanh(2 * self.t) * X**2
                + (1.0 / math.tanh(2 * self.t)) * Y**2
            )
        if self.kind == "tempered":
            r2 = X**2 + Y**2
            return (
                2 * self.m * np.log1p(r2)
                - math.tanh(2 * self.t) * X**2
                + (1.0 / math.tanh(2 * self.t)) * Y**2
            )
        if self.kind in ("special-schwartz", "special-plain"):
            if U is None or V is None:
                raise ValueError("this bound lives on C^{2n}: need U and V")
            U = np.asarray(U, dtype=float)
            V = np.asarray(V, dtype=float)
            c4 = 1.0 / math.tanh(4 * self.t)
            core = V * X - U * Y + c4 * (Y**2 + V**2)
            if self.kind == "special-schwartz":
                return core - 2 * self.m * np.log1p(X**2 + Y**2 + U**2 + V**2)
            return core - 2 * self.m * np.log1p(Y**2 + V**2)
        if self.kind == "pw-stft":
            return self.m * np.log1p(X**2 + Y**2) + Y**2 / (2.0 * self.a)
        if self.kind == "compact":
            c2 = 1.0 / math.tanh(2 * self.t)
            return -0.5 * c2 * (X**2 - Y**2) + self.radius * np.abs(X) / math.sinh(
                2 * self.t
            )
        raise AssertionError(self.kind)

    def eval(self, X, Y, U=None, V=None) -> np.ndarray:
        return np.exp(self.log_eval(X, Y, U, V))


def sobolev_embed_bound(t: float, m: int) -> BoundSpec:
    return BoundSpec("sobolev-embed", t=t, m=m)


def schwartz_image_bound(t: float, m: int) -> BoundSpec:
    return BoundSpec("schwartz-image", t=t, m=m)


def tempered_bound(t: float, m: int) -> BoundSpec:
    return BoundSpec("tempered", t=t, m=m)


def special_schwartz_bound(t: float, m: int) -> BoundSpec:
    return BoundSpec("special-schwartz", t=t, m=m)


def special_plain_bound(t: float, m: int) -> BoundSpec:
    return BoundSpec("special-plain", t=t, m=m)


def stft_bound(a: float, m: int) -> BoundSpec:
    return BoundSpec("pw-stft", a=a, m=m)


def compact_bound(t: float, radius: float) -> BoundSpec:
    if radius < 0:
        raise ValueError("radius must be >= 0")
    return BoundSpec("compact", t=t, radius=radius)


def bound_eval(bound: BoundSpec, X, Y, U=None, V=None) -> np.ndarray:
    """Positive value of a growth bound at grid points (log-domain inside)."""
    return bound.eval(X, Y, U, V)

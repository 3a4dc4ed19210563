"""Numerically stable Hermite and Laguerre function evaluation.

The basic objects are the L^2-normalized Hermite functions

    h_k(z) = (2^k k! sqrt(pi))^(-1/2) H_k(z) exp(-z^2/2),

entire functions of z, evaluated by the forward three-term recurrence

    h_{k+1}(z) = z sqrt(2/(k+1)) h_k(z) - sqrt(k/(k+1)) h_{k-1}(z)

seeded with h_0(z) = pi^(-1/4) exp(-z^2/2).  Off the real axis |h_k(x+iy)|
grows like exp(y^2/2), so a log-domain form (:class:`LogComplex`) is
provided that never overflows at desk scale (|Im z| <= 30, k <= 128): the
Gaussian factor is kept as an exponent and only the polynomial part runs
through the recurrence, with rescaling.

Laguerre polynomials L_k^a and the Laguerre functions

    phi_k(z) = L_k^{n-1}(|z|^2/2) exp(-|z|^2/4),   z in C^n,

are evaluated by the standard recurrence in k at fixed type a.
"""

import math
from dataclasses import dataclass

import numpy as np

from .indices import as_index, as_point

LOG_H0 = -0.25 * math.log(math.pi)  # log of h_0(0)

_RESCALE = 1e140


@dataclass(frozen=True)
class LogComplex:
    """A complex number in polar-log form exp(log_magnitude) * exp(i*phase).

    ``log_magnitude = -inf`` encodes exact zero.  Phase is kept in (-pi, pi].
    """

    log_magnitude: float
    phase: float

    def value(self) -> complex:
        if self.log_magnitude == -math.inf:
            return 0.0 + 0.0j
        return math.exp(self.log_magnitude) * complex(
            math.cos(self.phase), math.sin(self.phase)
        )

    @classmethod
    def from_value(cls, v: complex) -> "LogComplex":
        v = complex(v)
        if v == 0:
            return cls(-math.inf, 0.0)
        return cls(math.log(abs(v)), _wrap_phase(math.atan2(v.imag, v.real)))

    def __mul__(self, other: "LogComplex") -> "LogComplex":
        if not isinstance(other, LogComplex):
            return NotImplemented
        if self.log_magnitude == -math.inf or other.log_magnitude == -math.inf:
            return LogComplex(-math.inf, 0.0)
        return LogComplex(
            self.log_magnitude + other.log_magnitude,
            _wrap_phase(self.phase + other.phase),
        )


def _wrap_phase(p: float) -> float:
    p = math.remainder(p, 2.0 * math.pi)
    if p <= -math.pi:
        p += 2.0 * math.pi
    return p


def _check_finite(z) -> np.ndarray:
    z = np.asarray(z)
    if not np.all(np.isfinite(z)):
        raise ValueError("argument must be finite")
    return z


def hermite_eval(k_max: int, z) -> np.ndarray:
    """Normalized Hermite functions h_0(z), ..., h_{k_max}(z).

    Parameters
    ----------
    k_max : int
        Highest order, >= 0.
    z : scalar or ndarray, real or complex
        Evaluation point(s); the entire extension is used off the real axis.

    Returns
    -------
    ndarray of shape (k_max + 1,) + shape(z)
        Entry k is h_k(z).  Real input gives a real array.
    """
    if k_max < 0:
        raise ValueError("k_max must be >= 0")
    z = _check_finite(z)
    dtype = complex if np.iscomplexobj(z) else float
    z = np.asarray(z, dtype=dtype)
    out = np.empty((k_max + 1,) + z.shape, dtype=dtype)
    out[0] = math.pi ** -0.25 * np.exp(-(z**2) / 2.0)
    if k_max >= 1:
        out[1] = math.sqrt(2.0) * z * out[0]
    for k in range(1, k_max):
        out[k + 1] = (
            z * math.sqrt(2.0 / (k + 1)) * out[k]
            - math.sqrt(k / (k + 1.0)) * out[k - 1]
        )
    return out


def hermite_poly_ladder(k_max: int, z) -> np.ndarray:
    """Polynomial parts P_k = h_k / h_0 (P_0 = 1, P_1 = sqrt(2) z, ...).

    These satisfy the same recurrence as h_k and stay far from overflow at
    desk scale, which is what makes the log-domain evaluation work.
    """
    z = _check_finite(z)
    dtype = complex if np.iscomplexobj(z) else float
    z = np.asarray(z, dtype=dtype)
    out = np.empty((k_max + 1,) + z.shape, dtype=dtype)
    out[0] = np.ones_like(z)
    if k_max >= 1:
        out[1] = math.sqrt(2.0) * z
    for k in range(1, k_max):
        out[k + 1] = (
            z * math.sqrt(2.0 / (k + 1)) * out[k]
            - math.sqrt(k / (k + 1.0)) * out[k - 1]
        )
    return out


def hermite_log_eval(k: int, z) -> LogComplex:
    """h_k(z) in overflow-safe log form (scalar z).

    The Gaussian seed contributes the exponent -z^2/2 directly; the
    polynomial part is run through the recurrence with rescaling whenever
    its magnitude passes 1e140, so no intermediate ever overflows.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError("argument must be finite")
    x, y = z.real, z.imag
    # -z^2/2 = -(x^2 - y^2)/2 - i x y
    base_log = LOG_H0 - 0.5 * (x * x - y * y)
    base_phase = -x * y

    p_prev, p_cur = 0.0 + 0.0j, 1.0 + 0.0j
    shift = 0.0
    for j in range(k):
        p_next = z * math.sqrt(2.0 / (j + 1)) * p_cur - math.sqrt(
            j / (j + 1.0)
        ) * p_prev
        p_prev, p_cur = p_cur, p_next
        m = max(abs(p_prev), abs(p_cur))
        if m > _RESCALE:
            p_prev /= m
            p_cur /= m
            shift += math.log(m)
    if p_cur == 0:
        return LogComplex(-math.inf, 0.0)
    return LogComplex(
        base_log + shift + math.log(abs(p_cur)),
        _wrap_phase(base_phase + math.atan2(p_cur.imag, p_cur.real)),
    )


def hermite_tensor(alpha, z) -> complex:
    """Product basis function prod_j h_{alpha_j}(z_j) at a point of C^n."""
    alpha = as_index(alpha)
    z = as_point(z, dimension=len(alpha))
    val = 1.0 + 0.0j
    for a_j, z_j in zip(alpha, z):
        val *= hermite_eval(a_j, z_j)[a_j]
    return complex(val)


def hermite_tensor_log(alpha, z) -> LogComplex:
    """Log-domain variant of :func:`hermite_tensor`."""
    alpha = as_index(alpha)
    z = as_point(z, dimension=len(alpha))
    out = LogComplex(0.0, 0.0)
    for a_j, z_j in zip(alpha, z):
        out = out * hermite_log_eval(a_j, z_j)
    return out


def laguerre_eval(k: int, type_a: int, r) -> float | np.ndarray:
    """Laguerre polynomial L_k^{type_a}(r) by the three-term recurrence.

    Accepts real or complex (entire continuation) scalar/array ``r``.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    if type_a < 0:
        raise ValueError("type must be >= 0")
    r = _check_finite(r)
    ladder = laguerre_ladder(k, type_a, r)
    out = ladder[k]
    if np.ndim(out) == 0:
        return out.item()
    return out


def laguerre_ladder(k_max: int, type_a: int, r) -> np.ndarray:
    """L_0^a(r), ..., L_{k_max}^a(r); shape (k_max+1,) + shape(r)."""
    r = _check_finite(r)
    dtype = complex if np.iscomplexobj(r) else float
    r = np.asarray(r, dtype=dtype)
    out = np.empty((k_max + 1,) + r.shape, dtype=dtype)
    out[0] = np.ones_like(r)
    if k_max >= 1:
        out[1] = 1.0 + type_a - r
    for k in range(1, k_max):
        out[k + 1] = (
            (2 * k + 1 + type_a - r) * out[k] - (k + type_a) * out[k - 1]
        ) / (k + 1.0)
    return out


def laguerre_function(k: int, z, dimension: int | None = None):
    """Laguerre function phi_k(z) = L_k^{n-1}(|z|^2/2) exp(-|z|^2/4).

    ``z`` is a (real) point of C^n identified with R^{2n}; the radial
    profile depends on z only through |z|^2.
    """
    z = as_point(z, dimension=dimension)
    n = len(z)
    s = float(np.sum(np.abs(z) ** 2))
    return laguerre_function_entire(k, s, n)


def laguerre_function_entire(k: int, s, dimension: int):
    """phi_k as a function of the (possibly complex) squared radius ``s``.

    At real phase-space points ``s = |z|^2``; the entire continuation to
    C^{2n} substitutes the bilinear square of the complexified coordinates.
    Vectorized over ``s``.
    """
    if dimension < 1:
        raise ValueError("dimension must be >= 1")
    s = np.asarray(s)
    val = laguerre_ladder(k, dimension - 1, s / 2.0)[k] * np.exp(-s / 4.0)
    if np.ndim(val) == 0:
        return val.item()
    return val

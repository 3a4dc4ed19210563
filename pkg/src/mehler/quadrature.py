"""Quadrature rules and grids for R^n, C^n and C^{2n} integrals.

Gauss-Hermite rules handle integrals over R^n of Gaussian-decay integrands
(the weight compensation factor exp(+x^2) is applied to samples).  Plane
integrals over C^n ~ R^{2n} use tensor-product Gauss-Legendre (optionally
trapezoid) rules on truncated boxes sized from the integrand's Gaussian
decay rate; truncation error is then certifiable a priori.

All integration sums run through ``np.sum`` on arrays in fixed node order,
so results are bit-reproducible for a given rule/grid.
"""

import math
from dataclasses import dataclass, replace
from functools import lru_cache

import numpy as np
from scipy.special import roots_hermite, roots_legendre

MAX_GAUSS_HERMITE = 512
_MAX_PLANE_NODES = 20_000_000


class QuadratureError(RuntimeError):
    """Raised when an integrand sample is non-finite; carries the node."""

    def __init__(self, message, node=None):
        super().__init__(message)
        self.node = node


@dataclass(frozen=True)
class QuadRule:
    """A one-dimensional quadrature rule.

    For ``kind == "gauss-hermite"`` the weights integrate against
    exp(-x^2) dx on R; for ``kind == "gauss-legendre"`` against dx on
    [interval[0], interval[1]].
    """

    nodes: np.ndarray
    weights: np.ndarray
    kind: str
    interval: tuple[float, float] | None = None

    def __post_init__(self):
        if self.nodes.shape != self.weights.shape:
            raise ValueError("nodes and weights must have matching lengths")

    @property
    def order(self) -> int:
        return len(self.nodes)


@lru_cache(maxsize=64)
def _hermite_nodes(q: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = roots_hermite(q)
    return x, w


def gauss_hermite_rule(q: int) -> QuadRule:
    """The q-point Gauss-Hermite rule for weight exp(-x^2) on R.

    Nodes are the roots of the degree-q Hermite polynomial; the rule is
    exact on polynomials of degree <= 2q - 1 and sum(weights) = sqrt(pi).
    """
    if not 1 <= q <= MAX_GAUSS_HERMITE:
        raise ValueError(f"q must be in [1, {MAX_GAUSS_HERMITE}], got {q}")
    x, w = _hermite_nodes(q)
    return QuadRule(nodes=x.copy(), weights=w.copy(), kind="gauss-hermite")


def gauss_legendre_rule(q: int, a: float = -1.0, b: float = 1.0) -> QuadRule:
    """The q-point Gauss-Legendre rule on [a, b]."""
    if q < 1:
        raise ValueError("q must be >= 1")
    if not (math.isfinite(a) and math.isfinite(b)) or a >= b:
        raise ValueError(f"invalid interval [{a}, {b}]")
    x, w = roots_legendre(q)
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    return QuadRule(
        nodes=mid + half * x, weights=half * w, kind="gauss-legendre", interval=(a, b)
    )


def integrate_rn(g, rule: QuadRule, dimension: int, scale: float = 1.0):
    """Integrate g over R^dimension with a tensorized Gauss-Hermite rule.

    ``g`` must be vectorized: it receives ``dimension`` flat coordinate
    arrays and returns samples.  The exp(+x^2) compensation per axis is
    applied here, so ``g`` is the plain integrand; it should decay at
    least like a Gaussian times a polynomial.  ``scale`` substitutes
    x -> scale * x per axis, matching the rule to slower Gaussian decay.
    """
    if rule.kind != "gauss-hermite":
        raise ValueError("integrate_rn expects a gauss-hermite rule")
    if not 1 <= dimension <= 4:
        raise ValueError("integrate_rn supports 1 <= dimension <= 4")
    x = scale * rule.nodes
    w = scale * rule.weights * np.exp(rule.nodes**2)
    if dimension == 1:
        coords = [x]
        weights = w
    else:
        grids = np.meshgrid(*([x] * dimension), indexing="ij")
        coords = [c.ravel() for c in grids]
        wgrids = np.meshgrid(*([w] * dimension), indexing="ij")
        weights = np.prod([c.ravel() for c in wgrids], axis=0)
    samples = np.asarray(g(*coords))
    if not np.all(np.isfinite(samples)):
        bad = int(np.argmin(np.isfinite(samples if samples.ndim else [samples])))
        node = tuple(float(c[bad]) for c in coords)
        raise QuadratureError(f"non-finite integrand sample at node {node}", node=node)
    total = np.sum(weights * samples)
    return complex(total) if np.iscomplexobj(samples) else float(total)


def _half_width(gamma: float, drop: float, degree: int) -> float:
    """Half-width h with exp(-gamma h^2) * (1+h^2)^(degree/2) <= drop."""
    if gamma <= 0:
        raise ValueError("decay rate must be positive")
    budget = -math.log(drop)
    h2 = budget / gamma
    for _ in range(4):
        h2 = (budget + 0.5 * degree * math.log1p(h2)) / gamma
    return math.sqrt(h2)


def gaussian_box(
    gamma_x: float,
    gamma_y: float,
    drop: float = 1e-18,
    degree: int = 0,
) -> tuple[float, float, float, float]:
    """A box [-hx, hx] x [-hy, hy] sized from per-axis Gaussian decay rates.

    ``degree`` adds polynomial-growth margin for integrands of the form
    poly * Gaussian.
    """
    hx = _half_width(gamma_x, drop, degree)
    hy = _half_width(gamma_y, drop, degree)
    return (-hx, hx, -hy, hy)


@dataclass(frozen=True)
class PlaneGrid:
    """Tensor-product grid over one or two complex planes.

    Each entry of ``boxes`` is (x_min, x_max, y_min, y_max) for one complex
    coordinate; ``resolution`` is the number of nodes per real axis.  Node
    weights are Gauss-Legendre (default) or trapezoid areas; total weight
    equals the box volume either way.
    """

    boxes: tuple[tuple[float, float, float, float], ...]
    resolution: int
    kind: str = "gauss-legendre"

    def __post_init__(self):
        if isinstance(self.boxes[0], (int, float)):
            object.__setattr__(self, "boxes", (tuple(self.boxes),))
        boxes = tuple(tuple(float(v) for v in b) for b in self.boxes)
        object.__setattr__(self, "boxes", boxes)
        if len(boxes) not in (1, 2):
            raise ValueError("PlaneGrid supports 1 or 2 complex coordinates")
        for b in boxes:
            if len(b) != 4 or not all(math.isfinite(v) for v in b):
                raise ValueError(f"invalid box {b}")
            if b[0] >= b[1] or b[2] >= b[3]:
                raise ValueError(f"degenerate box {b}")
        if self.resolution < 2:
            raise ValueError("resolution must be >= 2")
        if self.kind not in ("gauss-legendre", "trapezoid"):
            raise ValueError(f"unknown grid kind {self.kind!r}")
        n_nodes = self.resolution ** (2 * len(boxes))
        if n_nodes > _MAX_PLANE_NODES:
            raise ValueError(
                f"grid would have {n_nodes} nodes; refusing beyond {_MAX_PLANE_NODES}"
            )

    @property
    def ncoords(self) -> int:
        return len(self.boxes)

    def axis(self, k: int) -> tuple[np.ndarray, np.ndarray]:
        """Nodes and weights of real axis k (0: x, 1: y, 2: u, 3: v)."""
        box = self.boxes[k // 2]
        a, b = (box[0], box[1]) if k % 2 == 0 else (box[2], box[3])
        if self.kind == "gauss-legendre":
            rule = gauss_legendre_rule(self.resolution, a, b)
            return rule.nodes, rule.weights
        x = np.linspace(a, b, self.resolution)
        w = np.full(self.resolution, (b - a) / (self.resolution - 1))
        w[0] *= 0.5
        w[-1] *= 0.5
        return x, w

    def nodes(self) -> tuple[np.ndarray, ...]:
        """Flattened coordinate arrays plus the weight array (last)."""
        axes = [self.axis(k) for k in range(2 * self.ncoords)]
        grids = np.meshgrid(*[a[0] for a in axes], indexing="ij")
        coords = [g.ravel() for g in grids]
        wgrids = np.meshgrid(*[a[1] for a in axes], indexing="ij")
        weights = wgrids[0].ravel().copy()
        for wg in wgrids[1:]:
            weights *= wg.ravel()
        return (*coords, weights)

    def refine(self, factor: int = 2) -> "PlaneGrid":
        if self.kind == "trapezoid":
            # keep node nesting (and any midpoint) under refinement
            return replace(self, resolution=factor * (self.resolution - 1) + 1)
        return replace(self, resolution=self.resolution * factor)

    def widen(self, factor: float) -> "PlaneGrid":
        boxes = tuple(
            (factor * b[0], factor * b[1], factor * b[2], factor * b[3])
            for b in self.boxes
        )
        return replace(self, boxes=boxes)

    @property
    def total_weight(self) -> float:
        vol = 1.0
        for b in self.boxes:
            vol *= (b[1] - b[0]) * (b[3] - b[2])
        return vol


def integrate_plane(g, grid: PlaneGrid):
    """Integrate g over the grid's truncated box(es).

    ``g`` receives the flattened coordinate arrays (x, y) for one complex
    coordinate or (x, y, u, v) for two, and must return samples of the
    same length.
    """
    *coords, weights = grid.nodes()
    samples = np.asarray(g(*coords))
    if not np.all(np.isfinite(samples)):
        bad = int(np.argmin(np.isfinite(samples)))
        node = tuple(float(c[bad]) for c in coords)
        raise QuadratureError(f"non-finite integrand sample at node {node}", node=node)
    total = np.sum(weights * samples)
    return complex(total) if np.iscomplexobj(samples) else float(total)


def integrate_plane_refined(g, grid: PlaneGrid, factor: int = 2):
    """Integrate on the grid and once more at ``factor`` times the
    resolution; returns (refined value, |change|) so callers can judge
    convergence."""
    coarse = integrate_plane(g, grid)
    fine = integrate_plane(g, grid.refine(factor))
    return fine, abs(fine - coarse)

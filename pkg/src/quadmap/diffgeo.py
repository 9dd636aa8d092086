"""Differential geometry of a fitted map, quadrature, and Newton inversion.

All quantities are evaluated at a natural point (t1, t2) of a
:class:`~quadmap.fitting.FittedMap`:

* position r = basis_row . params,
* covariant basis g_a = d r / d t^a (rows of a 2x2 matrix in Cartesian
  components),
* derivatives g_{a,b} of the covariant basis (4x2, rows ordered
  (1,1), (2,1), (1,2), (2,2)),
* metric g_ab = g_a . g_b and its inverse, contravariant basis
  g^a = g^ab g_b,
* Christoffel symbols of the first kind  Gamma1[a][b][c] = g_{a,b} . g_c
  and of the second kind Gamma2[a][b][c] = g_{a,b} . g^c (the symmetric
  index pair first, the summation index last),
* the Jacobian determinant det(g_cov).

The reconstruction identities g_{a,b} = Gamma1[a][b][c] g^c and
g_{a,b} = Gamma2[a][b][c] g_c hold by construction; their numerical
residual is exposed for consistency checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .basis import basis_gradient, basis_row, basis_second_derivatives
from .errors import NewtonDivergence, SingularJacobian
from .fitting import FittedMap
from .geometry import Point2, PointLike, as_point
from .natural import NaturalLike, NaturalPoint, as_natural

#: Gauss-Legendre nodes/weights on [-1, 1], fixed tables for 2..4 points.
GAUSS_RULES = {
    2: ((-1.0 / math.sqrt(3.0), 1.0 / math.sqrt(3.0)), (1.0, 1.0)),
    3: (
        (-math.sqrt(3.0 / 5.0), 0.0, math.sqrt(3.0 / 5.0)),
        (5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0),
    ),
    4: (
        (
            -math.sqrt((3.0 + 2.0 * math.sqrt(6.0 / 5.0)) / 7.0),
            -math.sqrt((3.0 - 2.0 * math.sqrt(6.0 / 5.0)) / 7.0),
            math.sqrt((3.0 - 2.0 * math.sqrt(6.0 / 5.0)) / 7.0),
            math.sqrt((3.0 + 2.0 * math.sqrt(6.0 / 5.0)) / 7.0),
        ),
        (
            (18.0 - math.sqrt(30.0)) / 36.0,
            (18.0 + math.sqrt(30.0)) / 36.0,
            (18.0 + math.sqrt(30.0)) / 36.0,
            (18.0 - math.sqrt(30.0)) / 36.0,
        ),
    ),
}

NEWTON_MAX_ITER = 50
NEWTON_BOX = 10.0  # iterates leaving [-BOX, BOX]^2 count as divergence


def map_point(m: FittedMap, p: NaturalLike) -> Point2:
    """Cartesian image of a natural point (extrapolation outside [-1,1]^2 is fine)."""
    x = basis_row(m.spec, as_natural(p)) @ m.params
    return Point2(x[0], x[1])


def covariant_basis(m: FittedMap, p: NaturalLike) -> np.ndarray:
    """2x2 matrix whose row a holds the Cartesian components of g_a at p."""
    return basis_gradient(m.spec, as_natural(p)) @ m.params


def basis_derivatives(m: FittedMap, p: NaturalLike) -> np.ndarray:
    """4x2 matrix of covariant-basis derivatives, rows (1,1), (2,1), (1,2), (2,2)."""
    return basis_second_derivatives(m.spec, as_natural(p)) @ m.params


@dataclass(frozen=True)
class GeometryState:
    """Every differential-geometry quantity of a fitted map at one natural point.

    Third-order arrays are indexed gamma[a][b][c] with the first two indices
    symmetric; flattening them in C order gives the sequence
    (1,1,1), (1,1,2), (1,2,1), (1,2,2), (2,1,1), (2,1,2), (2,2,1), (2,2,2).
    """

    at: NaturalPoint
    position: Point2
    g_cov: np.ndarray
    g_der: np.ndarray
    metric: np.ndarray
    metric_inv: np.ndarray
    g_contra: np.ndarray
    gamma1: np.ndarray
    gamma2: np.ndarray
    jac_det: float

    def __post_init__(self):
        for name in ("g_cov", "g_der", "metric", "metric_inv", "g_contra", "gamma1", "gamma2"):
            getattr(self, name).setflags(write=False)


def geometry_state(m: FittedMap, p: NaturalLike) -> GeometryState:
    """Evaluate the full geometry state at p; the covariant basis must be nonsingular."""
    p = as_natural(p)
    position = map_point(m, p)
    g_cov = covariant_basis(m, p)
    g_der = basis_derivatives(m, p)

    jac_det = g_cov[0, 0] * g_cov[1, 1] - g_cov[0, 1] * g_cov[1, 0]
    diam = m.quad.diameter
    if abs(jac_det) < 1e-12 * diam * diam:
        raise SingularJacobian(
            f"covariant basis is singular at ({p.t1}, {p.t2}); |det| = {abs(jac_det):.3e}"
        )

    metric = g_cov @ g_cov.T
    det_metric = metric[0, 0] * metric[1, 1] - metric[0, 1] * metric[1, 0]
    metric_inv = (
        np.array([[metric[1, 1], -metric[0, 1]], [-metric[1, 0], metric[0, 0]]]) / det_metric
    )
    g_contra = metric_inv @ g_cov

    # der3[a][b] = g_{a,b}; the 4x2 row order (1,1), (2,1), (1,2), (2,2)
    # reshapes to [b][a] blocks, hence the transpose.
    der3 = g_der.reshape(2, 2, 2).transpose(1, 0, 2)
    gamma1 = np.einsum("abi,ci->abc", der3, g_cov)
    gamma2 = np.einsum("abi,ci->abc", der3, g_contra)

    return GeometryState(
        at=p,
        position=position,
        g_cov=g_cov,
        g_der=g_der,
        metric=metric,
        metric_inv=metric_inv,
        g_contra=g_contra,
        gamma1=gamma1,
        gamma2=gamma2,
        jac_det=float(jac_det),
    )


def verify_gauss_relations(s: GeometryState) -> float:
    """Max residual of the two covariant-basis reconstruction identities.

    Returns max over (a, b) of |g_{a,b} - Gamma1[a][b][c] g^c| and
    |g_{a,b} - Gamma2[a][b][c] g_c| in the max norm over Cartesian
    components; zero up to rounding for any well-formed state.
    """
    der3 = s.g_der.reshape(2, 2, 2).transpose(1, 0, 2)
    rec1 = np.einsum("abc,ci->abi", s.gamma1, s.g_contra)
    rec2 = np.einsum("abc,ci->abi", s.gamma2, s.g_cov)
    return float(max(np.abs(der3 - rec1).max(), np.abs(der3 - rec2).max()))


def integrate_jacobian(m: FittedMap, points_per_axis: int = 2) -> float:
    """Tensor-product Gauss-Legendre integral of det(g_cov) over [-1, 1]^2.

    Two points per axis integrate the bilinear and six-term integrands
    exactly; three suffice for the ten-term scheme.
    """
    try:
        nodes, weights = GAUSS_RULES[points_per_axis]
    except KeyError:
        raise ValueError(
            f"points_per_axis must be one of {sorted(GAUSS_RULES)}, got {points_per_axis}"
        ) from None
    total = 0.0
    for t1, w1 in zip(nodes, weights):
        for t2, w2 in zip(nodes, weights):
            g = covariant_basis(m, (t1, t2))
            total += w1 * w2 * (g[0, 0] * g[1, 1] - g[0, 1] * g[1, 0])
    return total


@dataclass(frozen=True)
class NewtonResult:
    """Converged Newton inverse: the preimage, iteration count, and final residual."""

    point: NaturalPoint
    iterations: int
    residual: float


def newton_inverse(m: FittedMap, x: PointLike, guess: NaturalLike = (0.0, 0.0)) -> NewtonResult:
    """Newton iteration solving map_point(t) = x, starting from guess.

    Convergence requires the residual max-norm below 1e-12 * (1 + |x|).
    No damping is applied: leaving the [-10, 10]^2 box or exhausting 50
    iterations raises :class:`~quadmap.errors.NewtonDivergence`, and a
    singular covariant basis at an iterate raises
    :class:`~quadmap.errors.SingularJacobian`.
    """
    x = as_point(x)
    t = np.array(as_natural(guess).as_tuple())
    tol = 1e-12 * (1.0 + math.hypot(x.x1, x.x2))
    diam = m.quad.diameter
    for it in range(NEWTON_MAX_ITER + 1):
        img = basis_row(m.spec, t) @ m.params
        res = img - (x.x1, x.x2)
        res_norm = float(np.abs(res).max())
        if res_norm < tol:
            return NewtonResult(NaturalPoint(t[0], t[1]), it, res_norm)
        if it == NEWTON_MAX_ITER:
            break
        g = basis_gradient(m.spec, t) @ m.params  # rows g_a; Jacobian d x_i / d t^a = g.T
        det = g[0, 0] * g[1, 1] - g[0, 1] * g[1, 0]
        if abs(det) < 1e-12 * diam * diam:
            raise SingularJacobian(
                f"singular covariant basis at Newton iterate ({t[0]:.6g}, {t[1]:.6g})"
            )
        # Solve g.T . dt = res directly (2x2 Cramer).
        dt1 = (res[0] * g[1, 1] - res[1] * g[1, 0]) / det
        dt2 = (g[0, 0] * res[1] - g[0, 1] * res[0]) / det
        t = t - (dt1, dt2)
        if np.abs(t).max() > NEWTON_BOX:
            raise NewtonDivergence(
                f"Newton iterate left [-{NEWTON_BOX:g}, {NEWTON_BOX:g}]^2 after {it + 1} steps",
                iterations=it + 1,
            )
    raise NewtonDivergence(
        f"no convergence after {NEWTON_MAX_ITER} iterations (residual {res_norm:.3e})",
        iterations=NEWTON_MAX_ITER,
    )


def inverse_map(m: FittedMap, x: PointLike, guess: NaturalLike = (0.0, 0.0)) -> NaturalPoint:
    """Natural preimage of a Cartesian point (any target; the map is a polynomial
    on the whole plane, so results outside [-1, 1]^2 are the caller's concern)."""
    return newton_inverse(m, x, guess).point

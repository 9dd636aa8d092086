"""Interpolation-system assembly, a small dense solver, and map fitting.

The fit places a monomial map x(t1, t2) = N(t1, t2) . params over the
significant nodes of a quad: its four corners, the two poles (for the
Pascal schemes), and the four edge midpoints (for the ten-term scheme).
Substituting each node's natural coordinates into the basis row yields a
square system A . params = X whose right-hand side holds the nodal
Cartesian coordinates; solving it gives the parameter matrix, and
N . inv(A) are the shape functions.

Parallel edge pairs push a pole to infinity.  The fit then drops that
pole's row together with the basis column its row would pin -- the
highest power of the pole's axis variable (t1^2 / t2^2 for pascal6,
t1^3 / t2^3 for pascal10, since dividing the pole row by its leading
power and letting the scaled coordinate grow leaves exactly that unit
column).  Dropped parameters are stored as exact zero rows; with both
poles at infinity pascal6 reduces to the bilinear scheme and pascal10 to
the eight-node serendipity system.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .basis import LAGRANGE4, PASCAL6, PASCAL10, BasisSpec, basis_by_name, basis_row
from .errors import MissingPole, SingularSystem
from .geometry import (
    MidpointFrame,
    Point2,
    PoleSet,
    Quad,
    compute_poles,
    midpoint_frame,
    validate_quad,
)
from .natural import NaturalLike, NodeTable, ScaledPoles, node_table, scaled_pole_coordinates

PAIRINGS = ("text-order", "swapped")

#: Pivot threshold (relative to the max-norm of A) below which a system is singular.
PIVOT_TOL = 1e-12
#: Condition estimates above this trigger a RuntimeWarning (not an error).
COND_WARN = 1e12
#: Hard cap on system size for the dense solver.
MAX_DENSE = 16


def _lu_factor(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """In-place LU with partial pivoting; returns (combined LU, pivot rows)."""
    n = a.shape[0]
    anorm = np.abs(a).max(initial=0.0)
    piv = np.arange(n)
    for k in range(n):
        p = k + int(np.argmax(np.abs(a[k:, k])))
        if abs(a[p, k]) < PIVOT_TOL * max(anorm, 1e-300):
            raise SingularSystem(
                "node matrix is numerically singular (pivot below threshold); "
                "solvability requires a positive determinant of the node matrix"
            )
        if p != k:
            a[[k, p]] = a[[p, k]]
            piv[[k, p]] = piv[[p, k]]
        a[k + 1 :, k] /= a[k, k]
        a[k + 1 :, k + 1 :] -= np.outer(a[k + 1 :, k], a[k, k + 1 :])
    return a, piv


def _lu_solve(lu: np.ndarray, piv: np.ndarray, b: np.ndarray) -> np.ndarray:
    n = lu.shape[0]
    x = np.array(b, dtype=float)[piv]
    for k in range(1, n):  # forward: L has unit diagonal
        x[k] -= lu[k, :k] @ x[:k]
    for k in range(n - 1, -1, -1):  # backward
        x[k] -= lu[k, k + 1 :] @ x[k + 1 :]
        x[k] /= lu[k, k]
    return x


def _solve_with_inverse(a: np.ndarray, x: np.ndarray) -> tuple[np.ndarray, np.ndarray, float]:
    """Solve A . sol = X and also return inv(A) and the max-norm condition number."""
    a = np.asarray(a, dtype=float)
    n = a.shape[0]
    anorm = np.abs(a).sum(axis=1).max(initial=0.0)
    lu, piv = _lu_factor(a.copy())
    sol = _lu_solve(lu, piv, np.asarray(x, dtype=float))
    inv = _lu_solve(lu, piv, np.eye(n))
    cond = anorm * np.abs(inv).sum(axis=1).max(initial=0.0)
    return sol, inv, cond


def solve_dense(a: np.ndarray, x: np.ndarray) -> tuple[np.ndarray, float]:
    """Solve the square system A . sol = X by LU with row pivoting.

    Returns (solution, condition estimate), the estimate being the
    max-norm condition number from the factorization.  Raises
    :class:`~quadmap.errors.SingularSystem` on a vanishing pivot.
    """
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if a.shape[0] > MAX_DENSE:
        raise ValueError(f"dense solver is limited to n <= {MAX_DENSE}, got n = {a.shape[0]}")
    sol, _, cond = _solve_with_inverse(a, x)
    return sol, cond


@dataclass(frozen=True)
class AssembledSystem:
    """The square interpolation system: basis rows A, nodal Cartesian rows X."""

    A: np.ndarray
    X: np.ndarray
    node_ids: tuple[int, ...]

    def __post_init__(self):
        self.A.setflags(write=False)
        self.X.setflags(write=False)


def _dropped_exponents(scheme: BasisSpec, ids: Sequence[int]) -> tuple[tuple[int, int], ...]:
    """Basis columns removed when pole rows are absent from the node table."""
    if scheme.name == LAGRANGE4.name:
        return ()
    high = 2 if scheme.name == PASCAL6.name else 3
    dropped = []
    if 5 not in ids:
        dropped.append((high, 0))
    if 6 not in ids:
        dropped.append((0, high))
    return tuple(dropped)


def _retained_indices(scheme: BasisSpec, ids: Sequence[int]) -> list[int]:
    dropped = set(_dropped_exponents(scheme, ids))
    return [k for k, e in enumerate(scheme.exponents) if e not in dropped]


def _cartesian_rows(
    quad: Quad, poles: Optional[PoleSet], frame: MidpointFrame, ids: Sequence[int], pairing: str
) -> np.ndarray:
    # The swapped pairing exchanges the two pole Cartesian rows; it only
    # applies when both pole rows are present.
    pole_for = {}
    if poles is not None:
        pole_for = {5: poles.pole5, 6: poles.pole6}
        if pairing == "swapped" and 5 in ids and 6 in ids:
            pole_for = {5: poles.pole6, 6: poles.pole5}
    mid_for = {7: frame.r7, 8: frame.r8, 9: frame.r9, 10: frame.r10}
    rows = []
    for i in ids:
        if 1 <= i <= 4:
            p = quad.vertices[i - 1]
        elif i in (5, 6):
            p = pole_for[i]
            if not isinstance(p, Point2):
                raise MissingPole(f"pole{i} is at infinity and has no Cartesian row")
        else:
            p = mid_for[i]
        rows.append((p.x1, p.x2))
    return np.array(rows, dtype=float)


def assemble_system(quad: Quad, table: NodeTable, pairing: str = "text-order") -> AssembledSystem:
    """Build the square system for a node table over a quad.

    Row k of A is the basis row at node k's natural coordinates, restricted
    to the retained columns; row k of X is that node's Cartesian position.
    Under ``text-order`` the (t5, 0) row pairs with pole5 and the (0, t6)
    row with pole6; ``swapped`` exchanges the two pole Cartesian rows.
    """
    if pairing not in PAIRINGS:
        raise ValueError(f"pairing must be one of {PAIRINGS}, got {pairing!r}")
    ids = table.ids()
    retained = _retained_indices(table.scheme, ids)
    a = np.array([basis_row(table.scheme, p)[retained] for _, p in table.rows])
    poles = compute_poles(quad) if any(i in (5, 6) for i in ids) else None
    frame = midpoint_frame(quad)
    x = _cartesian_rows(quad, poles, frame, ids, pairing)
    return AssembledSystem(a, x, ids)


@dataclass(frozen=True)
class FittedMap:
    """A solved monomial map from natural to Cartesian coordinates.

    ``params`` is the full size x 2 parameter matrix in the scheme's frozen
    monomial order (column 0 = x1, column 1 = x2); indices listed in
    ``dropped`` have exact zero rows.  ``shape_matrix`` is the inverse of
    the assembled node matrix, so basis_row . shape_matrix gives the nodal
    shape-function weights.  Immutable after construction.
    """

    spec: BasisSpec
    params: np.ndarray
    quad: Quad
    poles: PoleSet
    scaled: ScaledPoles
    pairing: str
    dropped: frozenset[int]
    cond_estimate: float
    system: AssembledSystem = field(repr=False)
    shape_matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.params.setflags(write=False)
        self.shape_matrix.setflags(write=False)

    @property
    def node_count(self) -> int:
        return len(self.system.node_ids)

    def retained_indices(self) -> list[int]:
        return [k for k in range(self.spec.size) if k not in self.dropped]


def fit_map(
    quad,
    scheme: BasisSpec | str = "pascal6",
    *,
    pairing: str = "text-order",
    scaled_pole_override: Optional[Sequence[float]] = None,
) -> FittedMap:
    """Fit a scheme to a quad: poles, scaled coordinates, node table, solve.

    ``scaled_pole_override`` replaces the computed (t5, t6) pair with
    caller-supplied values (both poles must then be finite).  Poles at
    infinity trigger the reduced fit described in the module docstring.
    A condition estimate above 1e12 emits a RuntimeWarning.
    """
    if not isinstance(quad, Quad):
        quad = validate_quad(quad)
    if isinstance(scheme, str):
        scheme = basis_by_name(scheme)
    if pairing not in PAIRINGS:
        raise ValueError(f"pairing must be one of {PAIRINGS}, got {pairing!r}")

    poles = compute_poles(quad)
    frame = midpoint_frame(quad)
    if scaled_pole_override is not None:
        if not poles.both_finite:
            raise MissingPole(
                "scaled-pole override given, but the quad has a pole at infinity; "
                "overrides require both poles finite"
            )
        t5, t6 = scaled_pole_override
        scaled = ScaledPoles(float(t5), float(t6), source="override")
    else:
        scaled = scaled_pole_coordinates(frame, poles)

    table = node_table(scheme, scaled, drop_missing=True)
    system = assemble_system(quad, table, pairing)
    sol, inv, cond = _solve_with_inverse(system.A, system.X)
    if cond > COND_WARN:
        warnings.warn(
            f"ill-conditioned interpolation system (cond estimate {cond:.3e})", RuntimeWarning
        )

    retained = _retained_indices(scheme, table.ids())
    params = np.zeros((scheme.size, 2))
    params[retained] = sol
    dropped = frozenset(k for k in range(scheme.size) if k not in retained)
    return FittedMap(
        spec=scheme,
        params=params,
        quad=quad,
        poles=poles,
        scaled=scaled,
        pairing=pairing,
        dropped=dropped,
        cond_estimate=float(cond),
        system=system,
        shape_matrix=inv,
    )


def shape_function_weights(m: FittedMap, p: NaturalLike) -> np.ndarray:
    """Nodal weights w(p) with map(p) = sum_k w_k * (node k Cartesian position).

    One weight per retained node, ordered like ``m.system.node_ids``; the
    weights sum to 1 and reduce to a Kronecker delta at the nodes.
    """
    row = basis_row(m.spec, p)[m.retained_indices()]
    return row @ m.shape_matrix

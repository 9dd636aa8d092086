"""Monomial basis rows and their analytic derivatives.

Three fixed schemes over natural coordinates (t1, t2):

* ``lagrange4`` -- the classical bilinear set {1, t1, t2, t1*t2},
* ``pascal6``   -- the complete second-order set {1, t1, t2, t1^2, t1*t2, t2^2},
* ``pascal10``  -- the complete third-order set (pascal6 plus the four cubics).

Monomial order is frozen so that parameter matrices are comparable
entry-by-entry across fits.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class BasisSpec:
    """A named ordered monomial basis; exponents[k] = (i, j) means t1**i * t2**j."""

    name: str
    exponents: tuple[tuple[int, int], ...]

    @property
    def size(self) -> int:
        return len(self.exponents)

    def index_of(self, i: int, j: int) -> int:
        return self.exponents.index((i, j))


LAGRANGE4 = BasisSpec("lagrange4", ((0, 0), (1, 0), (0, 1), (1, 1)))
PASCAL6 = BasisSpec("pascal6", ((0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)))
PASCAL10 = BasisSpec("pascal10", PASCAL6.exponents + ((3, 0), (2, 1), (1, 2), (0, 3)))

SCHEMES = {s.name: s for s in (LAGRANGE4, PASCAL6, PASCAL10)}


def basis_by_name(name: str) -> BasisSpec:
    try:
        return SCHEMES[name]
    except KeyError:
        raise ValueError(f"unknown scheme {name!r}; choose one of {sorted(SCHEMES)}") from None


def _coords(p) -> tuple[float, float]:
    # Accepts a NaturalPoint-like object or a plain (t1, t2) pair.
    t1 = getattr(p, "t1", None)
    if t1 is not None:
        return float(p.t1), float(p.t2)
    t1, t2 = p
    return float(t1), float(t2)


def basis_row(spec: BasisSpec, p) -> np.ndarray:
    """Monomial values at p, in the spec's frozen order; the (0,0) entry is exactly 1."""
    t1, t2 = _coords(p)
    return np.array([t1**i * t2**j for i, j in spec.exponents], dtype=float)


def basis_gradient(spec: BasisSpec, p) -> np.ndarray:
    """2 x size matrix: row alpha holds the analytic d/dt_alpha of each monomial."""
    t1, t2 = _coords(p)
    g = np.zeros((2, spec.size))
    for k, (i, j) in enumerate(spec.exponents):
        if i > 0:
            g[0, k] = i * t1 ** (i - 1) * t2**j
        if j > 0:
            g[1, k] = j * t1**i * t2 ** (j - 1)
    return g


def basis_second_derivatives(spec: BasisSpec, p) -> np.ndarray:
    """4 x size matrix of analytic second derivatives, rows ordered d11, d21, d12, d22.

    Rows d21 and d12 are identical (mixed partials commute).
    """
    t1, t2 = _coords(p)
    h = np.zeros((4, spec.size))
    for k, (i, j) in enumerate(spec.exponents):
        if i > 1:
            h[0, k] = i * (i - 1) * t1 ** (i - 2) * t2**j
        if i > 0 and j > 0:
            mixed = i * j * t1 ** (i - 1) * t2 ** (j - 1)
            h[1, k] = mixed
            h[2, k] = mixed
        if j > 1:
            h[3, k] = j * (j - 1) * t1**i * t2 ** (j - 2)
    return h

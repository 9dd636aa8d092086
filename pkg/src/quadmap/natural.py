"""Natural-coordinate node tables, including the scaled pole coordinates.

The four corners always sit at (-1,-1), (+1,-1), (+1,+1), (-1,+1).  Each
pole lives on one natural axis: pole5 on the t1 axis at (t5, 0), pole6 on
the t2 axis at (0, t6).  The scaled value t5 (and likewise t6) is a
signed distance ratio measured from the vertex centroid rg:

* positive side: t5 = +|pole5 - rg| / |r8 - rg| when the center-to-pole
  vector points toward the positive-axis edge midpoint (r8 for t5, r9
  for t6), i.e. its dot product with (midpoint - rg) is nonnegative;
* negative side: t5 = -|pole5 - rg| / |r10 - rg| otherwise, dividing by
  the opposite midpoint distance.

A pole at infinity has no scaled value (stored as None); for strictly
parallel edge pairs the fitting layer drops the corresponding row and
column instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

from .basis import LAGRANGE4, PASCAL6, PASCAL10, BasisSpec
from .errors import DegenerateInput, DegenerateQuad, MissingPole
from .geometry import MidpointFrame, Point2, PoleAtInfinity, PoleSet, distance

#: Natural coordinates of the corner nodes (1)..(4), exact by construction.
CORNER_NATURAL = ((-1.0, -1.0), (1.0, -1.0), (1.0, 1.0), (-1.0, 1.0))
#: Natural coordinates of the edge-midpoint nodes (7)..(10) used by pascal10.
MIDEDGE_NATURAL = {7: (0.0, -1.0), 8: (1.0, 0.0), 9: (0.0, 1.0), 10: (-1.0, 0.0)}


@dataclass(frozen=True)
class NaturalPoint:
    """A point (t1, t2) in natural coordinates."""

    t1: float
    t2: float

    def __post_init__(self):
        object.__setattr__(self, "t1", float(self.t1))
        object.__setattr__(self, "t2", float(self.t2))
        if not (math.isfinite(self.t1) and math.isfinite(self.t2)):
            raise DegenerateInput(f"natural coordinates must be finite, got ({self.t1}, {self.t2})")

    def as_tuple(self) -> tuple[float, float]:
        return (self.t1, self.t2)


NaturalLike = Union[NaturalPoint, tuple, list]


def as_natural(p: NaturalLike) -> NaturalPoint:
    if isinstance(p, NaturalPoint):
        return p
    t1, t2 = p
    return NaturalPoint(float(t1), float(t2))


@dataclass(frozen=True)
class ScaledPoles:
    """Signed scaled natural coordinates of the two poles.

    ``None`` means the pole is at infinity.  ``source`` records whether the
    values came from the distance-ratio rule ("computed") or were supplied
    by the caller ("override").  For a finite pole outside the element the
    magnitude exceeds 1; values inside [-1, 1] indicate a badly shaped quad
    and are left for conditioning checks to reject.
    """

    t5: Optional[float]
    t6: Optional[float]
    source: str = "computed"

    def __post_init__(self):
        if self.source not in ("computed", "override"):
            raise ValueError(f"source must be 'computed' or 'override', got {self.source!r}")
        for name in ("t5", "t6"):
            v = getattr(self, name)
            if v is not None:
                v = float(v)
                if not math.isfinite(v):
                    raise DegenerateInput(f"{name} must be finite or None, got {v}")
                object.__setattr__(self, name, v)


@dataclass(frozen=True)
class NodeTable:
    """Ordered (node-id, natural point) rows for one scheme."""

    rows: tuple[tuple[int, NaturalPoint], ...]
    scheme: BasisSpec

    def ids(self) -> tuple[int, ...]:
        return tuple(i for i, _ in self.rows)


def _scaled_one(pole, pos_mid: Point2, neg_mid: Point2, rg: Point2, scale: float) -> Optional[float]:
    if isinstance(pole, PoleAtInfinity):
        return None
    d1, d2 = pole.x1 - rg.x1, pole.x2 - rg.x2
    dist_pos = distance(pos_mid, rg)
    dist_neg = distance(neg_mid, rg)
    if min(dist_pos, dist_neg) < 1e-12 * scale:
        raise DegenerateQuad("coincident-vertices", "an edge midpoint coincides with the centroid")
    norm_d = math.hypot(d1, d2)
    if d1 * (pos_mid.x1 - rg.x1) + d2 * (pos_mid.x2 - rg.x2) >= 0.0:
        return norm_d / dist_pos
    return -norm_d / dist_neg


def scaled_pole_coordinates(frame: MidpointFrame, poles: PoleSet) -> ScaledPoles:
    """Signed distance-ratio coordinates of both poles (None for a pole at infinity).

    t5 uses midpoints r8/r10 (the t1-axis pair), t6 uses r9/r7 (the t2-axis
    pair); frame and poles must come from the same quad.
    """
    pts = (frame.r7, frame.r8, frame.r9, frame.r10, frame.rg)
    scale = max(distance(p, q) for p in pts for q in pts)
    if scale == 0.0:
        raise DegenerateQuad("coincident-vertices", "midpoint frame collapsed to a point")
    t5 = _scaled_one(poles.pole5, frame.r8, frame.r10, frame.rg, scale)
    t6 = _scaled_one(poles.pole6, frame.r9, frame.r7, frame.rg, scale)
    return ScaledPoles(t5, t6, source="computed")


def node_table(
    scheme: BasisSpec, scaled: Optional[ScaledPoles] = None, *, drop_missing: bool = False
) -> NodeTable:
    """Node table for a scheme: corners, then pole rows, then edge midpoints.

    Corner rows are the exact machine numbers +-1.  Pole rows carry one
    coordinate exactly 0.  A pole at infinity raises
    :class:`~quadmap.errors.MissingPole` unless ``drop_missing`` is set, in
    which case its row is omitted (the reduction used for parallel edges).
    """
    rows: list[tuple[int, NaturalPoint]] = [
        (k + 1, NaturalPoint(*CORNER_NATURAL[k])) for k in range(4)
    ]
    if scheme.name == LAGRANGE4.name:
        return NodeTable(tuple(rows), scheme)
    if scheme.name not in (PASCAL6.name, PASCAL10.name):
        raise ValueError(f"unknown scheme {scheme.name!r}")
    if scaled is None:
        raise ValueError(f"scheme {scheme.name!r} requires scaled pole coordinates")

    for node_id, value, placer in ((5, scaled.t5, 0), (6, scaled.t6, 1)):
        if value is None:
            if not drop_missing:
                raise MissingPole(
                    f"pole{node_id} is at infinity; scheme {scheme.name!r} needs a finite value "
                    "(or request the reduced fit)"
                )
            continue
        coords = (value, 0.0) if placer == 0 else (0.0, value)
        rows.append((node_id, NaturalPoint(*coords)))

    if scheme.name == PASCAL10.name:
        for node_id in (7, 8, 9, 10):
            rows.append((node_id, NaturalPoint(*MIDEDGE_NATURAL[node_id])))
    return NodeTable(tuple(rows), scheme)

"""quadmap: polynomial mappings of the reference square onto plane quadrilaterals.

The library fits a monomial map x(t1, t2) over the significant nodes of a
straight-edged quadrilateral.  Three schemes are available: the classical
four-term bilinear map (``lagrange4``), a complete second-order Pascal
basis (``pascal6``) whose two extra nodes are the poles where opposite
edge lines meet, and a complete third-order basis (``pascal10``) that adds
the four edge midpoints.  On top of a fitted map the package evaluates
covariant/contravariant bases, metric coefficients, Christoffel symbols,
Jacobian determinants and their Gauss-Legendre integrals, and inverts the
map by Newton iteration.  A ``quadmap`` command-line tool wraps the same
operations; see the README for the report formats.
"""

from .basis import (
    LAGRANGE4,
    PASCAL6,
    PASCAL10,
    SCHEMES,
    BasisSpec,
    basis_by_name,
    basis_gradient,
    basis_row,
    basis_second_derivatives,
)
from .diffgeo import (
    GAUSS_RULES,
    GeometryState,
    NewtonResult,
    basis_derivatives,
    covariant_basis,
    geometry_state,
    integrate_jacobian,
    inverse_map,
    map_point,
    newton_inverse,
    verify_gauss_relations,
)
from .errors import (
    CoincidentLines,
    DegenerateInput,
    DegenerateQuad,
    MissingPole,
    NewtonDivergence,
    ParseError,
    QuadMapError,
    SingularJacobian,
    SingularSystem,
)
from .fitting import (
    AssembledSystem,
    FittedMap,
    assemble_system,
    fit_map,
    shape_function_weights,
    solve_dense,
)
from .geometry import (
    Line2,
    MidpointFrame,
    Point2,
    PoleAtInfinity,
    PoleSet,
    Quad,
    compute_poles,
    intersect_lines,
    line_through_points,
    midpoint_frame,
    shoelace_area,
    validate_quad,
)
from .natural import (
    CORNER_NATURAL,
    MIDEDGE_NATURAL,
    NaturalPoint,
    NodeTable,
    ScaledPoles,
    node_table,
    scaled_pole_coordinates,
)

__version__ = "0.1.0"

__all__ = [
    "BasisSpec",
    "LAGRANGE4",
    "PASCAL6",
    "PASCAL10",
    "SCHEMES",
    "basis_by_name",
    "basis_row",
    "basis_gradient",
    "basis_second_derivatives",
    "Point2",
    "Line2",
    "Quad",
    "PoleSet",
    "PoleAtInfinity",
    "MidpointFrame",
    "line_through_points",
    "intersect_lines",
    "compute_poles",
    "midpoint_frame",
    "shoelace_area",
    "validate_quad",
    "NaturalPoint",
    "ScaledPoles",
    "NodeTable",
    "CORNER_NATURAL",
    "MIDEDGE_NATURAL",
    "scaled_pole_coordinates",
    "node_table",
    "AssembledSystem",
    "FittedMap",
    "assemble_system",
    "solve_dense",
    "fit_map",
    "shape_function_weights",
    "GeometryState",
    "NewtonResult",
    "GAUSS_RULES",
    "map_point",
    "covariant_basis",
    "basis_derivatives",
    "geometry_state",
    "verify_gauss_relations",
    "integrate_jacobian",
    "inverse_map",
    "newton_inverse",
    "QuadMapError",
    "DegenerateInput",
    "CoincidentLines",
    "DegenerateQuad",
    "MissingPole",
    "SingularSystem",
    "SingularJacobian",
    "NewtonDivergence",
    "ParseError",
    "__version__",
]

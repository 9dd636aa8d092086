"""
Poles and natural coordinates
=============================

A straight-edged quadrilateral carries two special points besides its
vertices: the intersections of the lines through each pair of opposite
edges, called the poles.  This walkthrough builds a quad, finds its
poles, and assigns them scaled natural coordinates by the signed
distance-ratio rule.
"""

import quadmap as qm

# %%
# A counterclockwise quad.  Validation rejects bow-ties, collinear
# triples, duplicate vertices, and clockwise input.

quad = qm.validate_quad([(1, 1), (4, 2), (3, 4), (2, 5)])
print("vertices:", [v.as_tuple() for v in quad.vertices])
print("area:    ", qm.shoelace_area(quad))

# %%
# The poles.  Edges (1)(2) and (3)(4) meet at pole5, edges (2)(3) and
# (4)(1) at pole6.  For a rectangle or parallelogram they move to
# infinity; here both are finite.

poles = qm.compute_poles(quad)
print("pole5:", poles.pole5)
print("pole6:", poles.pole6)

square = qm.validate_quad([(0, 0), (1, 0), (1, 1), (0, 1)])
print("square poles:", qm.compute_poles(square))

# %%
# Edge midpoints and the vertex centroid form the measuring frame for
# the scaled pole coordinates.

frame = qm.midpoint_frame(quad)
print("midpoints:", frame.r7, frame.r8, frame.r9, frame.r10)
print("centroid: ", frame.rg)

# %%
# Each pole lives on one natural axis: pole5 at (t5, 0), pole6 at
# (0, t6).  The magnitude is the centroid-to-pole distance divided by
# the centroid-to-midpoint distance along that axis; the sign says on
# which side of the centroid the pole falls.  Values always exceed 1 in
# magnitude for convex quads: the pole sits outside the element.

scaled = qm.scaled_pole_coordinates(frame, poles)
print("t5 =", scaled.t5)
print("t6 =", scaled.t6)

# %%
# The node table lists every significant node of a scheme in natural
# coordinates: four corners for the bilinear scheme, plus the two pole
# rows for the six-term scheme, plus the four edge midpoints for the
# ten-term scheme.

for name in ("lagrange4", "pascal6", "pascal10"):
    spec = qm.basis_by_name(name)
    table = qm.node_table(spec, scaled)
    print(f"\n{name} nodes:")
    for node_id, p in table.rows:
        print(f"  ({node_id:2d})  t1={p.t1:+.6f}  t2={p.t2:+.6f}")

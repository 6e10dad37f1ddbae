"""
Nerves of described collections, and digital convexity
======================================================

A collection of element sets yields a simplicial complex: vertices are
members, faces are the index sets that intersect descriptively.  On a
lattice, the union variants interact with convexity in a way that can
be checked exactly.
"""

from desops import (
    Glossa,
    SimplicialComplex,
    UnionConfig,
    check_convexity_theorem,
    check_d_convex_union_representable,
    convex_hull_2d,
    descriptive_nerve,
    is_digitally_convex,
    lattice_hull_fill,
)

# --- the nerve ---------------------------------------------------------------

g = Glossa(
    [("B1", (1.0,)), ("B2", (2.0,)), ("B3", (1.0,)), ("B4", (3.0,))],
    1,
    (0.0,),
)

# B1 and B3 share a description, so members 1 and 2 span an edge; the
# member holding B2 stays an isolated vertex.
nerve = descriptive_nerve(g, [{"B1"}, {"B3"}, {"B2"}], 0)
print("nerve faces:", nerve.sorted_faces())

# --- digital convexity -------------------------------------------------------

# A lattice set is digitally convex when it equals the lattice points
# of its own convex hull.
corners = {(0, 0), (4, 0), (0, 4)}
print("hull of three corners:", convex_hull_2d(corners))
print("corners alone convex?", is_digitally_convex(corners))
triangle = lattice_hull_fill(corners)
print(f"filled triangle ({len(triangle)} points) convex?", is_digitally_convex(triangle))

# --- convexity of the union variants ----------------------------------------

# A 5x3 strip of lattice points, descriptions = column index mod 3.
pairs = []
for x in range(5):
    for y in range(3):
        pairs.append((f"{x},{y}", (float(x % 3),), (x, y)))
grid = Glossa(pairs, 1, (-1.0,))

a = {f"{x},{y}" for x in (0, 1, 2) for y in range(3)}
b = {f"{x},{y}" for x in (2, 3, 4) for y in range(3)}
report = check_convexity_theorem(grid, a, b, targets=[(0.0,), (2.0,)], eta=0)
print()
print("union-convexity report on two overlapping convex strips:")
for key, value in report.to_json().items():
    print(f"  {key}: {value}")

# --- representability --------------------------------------------------------

# Two overlapping 2x2 blocks share column 1's descriptions, so their
# nerve is the full 1-simplex; both blocks and their union are convex,
# hence the complex is representable by this collection.
blocks = [
    {f"{x},{y}" for x in (0, 1) for y in (0, 1)},
    {f"{x},{y}" for x in (1, 2) for y in (0, 1)},
]
k = SimplicialComplex.of(2, [[1], [2], [1, 2]])
rep = check_d_convex_union_representable(
    k, grid, blocks, UnionConfig("nonrestrictive")
)
print()
print("is the full 1-simplex representable by the two blocks?", rep.representable)

"""
Described sets from scratch
===========================

Four elements, three description classes, and what "intersection"
means when membership is decided by descriptions instead of identity.
"""

from desops import Description, build_glossa, descriptive_intersection

# A carrier of four elements. B1 and B3 share the description [1];
# the empty set itself is described by [0].
g = build_glossa(
    [("B1", [1]), ("B2", [2]), ("B3", [1]), ("B4", [3])],
    dim=1,
    empty_desc=[0],
)

print("carrier:", sorted(g.carrier))
print("description of B3:", list(g.desc_of["B3"]))

# The fiber of a subset is its set of descriptions; duplicates collapse.
print("fiber of whole carrier:", sorted(tuple(d) for d in g.fiber(g.carrier)))

# Preimages invert the description map, optionally within a tolerance.
print("who is described [1]?", sorted(g.pi_inverse(Description.of([1]))))
print(
    "within 0.5 of [1.4]?",
    sorted(g.pi_inverse(Description.of([1.4]), eta=0.5)),
)

# Descriptive intersection: elements of either side whose description
# appears on BOTH sides. {B1,B2} and {B3,B4} are disjoint as sets, yet
# B1 and B3 look alike, so the descriptive intersection is nonempty.
a, b = {"B1", "B2"}, {"B3", "B4"}
print("plain intersection:", sorted(a & b))
print("descriptive intersection:", sorted(descriptive_intersection(g, a, b)))

# A tolerance widens "alike" to "within eta". Descriptions [2] and [3]
# differ by exactly 1, so eta=1 pulls B2 and B4 together.
print("eta=0:", sorted(descriptive_intersection(g, {"B2"}, {"B4"}, 0)))
print("eta=1:", sorted(descriptive_intersection(g, {"B2"}, {"B4"}, 1)))

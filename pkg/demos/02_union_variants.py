"""
The four descriptive unions
===========================

One pair of sets, a two-by-two grid of union semantics: the spatial
axis picks the ambient set (intersection or union of the two sides),
the descriptive axis picks the filter (given targets, or either side's
own descriptions).
"""

from desops import UnionConfig, build_glossa, descriptive_union, variant_config
from desops.setops import VARIANTS

g = build_glossa(
    [("B1", [1]), ("B2", [2]), ("B3", [1]), ("B4", [3])],
    dim=1,
    empty_desc=[0],
)
a = {"B1", "B2", "B3"}
b = {"B2", "B3", "B4"}
targets = ([1], [3])

print("a =", sorted(a), " b =", sorted(b), " targets =", list(targets))
print()

for variant in VARIANTS:
    tgt = targets if variant.endswith("-discriminatory") else None
    cfg = variant_config(variant, eta=0.0, targets=tgt)
    res = descriptive_union(g, a, b, cfg)
    print(f"{variant:38s} -> {sorted(res.elements)}")

# The nondiscriminatory rows above reduce to plain set algebra, and do
# so at every tolerance; that is their defining theorem.
for eta in (0.0, 0.5, 60.0):
    ri = descriptive_union(g, a, b, UnionConfig("restrictive", None, eta))
    ru = descriptive_union(g, a, b, UnionConfig("nonrestrictive", None, eta))
    assert ri.elements == a & b
    assert ru.elements == a | b
print()
print("nondiscriminatory variants equal a&b / a|b at eta 0, 0.5, 60: checked")

# When one side is empty, the empty set itself takes part: its
# designated description can match a target, and the result says so.
cfg = UnionConfig("nonrestrictive", ([0],))
res = descriptive_union(g, set(), {"B1"}, cfg)
print()
print("union with an empty side, target [0] (the empty description):")
print("  elements:", sorted(res.elements))
print("  includes the empty set:", res.includes_empty_set)

"""Nerve complexes of described collections and digital convexity.

The descriptive nerve of a collection U_1..U_n has a face for every
nonempty index set whose members intersect descriptively: some element
of their union lies within tolerance of every member's description
family.  Faces are closed under taking nonempty subsets.

Digital convexity is checked on the integer lattice: a set of lattice
points is digitally convex when it equals the set of lattice points
inside its own convex hull.  Hull arithmetic is exact (integer cross
products only).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .core import Description, ElementId, Glossa, NotAMember, check_eta
from .setops import (
    DescriptiveResult,
    UnionConfig,
    descriptive_union,
    matching_fiber,
)

Point = tuple[int, int]


class MissingCoords(ValueError):
    """A convexity check touched an element without planar coordinates."""


# --- simplicial complexes --------------------------------------------------


@dataclass(frozen=True)
class SimplicialComplex:
    """An abstract simplicial complex on vertices 1..n.

    ``faces`` holds nonempty vertex sets and must be downward closed:
    dropping any single vertex from a face lands on another face.
    """

    n: int
    faces: frozenset[frozenset[int]]

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 0:
            raise ValueError(f"vertex count must be a non-negative integer, got {self.n!r}")
        for face in self.faces:
            if not face:
                raise ValueError("faces must be nonempty vertex sets")
            for v in face:
                if not isinstance(v, int) or not (1 <= v <= self.n):
                    raise ValueError(f"vertex {v!r} outside 1..{self.n} in face {sorted(face)}")
            if len(face) > 1:
                for v in face:
                    sub = face - {v}
                    if sub not in self.faces:
                        raise ValueError(
                            f"not downward closed: face {sorted(face)} present "
                            f"but {sorted(sub)} missing"
                        )

    @classmethod
    def of(cls, n: int, faces: Iterable[Iterable[int]]) -> "SimplicialComplex":
        return cls(n, frozenset(frozenset(f) for f in faces))

    def sorted_faces(self) -> list[tuple[int, ...]]:
        """Faces as sorted tuples in lexicographic order."""
        return sorted(tuple(sorted(f)) for f in self.faces)

    def __contains__(self, face: Iterable[int]) -> bool:
        return frozenset(face) in self.faces


def downward_closure(faces: Iterable[Iterable[int]]) -> frozenset[frozenset[int]]:
    """All nonempty subsets of the given faces."""
    out: set[frozenset[int]] = set()
    for face in faces:
        face = tuple(sorted(set(face)))
        for mask in range(1, 1 << len(face)):
            out.add(frozenset(face[i] for i in range(len(face)) if mask >> i & 1))
    return frozenset(out)


# --- k-wise intersection and the nerve -------------------------------------


def kwise_descriptive_intersection(
    g: Glossa,
    members: Sequence[Iterable[ElementId]],
    eta: float = 0.0,
) -> frozenset[ElementId]:
    """Elements of the members' union within eta of every member's family.

    Generalizes the two-set descriptive intersection; an empty member
    contributes the family {empty_desc}.  Raises on an empty collection.
    """
    if len(members) == 0:
        raise ValueError("k-wise intersection of an empty collection is undefined")
    eta = check_eta(eta)
    sets = [g.validate_subset(m) for m in members]
    fams = [matching_fiber(g, s) for s in sets]
    universe = frozenset().union(*sets)
    eta_sq = eta * eta
    out = []
    for x in universe:
        d = g.desc_of[x]
        if all(any(d.distance_sq(t) <= eta_sq for t in fam) for fam in fams):
            out.append(x)
    return frozenset(out)


def descriptive_nerve(
    g: Glossa,
    members: Sequence[Iterable[ElementId]],
    eta: float = 0.0,
) -> SimplicialComplex:
    """The nerve complex of a collection under descriptive intersection.

    Vertex i stands for members[i-1].  An index set is a face when
    every nonempty subset of it has nonempty k-wise descriptive
    intersection; taking that closure is what keeps the complex
    downward closed for every tolerance.  At eta = 0 over nonempty
    members the subset condition is automatic (elements sharing the
    witnessing description transfer to every subface), so the faces are
    then exactly the index sets with nonempty k-wise intersection.
    """
    n = len(members)
    if n == 0:
        raise ValueError("nerve of an empty collection is undefined")
    eta = check_eta(eta)
    sets = [g.validate_subset(m) for m in members]
    fams = [matching_fiber(g, s) for s in sets]
    eta_sq = eta * eta

    # per element: bitmask of members containing it / of families it matches
    universe = frozenset().union(*sets)
    occupancy: list[int] = []
    matches: list[int] = []
    for x in universe:
        d = g.desc_of[x]
        occ = 0
        mat = 0
        for i in range(n):
            if x in sets[i]:
                occ |= 1 << i
            if any(d.distance_sq(t) <= eta_sq for t in fams[i]):
                mat |= 1 << i
        occupancy.append(occ)
        matches.append(mat)

    total = 1 << n
    nonempty_kwise = [False] * total
    for mask in range(1, total):
        for occ, mat in zip(occupancy, matches):
            if occ & mask and mask & ~mat == 0:
                nonempty_kwise[mask] = True
                break
    # downward-closed core: ascending masks see their submasks first
    good = [False] * total
    faces = set()
    for mask in range(1, total):
        if not nonempty_kwise[mask]:
            continue
        ok = True
        rest = mask
        while rest:
            bit = rest & -rest
            sub = mask ^ bit
            if sub and not good[sub]:
                ok = False
                break
            rest ^= bit
        if ok:
            good[mask] = True
            faces.add(frozenset(i + 1 for i in range(n) if mask >> i & 1))
    return SimplicialComplex(n, frozenset(faces))


# --- exact planar hulls and digital convexity -------------------------------


def _cross(o: Point, a: Point, b: Point) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull_2d(points: Iterable[Point]) -> list[Point]:
    """Convex hull vertices in counterclockwise order, collinear points dropped.

    Monotone-chain over integer coordinates; all arithmetic is exact.
    A single point hulls to itself, two points to the segment endpoints.
    """
    pts = sorted({(int(x), int(y)) for x, y in points})
    if not pts:
        raise ValueError("convex hull of an empty point set")
    if len(pts) <= 2:
        return pts
    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def point_in_hull(hull: Sequence[Point], q: Point) -> bool:
    """Is q inside or on the hull polygon (vertices CCW)?  Exact."""
    if len(hull) == 1:
        return q == hull[0]
    if len(hull) == 2:
        a, b = hull
        if _cross(a, b, q) != 0:
            return False
        return min(a[0], b[0]) <= q[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= q[1] <= max(
            a[1], b[1]
        )
    for i in range(len(hull)):
        if _cross(hull[i], hull[(i + 1) % len(hull)], q) < 0:
            return False
    return True


def lattice_hull_fill(points: Iterable[Point]) -> frozenset[Point]:
    """All lattice points inside the convex hull of ``points``."""
    pts = {(int(x), int(y)) for x, y in points}
    if not pts:
        return frozenset()
    hull = convex_hull_2d(pts)
    xs = [p[0] for p in hull]
    ys = [p[1] for p in hull]
    out = []
    for x in range(min(xs), max(xs) + 1):
        for y in range(min(ys), max(ys) + 1):
            if point_in_hull(hull, (x, y)):
                out.append((x, y))
    return frozenset(out)


def is_digitally_convex(points: Iterable[Point]) -> bool:
    """Does the set equal the lattice points of its own convex hull?

    Empty and singleton sets count as convex.
    """
    pts = frozenset((int(x), int(y)) for x, y in points)
    if len(pts) <= 1:
        return True
    return pts == lattice_hull_fill(pts)


# --- convexity of union variants -------------------------------------------


def _coords_of_set(g: Glossa, ids: Iterable[ElementId]) -> frozenset[Point]:
    out = []
    for eid in ids:
        c = g.coords_of(eid)
        if c is None:
            raise MissingCoords(f"element {eid!r} has no planar coordinates")
        out.append(c)
    return frozenset(out)


@dataclass(frozen=True)
class EquiconvexityCheck:
    """Two element sets compared for equality and digital convexity."""

    left: frozenset[ElementId]
    right: frozenset[ElementId]
    left_convex: bool
    right_convex: bool

    @property
    def sets_equal(self) -> bool:
        return self.left == self.right

    @property
    def holds(self) -> bool:
        return self.sets_equal and self.left_convex == self.right_convex


@dataclass(frozen=True)
class ConvexityReport:
    """Outcome of the union-convexity checks for one pair of convex sets."""

    restrictive_discriminatory: EquiconvexityCheck
    nonrestrictive_discriminatory: EquiconvexityCheck
    restrictive_nondiscriminatory_convex: bool
    nonrestrictive_nondiscriminatory: EquiconvexityCheck

    def all_hold(self) -> bool:
        return (
            self.restrictive_discriminatory.holds
            and self.nonrestrictive_discriminatory.holds
            and self.restrictive_nondiscriminatory_convex
            and self.nonrestrictive_nondiscriminatory.holds
        )

    def to_json(self) -> dict:
        def enc(c: EquiconvexityCheck) -> dict:
            return {
                "sets_equal": c.sets_equal,
                "left_convex": c.left_convex,
                "right_convex": c.right_convex,
                "holds": c.holds,
            }

        return {
            "restrictive_discriminatory": enc(self.restrictive_discriminatory),
            "nonrestrictive_discriminatory": enc(self.nonrestrictive_discriminatory),
            "restrictive_nondiscriminatory_convex": self.restrictive_nondiscriminatory_convex,
            "nonrestrictive_nondiscriminatory": enc(self.nonrestrictive_nondiscriminatory),
            "all_hold": self.all_hold(),
        }


def check_convexity_theorem(
    g: Glossa,
    a: Iterable[ElementId],
    b: Iterable[ElementId],
    targets: Sequence,
    eta: float = 0.0,
) -> ConvexityReport:
    """Check the union-convexity laws on a pair of digitally convex sets.

    Both inputs must be digitally convex (in their planar coordinates);
    raises ValueError naming the offending side otherwise.  For each
    discriminatory variant the union is compared against the matching
    union of target preimages, and the convexity of the two sides is
    compared; the restrictive-nondiscriminatory union must itself be
    convex, and the nonrestrictive-nondiscriminatory union is compared
    against the plain union a | b.
    """
    a = g.validate_subset(a)
    b = g.validate_subset(b)
    eta = check_eta(eta)
    targets = tuple(Description.of(t) for t in targets)
    if not targets:
        raise ValueError("need at least one target description")

    pts_a = _coords_of_set(g, a)
    pts_b = _coords_of_set(g, b)
    if not is_digitally_convex(pts_a):
        raise ValueError("input a is not digitally convex")
    if not is_digitally_convex(pts_b):
        raise ValueError("input b is not digitally convex")

    def convex(ids: frozenset[ElementId]) -> bool:
        return is_digitally_convex(_coords_of_set(g, ids))

    def preimages(domain: frozenset[ElementId]) -> frozenset[ElementId]:
        out: frozenset[ElementId] = frozenset()
        for t in targets:
            out |= g.pi_inverse(t, domain, eta)
        return out

    rd = descriptive_union(g, a, b, UnionConfig("restrictive", targets, eta)).elements
    pre_rd = preimages(a & b)
    part1 = EquiconvexityCheck(pre_rd, rd, convex(pre_rd), convex(rd))

    nd = descriptive_union(g, a, b, UnionConfig("nonrestrictive", targets, eta)).elements
    pre_nd = preimages(a | b)
    part2 = EquiconvexityCheck(pre_nd, nd, convex(pre_nd), convex(nd))

    rn = descriptive_union(g, a, b, UnionConfig("restrictive", None, eta)).elements
    part3 = convex(rn)

    nn = descriptive_union(g, a, b, UnionConfig("nonrestrictive", None, eta)).elements
    part4 = EquiconvexityCheck(a | b, nn, convex(a | b), convex(nn))

    return ConvexityReport(part1, part2, part3, part4)


# --- representability of complexes by convex collections --------------------


def kary_descriptive_union(
    g: Glossa,
    members: Sequence[Iterable[ElementId]],
    config: UnionConfig,
) -> DescriptiveResult:
    """The union variant applied across a whole collection at once."""
    if len(members) == 0:
        raise ValueError("union of an empty collection is undefined")
    sets = [g.validate_subset(m) for m in members]
    ambient = sets[0]
    for s in sets[1:]:
        ambient = (ambient & s) if config.spatial == "restrictive" else (ambient | s)
    eta_sq = config.eta * config.eta
    if config.discriminatory:
        pools = [frozenset(config.targets)]
        includes_empty = any(len(s) == 0 for s in sets) and any(
            g.empty_desc.distance_sq(t) <= eta_sq for t in config.targets
        )
    else:
        pools = [matching_fiber(g, s) for s in sets]
        includes_empty = False
    out = []
    for x in ambient:
        d = g.desc_of[x]
        if any(any(d.distance_sq(t) <= eta_sq for t in pool) for pool in pools):
            out.append(x)
    return DescriptiveResult(frozenset(out), includes_empty)


@dataclass(frozen=True)
class RepresentabilityReport:
    """Does a convex collection realize a complex with convex unions?"""

    nerve_matches: bool
    unions_convex: bool
    missing_faces: tuple[tuple[int, ...], ...]
    extra_faces: tuple[tuple[int, ...], ...]
    nonconvex_unions: tuple[tuple[int, ...], ...]

    @property
    def representable(self) -> bool:
        return self.nerve_matches and self.unions_convex

    def to_json(self) -> dict:
        return {
            "nerve_matches": self.nerve_matches,
            "unions_convex": self.unions_convex,
            "representable": self.representable,
            "missing_faces": [list(f) for f in self.missing_faces],
            "extra_faces": [list(f) for f in self.extra_faces],
            "nonconvex_unions": [list(u) for u in self.nonconvex_unions],
        }


def check_d_convex_union_representable(
    k: SimplicialComplex,
    g: Glossa,
    members: Sequence[Iterable[ElementId]],
    config: UnionConfig,
    union_scope: str = "pairwise",
) -> RepresentabilityReport:
    """Check whether a digitally convex collection represents the complex ``k``.

    Every member must be digitally convex (error names the member index
    otherwise).  The collection represents ``k`` when its descriptive
    nerve equals ``k`` and the unions under ``config`` are digitally
    convex: all pairwise unions for ``union_scope`` "pairwise" (the
    default), the single union of the whole collection for "total".
    """
    if union_scope not in ("pairwise", "total"):
        raise ValueError(f"union scope must be 'pairwise' or 'total', got {union_scope!r}")
    sets = [g.validate_subset(m) for m in members]
    if len(sets) != k.n:
        raise ValueError(f"complex has {k.n} vertices but collection has {len(sets)} members")
    for i, s in enumerate(sets, start=1):
        if not is_digitally_convex(_coords_of_set(g, s)):
            raise ValueError(f"member {i} is not digitally convex")

    nerve = descriptive_nerve(g, sets, config.eta)
    missing = sorted(tuple(sorted(f)) for f in k.faces - nerve.faces)
    extra = sorted(tuple(sorted(f)) for f in nerve.faces - k.faces)

    nonconvex: list[tuple[int, ...]] = []
    if union_scope == "total":
        groups: list[tuple[int, ...]] = [tuple(range(1, k.n + 1))] if k.n >= 1 else []
    else:
        groups = [(i, j) for i in range(1, k.n + 1) for j in range(i + 1, k.n + 1)]
    for group in groups:
        res = kary_descriptive_union(g, [sets[i - 1] for i in group], config)
        if not is_digitally_convex(_coords_of_set(g, res.elements)):
            nonconvex.append(group)

    return RepresentabilityReport(
        nerve_matches=not missing and not extra,
        unions_convex=not nonconvex,
        missing_faces=tuple(missing),
        extra_faces=tuple(extra),
        nonconvex_unions=tuple(nonconvex),
    )

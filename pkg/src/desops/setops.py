"""Descriptive intersection and the four descriptive unions.

The descriptive intersection of two subsets keeps every element of
their union whose description appears in both description families.
The unions come in four variants along two independent axes:

* spatial axis: "restrictive" draws candidates from a & b,
  "nonrestrictive" from a | b;
* descriptive axis: "discriminatory" keeps candidates whose description
  matches one of a fixed tuple of target descriptions,
  "nondiscriminatory" keeps candidates whose description appears in
  either input's description family.

Every match is up to a Euclidean tolerance eta; eta = 0 means exact
equality.  The description family of an empty input is taken to be the
singleton {empty_desc}, which is what makes the empty-side laws below
come out as stated.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np

from .core import (
    Description,
    DimensionMismatch,
    ElementId,
    Glossa,
    check_eta,
    min_distance_sq,
)

SPATIAL_MODES = ("restrictive", "nonrestrictive")

VARIANTS = (
    "restrictive-discriminatory",
    "restrictive-nondiscriminatory",
    "nonrestrictive-discriminatory",
    "nonrestrictive-nondiscriminatory",
)


@dataclass(frozen=True)
class UnionConfig:
    """Selects one of the four union variants plus a tolerance.

    ``targets`` is None for the nondiscriminatory variants and a
    nonempty tuple of target descriptions for the discriminatory ones.
    """

    spatial: str
    targets: Optional[tuple[Description, ...]] = None
    eta: float = 0.0

    def __post_init__(self) -> None:
        if self.spatial not in SPATIAL_MODES:
            raise ValueError(
                f"spatial mode must be one of {SPATIAL_MODES}, got {self.spatial!r}"
            )
        if self.targets is not None:
            coerced = tuple(Description.of(t) for t in self.targets)
            if not coerced:
                raise ValueError("discriminatory union needs at least one target")
            dims = {t.dim for t in coerced}
            if len(dims) > 1:
                raise DimensionMismatch(f"targets mix dimensions {sorted(dims)}")
            object.__setattr__(self, "targets", coerced)
        object.__setattr__(self, "eta", check_eta(self.eta))

    @property
    def discriminatory(self) -> bool:
        return self.targets is not None

    @property
    def variant(self) -> str:
        kind = "discriminatory" if self.discriminatory else "nondiscriminatory"
        return f"{self.spatial}-{kind}"


def variant_config(
    variant: str,
    eta: float = 0.0,
    targets: Optional[Iterable] = None,
) -> UnionConfig:
    """Build a UnionConfig from a variant name like "restrictive-discriminatory"."""
    if variant not in VARIANTS:
        raise ValueError(f"unknown union variant {variant!r}; expected one of {VARIANTS}")
    spatial, kind = variant.split("-", 1)
    if kind == "discriminatory":
        if targets is None:
            raise ValueError(f"variant {variant!r} needs target descriptions")
        return UnionConfig(spatial, tuple(Description.of(t) for t in targets), eta)
    if targets is not None:
        raise ValueError(f"variant {variant!r} takes no targets")
    return UnionConfig(spatial, None, eta)


@dataclass(frozen=True)
class DescriptiveResult:
    """Elements selected by a union, plus the empty-set membership flag.

    ``includes_empty_set`` records the degenerate case of a
    discriminatory union with an empty input whose empty-set
    description matches a target: the empty set itself then belongs to
    the result even though no element does.
    """

    elements: frozenset[ElementId]
    includes_empty_set: bool = False


def matching_fiber(g: Glossa, ids: frozenset[ElementId]) -> frozenset[Description]:
    """Description family used for matching: fiber, or {empty_desc} if empty."""
    if ids:
        return g.fiber(ids)
    return frozenset((g.empty_desc,))


def _within_any(g: Glossa, ids, pool: frozenset[Description], eta: float) -> frozenset:
    """Subset of ids whose description is within eta of some pool member."""
    if eta == 0.0:
        return frozenset(x for x in ids if g.desc_of[x] in pool)
    ordered, mat = g.rows_for(ids)
    if not ordered:
        return frozenset()
    pool_mat = np.array([d.values for d in pool], dtype=np.float64)
    diffs = mat[:, None, :] - pool_mat[None, :, :]
    dmin = (diffs * diffs).sum(axis=2).min(axis=1)
    return frozenset(x for x, hit in zip(ordered, dmin <= eta * eta) if hit)


def descriptive_intersection(
    g: Glossa,
    a: Iterable[ElementId],
    b: Iterable[ElementId],
    eta: float = 0.0,
) -> frozenset[ElementId]:
    """Elements of a | b whose description lies within eta of both families.

    The description family of an empty side is {empty_desc}, so an
    empty ``a`` yields exactly the elements of ``b`` described like the
    empty set.
    """
    a = g.validate_subset(a)
    b = g.validate_subset(b)
    eta = check_eta(eta)
    fa = matching_fiber(g, a)
    fb = matching_fiber(g, b)
    near_a = _within_any(g, a | b, fa, eta)
    near_b = _within_any(g, a | b, fb, eta)
    return near_a & near_b


def _check_targets(g: Glossa, targets: tuple[Description, ...]) -> None:
    for t in targets:
        if t.dim != g.dim:
            raise DimensionMismatch(
                f"target {t!r} has length {t.dim} (expected {g.dim})"
            )


def descriptive_union(
    g: Glossa,
    a: Iterable[ElementId],
    b: Iterable[ElementId],
    config: UnionConfig,
) -> DescriptiveResult:
    """Apply the union variant selected by ``config`` to subsets a and b."""
    a = g.validate_subset(a)
    b = g.validate_subset(b)
    eta = config.eta
    ambient = (a & b) if config.spatial == "restrictive" else (a | b)

    if config.discriminatory:
        targets = config.targets
        _check_targets(g, targets)
        if eta == 0.0:
            hits = frozenset()
            for t in targets:
                hits |= g.pi_inverse(t, None, 0.0)
            elements = hits & ambient
        else:
            elements = _within_any(g, ambient, frozenset(targets), eta)
        # an empty input contributes the empty set itself whenever the
        # empty-set description matches a target
        includes_empty = (not a or not b) and min_distance_sq(
            g.empty_desc, targets
        ) <= eta * eta
        return DescriptiveResult(elements, includes_empty)

    fa = matching_fiber(g, a)
    fb = matching_fiber(g, b)
    elements = _within_any(g, ambient, fa, eta) | _within_any(g, ambient, fb, eta)
    return DescriptiveResult(elements, False)


def check_injective(
    g: Glossa, domain: Iterable[ElementId]
) -> tuple[bool, Optional[tuple[ElementId, ElementId]]]:
    """Is the probe injective on ``domain``?

    Returns (True, None) or (False, (x, y)) where x, y is the first
    pair of distinct elements sharing a description, in carrier order.
    """
    dom = g.validate_subset(domain)
    seen: dict[Description, ElementId] = {}
    for eid in g.element_ids:
        if eid not in dom:
            continue
        d = g.desc_of[eid]
        if d in seen:
            return False, (seen[d], eid)
        seen[d] = eid
    return True, None


# --- reference implementations -------------------------------------------
#
# Deliberately index-free: plain lists, nested loops, and element-wise
# arithmetic, so they share no machinery with the fast paths above.


def _ordered_members(g: Glossa, ids) -> list:
    return [eid for eid in g.element_ids if eid in ids]


def _dist_sq_loop(u: Description, v: Description) -> float:
    total = 0.0
    for x, y in zip(u.values, v.values):
        total += (x - y) * (x - y)
    return total


def _near_some(desc: Description, pool: list[Description], eta: float) -> bool:
    for other in pool:
        if _dist_sq_loop(desc, other) <= eta * eta:
            return True
    return False


def oracle_descriptive_intersection(
    g: Glossa,
    a: Iterable[ElementId],
    b: Iterable[ElementId],
    eta: float = 0.0,
) -> frozenset[ElementId]:
    a = g.validate_subset(a)
    b = g.validate_subset(b)
    eta = check_eta(eta)
    a_list = _ordered_members(g, a)
    b_list = _ordered_members(g, b)
    union_list = a_list + [x for x in b_list if x not in a_list]
    fam_a = [g.desc_of[x] for x in a_list] if a_list else [g.empty_desc]
    fam_b = [g.desc_of[x] for x in b_list] if b_list else [g.empty_desc]
    out = []
    for x in union_list:
        d = g.desc_of[x]
        if _near_some(d, fam_a, eta) and _near_some(d, fam_b, eta):
            out.append(x)
    return frozenset(out)


def oracle_descriptive_union(
    g: Glossa,
    a: Iterable[ElementId],
    b: Iterable[ElementId],
    config: UnionConfig,
) -> DescriptiveResult:
    a = g.validate_subset(a)
    b = g.validate_subset(b)
    eta = config.eta
    a_list = _ordered_members(g, a)
    b_list = _ordered_members(g, b)
    if config.spatial == "restrictive":
        ambient = [x for x in a_list if x in b_list]
    else:
        ambient = a_list + [x for x in b_list if x not in a_list]

    if config.discriminatory:
        targets = list(config.targets)
        _check_targets(g, config.targets)
        out = [x for x in ambient if _near_some(g.desc_of[x], targets, eta)]
        includes_empty = (len(a_list) == 0 or len(b_list) == 0) and _near_some(
            g.empty_desc, targets, eta
        )
        return DescriptiveResult(frozenset(out), includes_empty)

    fam_a = [g.desc_of[x] for x in a_list] if a_list else [g.empty_desc]
    fam_b = [g.desc_of[x] for x in b_list] if b_list else [g.empty_desc]
    out = [
        x
        for x in ambient
        if _near_some(g.desc_of[x], fam_a, eta) or _near_some(g.desc_of[x], fam_b, eta)
    ]
    return DescriptiveResult(frozenset(out), False)


def oracle_descriptive_op(
    g: Glossa,
    a: Iterable[ElementId],
    b: Iterable[ElementId],
    kind: str,
    config: Optional[UnionConfig] = None,
) -> DescriptiveResult:
    """Reference evaluation of any operation; kind is "intersection" or "union"."""
    if kind == "intersection":
        eta = config.eta if config is not None else 0.0
        return DescriptiveResult(oracle_descriptive_intersection(g, a, b, eta), False)
    if kind == "union":
        if config is None:
            raise ValueError("union requires a config")
        return oracle_descriptive_union(g, a, b, config)
    raise ValueError(f"unknown operation kind {kind!r}")

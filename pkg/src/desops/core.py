"""Finite carriers whose elements carry real-vector descriptions.

A probe assigns every element of a finite carrier set an n-dimensional
feature vector.  The carrier together with that element-to-description
pairing, plus a designated description for the empty set, is called a
glossa.  Projection forgets the description of a (element, description)
pair; the preimage operation recovers all elements carrying a given
description, exactly or up to a Euclidean tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Hashable, Iterable, Iterator, Optional, Sequence

import numpy as np

ElementId = Hashable


class GlossaError(ValueError):
    """Base class for glossa construction and lookup failures."""


class DimensionMismatch(GlossaError):
    """A description's length disagrees with the declared dimension."""


class InvalidDescription(GlossaError):
    """A description entry is NaN or infinite."""


class DuplicateId(GlossaError):
    """Two elements were declared with the same id."""


class NotAMember(GlossaError):
    """An id, pair, or subset refers to something outside the carrier."""


@dataclass(frozen=True)
class Description:
    """An n-dimensional real feature vector.

    Compares and hashes by value, so two descriptions built from equal
    numbers are interchangeable as dictionary keys and set members.
    Entries must be finite; -0.0 is folded into 0.0 so that value
    equality and hash equality coincide.
    """

    values: tuple[float, ...]

    def __post_init__(self) -> None:
        if not self.values:
            raise InvalidDescription("description must have at least one entry")
        vals = []
        for v in self.values:
            f = float(v) + 0.0  # folds -0.0 into +0.0, exact otherwise
            if not math.isfinite(f):
                raise InvalidDescription(f"description entry {v!r} is not finite")
            vals.append(f)
        object.__setattr__(self, "values", tuple(vals))

    @classmethod
    def of(cls, value: "Description | Iterable[float]") -> "Description":
        if isinstance(value, Description):
            return value
        return cls(tuple(value))

    @property
    def dim(self) -> int:
        return len(self.values)

    def distance_sq(self, other: "Description | Iterable[float]") -> float:
        other = Description.of(other)
        if other.dim != self.dim:
            raise DimensionMismatch(
                f"cannot compare descriptions of dimension {self.dim} and {other.dim}"
            )
        return sum((u - v) ** 2 for u, v in zip(self.values, other.values))

    def __iter__(self) -> Iterator[float]:
        return iter(self.values)

    def __len__(self) -> int:
        return len(self.values)

    def __repr__(self) -> str:
        return f"Description({list(self.values)!r})"


@dataclass(frozen=True)
class Element:
    """A carrier element: an id plus optional integer planar coordinates."""

    id: ElementId
    coords: Optional[tuple[int, int]] = None

    def __post_init__(self) -> None:
        if self.coords is not None:
            c = tuple(self.coords)
            if len(c) != 2 or not all(isinstance(v, int) or float(v).is_integer() for v in c):
                raise GlossaError(f"element {self.id!r}: coords must be an integer pair")
            object.__setattr__(self, "coords", (int(c[0]), int(c[1])))


def min_distance_sq(desc: Description, pool: Iterable[Description]) -> float:
    """Squared distance from ``desc`` to the nearest description in ``pool``.

    Returns +inf for an empty pool.
    """
    best = math.inf
    for other in pool:
        d = desc.distance_sq(other)
        if d < best:
            best = d
    return best


def check_eta(eta: float) -> float:
    eta = float(eta)
    if not (math.isfinite(eta) and eta >= 0.0):
        raise ValueError(f"tolerance must be a finite non-negative number, got {eta!r}")
    return eta


class Glossa:
    """An immutable pairing of a finite carrier with element descriptions.

    Attributes
    ----------
    elements : tuple of Element
        Carrier elements in construction order.
    pairs : tuple of (id, Description)
        The authoritative element/description pairing, same order.
    desc_of : dict
        Lookup index id -> Description, total over the carrier.
    dim : int
        Description dimension, shared by every element and ``empty_desc``.
    empty_desc : Description
        The description assigned to the empty set (all zeros by default).

    Treat instances as frozen after construction; every derived index is
    built once here.
    """

    def __init__(
        self,
        pairs: Iterable[tuple],
        dim: int,
        empty_desc: "Description | Iterable[float] | None" = None,
    ) -> None:
        if not isinstance(dim, int) or dim < 1:
            raise GlossaError(f"dimension must be a positive integer, got {dim!r}")
        self.dim = dim
        if empty_desc is None:
            empty_desc = Description((0.0,) * dim)
        else:
            empty_desc = Description.of(empty_desc)
        if empty_desc.dim != dim:
            raise DimensionMismatch(
                f"empty-set description has length {empty_desc.dim} (expected {dim})"
            )
        self.empty_desc = empty_desc

        elements: list[Element] = []
        paired: list[tuple[ElementId, Description]] = []
        desc_of: dict[ElementId, Description] = {}
        for item in pairs:
            if len(item) == 2:
                eid, raw = item
                coords = None
            elif len(item) == 3:
                eid, raw, coords = item
            else:
                raise GlossaError(f"expected (id, description[, coords]) pairs, got {item!r}")
            desc = Description.of(raw)
            if desc.dim != dim:
                raise DimensionMismatch(
                    f"element {eid!r}: description has length {desc.dim} (expected {dim})"
                )
            if eid in desc_of:
                raise DuplicateId(f"element id {eid!r} declared twice")
            elements.append(Element(eid, coords))
            paired.append((eid, desc))
            desc_of[eid] = desc

        self.elements: tuple[Element, ...] = tuple(elements)
        self.pairs: tuple[tuple[ElementId, Description], ...] = tuple(paired)
        self.desc_of = desc_of
        self.element_ids: tuple[ElementId, ...] = tuple(e.id for e in elements)
        self.carrier: frozenset[ElementId] = frozenset(self.element_ids)
        self._coords = {e.id: e.coords for e in elements}

        # exact inverted index: description -> ids carrying it
        exact: dict[Description, set[ElementId]] = {}
        for eid, desc in paired:
            exact.setdefault(desc, set()).add(eid)
        self._exact: dict[Description, frozenset[ElementId]] = {
            d: frozenset(s) for d, s in exact.items()
        }

        # dense description matrix for tolerance scans
        self._row_of: dict[ElementId, int] = {eid: i for i, eid in enumerate(self.element_ids)}
        if paired:
            self._matrix = np.array([d.values for _, d in paired], dtype=np.float64)
        else:
            self._matrix = np.zeros((0, dim), dtype=np.float64)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, eid: ElementId) -> bool:
        return eid in self.carrier

    def __repr__(self) -> str:
        return f"Glossa({len(self.elements)} elements, dim={self.dim})"

    def validate_subset(self, ids: Iterable[ElementId]) -> frozenset[ElementId]:
        """Coerce ``ids`` to a frozenset, rejecting ids outside the carrier."""
        out = frozenset(ids)
        for eid in out:
            if eid not in self.carrier:
                raise NotAMember(f"{eid!r} is not in the carrier")
        return out

    def coords_of(self, eid: ElementId) -> Optional[tuple[int, int]]:
        if eid not in self.carrier:
            raise NotAMember(f"{eid!r} is not in the carrier")
        return self._coords[eid]

    def project(self, pair: tuple[ElementId, "Description | Iterable[float]"]) -> ElementId:
        """Forget the description of a member pair, returning the element id.

        The pair must actually belong to the pairing: its id must be in
        the carrier and its description must equal the stored one.
        """
        eid, raw = pair
        desc = Description.of(raw)
        if eid not in self.carrier:
            raise NotAMember(f"{eid!r} is not in the carrier")
        if self.desc_of[eid] != desc:
            raise NotAMember(f"({eid!r}, {desc!r}) is not a member pair of this glossa")
        return eid

    def fiber(self, ids: Iterable[ElementId], include_empty: bool = False) -> frozenset[Description]:
        """The set of descriptions carried by ``ids``.

        With ``include_empty`` the empty-set description is appended,
        giving the description family of all sub-subsets of ``ids``.
        """
        u = self.validate_subset(ids)
        out = frozenset(self.desc_of[eid] for eid in u)
        if include_empty:
            out |= {self.empty_desc}
        return out

    def pi_inverse(
        self,
        target: "Description | Iterable[float]",
        domain: Optional[Iterable[ElementId]] = None,
        eta: float = 0.0,
    ) -> frozenset[ElementId]:
        """Elements whose description lies within ``eta`` of ``target``.

        ``domain`` restricts the search; None means the whole carrier.
        ``eta`` = 0 is an exact-match lookup.
        """
        eta = check_eta(eta)
        target = Description.of(target)
        if target.dim != self.dim:
            raise DimensionMismatch(
                f"target has length {target.dim} (expected {self.dim})"
            )
        if eta == 0.0:
            hits = self._exact.get(target, frozenset())
            if domain is None:
                return hits
            return hits & self.validate_subset(domain)
        if domain is None:
            rows = np.arange(len(self.elements))
            ids: Sequence[ElementId] = self.element_ids
        else:
            dom = self.validate_subset(domain)
            ids = [eid for eid in self.element_ids if eid in dom]
            rows = np.array([self._row_of[eid] for eid in ids], dtype=np.intp)
        if len(ids) == 0:
            return frozenset()
        diffs = self._matrix[rows] - np.array(target.values, dtype=np.float64)
        mask = (diffs * diffs).sum(axis=1) <= eta * eta
        return frozenset(eid for eid, hit in zip(ids, mask) if hit)

    def local_trivialization_check(self, ids: Iterable[ElementId]) -> bool:
        """Verify the pairing over ``ids`` is coherent.

        For every stored pair (x, d) with x in ``ids``, projecting the
        pair must return x; this fails if the lookup index and the
        stored pairing disagree.  Vacuously true for the empty subset.
        """
        u = self.validate_subset(ids)
        for eid, desc in self.pairs:
            if eid not in u:
                continue
            try:
                if self.project((eid, desc)) != eid:
                    return False
            except NotAMember:
                return False
        return True

    def rows_for(self, ids: Iterable[ElementId]) -> tuple[list[ElementId], np.ndarray]:
        """Ids in carrier order plus their rows in the description matrix."""
        sub = self.validate_subset(ids)
        ordered = [eid for eid in self.element_ids if eid in sub]
        rows = np.array([self._row_of[eid] for eid in ordered], dtype=np.intp)
        return ordered, self._matrix[rows] if ordered else self._matrix[:0]


def build_glossa(
    pairs: Iterable[tuple],
    dim: int,
    empty_desc: "Description | Iterable[float] | None" = None,
) -> Glossa:
    """Build a glossa from (id, description) or (id, description, coords) pairs."""
    return Glossa(pairs, dim, empty_desc)

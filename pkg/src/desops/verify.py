"""Seeded randomized verification of the package's stated laws.

Each suite draws random instances from its own deterministically seeded
stream and checks a family of named properties, counting trials and
failures and keeping the first counterexample as plain JSON.  Suites
whose properties only bite under a hypothesis (an injective probe, a
disjoint pair sharing a description) register witness requirements: a
run that never produces a qualifying instance fails that property.

The report is deterministic for a given (seed, trials, suite) triple,
byte for byte once serialized.
"""

from __future__ import annotations

import hashlib
import io
import json
import math
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import formats, imaging, setops
from . import nerve as nerve_mod
from .core import Description, Glossa
from .setops import DescriptiveResult, UnionConfig

# --- report structure -------------------------------------------------------


@dataclass
class PropertyReport:
    trials: int = 0
    failures: int = 0
    first_counterexample: Optional[dict] = None

    def to_json(self) -> dict:
        return {
            "trials": self.trials,
            "failures": self.failures,
            "first_counterexample": self.first_counterexample,
        }


class Recorder:
    """Collects per-property trial/failure counts for one suite run."""

    def __init__(self) -> None:
        self.properties: dict[str, PropertyReport] = {}
        self._required: dict[str, str] = {}

    def check(self, name: str, ok: bool, ctx: Optional[Callable[[], dict]] = None) -> None:
        prop = self.properties.setdefault(name, PropertyReport())
        prop.trials += 1
        if not ok:
            prop.failures += 1
            if prop.first_counterexample is None:
                prop.first_counterexample = ctx() if ctx is not None else {}

    def witness(self, name: str) -> None:
        """Record a qualifying instance for an existence-style property."""
        self.properties.setdefault(name, PropertyReport()).trials += 1

    def require_witness(self, name: str, note: str) -> None:
        self._required[name] = note
        self.properties.setdefault(name, PropertyReport())

    def finalize(self) -> None:
        for name, note in self._required.items():
            prop = self.properties[name]
            if prop.trials == 0:
                prop.failures += 1
                prop.first_counterexample = {"note": note}


@dataclass
class SuiteReport:
    name: str
    trials: int
    properties: dict[str, PropertyReport]

    @property
    def failures(self) -> int:
        return sum(p.failures for p in self.properties.values())

    def to_json(self) -> dict:
        return {
            "trials": self.trials,
            "failures": self.failures,
            "properties": {n: p.to_json() for n, p in self.properties.items()},
        }


@dataclass
class VerifyReport:
    seed: int
    trials: int
    suites: dict[str, SuiteReport]

    @property
    def total_failures(self) -> int:
        return sum(s.failures for s in self.suites.values())

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "trials": self.trials,
            "total_failures": self.total_failures,
            "ok": self.total_failures == 0,
            "suites": {n: s.to_json() for n, s in self.suites.items()},
        }


def report_json_str(report: VerifyReport) -> str:
    return json.dumps(report.to_json(), sort_keys=True, indent=2) + "\n"


# --- counterexample serialization -------------------------------------------


def _plain(v):
    if isinstance(v, Description):
        return list(v.values)
    if isinstance(v, DescriptiveResult):
        return formats.result_to_json(v)
    if isinstance(v, UnionConfig):
        return formats.union_config_to_json(v)
    if isinstance(v, nerve_mod.SimplicialComplex):
        return formats.complex_to_json(v)
    if isinstance(v, (frozenset, set)):
        return sorted(_plain(x) for x in v)
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _plain(x) for k, x in v.items()}
    if v is None or isinstance(v, (bool, int, float, str)):
        return v
    return repr(v)


def _ctx(g: Glossa, **extra) -> Callable[[], dict]:
    def build() -> dict:
        out = {"glossa": formats.glossa_to_json(g)}
        for k, v in extra.items():
            out[k] = _plain(v)
        return out

    return build


# --- instance generators -----------------------------------------------------


def random_glossa(
    rng: random.Random,
    max_size: int = 48,
    dim: Optional[int] = None,
    alphabet: int = 4,
    injective: bool = False,
) -> Glossa:
    """A random glossa with string ids and small integer-valued descriptions.

    Sizes are biased small but reach ``max_size``; the injective mode
    hands every element a distinct description.
    """
    size = rng.randint(1, rng.randint(1, max_size))
    if dim is None:
        dim = rng.randint(1, 3)
    if injective:
        base = 2
        while base**dim < size:
            base += 1
        descs = []
        for i in range(size):
            v, x = [], i
            for _ in range(dim):
                v.append(float(x % base))
                x //= base
            descs.append(tuple(v))
        rng.shuffle(descs)
    else:
        descs = [
            tuple(float(rng.randrange(alphabet)) for _ in range(dim)) for _ in range(size)
        ]
    empty = tuple(0.0 for _ in range(dim))
    if rng.random() < 0.25:
        empty = tuple(float(rng.randrange(alphabet)) for _ in range(dim))
    return Glossa([(f"e{i}", descs[i]) for i in range(size)], dim, empty)


def random_subset(rng: random.Random, g: Glossa) -> frozenset:
    density = rng.choice([0.1, 0.25, 0.4, 0.6, 0.85])
    return frozenset(eid for eid in g.element_ids if rng.random() < density)


def random_eta(rng: random.Random) -> float:
    return rng.choice([0.0, 0.0, 0.0, 0.5, 1.0, 2.0, round(rng.uniform(0.0, 3.0), 3)])


def random_target(rng: random.Random, g: Glossa, alphabet: int = 4) -> Description:
    if g.pairs and rng.random() < 0.5:
        return rng.choice(g.pairs)[1]
    return Description(tuple(float(rng.randrange(alphabet)) for _ in range(g.dim)))


def random_targets(rng: random.Random, g: Glossa) -> tuple[Description, ...]:
    k = rng.randint(1, 3)
    return tuple(random_target(rng, g) for _ in range(k))


FAR = 999.0  # farther from any generated description than every tolerance used


def far_targets(rng: random.Random, g: Glossa) -> tuple[Description, ...]:
    return tuple(
        Description((FAR + i,) * g.dim) for i in range(rng.randint(1, 2))
    )


# --- independent digital-convexity oracle ------------------------------------
#
# A point lies in the convex hull of S iff it lies in some triangle
# (p0, p, q) with p0 fixed and p, q ranging over S (p = q giving the
# segment p0-p).  This shares nothing with the monotone-chain hull.


def oracle_points_in_hull(points, queries) -> np.ndarray:
    """Boolean array: which query points lie in conv(points).  Exact."""
    pts = sorted({(int(x), int(y)) for x, y in points})
    qs = np.array([(int(x), int(y)) for x, y in queries], dtype=np.int64)
    if len(qs) == 0:
        return np.zeros(0, dtype=bool)
    if not pts:
        return np.zeros(len(qs), dtype=bool)
    p0 = np.array(pts[0], dtype=np.int64)
    rest = np.array(pts, dtype=np.int64)[1:] if len(pts) > 1 else np.zeros((0, 2), np.int64)
    inside = (qs == p0).all(axis=1)
    if len(rest) == 0:
        return inside
    ii, jj = np.triu_indices(len(rest))
    b = rest[ii]  # (P, 2)
    c = rest[jj]

    def cross(o, a, q):
        # (a - o) x (q - o) for per-pair o, a against all queries
        return (a[:, None, 0] - o[:, None, 0]) * (q[None, :, 1] - o[:, None, 1]) - (
            a[:, None, 1] - o[:, None, 1]
        ) * (q[None, :, 0] - o[:, None, 0])

    a = np.broadcast_to(p0, b.shape)
    d1 = cross(a, b, qs)
    d2 = cross(b, c, qs)
    d3 = cross(c, a, qs)
    same_sign = ((d1 >= 0) & (d2 >= 0) & (d3 >= 0)) | ((d1 <= 0) & (d2 <= 0) & (d3 <= 0))
    tri = np.stack([a, b, c], axis=1)  # (P, 3, 2)
    lo = tri.min(axis=1)
    hi = tri.max(axis=1)
    in_box = (
        (qs[None, :, 0] >= lo[:, None, 0])
        & (qs[None, :, 0] <= hi[:, None, 0])
        & (qs[None, :, 1] >= lo[:, None, 1])
        & (qs[None, :, 1] <= hi[:, None, 1])
    )
    return inside | (same_sign & in_box).any(axis=0)


def oracle_is_digitally_convex(points) -> bool:
    pts = {(int(x), int(y)) for x, y in points}
    if len(pts) <= 1:
        return True
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    queries = [
        (x, y)
        for x in range(min(xs), max(xs) + 1)
        for y in range(min(ys), max(ys) + 1)
    ]
    hit = oracle_points_in_hull(pts, queries)
    return all(bool(h) == (q in pts) for q, h in zip(queries, hit))


def random_convex_lattice_set(rng: random.Random, span: int = 9) -> frozenset:
    """A digitally convex set: the lattice fill of a few random points."""
    k = rng.randint(1, 5)
    pts = {(rng.randint(0, span), rng.randint(0, span)) for _ in range(k)}
    return nerve_mod.lattice_hull_fill(pts)


def random_convex_pair(rng: random.Random) -> tuple[frozenset, frozenset]:
    """Two digitally convex lattice sets with nonempty intersection."""
    for _ in range(40):
        pa = random_convex_lattice_set(rng)
        pb = random_convex_lattice_set(rng)
        if pa & pb:
            return pa, pb
    # translate b onto a; translation preserves digital convexity
    p = min(pa)
    q = min(pb)
    dx, dy = p[0] - q[0], p[1] - q[1]
    return pa, frozenset((x + dx, y + dy) for x, y in pb)


def lattice_glossa(rng: random.Random, points, alphabet: int = 3) -> Glossa:
    """A one-dimensional glossa over lattice points, id "x,y", coords (x, y)."""
    pts = sorted(points)
    pairs = [
        (f"{x},{y}", (float(rng.randrange(alphabet)),), (x, y)) for x, y in pts
    ]
    return Glossa(pairs, 1, (0.0,))


def ids_of_points(points) -> frozenset:
    return frozenset(f"{x},{y}" for x, y in points)


def coords_of_ids(g: Glossa, ids) -> frozenset:
    return frozenset(g.coords_of(eid) for eid in ids)


# --- suites ------------------------------------------------------------------


def _suite_core(rng: random.Random, trials: int, rec: Recorder) -> None:
    for _ in range(trials):
        g = random_glossa(rng)
        u1 = random_subset(rng, g)
        u2 = random_subset(rng, g)
        rec.check(
            "projection_identity",
            all(g.project((x, g.desc_of[x])) == x for x in u1),
            _ctx(g, u=u1),
        )
        rec.check(
            "fiber_of_union",
            g.fiber(u1 | u2) == g.fiber(u1) | g.fiber(u2),
            _ctx(g, u1=u1, u2=u2),
        )
        rec.check("pairing_coherent", g.local_trivialization_check(u1), _ctx(g, u=u1))
        if u1:
            bad = Glossa(g.pairs, g.dim, g.empty_desc)
            victim = sorted(u1)[0]
            bad.desc_of[victim] = Description(
                tuple(v + 1.0 for v in bad.desc_of[victim].values)
            )
            rec.check(
                "corrupted_pairing_detected",
                not bad.local_trivialization_check(u1),
                _ctx(g, victim=victim),
            )
        t = random_target(rng, g)
        e1, e2 = sorted((random_eta(rng), random_eta(rng)))
        rec.check(
            "preimage_eta_monotone",
            g.pi_inverse(t, None, e1) <= g.pi_inverse(t, None, e2),
            _ctx(g, target=t, eta_small=e1, eta_large=e2),
        )
        dom = random_subset(rng, g)
        rec.check(
            "preimage_restriction",
            g.pi_inverse(t, None, e1) & dom == g.pi_inverse(t, dom, e1),
            _ctx(g, target=t, eta=e1, domain=dom),
        )
        rec.check(
            "preimage_exact_matches_scan",
            g.pi_inverse(t, None, 0.0)
            == frozenset(x for x in g.element_ids if g.desc_of[x] == t),
            _ctx(g, target=t),
        )


def _suite_intersection(rng: random.Random, trials: int, rec: Recorder) -> None:
    rec.require_witness(
        "descriptive_without_spatial",
        "no spatially disjoint pair with a descriptive overlap arose",
    )
    rec.require_witness(
        "noninjective_inequality",
        "no instance arose where the descriptive and spatial intersections differ",
    )
    rec.require_witness(
        "injective_implies_spatial_equality", "no injective instance arose"
    )
    for _ in range(trials):
        g = random_glossa(rng, injective=rng.random() < 0.3)
        roll = rng.random()
        if roll < 0.25 and len(g) >= 2:
            # disjoint halves: descriptive overlap without spatial overlap
            ids = list(g.element_ids)
            rng.shuffle(ids)
            cut = rng.randint(1, len(ids) - 1)
            a, b = frozenset(ids[:cut]), frozenset(ids[cut:])
        elif roll < 0.35:
            a = random_subset(rng, g)
            b = a
        elif roll < 0.45:
            a = frozenset()
            b = random_subset(rng, g)
        else:
            a = random_subset(rng, g)
            b = random_subset(rng, g)

        fast = setops.descriptive_intersection(g, a, b, 0.0)
        ctx = _ctx(g, a=a, b=b, got=fast)
        rec.check(
            "commutative", fast == setops.descriptive_intersection(g, b, a, 0.0), ctx
        )
        if not a:
            expected = frozenset(x for x in b if g.desc_of[x] == g.empty_desc)
            rec.check("empty_side_law", fast == expected, ctx)
        if not b:
            expected = frozenset(x for x in a if g.desc_of[x] == g.empty_desc)
            rec.check("empty_side_law", fast == expected, ctx)
        if a == b:
            rec.check("idempotent", fast == a, ctx)
        if a & b:
            rec.check("spatial_overlap_implies_nonempty", bool(fast), ctx)
        if fast and not (a & b):
            rec.witness("descriptive_without_spatial")
        # the injectivity laws concern image-described sides, so both
        # inputs must be nonempty (an empty side matches via empty_desc,
        # which no injectivity assumption controls)
        if a and b:
            injective, _ = setops.check_injective(g, a | b)
            if injective:
                rec.check("injective_implies_spatial_equality", fast == a & b, ctx)
            if fast != a & b:
                rec.witness("noninjective_inequality")
                rec.check("inequality_implies_noninjective", not injective, ctx)
        rec.check("within_union", fast <= a | b, ctx)
        e1, e2 = sorted((random_eta(rng), random_eta(rng)))
        r1 = setops.descriptive_intersection(g, a, b, e1)
        r2 = setops.descriptive_intersection(g, a, b, e2)
        rec.check("eta_monotone", fast <= r1 <= r2, _ctx(g, a=a, b=b, eta_small=e1, eta_large=e2))
        rec.check(
            "tolerance_commutative",
            r2 == setops.descriptive_intersection(g, b, a, e2),
            _ctx(g, a=a, b=b, eta=e2),
        )


def _disc_union_trials(rng: random.Random, trials: int, rec: Recorder, spatial: str) -> None:
    rec.require_witness("targets_cover_ambient", "no instance with all-matching ambient arose")
    rec.require_witness("no_target_matches", "no instance with a matchless ambient arose")
    rec.require_witness("empty_side_law", "no empty-input instance arose")
    if spatial == "nonrestrictive":
        rec.require_witness(
            "injective_exact_targets",
            "no injective instance with targets drawn from the overlap arose",
        )
    for _ in range(trials):
        injective = rng.random() < 0.3
        g = random_glossa(rng, injective=injective)
        a = random_subset(rng, g)
        b = random_subset(rng, g)
        if rng.random() < 0.12:
            b = a
        if rng.random() < 0.3 and a:
            # force spatial overlap
            b = b | frozenset(rng.sample(sorted(a), rng.randint(1, min(len(a), 4))))
        if rng.random() < 0.15:
            a = frozenset()
        eta = random_eta(rng)
        ambient = (a & b) if spatial == "restrictive" else (a | b)
        roll = rng.random()
        if roll < 0.3 and ambient:
            img = sorted({g.desc_of[x] for x in ambient}, key=lambda d: d.values)
            targets = tuple(img[: rng.randint(1, 3)])
        elif roll < 0.5:
            targets = far_targets(rng, g)
        else:
            targets = random_targets(rng, g)
        cfg = UnionConfig(spatial, targets, eta)
        res = setops.descriptive_union(g, a, b, cfg)
        ctx = _ctx(g, a=a, b=b, config=cfg, got=res)
        eta_sq = eta * eta

        def matches(x) -> bool:
            return any(g.desc_of[x].distance_sq(t) <= eta_sq for t in targets)

        rec.check("commutative", res == setops.descriptive_union(g, b, a, cfg), ctx)
        rec.check("ambient_containment", res.elements <= ambient, ctx)
        if not a or not b:
            empty_matches = any(g.empty_desc.distance_sq(t) <= eta_sq for t in targets)
            expected = frozenset(x for x in ambient if matches(x))
            rec.check(
                "empty_side_law",
                res.elements == expected and res.includes_empty_set == empty_matches,
                ctx,
            )
        else:
            rec.check("no_empty_flag_when_inputs_nonempty", not res.includes_empty_set, ctx)
        if a == b:
            rec.check(
                "self_union_filters_by_targets",
                res.elements == frozenset(x for x in a if matches(x)),
                ctx,
            )
        if ambient:
            if all(matches(x) for x in ambient):
                rec.check("targets_cover_ambient", res.elements == ambient, ctx)
            if not any(matches(x) for x in ambient):
                rec.check("no_target_matches", not res.elements, ctx)
        if len(targets) >= 2:
            t0 = targets[0]
            if not any(g.desc_of[x].distance_sq(t0) <= eta_sq for x in ambient):
                trimmed = setops.descriptive_union(
                    g, a, b, UnionConfig(spatial, targets[1:], eta)
                )
                rec.check(
                    "unmatched_target_droppable", res.elements == trimmed.elements, ctx
                )
        wider = setops.descriptive_union(
            g, a, b, UnionConfig(spatial, targets, eta + rng.choice([0.0, 0.5, 2.0]))
        )
        rec.check(
            "eta_monotone",
            res.elements <= wider.elements
            and res.includes_empty_set <= wider.includes_empty_set,
            ctx,
        )
        if eta == 0.0:
            tset = set(targets)
            rec.check(
                "exact_match_semantics",
                res.elements == frozenset(x for x in ambient if g.desc_of[x] in tset),
                ctx,
            )
        if spatial == "nonrestrictive" and injective and eta == 0.0 and a & b:
            overlap_img = sorted({g.desc_of[x] for x in a & b}, key=lambda d: d.values)
            exact = setops.descriptive_union(
                g, a, b, UnionConfig(spatial, tuple(overlap_img), 0.0)
            )
            rec.check("injective_exact_targets", exact.elements == (a & b),
                      _ctx(g, a=a, b=b, targets=overlap_img, got=exact))


def _suite_union_rd(rng: random.Random, trials: int, rec: Recorder) -> None:
    _disc_union_trials(rng, trials, rec, "restrictive")


def _suite_union_nd(rng: random.Random, trials: int, rec: Recorder) -> None:
    _disc_union_trials(rng, trials, rec, "nonrestrictive")


def _suite_union_nondisc(rng: random.Random, trials: int, rec: Recorder) -> None:
    for _ in range(trials):
        g = random_glossa(rng)
        a = random_subset(rng, g)
        b = random_subset(rng, g)
        for eta in (0.0, 0.5, 60.0, random_eta(rng)):
            r = setops.descriptive_union(g, a, b, UnionConfig("restrictive", None, eta))
            rec.check(
                "restrictive_is_intersection",
                r.elements == a & b and not r.includes_empty_set,
                _ctx(g, a=a, b=b, eta=eta, got=r),
            )
            n = setops.descriptive_union(g, a, b, UnionConfig("nonrestrictive", None, eta))
            rec.check(
                "nonrestrictive_is_union",
                n.elements == (a | b) and not n.includes_empty_set,
                _ctx(g, a=a, b=b, eta=eta, got=n),
            )


def _suite_tolerance(rng: random.Random, trials: int, rec: Recorder) -> None:
    for _ in range(trials):
        g = random_glossa(rng)
        a = random_subset(rng, g)
        b = random_subset(rng, g)
        targets = random_targets(rng, g)
        e1, e2 = sorted((random_eta(rng), random_eta(rng)))
        for spatial in ("restrictive", "nonrestrictive"):
            lo = setops.descriptive_union(g, a, b, UnionConfig(spatial, targets, e1))
            hi = setops.descriptive_union(g, a, b, UnionConfig(spatial, targets, e2))
            rec.check(
                "union_eta_monotone",
                lo.elements <= hi.elements
                and lo.includes_empty_set <= hi.includes_empty_set,
                _ctx(g, a=a, b=b, spatial=spatial, targets=targets, eta_small=e1, eta_large=e2),
            )
            # generated descriptions and targets live in [0, 4]^dim, so
            # eta = 60 saturates every in-range target match
            if all(v < 10.0 for t in targets for v in t.values):
                sat = setops.descriptive_union(g, a, b, UnionConfig(spatial, targets, 60.0))
                ambient = (a & b) if spatial == "restrictive" else (a | b)
                rec.check(
                    "union_large_eta_saturates",
                    sat.elements == ambient,
                    _ctx(g, a=a, b=b, spatial=spatial, targets=targets),
                )
        lo = setops.descriptive_intersection(g, a, b, e1)
        hi = setops.descriptive_intersection(g, a, b, e2)
        rec.check(
            "intersection_eta_monotone",
            lo <= hi,
            _ctx(g, a=a, b=b, eta_small=e1, eta_large=e2),
        )
        sat = setops.descriptive_intersection(g, a, b, 60.0)
        rec.check(
            "intersection_large_eta_saturates",
            sat == (a | b),
            _ctx(g, a=a, b=b),
        )


def _suite_oracle(rng: random.Random, trials: int, rec: Recorder) -> None:
    for _ in range(trials):
        g = random_glossa(rng, max_size=32)
        a = random_subset(rng, g)
        b = random_subset(rng, g)
        targets = random_targets(rng, g)
        rec.check(
            "intersection_matches_oracle",
            setops.descriptive_intersection(g, a, b, 0.0)
            == setops.oracle_descriptive_intersection(g, a, b, 0.0),
            _ctx(g, a=a, b=b),
        )
        for variant in setops.VARIANTS:
            cfg = setops.variant_config(
                variant, 0.0, targets if variant.endswith("-discriminatory") else None
            )
            rec.check(
                f"{variant.replace('-', '_')}_matches_oracle",
                setops.descriptive_union(g, a, b, cfg)
                == setops.oracle_descriptive_union(g, a, b, cfg),
                _ctx(g, a=a, b=b, config=cfg),
            )
        eta = random_eta(rng)
        if eta > 0.0:
            rec.check(
                "tolerance_matches_oracle",
                setops.descriptive_intersection(g, a, b, eta)
                == setops.oracle_descriptive_intersection(g, a, b, eta)
                and setops.descriptive_union(
                    g, a, b, UnionConfig("nonrestrictive", targets, eta)
                )
                == setops.oracle_descriptive_union(
                    g, a, b, UnionConfig("nonrestrictive", targets, eta)
                ),
                _ctx(g, a=a, b=b, eta=eta, targets=targets),
            )


def _suite_convexity(rng: random.Random, trials: int, rec: Recorder) -> None:
    for _ in range(trials):
        pa, pb = random_convex_pair(rng)
        g = lattice_glossa(rng, pa | pb, alphabet=rng.choice([2, 3, 4]))
        a = ids_of_points(pa)
        b = ids_of_points(pb)
        targets = tuple(
            Description((float(rng.randrange(4)),)) for _ in range(rng.randint(1, 2))
        )
        eta = rng.choice([0.0, 0.0, 0.5, 1.0])
        report = nerve_mod.check_convexity_theorem(g, a, b, targets, eta)
        ctx = _ctx(g, a=a, b=b, targets=targets, eta=eta, report=report.to_json())
        rec.check(
            "restrictive_discriminatory_equals_preimages",
            report.restrictive_discriminatory.sets_equal,
            ctx,
        )
        rec.check(
            "restrictive_discriminatory_equiconvex",
            report.restrictive_discriminatory.holds,
            ctx,
        )
        rec.check(
            "nonrestrictive_discriminatory_equals_preimages",
            report.nonrestrictive_discriminatory.sets_equal,
            ctx,
        )
        rec.check(
            "nonrestrictive_discriminatory_equiconvex",
            report.nonrestrictive_discriminatory.holds,
            ctx,
        )
        rec.check(
            "restrictive_nondiscriminatory_convex",
            report.restrictive_nondiscriminatory_convex,
            ctx,
        )
        rec.check(
            "plain_union_equivalence",
            report.nonrestrictive_nondiscriminatory.holds,
            ctx,
        )
        # fast convexity decision vs the triangle-fan oracle, on convex
        # inputs, on union outputs, and on an arbitrary blob
        rd = report.restrictive_discriminatory.right
        nd = report.nonrestrictive_discriminatory.right
        blob = frozenset(
            (rng.randint(0, 7), rng.randint(0, 7)) for _ in range(rng.randint(1, 12))
        )
        for label, pts in (
            ("a", pa),
            ("b", pb),
            ("rd_union", coords_of_ids(g, rd)),
            ("nd_union", coords_of_ids(g, nd)),
            ("blob", blob),
        ):
            if not pts:
                continue
            rec.check(
                "digital_convexity_matches_oracle",
                nerve_mod.is_digitally_convex(pts) == oracle_is_digitally_convex(pts),
                _ctx(g, which=label, points=sorted(pts)),
            )


def _kwise_by_loops(g: Glossa, fams: list, sets: list, eta: float) -> bool:
    # index-free nonemptiness test for a k-wise descriptive intersection
    union: list = []
    for s in sets:
        for x in s:
            if x not in union:
                union.append(x)
    eta_sq = eta * eta
    for x in union:
        d = g.desc_of[x]
        ok = True
        for fam in fams:
            hit = False
            for other in fam:
                total = 0.0
                for u, v in zip(d.values, other.values):
                    total += (u - v) * (u - v)
                if total <= eta_sq:
                    hit = True
                    break
            if not hit:
                ok = False
                break
        if ok:
            return True
    return False


def _suite_nerve(rng: random.Random, trials: int, rec: Recorder) -> None:
    for _ in range(trials):
        g = random_glossa(rng, max_size=24, dim=rng.choice([1, 1, 2]), alphabet=rng.choice([3, 4]))
        n = rng.randint(1, rng.choice([3, 4, 6, 8]))
        members = [random_subset(rng, g) for _ in range(n)]
        eta = rng.choice([0.0, 0.0, 0.5, 1.0])
        k = nerve_mod.descriptive_nerve(g, members, eta)
        ctx = _ctx(g, members=members, eta=eta, nerve=k)
        rec.check(
            "downward_closed",
            all((f - {v}) in k.faces for f in k.faces for v in f if len(f) > 1),
            ctx,
        )
        fams = [
            [g.desc_of[x] for x in s] if s else [g.empty_desc] for s in members
        ]
        qualifies = [False]
        for mask in range(1, 1 << n):
            idx = [i for i in range(n) if mask >> i & 1]
            qualifies.append(
                _kwise_by_loops(g, [fams[i] for i in idx], [members[i] for i in idx], eta)
            )
        # independent face rule: every nonempty submask qualifies
        expected = set()
        for mask in range(1, 1 << n):
            sub = mask
            ok = True
            while sub:
                if not qualifies[sub]:
                    ok = False
                    break
                sub = (sub - 1) & mask
            if ok:
                expected.add(frozenset(i + 1 for i in range(n) if mask >> i & 1))
        rec.check("matches_enumeration", k.faces == frozenset(expected), ctx)
        pairs_ok = True
        for i in range(n):
            for j in range(i + 1, n):
                face = frozenset({i + 1, j + 1})
                if members[i] and members[j]:
                    agree = (face in k.faces) == bool(
                        setops.descriptive_intersection(g, members[i], members[j], eta)
                    )
                else:
                    agree = face not in k.faces
                if not agree:
                    pairs_ok = False
        rec.check("pair_faces_match_intersection", pairs_ok, ctx)
        rec.check(
            "singleton_faces_match_nonempty",
            all((frozenset({i + 1}) in k.faces) == bool(members[i]) for i in range(n)),
            ctx,
        )


def random_region(rng: random.Random, w: int, h: int):
    kind = rng.choice(["disc", "hexagon", "polygon"])
    if kind == "disc":
        return imaging.DiscRegion(
            (rng.uniform(0, w - 1), rng.uniform(0, h - 1)), rng.uniform(0.7, max(w, h) / 2)
        )
    if kind == "hexagon":
        return imaging.HexagonRegion(
            (rng.uniform(0, w - 1), rng.uniform(0, h - 1)), rng.uniform(1.2, max(w, h) / 2)
        )
    verts = [(rng.uniform(-1, w), rng.uniform(-1, h)) for _ in range(rng.randint(3, 5))]
    return imaging.PolygonRegion(tuple(verts))


def _suite_imaging(rng: random.Random, trials: int, rec: Recorder) -> None:
    palette = [
        (254, 224, 198),
        (208, 35, 37),
        (30, 60, 90),
        (120, 200, 40),
        (250, 220, 190),
    ]
    for _ in range(trials):
        h = rng.randint(8, 16)
        w = rng.randint(8, 16)
        img = np.array(
            [[palette[rng.randrange(len(palette))] for _ in range(w)] for _ in range(h)],
            dtype=np.uint8,
        )
        g = imaging.build_image_glossa(img)
        region_a = random_region(rng, w, h)
        region_b = random_region(rng, w, h)
        sets = []
        for spec in (region_a, region_b):
            try:
                fast = imaging.region_to_set(g, img, spec)
            except imaging.EmptyRegionError:
                fast = frozenset()
            slow = frozenset(
                (r, c)
                for r in range(h)
                for c in range(w)
                if imaging.region_contains(spec, float(c), float(r))
            )
            rec.check(
                "region_matches_full_scan",
                fast == slow,
                lambda spec=spec, fast=fast, slow=slow: {
                    "region": formats.region_to_json(spec),
                    "got": sorted(fast),
                    "expected": sorted(slow),
                },
            )
            sets.append(slow)
        a, b = sets
        if not a or not b:
            continue
        eta = rng.choice([0.0, 30.0, 60.0, 125.0])
        for spatial, plain in (("restrictive", a & b), ("nonrestrictive", a | b)):
            res = setops.descriptive_union(g, a, b, UnionConfig(spatial, None, eta))
            rec.check(
                "nondiscriminatory_selects_plain_set",
                res.elements == plain,
                lambda spatial=spatial, eta=eta: {"spatial": spatial, "eta": eta},
            )
        targets = tuple(
            Description(tuple(float(v) for v in rng.choice(palette)))
            for _ in range(rng.randint(1, 2))
        )
        narrow = setops.descriptive_union(g, a, b, UnionConfig("nonrestrictive", targets, eta))
        wide = setops.descriptive_union(
            g, a, b, UnionConfig("nonrestrictive", targets, eta + 40.0)
        )
        rec.check(
            "discriminatory_eta_monotone",
            narrow.elements <= wide.elements,
            lambda eta=eta: {"eta": eta},
        )
        mask = imaging.render_mask(img, narrow.elements)
        rec.check(
            "mask_is_binary",
            bool(((mask == 0) | (mask == 255)).all())
            and np.array_equal(mask[..., 0], mask[..., 1])
            and np.array_equal(mask[..., 1], mask[..., 2]),
            None,
        )
        buf = io.BytesIO()
        imaging.save_image(buf, mask)
        buf.seek(0)
        rec.check("mask_roundtrip", np.array_equal(imaging.load_image(buf), mask), None)


SUITES: dict[str, Callable[[random.Random, int, Recorder], None]] = {
    "core": _suite_core,
    "intersection": _suite_intersection,
    "union-restrictive-discriminatory": _suite_union_rd,
    "union-nonrestrictive-discriminatory": _suite_union_nd,
    "union-nondiscriminatory": _suite_union_nondisc,
    "tolerance": _suite_tolerance,
    "oracle": _suite_oracle,
    "convexity": _suite_convexity,
    "nerve": _suite_nerve,
    "imaging": _suite_imaging,
}


def resolve_threads(value: Optional[int] = None) -> int:
    """Worker count: explicit value, else DESOPS_THREADS (0 = all cores)."""
    if value is None:
        raw = os.environ.get("DESOPS_THREADS", "").strip()
        if raw == "":
            return 1
        try:
            value = int(raw)
        except ValueError:
            raise ValueError(f"DESOPS_THREADS must be an integer, got {raw!r}") from None
    if value < 0:
        raise ValueError(f"thread count must be non-negative, got {value}")
    if value == 0:
        return os.cpu_count() or 1
    return value


def _child_seed(seed: int, name: str) -> int:
    digest = hashlib.sha256(f"{seed}:{name}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def _run_suite(args: tuple[str, int, int]) -> SuiteReport:
    name, seed, trials = args
    rng = random.Random(_child_seed(seed, name))
    rec = Recorder()
    SUITES[name](rng, trials, rec)
    rec.finalize()
    return SuiteReport(name, trials, rec.properties)


def run_verify(
    seed: int = 7,
    trials: int = 1000,
    suite: str = "all",
    threads: Optional[int] = None,
) -> VerifyReport:
    """Run the named suite (or all of them) and return the report.

    Each suite gets its own child seed derived from (seed, name), so a
    suite's stream does not depend on which other suites run, and the
    report is identical whether suites run serially or in parallel.
    """
    if suite == "all":
        names = list(SUITES)
    elif suite in SUITES:
        names = [suite]
    else:
        raise ValueError(f"unknown suite {suite!r}; expected one of {list(SUITES)} or 'all'")
    workers = resolve_threads(threads)
    jobs = [(name, seed, trials) for name in names]
    if workers > 1 and len(names) > 1:
        with ProcessPoolExecutor(max_workers=min(workers, len(names))) as pool:
            results = list(pool.map(_run_suite, jobs))
    else:
        results = [_run_suite(job) for job in jobs]
    return VerifyReport(seed, trials, {r.name: r for r in results})

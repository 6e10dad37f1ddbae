"""Descriptive set operations applied to RGB images.

Pixels become glossa elements with id (row, col), planar coordinates
(x, y) = (col, row), and their RGB triple as description.  Two planar
regions select pixel subsets, a union variant with a color tolerance
selects pixels, and the selection renders as a black/white mask or as
an outline-plus-saturation overlay.

Region membership is decided at pixel centers (integer coordinates).
Polygon containment uses the even-odd rule with half-open edges, so a
pixel center on a region's left or top edge is inside and one on the
right or bottom edge is not; shared region borders never double-select.
Disc boundaries are inclusive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import IO, Union

import numpy as np
from PIL import Image

from .core import Description, Glossa, check_eta
from .setops import DescriptiveResult, UnionConfig, descriptive_union

GREEN = (0, 255, 0)
RED = (255, 0, 0)


class ImageError(ValueError):
    """The input is not a usable RGB raster."""


class EmptyRegionError(ValueError):
    """A region selects no pixel of the image."""


def load_image(path: Union[str, IO[bytes]]) -> np.ndarray:
    """Read an image file as an (H, W, 3) uint8 array, converting to RGB."""
    with Image.open(path) as im:
        arr = np.asarray(im.convert("RGB"), dtype=np.uint8)
    if arr.size == 0:
        raise ImageError("image has zero area")
    return arr


def save_image(path: Union[str, IO[bytes]], img: np.ndarray) -> None:
    """Write an (H, W, 3) uint8 array as an 8-bit RGB PNG."""
    img = _as_rgb_array(img)
    Image.fromarray(img, "RGB").save(path, format="PNG")


def _as_rgb_array(img) -> np.ndarray:
    arr = np.asarray(img)
    if arr.ndim != 3 or arr.shape[2] != 3 or arr.dtype != np.uint8:
        raise ImageError(f"expected an (H, W, 3) uint8 array, got {arr.dtype} {arr.shape}")
    if arr.shape[0] == 0 or arr.shape[1] == 0:
        raise ImageError("image has zero area")
    return arr


def build_image_glossa(img: np.ndarray) -> Glossa:
    """Glossa over all pixels: id (row, col), coords (col, row), RGB description."""
    img = _as_rgb_array(img)
    h, w = img.shape[:2]
    pix = img.astype(np.float64)
    pairs = []
    for r in range(h):
        row = pix[r]
        for c in range(w):
            pairs.append(((r, c), tuple(row[c]), (c, r)))
    return Glossa(pairs, 3, (0.0, 0.0, 0.0))


# --- planar regions ----------------------------------------------------------


@dataclass(frozen=True)
class PolygonRegion:
    vertices: tuple[tuple[float, float], ...]

    def __post_init__(self) -> None:
        verts = tuple((float(x), float(y)) for x, y in self.vertices)
        if len(verts) < 3:
            raise ValueError("polygon needs at least 3 vertices")
        object.__setattr__(self, "vertices", verts)


@dataclass(frozen=True)
class HexagonRegion:
    """Regular hexagon given by center and circumradius."""

    center: tuple[float, float]
    circumradius: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "center", (float(self.center[0]), float(self.center[1])))
        r = float(self.circumradius)
        if not (math.isfinite(r) and r > 0):
            raise ValueError(f"circumradius must be positive, got {r!r}")
        object.__setattr__(self, "circumradius", r)

    def vertices(self) -> tuple[tuple[float, float], ...]:
        cx, cy = self.center
        r = self.circumradius
        return tuple(
            (cx + r * math.cos(k * math.pi / 3), cy + r * math.sin(k * math.pi / 3))
            for k in range(6)
        )


@dataclass(frozen=True)
class DiscRegion:
    center: tuple[float, float]
    radius: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "center", (float(self.center[0]), float(self.center[1])))
        r = float(self.radius)
        if not (math.isfinite(r) and r >= 0):
            raise ValueError(f"radius must be non-negative, got {r!r}")
        object.__setattr__(self, "radius", r)


RegionSpec = Union[PolygonRegion, HexagonRegion, DiscRegion]


def _point_in_polygon(verts, x: float, y: float) -> bool:
    # even-odd crossing count against a leftward ray; the strict y test
    # gives the half-open (left/top in, right/bottom out) edge rule at
    # pixel centers
    inside = False
    n = len(verts)
    for i in range(n):
        x1, y1 = verts[i]
        x2, y2 = verts[(i + 1) % n]
        if (y1 > y) != (y2 > y):
            x_cross = (x2 - x1) * (y - y1) / (y2 - y1) + x1
            if x < x_cross:
                inside = not inside
    return inside


def region_contains(spec: RegionSpec, x: float, y: float) -> bool:
    """Is the point (x, y) inside the region?"""
    if isinstance(spec, DiscRegion):
        dx = x - spec.center[0]
        dy = y - spec.center[1]
        return dx * dx + dy * dy <= spec.radius * spec.radius
    if isinstance(spec, HexagonRegion):
        return _point_in_polygon(spec.vertices(), x, y)
    if isinstance(spec, PolygonRegion):
        return _point_in_polygon(spec.vertices, x, y)
    raise TypeError(f"not a region spec: {spec!r}")


def region_bbox(spec: RegionSpec) -> tuple[float, float, float, float]:
    """(xmin, ymin, xmax, ymax) bounding box of the region."""
    if isinstance(spec, DiscRegion):
        cx, cy = spec.center
        r = spec.radius
        return cx - r, cy - r, cx + r, cy + r
    verts = spec.vertices() if isinstance(spec, HexagonRegion) else spec.vertices
    xs = [v[0] for v in verts]
    ys = [v[1] for v in verts]
    return min(xs), min(ys), max(xs), max(ys)


def region_to_set(g: Glossa, img: np.ndarray, spec: RegionSpec) -> frozenset:
    """Pixel ids of the image whose centers fall inside the region.

    Scans only the region's bounding box clipped to the image.  Raises
    EmptyRegionError when no pixel center is inside.
    """
    img = _as_rgb_array(img)
    h, w = img.shape[:2]
    xmin, ymin, xmax, ymax = region_bbox(spec)
    c0 = max(0, math.ceil(xmin))
    c1 = min(w - 1, math.floor(xmax))
    r0 = max(0, math.ceil(ymin))
    r1 = min(h - 1, math.floor(ymax))
    out = []
    for r in range(r0, r1 + 1):
        for c in range(c0, c1 + 1):
            if region_contains(spec, float(c), float(r)):
                out.append((r, c))
    if not out:
        raise EmptyRegionError(f"region {spec!r} selects no pixel")
    ids = frozenset(out)
    stray = ids - g.carrier
    if stray:
        raise ValueError(f"region selected ids outside the glossa: {sorted(stray)[:3]}")
    return ids


# --- experiment --------------------------------------------------------------


@dataclass(frozen=True)
class ExperimentParams:
    """Union variant, targets, and tolerance for an image experiment.

    ``targets`` must be RGB triples with channels in [0, 255]; None
    selects the nondiscriminatory variants.
    """

    spatial: str
    targets: "tuple[Description, ...] | None" = None
    eta: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "eta", check_eta(self.eta))
        if self.targets is not None:
            coerced = tuple(Description.of(t) for t in self.targets)
            if not coerced:
                raise ValueError("discriminatory experiment needs at least one target")
            for t in coerced:
                if t.dim != 3:
                    raise ValueError(f"target {t!r} is not an RGB triple")
                if any(not (0.0 <= v <= 255.0) for v in t.values):
                    raise ValueError(f"target {t!r} has channels outside [0, 255]")
            object.__setattr__(self, "targets", coerced)
        # reuse the union-config validation for the spatial mode
        self.union_config()

    def union_config(self) -> UnionConfig:
        return UnionConfig(self.spatial, self.targets, self.eta)


def _ids_to_mask(shape, ids) -> np.ndarray:
    mask = np.zeros(shape[:2], dtype=bool)
    for r, c in ids:
        mask[r, c] = True
    return mask


def render_mask(img: np.ndarray, selected) -> np.ndarray:
    """Black image with selected pixels pure white."""
    img = _as_rgb_array(img)
    out = np.zeros_like(img)
    out[_ids_to_mask(img.shape, selected)] = 255
    return out


def _boundary(mask: np.ndarray) -> np.ndarray:
    # region pixels with a 4-neighbor outside the region (image border counts)
    padded = np.pad(mask, 1, mode="constant", constant_values=False)
    interior = (
        padded[:-2, 1:-1] & padded[2:, 1:-1] & padded[1:-1, :-2] & padded[1:-1, 2:]
    )
    return mask & ~interior


def render_overlay(img: np.ndarray, region_a, region_b, selected) -> np.ndarray:
    """Source image with region outlines and fully saturated selected pixels.

    Region a is outlined green, region b red; red wins on shared
    boundary pixels.  Selected pixels keep their hue and value but get
    full saturation.
    """
    img = _as_rgb_array(img)
    out = img.copy()
    sel_mask = _ids_to_mask(img.shape, selected)
    if sel_mask.any():
        hsv = np.asarray(Image.fromarray(img, "RGB").convert("HSV")).copy()
        hsv[..., 1] = 255
        saturated = np.asarray(Image.fromarray(hsv, "HSV").convert("RGB"))
        out[sel_mask] = saturated[sel_mask]
    out[_boundary(_ids_to_mask(img.shape, region_a))] = GREEN
    out[_boundary(_ids_to_mask(img.shape, region_b))] = RED
    return out


def run_experiment(
    img: np.ndarray,
    region_a: RegionSpec,
    region_b: RegionSpec,
    params: ExperimentParams,
    mode: str = "mask",
) -> tuple[DescriptiveResult, np.ndarray]:
    """Apply a union variant to two image regions and render the selection.

    Returns the descriptive result (pixel ids) and the rendered image,
    a mask or an overlay depending on ``mode``.
    """
    if mode not in ("mask", "overlay"):
        raise ValueError(f"mode must be 'mask' or 'overlay', got {mode!r}")
    img = _as_rgb_array(img)
    g = build_image_glossa(img)
    a = region_to_set(g, img, region_a)
    b = region_to_set(g, img, region_b)
    result = descriptive_union(g, a, b, params.union_config())
    if mode == "mask":
        rendered = render_mask(img, result.elements)
    else:
        rendered = render_overlay(img, a, b, result.elements)
    return result, rendered

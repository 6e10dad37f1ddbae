#!/usr/bin/env python3
"""Generate the synthetic test image and its hand-computed golden masks.

Deliberately shares no code with the library under test: every region
and patch is an axis-aligned integer pixel range, region polygons use
half-integer vertices so no pixel center can sit on an edge, and each
golden mask is assembled from those ranges with plain set algebra.

Writes, next to this script:
  synthetic.png                                   the 64x64 input
  region_a.json / region_b.json                   the two query regions
  golden_restrictive-discriminatory.png           white = selected
  golden_nonrestrictive-discriminatory.png
  golden_restrictive-nondiscriminatory.png
  golden_nonrestrictive-nondiscriminatory.png

Experiment parameters the goldens encode: targets [254,224,198] and
[208,35,37], tolerance 60 (squared distance 3600 on RGB vectors).
"""

import json
import pathlib

import numpy as np
from PIL import Image

HERE = pathlib.Path(__file__).resolve().parent

SIZE = 64
BACKGROUND = (30, 60, 90)

TARGET_1 = (254, 224, 198)
TARGET_2 = (208, 35, 37)
ETA = 60

# region A: pixel centers with 4 <= col <= 39 and 6 <= row <= 43
A_COLS = range(4, 40)
A_ROWS = range(6, 44)
A_VERTICES = [[3.5, 5.5], [39.5, 5.5], [39.5, 43.5], [3.5, 43.5]]

# region B: pixel centers with 24 <= col <= 59 and 20 <= row <= 57
B_COLS = range(24, 60)
B_ROWS = range(20, 58)
B_VERTICES = [[23.5, 19.5], [59.5, 19.5], [59.5, 57.5], [23.5, 57.5]]

# patches: (rows, cols, color, note)
PATCHES = [
    (range(10, 16), range(8, 20), TARGET_1, "exact target 1, region A only"),
    (range(48, 56), range(44, 56), TARGET_2, "exact target 2, region B only"),
    (range(24, 32), range(28, 36), (250, 220, 190), "near target 1 (d2=96), overlap"),
    (range(34, 40), range(10, 22), (120, 200, 40), "far from both targets, region A"),
    (range(30, 38), range(48, 56), (200, 40, 60), "near target 2 (d2=618), region B"),
    (range(2, 5), range(50, 61), TARGET_1, "exact target 1, outside both regions"),
]


def pixel_set(rows, cols):
    return {(r, c) for r in rows for c in cols}


def build_image():
    img = np.zeros((SIZE, SIZE, 3), dtype=np.uint8)
    img[:, :] = BACKGROUND
    for rows, cols, color, _ in PATCHES:
        img[rows.start : rows.stop, cols.start : cols.stop] = color
    return img


def color_of(pixel):
    for rows, cols, color, _ in PATCHES:
        if pixel[0] in rows and pixel[1] in cols:
            return color
    return BACKGROUND


def within_eta(color, target):
    d2 = sum((int(c) - int(t)) ** 2 for c, t in zip(color, target))
    return d2 <= ETA * ETA


def mask_from_pixels(pixels):
    mask = np.zeros((SIZE, SIZE, 3), dtype=np.uint8)
    for r, c in pixels:
        mask[r, c] = 255
    return mask


def main():
    img = build_image()
    Image.fromarray(img, "RGB").save(HERE / "synthetic.png", format="PNG")

    (HERE / "region_a.json").write_text(
        json.dumps({"shape": "polygon", "vertices": A_VERTICES}) + "\n"
    )
    (HERE / "region_b.json").write_text(
        json.dumps({"shape": "polygon", "vertices": B_VERTICES}) + "\n"
    )

    region_a = pixel_set(A_ROWS, A_COLS)
    region_b = pixel_set(B_ROWS, B_COLS)

    def matches_some_target(pixel):
        return within_eta(color_of(pixel), TARGET_1) or within_eta(color_of(pixel), TARGET_2)

    goldens = {
        "restrictive-discriminatory": {
            p for p in region_a & region_b if matches_some_target(p)
        },
        "nonrestrictive-discriminatory": {
            p for p in region_a | region_b if matches_some_target(p)
        },
        "restrictive-nondiscriminatory": region_a & region_b,
        "nonrestrictive-nondiscriminatory": region_a | region_b,
    }

    for name, pixels in goldens.items():
        Image.fromarray(mask_from_pixels(pixels), "RGB").save(
            HERE / f"golden_{name}.png", format="PNG"
        )
        print(f"golden_{name}.png: {len(pixels)} selected pixels")


if __name__ == "__main__":
    main()

"""
Color selection in two image regions
====================================

Build a synthetic photo stand-in, drop two hexagonal query regions on
it, and run every union variant with a color tolerance: which pixels,
in which region scope, look like the target colors?

Writes mask and overlay PNGs into the working directory.
"""

import numpy as np

from desops import (
    ExperimentParams,
    HexagonRegion,
    run_experiment,
    save_image,
)
from desops.setops import VARIANTS

# a 96x96 scene: dark backdrop, a peach plate, a red mug, green clutter
rng = np.random.default_rng(2024)
img = np.zeros((96, 96, 3), dtype=np.uint8)
img[:, :] = (30, 60, 90)
img[20:44, 12:52] = (254, 224, 198)   # peach, exactly the first target
img[52:84, 48:80] = (208, 35, 37)     # red, exactly the second target
img[10:18, 60:88] = (120, 200, 40)    # green distractor
noise = rng.integers(-6, 7, size=img.shape)
img = np.clip(img.astype(int) + noise, 0, 255).astype(np.uint8)
save_image("scene.png", img)

# two hexagonal regions, overlapping in the middle of the scene
region_a = HexagonRegion(center=(34, 34), circumradius=26)
region_b = HexagonRegion(center=(58, 58), circumradius=26)

targets = ((254, 224, 198), (208, 35, 37))
eta = 60  # generous: the noise moves every channel by at most 6

for variant in VARIANTS:
    spatial, kind = variant.split("-", 1)
    params = ExperimentParams(
        spatial,
        targets if kind == "discriminatory" else None,
        eta if kind == "discriminatory" else 0,
    )
    result, mask = run_experiment(img, region_a, region_b, params, mode="mask")
    save_image(f"mask_{variant}.png", mask)
    print(f"{variant:38s} {len(result.elements):5d} pixels selected")

# the overlay keeps the scene, outlines region a green and region b
# red, and saturates whatever the variant selected
params = ExperimentParams("nonrestrictive", targets, eta)
result, overlay = run_experiment(img, region_a, region_b, params, mode="overlay")
save_image("overlay.png", overlay)
print(f"overlay.png: {len(result.elements)} saturated pixels")

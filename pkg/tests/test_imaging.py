import io

import numpy as np
import pytest
from PIL import Image

from desops import (
    DiscRegion,
    EmptyRegionError,
    ExperimentParams,
    HexagonRegion,
    ImageError,
    PolygonRegion,
    build_image_glossa,
    load_image,
    region_contains,
    region_to_set,
    render_mask,
    render_overlay,
    run_experiment,
    save_image,
)

BG = (10, 20, 30)
REDISH = (200, 0, 0)
GREENISH = (0, 200, 0)


@pytest.fixture
def img6():
    """6x6 background with a red 2x2 block at rows 1-2 / cols 1-2 and a
    green 2x2 block at rows 3-4 / cols 3-4."""
    img = np.zeros((6, 6, 3), dtype=np.uint8)
    img[:, :] = BG
    img[1:3, 1:3] = REDISH
    img[3:5, 3:5] = GREENISH
    return img


# rectangles with half-integer vertices, so no pixel center sits on an edge
REGION_A = PolygonRegion(((0.5, 0.5), (3.5, 0.5), (3.5, 3.5), (0.5, 3.5)))  # cols/rows 1..3
REGION_B = PolygonRegion(((2.5, 2.5), (5.5, 2.5), (5.5, 5.5), (2.5, 5.5)))  # cols/rows 3..5

A_PIXELS = frozenset((r, c) for r in range(1, 4) for c in range(1, 4))
B_PIXELS = frozenset((r, c) for r in range(3, 6) for c in range(3, 6))


class TestRegions:
    def test_rectangle_pixel_sets(self, img6):
        g = build_image_glossa(img6)
        assert region_to_set(g, img6, REGION_A) == A_PIXELS
        assert region_to_set(g, img6, REGION_B) == B_PIXELS

    def test_polygon_half_open_rule(self):
        # integer-aligned square: left/top edges select, right/bottom do not
        img = np.zeros((4, 4, 3), dtype=np.uint8)
        g = build_image_glossa(img)
        square = PolygonRegion(((0, 0), (2, 0), (2, 2), (0, 2)))
        assert region_to_set(g, img, square) == frozenset({(0, 0), (0, 1), (1, 0), (1, 1)})

    def test_disc_boundary_inclusive(self, img6):
        g = build_image_glossa(img6)
        got = region_to_set(g, img6, DiscRegion((2, 2), 1))
        assert got == frozenset({(1, 2), (2, 1), (2, 2), (2, 3), (3, 2)})

    def test_hexagon_selects_cross(self, img6):
        # circumradius 1.2, apothem ~1.039: the four axis neighbors are
        # within the apothem, the diagonals (dist sqrt(2)) are outside
        g = build_image_glossa(img6)
        got = region_to_set(g, img6, HexagonRegion((2, 2), 1.2))
        assert got == frozenset({(1, 2), (2, 1), (2, 2), (2, 3), (3, 2)})

    def test_hexagon_vertices(self):
        hexa = HexagonRegion((3, 4), 2)
        verts = hexa.vertices()
        assert len(verts) == 6
        assert verts[0] == pytest.approx((5, 4))
        for x, y in verts:
            assert (x - 3) ** 2 + (y - 4) ** 2 == pytest.approx(4)

    def test_region_outside_image_is_empty(self, img6):
        g = build_image_glossa(img6)
        with pytest.raises(EmptyRegionError):
            region_to_set(g, img6, DiscRegion((-5, -5), 0.4))

    def test_region_between_pixel_centers_is_empty(self, img6):
        g = build_image_glossa(img6)
        with pytest.raises(EmptyRegionError):
            region_to_set(g, img6, DiscRegion((0.5, 0.5), 0.2))

    def test_region_bbox_clipping_matches_full_scan(self, img6):
        g = build_image_glossa(img6)
        spec = DiscRegion((4.3, 1.1), 2.5)
        by_scan = frozenset(
            (r, c) for r in range(6) for c in range(6) if region_contains(spec, c, r)
        )
        assert region_to_set(g, img6, spec) == by_scan

    def test_stray_ids_outside_glossa_rejected(self, img6):
        small = build_image_glossa(img6[:2, :2])
        with pytest.raises(ValueError, match="outside the glossa"):
            region_to_set(small, img6, REGION_A)

    def test_polygon_needs_three_vertices(self):
        with pytest.raises(ValueError):
            PolygonRegion(((0, 0), (1, 1)))

    def test_disc_radius_nonnegative(self):
        with pytest.raises(ValueError):
            DiscRegion((0, 0), -1)

    def test_hexagon_radius_positive(self):
        with pytest.raises(ValueError):
            HexagonRegion((0, 0), 0)


class TestImageGlossa:
    def test_pixels_become_elements(self):
        img = np.array([[[1, 2, 3], [4, 5, 6]]], dtype=np.uint8)
        g = build_image_glossa(img)
        assert g.carrier == frozenset({(0, 0), (0, 1)})
        assert tuple(g.desc_of[(0, 1)]) == (4.0, 5.0, 6.0)
        # coords are (x, y) = (col, row)
        assert g.coords_of((0, 1)) == (1, 0)
        assert tuple(g.empty_desc) == (0.0, 0.0, 0.0)

    def test_rejects_wrong_shape(self):
        with pytest.raises(ImageError):
            build_image_glossa(np.zeros((4, 4), dtype=np.uint8))

    def test_rejects_zero_area(self):
        with pytest.raises(ImageError):
            build_image_glossa(np.zeros((0, 4, 3), dtype=np.uint8))


class TestExperimentParams:
    def test_discriminatory_config(self):
        p = ExperimentParams("restrictive", targets=((254, 224, 198),), eta=60)
        cfg = p.union_config()
        assert cfg.discriminatory
        assert cfg.eta == 60

    def test_nondiscriminatory_config(self):
        p = ExperimentParams("nonrestrictive")
        assert not p.union_config().discriminatory

    def test_rejects_bad_spatial(self):
        with pytest.raises(ValueError):
            ExperimentParams("diagonal")

    def test_rejects_non_rgb_target(self):
        with pytest.raises(ValueError, match="RGB"):
            ExperimentParams("restrictive", targets=((1, 2),))

    def test_rejects_out_of_range_channel(self):
        with pytest.raises(ValueError, match="255"):
            ExperimentParams("restrictive", targets=((0, 0, 256),))
        with pytest.raises(ValueError, match="255"):
            ExperimentParams("restrictive", targets=((-1, 0, 0),))

    def test_rejects_empty_target_tuple(self):
        with pytest.raises(ValueError):
            ExperimentParams("restrictive", targets=())

    def test_rejects_negative_eta(self):
        with pytest.raises(ValueError):
            ExperimentParams("restrictive", targets=((0, 0, 0),), eta=-2)


class TestRunExperiment:
    def test_restrictive_discriminatory_picks_target_in_overlap(self, img6):
        params = ExperimentParams("restrictive", targets=(GREENISH,))
        res, rendered = run_experiment(img6, REGION_A, REGION_B, params)
        assert res.elements == frozenset({(3, 3)})
        assert rendered[3, 3].tolist() == [255, 255, 255]
        assert rendered[0, 0].tolist() == [0, 0, 0]

    def test_restrictive_discriminatory_misses_target_outside_overlap(self, img6):
        params = ExperimentParams("restrictive", targets=(REDISH,))
        res, _ = run_experiment(img6, REGION_A, REGION_B, params)
        assert res.elements == frozenset()

    def test_nonrestrictive_discriminatory_scans_both_regions(self, img6):
        params = ExperimentParams("nonrestrictive", targets=(REDISH,))
        res, _ = run_experiment(img6, REGION_A, REGION_B, params)
        assert res.elements == frozenset({(1, 1), (1, 2), (2, 1), (2, 2)})

    def test_eta_tolerance_on_color_distance(self, img6):
        params = ExperimentParams("nonrestrictive", targets=((0, 210, 0),), eta=10)
        res, _ = run_experiment(img6, REGION_A, REGION_B, params)
        assert res.elements == frozenset({(3, 3), (3, 4), (4, 3), (4, 4)})
        tight = ExperimentParams("nonrestrictive", targets=((0, 210, 0),), eta=9)
        res2, _ = run_experiment(img6, REGION_A, REGION_B, tight)
        assert res2.elements == frozenset()

    def test_nondiscriminatory_variants_reduce_to_plain_set_ops(self, img6):
        res_i, _ = run_experiment(img6, REGION_A, REGION_B, ExperimentParams("restrictive"))
        res_u, _ = run_experiment(img6, REGION_A, REGION_B, ExperimentParams("nonrestrictive"))
        assert res_i.elements == A_PIXELS & B_PIXELS
        assert res_u.elements == A_PIXELS | B_PIXELS

    def test_mask_is_strictly_two_tone(self, img6):
        params = ExperimentParams("nonrestrictive", targets=(REDISH,))
        _, rendered = run_experiment(img6, REGION_A, REGION_B, params)
        flat = {tuple(px) for px in rendered.reshape(-1, 3)}
        assert flat <= {(0, 0, 0), (255, 255, 255)}

    def test_overlay_outlines_and_saturation(self, img6):
        params = ExperimentParams("nonrestrictive")
        res, out = run_experiment(img6, REGION_A, REGION_B, params, mode="overlay")
        # ring of region a is green, except where region b's ring wins
        assert out[1, 1].tolist() == [0, 255, 0]
        assert out[5, 5].tolist() == [255, 0, 0]
        assert out[3, 3].tolist() == [255, 0, 0]  # overlap corner: red wins
        # (2,2) is interior to region a and selected; the red block color
        # is already fully saturated, so it comes through unchanged
        assert out[2, 2].tolist() == list(REDISH)
        # untouched background stays as shot
        assert out[0, 0].tolist() == list(BG)

    def test_unselected_overlay_keeps_source_pixels(self, img6):
        params = ExperimentParams("nonrestrictive", targets=((77, 77, 77),))
        _, out = run_experiment(img6, REGION_A, REGION_B, params, mode="overlay")
        # interior pixels of both regions, nothing selected: source colors
        assert out[2, 2].tolist() == list(REDISH)
        assert out[4, 4].tolist() == list(GREENISH)
        assert out[0, 0].tolist() == list(BG)

    def test_mode_validated(self, img6):
        with pytest.raises(ValueError):
            run_experiment(img6, REGION_A, REGION_B, ExperimentParams("restrictive"), mode="x")

    def test_deterministic(self, img6):
        params = ExperimentParams("nonrestrictive", targets=(GREENISH,), eta=5)
        r1, m1 = run_experiment(img6, REGION_A, REGION_B, params)
        r2, m2 = run_experiment(img6, REGION_A, REGION_B, params)
        assert r1 == r2
        assert np.array_equal(m1, m2)


class TestRendering:
    def test_render_mask_white_exactly_on_selection(self, img6):
        mask = render_mask(img6, [(0, 0), (5, 5)])
        assert mask[0, 0].tolist() == [255, 255, 255]
        assert mask[5, 5].tolist() == [255, 255, 255]
        assert mask.sum() == 2 * 3 * 255

    def test_render_overlay_no_selection_no_saturation(self, img6):
        out = render_overlay(img6, [(0, 0)], [(5, 5)], [])
        assert out[0, 0].tolist() == [0, 255, 0]
        assert out[5, 5].tolist() == [255, 0, 0]
        assert out[2, 2].tolist() == list(img6[2, 2])

    def test_render_overlay_saturates_selected_pixels(self, img6):
        # (0,0) carries the unsaturated background color; saturation keeps
        # the max channel (value) and drives the min channel to zero
        out = render_overlay(img6, [(5, 0)], [(5, 5)], [(0, 0)])
        assert out[0, 0].max() == max(BG)
        assert out[0, 0].min() == 0
        assert out[0, 0].tolist() != list(BG)


class TestImageIO:
    def test_png_roundtrip(self, img6):
        buf = io.BytesIO()
        save_image(buf, img6)
        buf.seek(0)
        back = load_image(buf)
        assert np.array_equal(back, img6)

    def test_load_converts_to_rgb(self):
        rgba = Image.new("RGBA", (2, 2), (5, 6, 7, 128))
        buf = io.BytesIO()
        rgba.save(buf, format="PNG")
        buf.seek(0)
        arr = load_image(buf)
        assert arr.shape == (2, 2, 3)
        assert arr[0, 0].tolist() == [5, 6, 7]

    def test_save_rejects_bad_array(self):
        with pytest.raises(ImageError):
            save_image(io.BytesIO(), np.zeros((2, 2), dtype=np.uint8))
        with pytest.raises(ImageError):
            save_image(io.BytesIO(), np.zeros((2, 2, 3), dtype=np.float64))

"""End-to-end pipeline runs and exports."""

import json

import numpy as np
import pytest

import curveseg as cs
from curveseg.errors import EmptyResultError, FlatImageError
from curveseg.pipeline import SegmentSet

from conftest import RECT_BOUNDS, rect_boundary_points


def side_distance(points, corners):
    """Max distance from points to the nearest polygon side."""
    boundary = rect_boundary_points(corners)
    from scipy.spatial import cKDTree

    d, _ = cKDTree(boundary).query(points)
    return d


class TestRun:
    def test_rectangle_four_segments(self, rect_image):
        result = cs.run(rect_image)
        assert len(result.segments) == 4
        assert sorted(s.source_label for s in result.segments) == [1, 2, 3, 4]
        # each elongated band has exactly two curvature extrema: its tips
        assert all(d["endpoint_count"] == 2 for d in result.diagnostics)

    def test_larger_sigma_shifts_segments_outward(self, rect_image, rect_corners):
        # tau 0.65 keeps the four bands cleanly separated at both scales
        res1 = cs.run(rect_image, cs.PipelineConfig(sigma=2.0, tau_frac=0.65))
        res2 = cs.run(rect_image, cs.PipelineConfig(sigma=4.0, tau_frac=0.65))
        assert len(res2.segments) == 4
        d1 = np.concatenate([side_distance(s.points, rect_corners) for s in res1.segments])
        d2 = np.concatenate([side_distance(s.points, rect_corners) for s in res2.segments])
        assert d2.mean() > d1.mean()

    def test_flat_image_raises(self):
        with pytest.raises(FlatImageError):
            cs.run(np.full((64, 64), 0.5))

    def test_everything_below_min_area_raises(self, rect_image):
        with pytest.raises(EmptyResultError):
            cs.run(rect_image, cs.PipelineConfig(min_area=100000))

    def test_negative_polarity_regions_inside(self, rect_image):
        res = cs.run(rect_image, cs.PipelineConfig(polarity="negative"))
        x0, y0, x1, y1 = RECT_BOUNDS
        for seg in res.segments:
            assert np.all(seg.points[:, 0] > x0 - 1)
            assert np.all(seg.points[:, 0] < x1 + 1)
            assert np.all(seg.points[:, 1] > y0 - 1)
            assert np.all(seg.points[:, 1] < y1 + 1)

    def test_segments_stay_near_region_bbox(self, rect_image):
        from curveseg.filtering import respond
        from curveseg.regions import label_components, threshold_positive

        cfg = cs.PipelineConfig()
        regions = {
            r.label: r
            for r in label_components(
                threshold_positive(respond(rect_image, cfg.sigma), cfg.tau_frac),
                cfg.min_area,
            )
        }
        res = cs.run(rect_image, cfg)
        for seg in res.segments:
            minr, minc, maxr, maxc = regions[seg.source_label].bbox
            assert np.all(seg.points[:, 0] >= minc + 0.5 - 2)
            assert np.all(seg.points[:, 0] <= maxc + 0.5 + 2)
            assert np.all(seg.points[:, 1] >= minr + 0.5 - 2)
            assert np.all(seg.points[:, 1] <= maxr + 0.5 + 2)

    def test_merged_region_yields_multiple_segments(self):
        # an L-shaped stroke merges two straight curve pieces into one
        # support region with more than two curvature extrema
        elbow = np.array([[20.0, 20.0], [20.0, 85.0], [85.0, 85.0]])
        seg_pts = np.vstack([
            elbow[0] + t * (elbow[1] - elbow[0]) for t in np.linspace(0, 1, 400)
        ] + [
            elbow[1] + t * (elbow[2] - elbow[1]) for t in np.linspace(0, 1, 400)
        ])
        img = cs.render_stroke(seg_pts, 5.0, 128, 128)
        res = cs.run(img, cs.PipelineConfig(tau_frac=0.4))
        multi = [d for d in res.diagnostics if d["endpoint_count"] > 2]
        assert multi, "expected at least one merged region"
        labels = {d["label"] for d in multi}
        for lb in labels:
            assert sum(s.source_label == lb for s in res.segments) >= 2

    def test_diagnostics_reference_regions(self, rect_image):
        res = cs.run(rect_image)
        labels = {d["label"] for d in res.diagnostics}
        assert {s.source_label for s in res.segments} <= labels

    def test_config_validation(self):
        with pytest.raises(ValueError):
            cs.PipelineConfig(sigma=0.1)
        with pytest.raises(ValueError):
            cs.PipelineConfig(tau_frac=1.5)
        with pytest.raises(ValueError):
            cs.PipelineConfig(polarity="both")
        with pytest.raises(ValueError):
            cs.PipelineConfig(harmonics=0)
        with pytest.raises(ValueError):
            cs.PipelineConfig(samples=10)

    def test_config_snapshot_is_effective_config(self, rect_image):
        cfg = cs.PipelineConfig(sigma=3.0, harmonics=6)
        res = cs.run(rect_image, cfg)
        assert res.config == cfg
        payload = json.loads(cs.export(res, "json"))
        assert payload["config"] == cfg.to_dict()


class TestExport:
    def make_empty(self):
        return SegmentSet(
            width=10, height=10, path=None,
            config=cs.PipelineConfig(), segments=[], diagnostics=[],
        )

    def test_empty_set_valid_json(self):
        payload = json.loads(cs.export(self.make_empty(), "json"))
        assert payload["segments"] == []
        assert payload["image"]["width"] == 10

    def test_json_schema_and_roundtrip(self, rect_image):
        res = cs.run(rect_image, path="rect.png")
        payload = json.loads(cs.export(res, "json"))
        assert set(payload) == {"image", "config", "segments", "diagnostics"}
        assert payload["image"] == {"width": 128, "height": 128, "path": "rect.png"}
        for sid, seg in enumerate(res.segments):
            js = payload["segments"][sid]
            assert js["id"] == sid
            assert js["region_label"] == seg.source_label
            # round-trip preserves every coordinate exactly
            np.testing.assert_array_equal(np.array(js["points"]), seg.points)
            np.testing.assert_array_equal(np.array(js["endpoints"]), seg.endpoints)

    def test_svg_structure(self, rect_image):
        res = cs.run(rect_image)
        svg = cs.export(res, "svg").decode()
        assert svg.count("<polyline") == 4
        assert svg.count("<circle") == 8
        assert "<image" not in svg
        svg_bg = cs.export(res, "svg", background=rect_image).decode()
        assert "data:image/png;base64," in svg_bg

    def test_csv_rows(self, rect_image):
        res = cs.run(rect_image)
        lines = cs.export(res, "csv").decode().strip().splitlines()
        assert lines[0] == "segment_id,k,x,y"
        assert len(lines) == 1 + sum(len(s.points) for s in res.segments)
        sid, k, x, y = lines[1].split(",")
        assert (int(sid), int(k)) == (0, 0)
        assert float(x) == res.segments[0].points[0, 0]

    def test_unknown_format(self):
        with pytest.raises(ValueError):
            cs.export(self.make_empty(), "yaml")

    def test_determinism_byte_identical(self, rect_image):
        a = cs.export(cs.run(rect_image), "json")
        b = cs.export(cs.run(rect_image.copy()), "json")
        assert a == b

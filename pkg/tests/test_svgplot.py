"""Deterministic SVG rendering."""

import math

from dc_optlab.svgplot import Series, render_line_chart


class TestRenderLineChart:
    def test_identical_input_identical_bytes(self):
        s = [Series.of("a", [0, 1, 2], [0.0, 0.5, 0.25])]
        assert render_line_chart(s, title="t") == render_line_chart(s, title="t")

    def test_no_series_renders_axes_only(self):
        svg = render_line_chart([])
        assert svg.startswith("<?xml")
        assert "<polyline" not in svg
        assert "<rect" in svg
        assert svg.rstrip().endswith("</svg>")

    def test_one_polyline_per_series(self):
        s = [
            Series.of("a", [0, 1], [0.0, 1.0]),
            Series.of("b", [0, 1], [1.0, 0.0]),
        ]
        svg = render_line_chart(s)
        assert svg.count("<polyline") == 2
        assert ">a</text>" in svg
        assert ">b</text>" in svg

    def test_nan_splits_polyline(self):
        s = [Series.of("a", [0, 1, 2, 3, 4], [0.0, 1.0, math.nan, 1.0, 0.0])]
        svg = render_line_chart(s)
        assert svg.count("<polyline") == 2

    def test_constant_series_does_not_divide_by_zero(self):
        svg = render_line_chart([Series.of("flat", [0, 1], [2.0, 2.0])])
        assert "<polyline" in svg

    def test_labels_escaped(self):
        svg = render_line_chart([Series.of("a<b&c", [0, 1], [0, 1])])
        assert "a&lt;b&amp;c" in svg

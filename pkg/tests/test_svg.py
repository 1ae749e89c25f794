import xml.etree.ElementTree as ET

import numpy as np
import pytest

from asibeam import svg


def test_line_plot_is_valid_svg(tmp_path):
    x = np.linspace(-90, 90, 50)
    p = svg.line_plot(tmp_path / "l.svg", {"a": (x, np.cos(np.deg2rad(x))), "b<&>": (x, -x / 90)},
                      title="cut", xlabel="deg", ylabel="dB")
    root = ET.parse(p).getroot()
    assert root.tag.endswith("svg")
    assert len(root.findall("{http://www.w3.org/2000/svg}polyline")) == 2


def test_line_plot_needs_data(tmp_path):
    with pytest.raises(ValueError):
        svg.line_plot(tmp_path / "x.svg", {})


def test_cdf_plot(tmp_path):
    p = svg.cdf_plot(tmp_path / "c.svg", {"beam": np.random.default_rng(0).normal(size=100)})
    ET.parse(p)


def test_polar_heatmap_front_half_only(tmp_path):
    th, ph = np.meshgrid(np.arange(0, 181, 10.0), np.arange(-180, 181, 10.0), indexing="ij")
    val = -np.abs(ph).ravel() / 10
    p = svg.polar_heatmap(tmp_path / "h.svg", th.ravel(), ph.ravel(), val, title="t")
    root = ET.parse(p).getroot()
    n_front = int(np.sum(np.abs(ph) <= 90))
    assert len(root.findall("{http://www.w3.org/2000/svg}rect")) == n_front + 1
    with pytest.raises(ValueError):
        svg.polar_heatmap(tmp_path / "e.svg", [90.0], [180.0], [0.0])

from __future__ import annotations

import random
import xml.etree.ElementTree as ET

from hypothesis import given
from hypothesis import strategies as st

from conftest import convex_k4, random_general_position, random_graph
from geothick.drawing import LayeredDrawing
from geothick.svg import PALETTE, VERTEX_RADIUS, layer_color, render_svg

NS = "{http://www.w3.org/2000/svg}"


def test_palette():
    assert len(PALETTE) == 12 and len(set(PALETTE)) == 12
    assert layer_color(1) == layer_color(13) != layer_color(2)


def test_k4_rendering():
    d = convex_k4((1, 2))
    svg = render_svg(d, labels=True)
    root = ET.fromstring(svg)
    lines = root.findall(f".//{NS}line")
    assert len(lines) == 6
    assert {ln.get("class") for ln in lines} == {"layer-1", "layer-2"}
    assert next(ln for ln in lines if ln.get("data-edge") == "1-3").get("class") == "layer-2"
    circles = root.findall(f".//{NS}circle")
    assert len(circles) == 4 and all(c.get("r") == str(VERTEX_RADIUS) for c in circles)
    assert len(root.findall(f".//{NS}text")) == 4
    assert ".layer-2 { stroke: " + PALETTE[1] in svg


def test_viewbox_fits_points():
    svg = render_svg(convex_k4((1, 2)), size=200, margin=10)
    root = ET.fromstring(svg)
    assert root.get("viewBox") == "0 0 200 200"
    xs = [float(c.get("cx")) for c in root.findall(f".//{NS}circle")]
    assert min(xs) == 10 and max(xs) == 190


@given(st.integers(0, 10**6))
def test_one_segment_per_edge_and_stable(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 8)
    g = random_graph(n, 0.5, rng)
    d = LayeredDrawing(g, random_general_position(n, rng), {e: rng.randint(1, 14) for e in g.edges}, 14)
    svg = render_svg(d)
    assert svg == render_svg(d)
    root = ET.fromstring(svg)
    assert len(root.findall(f".//{NS}line")) == g.m
    assert len(root.findall(f".//{NS}circle")) == g.n

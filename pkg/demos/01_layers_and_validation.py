"""Walkthrough: validating layered drawings and minimizing layers for fixed positions.

Run with ``python3 demos/01_layers_and_validation.py``.
"""

from __future__ import annotations

from itertools import combinations
from math import pi

from geothick.drawing import Graph, LayeredDrawing, min_layers_fixed_drawing, validate
from geothick.geometry import Point, rational_unit_vector
from geothick.svg import render_svg


def main() -> None:
    k4 = Graph.from_edges(combinations(range(4), 2))
    square = {0: Point(0, 0), 1: Point(2, 0), 2: Point(2, 2), 3: Point(0, 2)}

    one_layer = LayeredDrawing(k4, square, {e: 1 for e in k4.edges}, 1)
    report = validate(one_layer)
    print(f"K4 on a square, one layer: {len(report)} monochromatic crossing(s)")
    for e1, e2, c in report.pairs:
        print(f"  edges {e1} and {e2} cross in layer {c}")

    two_layers = LayeredDrawing(k4, square, {**one_layer.chi, (1, 3): 2}, 2)
    print(f"Moving one diagonal to layer 2: {len(validate(two_layers))} crossings")

    k5 = Graph.from_edges(combinations(range(5), 2))
    pentagon = {i: Point(*(100 * c for c in rational_unit_vector(2 * pi * i / 5))) for i in range(5)}
    layers, chi = min_layers_fixed_drawing(k5, pentagon)
    print(f"K5 on a convex pentagon needs {layers} layers for these positions")
    drawing = LayeredDrawing(k5, pentagon, chi, layers)
    print(f"  the optimal coloring is valid: {validate(drawing).is_empty}")
    svg = render_svg(drawing, labels=True)
    print(f"  SVG rendering: {len(svg.splitlines())} lines, {svg.count('<line')} edges")


if __name__ == "__main__":
    main()

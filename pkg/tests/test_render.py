import xml.etree.ElementTree as ET

import numpy as np

from stickknot.catalog import EXAMPLE_41, trefoil_sticks
from stickknot.diagnostics import project, project_along
from stickknot.render import _pieces, diagram_svg

SVG = "{http://www.w3.org/2000/svg}"


def test_unknot_is_one_closed_polyline():
    d = project_along([(0, 0, 0), (1, 0, 0), (0, 1, 0)], plane="xy")
    root = ET.fromstring(diagram_svg(d, "triangle"))
    lines = root.findall(f"{SVG}polyline")
    assert len(lines) == 1
    assert root.find(f"{SVG}title").text == "triangle"


def test_one_piece_per_underpass():
    d = project_along(trefoil_sticks(), (0, 0, 1))
    root = ET.fromstring(diagram_svg(d))
    assert len(root.findall(f"{SVG}polyline")) == d.arc_count


def test_control_polygon_drawn():
    d = project(EXAMPLE_41, 0)
    root = ET.fromstring(diagram_svg(d, control=EXAMPLE_41))
    assert len(root.findall(f"{SVG}polygon")) == 1


def test_pieces_skip_gaps():
    square = np.array([(0, 0), (1, 0), (1, 1), (0, 1)], dtype=float)
    pieces = _pieces(square, [0.5, 2.5], 0.2)
    assert len(pieces) == 2
    assert np.allclose(pieces[0][0], (0.6, 0))
    assert np.allclose(pieces[0][-1], (0.6, 1))
    total = sum(np.linalg.norm(np.diff(p, axis=0), axis=1).sum() for p in pieces)
    assert np.isclose(total, 4 - 2 * 0.2)

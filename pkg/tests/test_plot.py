import re
from xml.etree import ElementTree

import pytest

from tropmech.errors import DimensionMismatch
from tropmech.instances import ARRANGEMENT
from tropmech.mechanism import ic_set, minkowski_combine
from tropmech.plot import PlotConfig, apexes, arrangement_svg, cell_labels

T1, T2 = ARRANGEMENT.spaces["T1"], ARRANGEMENT.spaces["T2"]
NS = "{http://www.w3.org/2000/svg}"


def test_apex_positions():
    assert apexes(T1) == [(2, 3), (4, 2), (3, 7)]
    C = minkowski_combine([T1, T2])
    pts = apexes(C)
    assert len(pts) == 9 and pts[0] == (7, -2)


def test_single_type_draws_three_rays():
    svg = arrangement_svg([[0, 0, 0]])
    root = ElementTree.fromstring(svg)
    assert len(root.findall(f".//{NS}line")) == 3
    apex = root.find(f".//{NS}circle")
    assert apex.get("data-x") == "0" and apex.get("data-y") == "0"


def test_ray_directions():
    root = ElementTree.fromstring(arrangement_svg([[0, 0, 0]], PlotConfig(scale=10)))
    moves = set()
    for line in root.findall(f".//{NS}line"):
        dx = float(line.get("x2")) - float(line.get("x1"))
        dy = float(line.get("y1")) - float(line.get("y2"))  # svg y grows downwards
        moves.add(((dx > 0) - (dx < 0), (dy > 0) - (dy < 0)))
    assert moves == {(0, 1), (1, 0), (-1, -1)}


def test_needs_three_outcomes():
    with pytest.raises(DimensionMismatch):
        arrangement_svg([[0, 1]])


def test_cell_labels_recover_ic_set():
    # the worked example's arrangement is generic, so every IC vector is an open cell
    box = (-2, 10, -2, 12)
    labels = cell_labels(T1, box, 80)
    assert tuple(sorted(labels)) == ic_set(T1)


def test_labels_in_svg():
    svg = arrangement_svg(T1, PlotConfig(labels=True, title="T1"))
    assert len(re.findall(r'class="covector"', svg)) == 10
    ElementTree.fromstring(svg)

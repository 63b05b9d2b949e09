from __future__ import annotations

import pytest

from linlay.graphs import Graph
from linlay.layouts import LayoutKind, LinearLayout


@pytest.fixture
def path3():
    return Graph.from_edges([("a", "b"), ("b", "c")])


@pytest.fixture
def c4():
    return Graph.from_edges([("a", "b"), ("b", "c"), ("c", "d"), ("a", "d")])


@pytest.fixture
def k4():
    names = "abcd"
    return Graph.from_edges((u, v) for i, u in enumerate(names) for v in names[i + 1 :])


@pytest.fixture
def k5():
    names = "abcde"
    return Graph.from_edges((u, v) for i, u in enumerate(names) for v in names[i + 1 :])


def width_five_fixture():
    """Ten-vertex instance with a two-page width-five stack layout.

    The layout's spanning set at vertex e has six edges split across the two
    pages; the oriented cut (c, d, e, g, h, j) is nicely oriented, the left
    side of the induced cut is {a, b, c, d, e}, and G minus the cut-set has
    three components, two of them on the right.
    """
    g = Graph.from_edges(
        [
            ("a", "b"), ("b", "c"), ("c", "d"), ("d", "e"),  # left path
            ("c", "h"), ("c", "j"), ("d", "h"), ("d", "g"), ("e", "h"), ("e", "g"),
            ("f", "j"),  # right component {f, j}
            ("g", "h"), ("h", "i"),  # right component {g, h, i}
        ]
    )
    spine = ("a", "b", "c", "d", "e", "g", "f", "h", "i", "j")
    pages = {
        ("c", "j"): 1, ("c", "h"): 1, ("d", "h"): 1, ("e", "h"): 1, ("e", "g"): 1,
        ("g", "h"): 1, ("h", "i"): 1,
        ("a", "b"): 2, ("b", "c"): 2, ("c", "d"): 2, ("d", "e"): 2, ("d", "g"): 2,
        ("f", "j"): 2,
    }
    layout = LinearLayout(LayoutKind.STACK, 2, spine, pages)
    cut_edges = (("c", "h"), ("c", "j"), ("d", "g"), ("d", "h"), ("e", "g"), ("e", "h"))
    cut_order = ("c", "d", "e", "g", "h", "j")
    return g, layout, cut_edges, cut_order


@pytest.fixture
def wide_stack():
    return width_five_fixture()

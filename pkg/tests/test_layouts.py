from __future__ import annotations

import itertools
import random

import pytest

from linlay.graphs import Graph, GraphError, edge
from linlay.layouts import (
    Cut,
    LayoutDomainError,
    LayoutKind,
    LinearLayout,
    page_width,
    spanning_edges,
    validate_layout,
)

from naive import (
    naive_conflicting_pairs,
    naive_page_width,
    path_of,
    random_connected_graph,
)


def test_graph_normalization():
    g = Graph.build(["b", "a", "c"], [("c", "a"), ("b", "a")])
    assert g.vertices == ("a", "b", "c")
    assert g.edges == (("a", "b"), ("a", "c"))
    assert g.neighbors("a") == ("b", "c")
    assert g.degree("a") == 2 and g.degree("b") == 1


def test_graph_rejects_self_loop_and_parallel_edges():
    with pytest.raises(GraphError):
        Graph.from_edges([("a", "a")])
    with pytest.raises(GraphError):
        Graph.build(["a", "b"], [("a", "b"), ("b", "a")])
    with pytest.raises(GraphError):
        Graph.build(["a"], [("a", "b")])


def test_components_and_induced():
    g = Graph.build(["a", "b", "c", "d", "e"], [("a", "b"), ("c", "d")])
    assert g.components() == (("a", "b"), ("c", "d"), ("e",))
    assert not g.is_connected()
    sub = g.induced(["a", "b", "e"])
    assert sub.vertices == ("a", "b", "e") and sub.edges == (("a", "b"),)


def test_cut_of():
    g = path_of("a", "b", "c")
    cut = Cut.of(g, {"a", "b"})
    assert cut.cut_set == {("b", "c")}
    assert cut.right == {"c"}


def test_validate_path_on_one_stack_page(path3):
    layout = LinearLayout(
        LayoutKind.STACK, 1, ("a", "b", "c"), {("a", "b"): 1, ("b", "c"): 1}
    )
    assert validate_layout(path3, layout).ok


def test_validate_c4_queue_nesting(c4):
    layout = LinearLayout(
        LayoutKind.QUEUE,
        1,
        ("a", "b", "c", "d"),
        {e: 1 for e in c4.edges},
    )
    report = validate_layout(c4, layout)
    assert not report.ok
    # ad spans the whole spine and bc nests inside it
    assert (("a", "d"), ("b", "c")) in report.violations


def test_validate_k4_one_stack_page_always_crosses(k4):
    # K4 is not outerplanar: every spine yields at least one crossing pair.
    for spine in itertools.permutations(k4.vertices):
        layout = LinearLayout(LayoutKind.STACK, 1, spine, {e: 1 for e in k4.edges})
        report = validate_layout(k4, layout)
        assert not report.ok
        assert report.violations == tuple(naive_conflicting_pairs(k4, layout))


def test_validate_domain_errors(path3):
    bad_spine = LinearLayout(LayoutKind.STACK, 1, ("a", "b"), {("a", "b"): 1})
    with pytest.raises(LayoutDomainError):
        validate_layout(path3, bad_spine)
    missing_edge = LinearLayout(LayoutKind.STACK, 1, ("a", "b", "c"), {("a", "b"): 1})
    with pytest.raises(LayoutDomainError):
        validate_layout(path3, missing_edge)
    bad_page = LinearLayout(
        LayoutKind.STACK, 1, ("a", "b", "c"), {("a", "b"): 2, ("b", "c"): 1}
    )
    with pytest.raises(LayoutDomainError):
        validate_layout(path3, bad_page)


def test_validate_agrees_with_naive_enumeration_on_random_layouts():
    rng = random.Random(7)
    for trial in range(150):
        n = rng.randint(2, 12)
        g = random_connected_graph(rng, n, rng.randint(0, 4))
        spine = list(g.vertices)
        rng.shuffle(spine)
        pages = rng.randint(1, 3)
        kind = rng.choice([LayoutKind.STACK, LayoutKind.QUEUE])
        layout = LinearLayout(
            kind, pages, tuple(spine), {e: rng.randint(1, pages) for e in g.edges}
        )
        report = validate_layout(g, layout)
        naive = naive_conflicting_pairs(g, layout)
        assert list(report.violations) == naive
        assert report.ok == (not naive)
        assert page_width(layout) == naive_page_width(layout)


def test_spanning_edges_basics(path3):
    layout = LinearLayout(
        LayoutKind.STACK, 1, ("a", "b", "c"), {("a", "b"): 1, ("b", "c"): 1}
    )
    assert spanning_edges(layout, "c") == frozenset()
    assert spanning_edges(layout, "b") == {("b", "c")}
    assert spanning_edges(layout, "a") == {("a", "b")}
    with pytest.raises(LayoutDomainError):
        spanning_edges(layout, "z")


def test_spanning_edges_incremental_difference():
    rng = random.Random(11)
    for _ in range(40):
        g = random_connected_graph(rng, rng.randint(3, 8), rng.randint(0, 4))
        spine = list(g.vertices)
        rng.shuffle(spine)
        layout = LinearLayout(LayoutKind.STACK, 1, tuple(spine), {e: 1 for e in g.edges})
        pos = {x: i for i, x in enumerate(spine)}
        for u, v in zip(spine, spine[1:]):
            left, right = spanning_edges(layout, u), spanning_edges(layout, v)
            incident_v = {e for e in g.edges if v in e}
            assert left ^ right <= incident_v
            outgoing = {e for e in incident_v if pos[e[0] if e[1] == v else e[1]] > pos[v]}
            assert right == (left - incident_v) | outgoing


def test_page_width_examples(wide_stack):
    single = LinearLayout(LayoutKind.STACK, 1, ("a", "b"), {("a", "b"): 1})
    assert page_width(single) == 1
    empty = LinearLayout(LayoutKind.QUEUE, 1, ("a", "b"), {})
    assert page_width(empty) == 0

    g, layout, cut_edges, _ = wide_stack
    assert validate_layout(g, layout).ok
    assert page_width(layout) == 5
    assert spanning_edges(layout, "e") == frozenset(cut_edges)
    assert len(spanning_edges(layout, "e")) == 6


def test_page_permutation_invariance(wide_stack):
    g, layout, _, _ = wide_stack
    swapped = layout.relabel_pages({1: 2, 2: 1})
    assert validate_layout(g, swapped).ok == validate_layout(g, layout).ok
    assert page_width(swapped) == page_width(layout)


def test_edge_canonicalization():
    assert edge("b", "a") == ("a", "b")
    with pytest.raises(GraphError):
        edge("a", "a")


def test_page_width_restated_via_spanning_edges(wide_stack):
    # independent route: width q iff every (vertex, page) spanning count <= q
    g, layout, _, _ = wide_stack
    q = page_width(layout)
    counts = [
        sum(1 for e in spanning_edges(layout, v) if layout.pages[e] == p)
        for v in layout.spine
        for p in range(1, layout.page_count + 1)
    ]
    assert max(counts) == q
    assert all(c <= q for c in counts)

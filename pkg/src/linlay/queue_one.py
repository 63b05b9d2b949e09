"""Single-page queue layouts via labelings and level planarity.

A labeling orients every edge and tags it ordinary (step up one level) or
arching (stay on the level).  Each consistent labeling determines a level
assignment up to shift; the graph then has a queue layout inducing that
labeling iff a derived proper-leveled instance is level planar.  The
derived instance wraps the graph in a frame cycle and attaches each
arching source to the frame's left side and each arching target to its
right side, which pins exactly the freedoms the arches need.

The solver branches over the 4^m labelings per connected component in a
fixed order (per edge: forward-ordinary, backward-ordinary,
forward-arching, backward-arching) and returns the first branch that
succeeds, pruning labeling prefixes whose level constraints are already
contradictory.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Iterator

from .bounds import edge_count_bound
from .graphs import Edge, Graph, edge
from .layouts import LayoutKind, LinearLayout, validate_layout
from .levelplan import LevelAssignment, LeveledGraph, LevelEmbedding, find_level_embedding

DEFAULT_EDGE_GUARD = 26


class BranchGuardError(RuntimeError):
    """Too many edges for the labeling search; not a feasibility verdict."""


class QueueSolverError(AssertionError):
    """Internal consistency failure while rebuilding a layout (a bug, not
    an infeasible instance)."""


class ArcTag(enum.Enum):
    ORDINARY = "ordinary"
    ARCHING = "arching"


@dataclass(frozen=True)
class Labeling:
    """One oriented arc per edge, aligned with the graph's canonical edges."""

    arcs: tuple[tuple[str, str], ...]
    tags: tuple[ArcTag, ...]

    def items(self) -> Iterator[tuple[tuple[str, str], ArcTag]]:
        return zip(self.arcs, self.tags)


_EDGE_OPTIONS = (
    (False, ArcTag.ORDINARY),
    (True, ArcTag.ORDINARY),
    (False, ArcTag.ARCHING),
    (True, ArcTag.ARCHING),
)


def enumerate_labelings(g: Graph) -> Iterator[Labeling]:
    """All 4^m labelings, in the solver's branch order."""
    edges = g.edges
    for choice in itertools.product(_EDGE_OPTIONS, repeat=len(edges)):
        arcs = tuple(
            (e[1], e[0]) if flip else e for e, (flip, _) in zip(edges, choice)
        )
        yield Labeling(arcs, tuple(tag for _, tag in choice))


def level_assignment_from_labeling(g: Graph, lab: Labeling) -> LevelAssignment | None:
    """Breadth-first propagation of the level constraints; None on conflict.

    Ordinary arcs climb one level, arching arcs stay level; the result is
    shifted so the lowest level is 1 and is independent of the start vertex.
    """
    if g.n == 0:
        return LevelAssignment.build({})
    if not g.is_connected():
        raise ValueError("level assignment expects a connected graph")
    delta: dict[Edge, int] = {}
    head: dict[Edge, str] = {}
    for (u, v), tag in lab.items():
        e = edge(u, v)
        delta[e] = 1 if tag is ArcTag.ORDINARY else 0
        head[e] = v
    level = {g.vertices[0]: 0}
    queue = [g.vertices[0]]
    i = 0
    while i < len(queue):
        u = queue[i]
        i += 1
        for w in g.neighbors(u):
            e = edge(u, w)
            d = delta[e] if head[e] == w else -delta[e]
            want = level[u] + d
            if w in level:
                if level[w] != want:
                    return None
            else:
                level[w] = want
                queue.append(w)
    low = min(level.values())
    return LevelAssignment.build({v: lv - low + 1 for v, lv in level.items()})


# -- reduction to level planarity ---------------------------------------------
#
# Vertex naming in the derived instance:
#   g:<v>        original vertex
#   d:<u>|<v>    subdivision of the ordinary edge uv (canonical order)
#   f:bot f:top  frame bottom / top
#   f:l:<i>      left frame vertex between original levels i and i+1
#   f:r:<i>      right frame vertex between original levels i and i+1
#   d:f:l:<i>    subdivision of the left frame edge crossing original level i
#
# Original level x maps to 2x+1, the half level between x and x+1 to 2x+2;
# the frame bottom sits at 1 and the top at 2h+3.


def _orig(v: str) -> str:
    return f"g:{v}"


def reduce_to_level_planarity(
    g: Graph, lab: Labeling, levels: LevelAssignment
) -> LeveledGraph | None:
    """The framed proper-leveled instance for one labeling branch.

    Returns None immediately when two distinct vertices on one level would
    need to attach to the left frame side (two arching sources per level).
    """
    lv = levels.levels
    h = levels.h
    arch_source: dict[int, str] = {}
    for (u, v), tag in lab.items():
        if tag is ArcTag.ARCHING:
            i = lv[u]
            if arch_source.setdefault(i, u) != u:
                return None
    out_levels: dict[str, int] = {}
    edges: set[tuple[str, str]] = set()

    for v in g.vertices:
        out_levels[_orig(v)] = 2 * lv[v] + 1
    for (u, v), tag in lab.items():
        if tag is ArcTag.ORDINARY:
            lo = u if lv[u] < lv[v] else v
            hi = v if lo == u else u
            mid = f"d:{min(u, v)}|{max(u, v)}"
            out_levels[mid] = 2 * lv[lo] + 2
            edges.add((_orig(lo), mid))
            edges.add((mid, _orig(hi)))

    out_levels["f:bot"] = 1
    out_levels["f:top"] = 2 * h + 3
    for i in range(0, h + 1):
        out_levels[f"f:l:{i}"] = 2 * i + 2
        out_levels[f"f:r:{i}"] = 2 * i + 2
    edges.add(("f:bot", "f:l:0"))
    edges.add(("f:bot", "f:r:0"))
    edges.add((f"f:l:{h}", "f:top"))
    edges.add((f"f:r:{h}", "f:top"))
    for i in range(0, h):
        for side in "lr":
            mid = f"d:f:{side}:{i + 1}"
            out_levels[mid] = 2 * (i + 1) + 1
            edges.add((f"f:{side}:{i}", mid))
            edges.add((mid, f"f:{side}:{i + 1}"))

    for (u, v), tag in lab.items():
        if tag is ArcTag.ARCHING:
            i = lv[u]
            edges.add((_orig(u), f"f:l:{i - 1}"))
            edges.add((_orig(u), f"f:l:{i}"))
            edges.add((_orig(v), f"f:r:{i}"))

    derived = Graph.from_edges(edges, isolated=set(out_levels))
    return LeveledGraph(derived, LevelAssignment.build(out_levels))


def branch_side_filter(g: Graph, lab: Labeling, levels: LevelAssignment):
    """Per-level predicate pinning the arch side conditions during the search.

    Level planarity of the framed instance alone does not force arch
    targets to stay inside the frame: a target hangs on the right chain by
    a single edge, so a drawing may park it (and its subtree) outside,
    violating the at-or-right-of-the-upward-vertices rule.  The conditions
    are properties of one level's order, so they prune the embedding
    search directly; a drawing satisfying them always exists when some
    arched embedding induces this labeling.  Returns None when nothing
    arches.
    """
    lv = levels.levels
    arch_by_level: dict[int, tuple[str, set[str]]] = {}
    for (u, v), tag in lab.items():
        if tag is ArcTag.ARCHING:
            i = lv[u]
            source, targets = arch_by_level.setdefault(i, (u, set()))
            targets.add(v)
    if not arch_by_level:
        return None
    uppers_by_level = {
        i: {w for w in g.vertices if lv[w] == i and any(lv[x] == i + 1 for x in g.adjacency[w])}
        for i in arch_by_level
    }

    def accept(level: int, row: tuple[str, ...]) -> bool:
        if level == 2:
            return row.index("f:l:0") < row.index("f:r:0")
        if level % 2 == 1 and (level - 1) // 2 in arch_by_level:
            i = (level - 1) // 2
            origs = [v[2:] for v in row if v.startswith("g:")]
            source, targets = arch_by_level[i]
            if not origs or origs[0] != source:
                return False
            uppers = uppers_by_level[i]
            last_upper = -1
            for j, w in enumerate(origs):
                if w in uppers:
                    last_upper = j
            pos = {w: j for j, w in enumerate(origs)}
            return all(pos[t] >= last_upper for t in targets)
        return True

    return accept


def branch_accepts(g: Graph, lab: Labeling, levels: LevelAssignment) -> bool:
    """Whether one labeling branch succeeds: reduce, then search a drawing
    that also satisfies the arch side conditions."""
    derived = reduce_to_level_planarity(g, lab, levels)
    if derived is None:
        return False
    return find_level_embedding(derived, branch_side_filter(g, lab, levels)) is not None


def _per_level_orig_orders(
    g: Graph, levels: LevelAssignment, emb: LevelEmbedding, reflect: bool
) -> dict[int, list[str]]:
    orders: dict[int, list[str]] = {i: [] for i in range(1, levels.h + 1)}
    for i in range(1, levels.h + 1):
        row = emb.orders.get(2 * i + 1, ())
        if reflect:
            row = tuple(reversed(row))
        orders[i] = [v[2:] for v in row if v.startswith("g:")]
    return orders


def embedding_to_queue_layout(
    g: Graph, lab: Labeling, levels: LevelAssignment, emb: LevelEmbedding
) -> LinearLayout:
    """Queue layout from a positive derived instance.

    Per-level orders of the original vertices are read off the drawing
    (normalizing a possible global reflection using the frame), the arched
    side conditions are re-verified, and the spine concatenates the
    reversed per-level orders bottom-up.
    """
    arch_arcs = [(u, v) for (u, v), tag in lab.items() if tag is ArcTag.ARCHING]
    reflect = False
    if arch_arcs:
        row = emb.orders.get(2, ())
        li, ri = row.index("f:l:0"), row.index("f:r:0")
        reflect = li > ri
    orders = _per_level_orig_orders(g, levels, emb, reflect)
    lv = levels.levels

    for u, v in arch_arcs:
        i = lv[u]
        row = orders[i]
        if not row or row[0] != u:
            raise QueueSolverError(f"arching source {u!r} is not leftmost on its level")
        pos = {w: j for j, w in enumerate(row)}
        uppers = [
            w for w in row
            if any(lv.get(x) == i + 1 for x in g.neighbors(w))
        ]
        anchor = pos[uppers[-1]] if uppers else 0
        if pos[v] < anchor:
            raise QueueSolverError(
                f"arching target {v!r} lies left of the last upward vertex"
            )

    spine: list[str] = []
    for i in range(1, levels.h + 1):
        spine.extend(reversed(orders[i]))
    layout = LinearLayout(LayoutKind.QUEUE, 1, tuple(spine), {e: 1 for e in g.edges})
    report = validate_layout(g, layout)
    if not report.ok:
        raise QueueSolverError(f"rebuilt layout is invalid: {report.violations!r}")
    return layout


# -- labeling search ----------------------------------------------------------


class _LevelDSU:
    """Union-find over vertices with level offsets, supporting rollback."""

    def __init__(self, vertices):
        self.parent = {v: v for v in vertices}
        self.offset = {v: 0 for v in vertices}  # level(v) - level(parent(v))
        self.size = {v: 1 for v in vertices}
        self.trail: list[tuple[str, str]] = []

    def find(self, v: str) -> tuple[str, int]:
        off = 0
        while self.parent[v] != v:
            off += self.offset[v]
            v = self.parent[v]
        return v, off

    def union(self, u: str, v: str, d: int) -> bool:
        """Impose level(v) = level(u) + d; False on contradiction."""
        ru, ou = self.find(u)
        rv, ov = self.find(v)
        if ru == rv:
            return ov == ou + d
        if self.size[ru] < self.size[rv]:
            # attach ru under rv: level(ru) = level(rv) + (ou' ...)
            self.parent[ru] = rv
            self.offset[ru] = ov - d - ou
            self.size[rv] += self.size[ru]
            self.trail.append((ru, rv))
        else:
            self.parent[rv] = ru
            self.offset[rv] = ou + d - ov
            self.size[ru] += self.size[rv]
            self.trail.append((rv, ru))
        return True

    def mark(self) -> int:
        return len(self.trail)

    def rollback(self, mark: int) -> None:
        while len(self.trail) > mark:
            child, root = self.trail.pop()
            self.size[root] -= self.size[child]
            self.parent[child] = child
            self.offset[child] = 0


@dataclass
class BranchResult:
    layout: LinearLayout | None
    labeling: Labeling | None
    levels: LevelAssignment | None
    branches_tried: int


def _solve_component(g: Graph) -> BranchResult:
    edges = g.edges
    m = len(edges)
    dsu = _LevelDSU(g.vertices)
    tried = 0
    chosen: list[tuple[bool, ArcTag]] = []

    def leaf() -> BranchResult | None:
        nonlocal tried
        tried += 1
        arcs = tuple(
            (e[1], e[0]) if flip else e for e, (flip, _) in zip(edges, chosen)
        )
        lab = Labeling(arcs, tuple(tag for _, tag in chosen))
        levels = level_assignment_from_labeling(g, lab)
        assert levels is not None, "prefix pruning admitted an inconsistent labeling"
        derived = reduce_to_level_planarity(g, lab, levels)
        if derived is None:
            return None
        emb = find_level_embedding(derived, branch_side_filter(g, lab, levels))
        if emb is None:
            return None
        layout = embedding_to_queue_layout(g, lab, levels, emb)
        return BranchResult(layout, lab, levels, tried)

    arch_sources: list[str] = []

    def arch_source_clash(a: str) -> bool:
        # two distinct arch sources already known to share a level doom
        # every completion of this prefix
        ra, oa = dsu.find(a)
        for u2 in arch_sources:
            if u2 == a:
                continue
            ru, ou = dsu.find(u2)
            if ru == ra and ou == oa:
                return True
        return False

    def rec(idx: int) -> BranchResult | None:
        if idx == m:
            return leaf()
        u, v = edges[idx]
        for flip, tag in _EDGE_OPTIONS:
            d = 1 if tag is ArcTag.ORDINARY else 0
            a, b = (v, u) if flip else (u, v)
            mark = dsu.mark()
            if dsu.union(a, b, d):
                arching = tag is ArcTag.ARCHING
                if arching and arch_source_clash(a):
                    dsu.rollback(mark)
                    continue
                if arching:
                    arch_sources.append(a)
                chosen.append((flip, tag))
                result = rec(idx + 1)
                chosen.pop()
                if arching:
                    arch_sources.pop()
                if result is not None:
                    dsu.rollback(mark)
                    return result
            dsu.rollback(mark)
        return None

    result = rec(0)
    if result is not None:
        return result
    return BranchResult(None, None, None, tried)


def solve_queue_one_page(
    g: Graph, edge_guard: int = DEFAULT_EDGE_GUARD
) -> LinearLayout | None:
    """1-page queue layout, or None; components are laid out independently."""
    return solve_queue_one_page_report(g, edge_guard).layout


def solve_queue_one_page_report(
    g: Graph, edge_guard: int = DEFAULT_EDGE_GUARD
) -> BranchResult:
    spine: list[str] = []
    tried = 0
    last: BranchResult | None = None
    for comp in g.components():
        sub = g.induced(comp)
        if not edge_count_bound(sub, LayoutKind.QUEUE, 1):
            return BranchResult(None, None, None, tried)
        if sub.m > edge_guard:
            raise BranchGuardError(
                f"component has {sub.m} edges, above the guard of {edge_guard}"
            )
        if sub.m == 0:
            spine.extend(sub.vertices)
            continue
        result = _solve_component(sub)
        tried += result.branches_tried
        if result.layout is None:
            return BranchResult(None, None, None, tried)
        spine.extend(result.layout.spine)
        last = result
    layout = LinearLayout(LayoutKind.QUEUE, 1, tuple(spine), {e: 1 for e in g.edges})
    report = validate_layout(g, layout)
    assert report.ok, f"concatenated component layouts invalid: {report.violations!r}"
    return BranchResult(
        layout,
        last.labeling if last else None,
        last.levels if last else None,
        tried,
    )

"""Bounded-page-width layouts via a state graph over nicely oriented cut-sets.

A state is a cut-set F (|F| <= width * pages), a total order over its
endpoints in which every endpoint is a pure source or pure sink, all sources
precede all sinks, and components of G - F are side-pure, plus a page
assignment with at most ``width`` edges per page.  Moving one vertex from
the unprocessed to the processed side induces an arc between states; a
layout exists iff the two sentinel states are connected.

Every arc increases the processed side by exactly one vertex, so every
sentinel-to-sentinel path has the same length and any reachability search
returns a shortest (layer-monotone) path.  The search below is a
deterministic depth-first traversal with a visited set; states are
materialized on demand and never stored beyond the visited keys.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from random import Random
from typing import Iterator

from .bounds import edge_count_bound
from .graphs import Edge, Graph, edge
from .layouts import LayoutKind, LinearLayout, page_width, validate_layout


class CutSetError(ValueError):
    """Edge set is not a cut-set, or the orientation is not nicely oriented."""


class NotConnectedError(ValueError):
    """This solver requires a connected input; split components first."""


@dataclass(frozen=True)
class OrientedCutSet:
    """A cut-set plus a total order over its endpoints.

    The stored order is always restricted to the endpoints, so dataclass
    equality implements "orders agree on V(F)".
    """

    edges: tuple[Edge, ...]
    order: tuple[str, ...]

    @classmethod
    def from_order(cls, edges, order) -> "OrientedCutSet":
        """Build from any order over a superset of the endpoints."""
        es = tuple(sorted(edge(u, v) for u, v in edges))
        endpoints = {v for e in es for v in e}
        restricted = tuple(v for v in order if v in endpoints)
        if set(restricted) != endpoints:
            raise CutSetError("order does not cover every cut-set endpoint")
        return cls(es, restricted)

    @property
    def endpoints(self) -> frozenset[str]:
        return frozenset(v for e in self.edges for v in e)

    def sources_and_sinks(self) -> tuple[tuple[str, ...], tuple[str, ...]]:
        """Classify endpoints by the order; raises if some endpoint is mixed."""
        pos = {v: i for i, v in enumerate(self.order)}
        sources, sinks = [], []
        for v in self.order:
            smaller = [u if w == v else w for u, w in self.edges if v in (u, w)]
            if all(pos[v] < pos[u] for u in smaller):
                sources.append(v)
            elif all(pos[v] > pos[u] for u in smaller):
                sinks.append(v)
            else:
                raise CutSetError(f"endpoint {v!r} is neither a pure source nor a pure sink")
        return tuple(sources), tuple(sinks)


@dataclass(frozen=True)
class StateNode:
    cut: OrientedCutSet
    page_of: tuple[int, ...]  # aligned with cut.edges
    processed_all: bool = False  # distinguishes the two empty-cut sentinels

    @classmethod
    def sentinel(cls, full: bool) -> "StateNode":
        return cls(OrientedCutSet((), ()), (), full)

    @property
    def is_sentinel(self) -> bool:
        return not self.cut.edges

    def key(self):
        return (self.cut.edges, self.cut.order, self.page_of, self.processed_all)

    def mini_layout(self, kind: LayoutKind, pages: int) -> LinearLayout:
        """The layout of G[F] given by the endpoint order and page map."""
        return LinearLayout(
            kind, pages, self.cut.order, dict(zip(self.cut.edges, self.page_of))
        )


S_EMPTY = StateNode.sentinel(full=False)
S_FULL = StateNode.sentinel(full=True)


# -- cut-set structure -------------------------------------------------------


def cut_bipartition(g: Graph, edges) -> tuple[frozenset[str], frozenset[str]] | None:
    """Sides (A, B) with F exactly the A-B edges, or None if F is no cut-set.

    For a connected graph the bipartition is unique up to swapping sides; A
    is the side containing the canonically smallest endpoint.
    """
    es = {edge(u, v) for u, v in edges}
    if not es:
        return None
    remaining = [e for e in g.edges if e not in es]
    rest = Graph.build(g.vertices, remaining)
    comp_of: dict[str, int] = {}
    comps = rest.components()
    for i, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = i
    color: dict[int, int] = {}
    # every cut edge must straddle two components, colored oppositely
    adj: dict[int, list[int]] = {}
    for u, v in es:
        cu, cv = comp_of[u], comp_of[v]
        if cu == cv:
            return None
        adj.setdefault(cu, []).append(cv)
        adj.setdefault(cv, []).append(cu)
    for start in sorted(adj):
        if start in color:
            continue
        color[start] = 0
        stack = [start]
        while stack:
            c = stack.pop()
            for d in adj[c]:
                if d not in color:
                    color[d] = 1 - color[c]
                    stack.append(d)
                elif color[d] == color[c]:
                    return None
    # components with no cut endpoint exist only in disconnected inputs;
    # pin them to side A for determinism
    a_vertices, b_vertices = [], []
    for i, comp in enumerate(comps):
        (b_vertices if color.get(i, 0) else a_vertices).extend(comp)
    anchor = min(v for e in es for v in e)
    if anchor in set(b_vertices):
        a_vertices, b_vertices = b_vertices, a_vertices
    return frozenset(a_vertices), frozenset(b_vertices)


def is_cut_set(g: Graph, edges) -> bool:
    return cut_bipartition(g, edges) is not None


def is_nicely_oriented(g: Graph, cut: OrientedCutSet) -> bool:
    sides = cut_bipartition(g, cut.edges)
    if sides is None:
        raise CutSetError("the edge set is not a cut-set of the graph")
    try:
        sources, sinks = cut.sources_and_sinks()
    except CutSetError:
        return False
    pos = {v: i for i, v in enumerate(cut.order)}
    if sources and sinks and max(pos[s] for s in sources) > min(pos[t] for t in sinks):
        return False
    # each component of G - F must hold only sources or only sinks
    rest = Graph.build(g.vertices, [e for e in g.edges if e not in set(cut.edges)])
    for comp in rest.components():
        has_src = any(v in comp for v in sources)
        has_snk = any(v in comp for v in sinks)
        if has_src and has_snk:
            return False
    return True


def _component_sides(g: Graph, cut: OrientedCutSet):
    """Components of G - F split into source-side and sink-side lists."""
    sources, sinks = cut.sources_and_sinks()
    src_set, snk_set = set(sources), set(sinks)
    rest = Graph.build(g.vertices, [e for e in g.edges if e not in set(cut.edges)])
    src_comps, snk_comps = [], []
    for comp in rest.components():
        has_src = any(v in src_set for v in comp)
        has_snk = any(v in snk_set for v in comp)
        if has_src and has_snk:
            raise CutSetError("a component contains both a source and a sink")
        if has_src:
            src_comps.append(comp)
        elif has_snk:
            snk_comps.append(comp)
        else:
            raise CutSetError(
                "a component holds no cut endpoint; the input graph must be connected"
            )
    return sources, sinks, src_comps, snk_comps


def induce_order(
    g: Graph, cut: OrientedCutSet, shuffle: Random | None = None
) -> tuple[tuple[str, ...], str]:
    """A vertex order whose spanning set at the witness vertex is exactly F.

    Source components come first (internal vertices in breadth-first order
    from their smallest vertex), then the endpoint order, then the sink
    components.  The witness is the rightmost source.  ``shuffle``
    randomizes the free choices; the induced left side never changes.
    """
    if not cut.edges:
        raise CutSetError("the empty edge set induces no cut")
    if not is_nicely_oriented(g, cut):
        raise CutSetError("cut-set is not nicely oriented")
    sources, sinks, src_comps, snk_comps = _component_sides(g, cut)
    endpoint = set(cut.order)

    def internal(comp: tuple[str, ...]) -> list[str]:
        sub = g.induced(comp)
        order = [v for v in sub.iter_bfs(comp[0]) if v not in endpoint]
        if shuffle is not None:
            shuffle.shuffle(order)
        return order

    if shuffle is not None:
        src_comps = list(src_comps)
        snk_comps = list(snk_comps)
        shuffle.shuffle(src_comps)
        shuffle.shuffle(snk_comps)
    prefix = [v for comp in src_comps for v in internal(comp)]
    suffix = [v for comp in snk_comps for v in internal(comp)]
    order = tuple(prefix) + cut.order + tuple(suffix)
    return order, sources[-1]


def left_side(g: Graph, cut: OrientedCutSet) -> frozenset[str]:
    """Vertices on the processed side; a function of the oriented cut alone."""
    _, _, src_comps, _ = _component_sides(g, cut)
    return frozenset(v for comp in src_comps for v in comp)


def state_left_side(g: Graph, state: StateNode) -> frozenset[str]:
    if state.is_sentinel:
        return frozenset(g.vertices) if state.processed_all else frozenset()
    return left_side(g, state.cut)


# -- state graph --------------------------------------------------------------


def _mini_layout_valid(
    kind: LayoutKind,
    order_pos: dict[str, int],
    edges_pages: list[tuple[Edge, int]],
    width: int,
) -> bool:
    """AC-style validity of the cut-only layout.

    Every edge runs from a source to a sink, so per page it suffices that
    sink positions strictly descend (stack) or ascend (queue) across groups
    of strictly increasing source positions; page width equals the page
    size, which is capped separately.
    """
    per_page: dict[int, list[tuple[int, int]]] = {}
    for (u, v), p in edges_pages:
        a, b = order_pos[u], order_pos[v]
        if a > b:
            a, b = b, a
        per_page.setdefault(p, []).append((a, b))
    for pairs in per_page.values():
        if len(pairs) > width:
            return False
        pairs.sort()
        for (a1, b1), (a2, b2) in itertools.combinations(pairs, 2):
            if a1 == a2 or b1 == b2:
                continue
            lo, hi = ((a1, b1), (a2, b2)) if a1 < a2 else ((a2, b2), (a1, b1))
            crossing = lo[1] < hi[1]
            if kind is LayoutKind.STACK and crossing:
                return False
            if kind is LayoutKind.QUEUE and not crossing:
                return False
    return True


def _merge_interleavings(fixed: list[str], new: list[str]) -> Iterator[tuple[str, ...]]:
    """All orders containing ``fixed`` as a subsequence and ``new`` anywhere."""
    if not new:
        yield tuple(fixed)
        return
    total = len(fixed) + len(new)
    for positions in itertools.combinations(range(total), len(new)):
        pos_set = set(positions)
        for perm in itertools.permutations(new):
            out: list[str] = []
            fi, ni = 0, 0
            for i in range(total):
                if i in pos_set:
                    out.append(perm[ni])
                    ni += 1
                else:
                    out.append(fixed[fi])
                    fi += 1
            yield tuple(out)


@dataclass
class _Ctx:
    g: Graph
    kind: LayoutKind
    pages: int
    width: int
    states_seen: int = 0
    arcs_seen: int = 0
    dump: list[StateNode] | None = None


def _successors(
    ctx: _Ctx,
    cut_edges: tuple[Edge, ...],
    sources: tuple[str, ...],
    sinks: tuple[str, ...],
    pagevec: tuple[int, ...],
    processed: frozenset[str],
    canonical_pages: bool = False,
) -> Iterator[tuple[tuple, str, frozenset[str]]]:
    """Arcs leaving a state, yielding raw successor frames.

    Pair validity against the retained edges reduces to sink positions:
    the moved vertex becomes the rightmost source, so a new edge crosses a
    retained same-page edge exactly when the retained sink lies strictly
    left of the new one.  Retained-retained pairs were already valid in the
    predecessor state and relative orders are preserved.
    """
    g = ctx.g
    unprocessed = [v for v in g.vertices if v not in processed]
    endpoint = set(sources) | set(sinks)
    leftmost_sink = sinks[0] if sinks else None
    pages_by_edge = dict(zip(cut_edges, pagevec))
    snk_set = set(sinks)
    stack_kind = ctx.kind is LayoutKind.STACK
    cap = ctx.width * ctx.pages

    for v in unprocessed:
        if v in endpoint and v != leftmost_sink:
            continue  # the moved vertex must be the leftmost sink
        retained = [e for e in cut_edges if v not in e]
        new_edges = sorted(edge(v, w) for w in g.neighbors(v) if w not in processed and w != v)
        k = len(new_edges)
        if not retained and not new_edges:
            if len(unprocessed) == 1:
                yield ((), (), (), ()), v, frozenset(g.vertices)
            continue
        if len(retained) + k > cap:
            continue
        next_processed = processed | {v}
        retained_eps = {u for e in retained for u in e}
        srcs_y = tuple(s for s in sources if s in retained_eps) + ((v,) if new_edges else ())
        fixed_snks = [t for t in sinks if t != v]
        known = set(fixed_snks)
        new_snks = sorted({w for e in new_edges for w in e if w != v and w not in known})
        fy_edges = tuple(sorted(retained + new_edges))
        retained_pages = [pages_by_edge[e] for e in retained]
        retained_sink = [e[0] if e[0] in snk_set else e[1] for e in retained]
        new_sink = [e[0] if e[1] == v else e[1] for e in new_edges]
        base_counts: dict[int, int] = {}
        for p in retained_pages:
            base_counts[p] = base_counts.get(p, 0) + 1

        page_options = _page_combos(k, ctx.pages, base_counts, ctx.width, canonical_pages)
        if not page_options:
            continue
        for snk_order in _merge_interleavings(fixed_snks, new_snks):
            tpos = {t: i for i, t in enumerate(snk_order)}
            # per-page extreme retained sink positions
            lo: dict[int, int] = {}
            hi: dict[int, int] = {}
            for p, t in zip(retained_pages, retained_sink):
                i = tpos[t]
                if p not in lo or i < lo[p]:
                    lo[p] = i
                if p not in hi or i > hi[p]:
                    hi[p] = i
            new_tpos = [tpos[t] for t in new_sink]
            for combo in page_options:
                ok = True
                for p, i in zip(combo, new_tpos):
                    if stack_kind:
                        if p in lo and i > lo[p]:
                            ok = False
                            break
                    else:
                        if p in hi and i < hi[p]:
                            ok = False
                            break
                if not ok:
                    continue
                page_map = dict(zip(retained, retained_pages))
                page_map.update(zip(new_edges, combo))
                order = srcs_y + snk_order
                yield (
                    fy_edges,
                    srcs_y,
                    snk_order,
                    tuple(page_map[e] for e in fy_edges),
                ), v, next_processed


def _page_combos(
    k: int, pages: int, base_counts: dict[int, int], width: int, canonical: bool
) -> list[tuple[int, ...]]:
    """Page vectors for the k new edges respecting the per-page cap.

    With ``canonical`` (used for arcs out of the empty state, where a global
    page permutation maps solution paths to solution paths) only first-use
    ordered vectors are kept.
    """
    out: list[tuple[int, ...]] = []

    def rec(i: int, counts: dict[int, int], acc: list[int], used_max: int) -> None:
        if i == k:
            out.append(tuple(acc))
            return
        limit = min(pages, used_max + 1) if canonical else pages
        for p in range(1, limit + 1):
            c = counts.get(p, 0)
            if c >= width:
                continue
            counts[p] = c + 1
            acc.append(p)
            rec(i + 1, counts, acc, max(used_max, p))
            acc.pop()
            counts[p] = c

    rec(0, dict(base_counts), [], 0)
    return out


def arc_exists(
    g: Graph,
    sx: StateNode,
    sy: StateNode,
    pages: int,
    width: int,
    kind: LayoutKind,
) -> str | None:
    """Label vertex of the arc sx -> sy, or None; checks the conditions literally."""
    proc_x = state_left_side(g, sx)
    proc_y = state_left_side(g, sy)
    unproc_x = [v for v in g.vertices if v not in proc_x]
    fx = set(sx.cut.edges)
    for v in unproc_x:
        fy_expected = {e for e in fx if v not in e} | {
            edge(v, w) for w in g.neighbors(v) if w not in proc_x and w != v
        }
        if fy_expected != set(sy.cut.edges):
            continue
        if proc_y != proc_x | {v}:
            continue
        # order and page agreement on the shared edges
        shared = fx & fy_expected
        shared_eps = sorted({u for e in shared for u in e})
        pos_x = {u: i for i, u in enumerate(sx.cut.order)}
        pos_y = {u: i for i, u in enumerate(sy.cut.order)}
        ok = all(
            (pos_x[a] < pos_x[b]) == (pos_y[a] < pos_y[b])
            for a, b in itertools.combinations(shared_eps, 2)
        )
        if not ok:
            continue
        px = dict(zip(sx.cut.edges, sx.page_of))
        py = dict(zip(sy.cut.edges, sy.page_of))
        if any(px[e] != py[e] for e in shared):
            continue
        # moved vertex sits at the boundary of both orders
        if v in {u for e in fx for u in e}:
            _, sinks_x = sx.cut.sources_and_sinks()
            if not sinks_x or sinks_x[0] != v:
                continue
        if v in {u for e in fy_expected for u in e}:
            sources_y, _ = sy.cut.sources_and_sinks()
            if not sources_y or sources_y[-1] != v:
                continue
        # both boundary layouts must be valid for the kind at this width
        def mini_ok(state: StateNode) -> bool:
            if state.is_sentinel:
                return True
            pos = {u: i for i, u in enumerate(state.cut.order)}
            return _mini_layout_valid(
                kind, pos, list(zip(state.cut.edges, state.page_of)), width
            )

        if not (mini_ok(sx) and mini_ok(sy)):
            continue
        return v
    return None


def enumerate_states(
    g: Graph, pages: int, width: int, kind: LayoutKind
) -> Iterator[StateNode]:
    """All consistent states: sentinels plus every nicely oriented cut-set of
    size up to width*pages with a page assignment of at most ``width`` edges
    per page.  Orders enumerate both side orientations and all source/sink
    permutations; validity beyond the node conditions is not filtered here.
    """
    yield S_EMPTY
    yield S_FULL
    all_edges = list(g.edges)
    for size in range(1, width * pages + 1):
        for combo in itertools.combinations(all_edges, size):
            sides = cut_bipartition(g, combo)
            if sides is None:
                continue
            side_a, side_b = sides
            eps = {v for e in combo for v in e}
            for src_side, snk_side in ((side_a, side_b), (side_b, side_a)):
                srcs = sorted(eps & src_side)
                snks = sorted(eps & snk_side)
                for sp in itertools.permutations(srcs):
                    for tp in itertools.permutations(snks):
                        order = sp + tp
                        for pv in itertools.product(range(1, pages + 1), repeat=size):
                            counts: dict[int, int] = {}
                            ok = True
                            for p in pv:
                                counts[p] = counts.get(p, 0) + 1
                                if counts[p] > width:
                                    ok = False
                                    break
                            if ok:
                                yield StateNode(OrientedCutSet(combo, order), pv)


@dataclass
class CutsetReport:
    layout: LinearLayout | None
    bound_rejected: bool
    states_seen: int
    arcs_seen: int
    dumped_states: list[StateNode] = field(default_factory=list)


def solve_bounded_width_report(
    g: Graph,
    kind: LayoutKind,
    pages: int,
    width: int,
    collect_states: bool = False,
) -> CutsetReport:
    if not g.is_connected():
        raise NotConnectedError("solve_bounded_width expects a connected graph")
    if not edge_count_bound(g, kind, pages):
        return CutsetReport(None, True, 0, 0)
    if g.n == 0:
        return CutsetReport(LinearLayout(kind, pages, (), {}), False, 0, 0)

    ctx = _Ctx(g, kind, pages, width, dump=[] if collect_states else None)
    empty_frame = ((), (), (), ())
    all_vertices = frozenset(g.vertices)

    def frame_key(frame: tuple, processed: frozenset[str]) -> tuple:
        edges, srcs, snks, pagevec = frame
        return (edges, srcs + snks, pagevec, not edges and processed == all_vertices)

    start_key = frame_key(empty_frame, frozenset())
    goal_key = frame_key(empty_frame, all_vertices)
    visited = {start_key}
    parents: dict[tuple, tuple[tuple, str, tuple]] = {}
    stack: list[tuple[tuple, frozenset[str]]] = [(empty_frame, frozenset())]
    found = False
    while stack and not found:
        frame, processed = stack.pop()
        edges, srcs, snks, pagevec = frame
        succs = list(
            _successors(
                ctx, edges, srcs, snks, pagevec, processed,
                canonical_pages=not edges and not processed,
            )
        )
        ctx.arcs_seen += len(succs)
        # reversed so the canonical-first successor is expanded first
        for nxt, label, nproc in reversed(succs):
            k = frame_key(nxt, nproc)
            if k in visited:
                continue
            visited.add(k)
            ctx.states_seen += 1
            if ctx.dump is not None:
                ne, ns, nk, np_ = nxt
                ctx.dump.append(
                    S_FULL if not ne and nproc == all_vertices
                    else StateNode(OrientedCutSet(ne, ns + nk), np_)
                )
            parents[k] = (frame_key(frame, processed), label, nxt)
            if k == goal_key:
                found = True
                break
            stack.append((nxt, nproc))

    if not found:
        return CutsetReport(
            None, False, ctx.states_seen, ctx.arcs_seen, ctx.dump or []
        )

    # reconstruct: spine = arc labels, pages = union of node assignments
    spine_rev: list[str] = []
    page_map: dict[Edge, int] = {}
    k = goal_key
    while k != start_key:
        pk, label, frame = parents[k]
        spine_rev.append(label)
        for e, p in zip(frame[0], frame[3]):
            assert page_map.get(e, p) == p, "inconsistent page along the path"
            page_map[e] = p
        k = pk
    spine = tuple(reversed(spine_rev))
    layout = LinearLayout(kind, pages, spine, page_map)
    report = validate_layout(g, layout)
    assert report.ok, f"state-graph path produced an invalid layout: {report.violations!r}"
    assert page_width(layout) <= width
    return CutsetReport(layout, False, ctx.states_seen, ctx.arcs_seen, ctx.dump or [])


def solve_bounded_width(
    g: Graph, kind: LayoutKind, pages: int, width: int
) -> LinearLayout | None:
    """Layout with at most ``pages`` pages and page width at most ``width``."""
    return solve_bounded_width_report(g, kind, pages, width).layout

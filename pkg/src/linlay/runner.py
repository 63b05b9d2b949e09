"""Solver dispatch: request/report types, component splitting, dump files."""

from __future__ import annotations

import json
import os
import time
from dataclasses import dataclass, field

from .bounds import edge_count_bound
from .cutset import solve_bounded_width_report
from .fileformats import layout_to_dict
from .graphs import Graph
from .kernel import (
    build_reduced_graph,
    compute_vertex_integrity,
    find_guiding_sublayout,
    lift_layout,
    oracle_solver,
)
from .layouts import LayoutKind, LinearLayout, page_width, validate_layout
from .oracle import OracleQuery, OracleSizeError, solve_exhaustive
from .queue_one import BranchGuardError, solve_queue_one_page_report

ALGORITHMS = ("oracle", "cutset", "queue1", "kernel")


class RequestError(ValueError):
    pass


@dataclass(frozen=True)
class SolveRequest:
    graph: Graph
    algorithm: str
    kind: LayoutKind
    pages: int
    width: int | None = None
    inner: str = "oracle"
    threshold: int | None = None
    oracle_guard: int = 12
    edge_guard: int = 26
    threads: int = 1
    dump_states: str | None = None
    dump_branch: str | None = None

    def __post_init__(self) -> None:
        if self.algorithm not in ALGORITHMS:
            raise RequestError(f"unknown algorithm {self.algorithm!r}")
        if self.pages < 1:
            raise RequestError("pages must be at least 1")
        if self.width is not None and self.width < 0:
            raise RequestError("width must be nonnegative")
        if self.algorithm == "queue1" and (
            self.kind is not LayoutKind.QUEUE or self.pages != 1
        ):
            raise RequestError("queue1 solves exactly 1-page queue instances")
        if self.inner not in ("oracle", "cutset"):
            raise RequestError(f"unknown inner solver {self.inner!r}")
        if self.threads < 1:
            raise RequestError("threads must be at least 1")


@dataclass
class RunReport:
    verdict: str  # found | infeasible | refused
    layout: LinearLayout | None
    timings_ms: dict[str, float] = field(default_factory=dict)
    counters: dict[str, int] = field(default_factory=dict)
    params: dict[str, object] = field(default_factory=dict)
    detail: str = ""

    @property
    def exit_code(self) -> int:
        return {"found": 0, "infeasible": 1, "refused": 2}[self.verdict]


def _merge_component_layouts(
    g: Graph, kind: LayoutKind, pages: int, parts: list[LinearLayout]
) -> LinearLayout:
    spine: list[str] = []
    page_map = {}
    for part in parts:
        spine.extend(part.spine)
        page_map.update(part.pages)
    return LinearLayout(kind, pages, tuple(spine), page_map)


def _solve_cutset(req: SolveRequest) -> tuple[LinearLayout | None, dict[str, int], bool]:
    g = req.graph
    width = req.width if req.width is not None else max(g.m, 1)
    counters = {"states": 0, "arcs": 0}
    parts = []
    dump_lines: list[str] = []
    bound_rejected = False
    for comp in g.components():
        sub = g.induced(comp)
        rep = solve_bounded_width_report(
            sub, req.kind, req.pages, width, collect_states=req.dump_states is not None
        )
        counters["states"] += rep.states_seen
        counters["arcs"] += rep.arcs_seen
        if req.dump_states is not None:
            for s in rep.dumped_states:
                edge_txt = ",".join(f"{u}-{w}" for u, w in s.cut.edges) or "-"
                order_txt = "<".join(s.cut.order) or "-"
                pages_txt = ",".join(map(str, s.page_of)) or "-"
                dump_lines.append(f"{edge_txt} | {order_txt} | {pages_txt}")
        if rep.layout is None:
            bound_rejected = bound_rejected or rep.bound_rejected
            parts = []
            break
        parts.append(rep.layout)
    if req.dump_states is not None:
        _atomic_write(req.dump_states, "\n".join(dump_lines) + "\n")
    if not parts and g.n > 0:
        return None, counters, bound_rejected
    return _merge_component_layouts(g, req.kind, req.pages, parts), counters, False


def _solve_kernel(req: SolveRequest) -> tuple[LinearLayout | None, dict[str, int]]:
    g = req.graph
    counters: dict[str, int] = {}
    dec = compute_vertex_integrity(g)
    assert dec is not None
    counters["vi"] = dec.p
    threshold_fn = (lambda x: req.threshold) if req.threshold is not None else None
    cert = build_reduced_graph(g, dec, req.pages, threshold_fn)
    counters["kernel_vertices"] = cert.graph.n
    counters["kernel_groups"] = cert.group_count

    if req.inner == "oracle":
        inner = oracle_solver(guard=req.oracle_guard)
    else:
        def inner(h: Graph, kind: LayoutKind, pages: int) -> LinearLayout | None:
            layout, sub_counters, _ = _solve_cutset(
                SolveRequest(h, "cutset", kind, pages, width=None,
                             oracle_guard=req.oracle_guard, edge_guard=req.edge_guard)
            )
            counters["states"] = counters.get("states", 0) + sub_counters["states"]
            return layout

    if cert.covers_whole_graph(g):
        return inner(g, req.kind, req.pages), counters
    kernel_layout = inner(cert.graph, req.kind, req.pages)
    if kernel_layout is None:
        return None, counters
    guide = None
    if cert.group_count >= 5:
        guide = find_guiding_sublayout(kernel_layout, cert)
    if guide is not None:
        counters["lifted"] = 1
        return lift_layout(guide, cert, g), counters
    counters["lifted"] = 0
    return inner(g, req.kind, req.pages), counters


def run(req: SolveRequest) -> RunReport:
    g = req.graph
    params: dict[str, object] = {
        "algorithm": req.algorithm,
        "kind": req.kind.value,
        "pages": req.pages,
        "width": req.width,
        "n": g.n,
        "m": g.m,
        "threads": req.threads,
    }
    counters: dict[str, int] = {}
    detail = ""
    t0 = time.perf_counter()
    try:
        if req.algorithm == "oracle":
            layout = solve_exhaustive(
                OracleQuery(g, req.kind, req.pages, req.width), guard=req.oracle_guard
            )
        elif req.algorithm == "cutset":
            layout, counters, bound_rejected = _solve_cutset(req)
            if bound_rejected:
                detail = "rejected by the edge-count bound"
        elif req.algorithm == "queue1":
            if not edge_count_bound(g, req.kind, req.pages):
                layout = None
                detail = "rejected by the edge-count bound"
            else:
                branch = solve_queue_one_page_report(g, edge_guard=req.edge_guard)
                counters["branches"] = branch.branches_tried
                layout = branch.layout
                if layout is not None and req.dump_branch is not None:
                    payload = {
                        "labeling": [
                            {"arc": list(arc), "tag": tag.value}
                            for arc, tag in zip(branch.labeling.arcs, branch.labeling.tags)
                        ]
                        if branch.labeling
                        else [],
                        "levels": branch.levels.levels if branch.levels else {},
                    }
                    _atomic_write(
                        req.dump_branch, json.dumps(payload, indent=2, sort_keys=True) + "\n"
                    )
        else:
            layout, counters = _solve_kernel(req)
    except (OracleSizeError, BranchGuardError) as exc:
        return RunReport(
            "refused",
            None,
            {"solve": (time.perf_counter() - t0) * 1000},
            counters,
            params,
            detail=str(exc),
        )
    solve_ms = (time.perf_counter() - t0) * 1000

    t1 = time.perf_counter()
    if layout is not None:
        report = validate_layout(g, layout)
        assert report.ok, f"solver returned an invalid layout: {report.violations!r}"
        if req.width is not None:
            assert page_width(layout) <= req.width
    validate_ms = (time.perf_counter() - t1) * 1000

    return RunReport(
        "found" if layout is not None else "infeasible",
        layout,
        {"solve": solve_ms, "validate": validate_ms},
        counters,
        params,
        detail=detail,
    )


def _atomic_write(path: str, data: str) -> None:
    tmp = f"{path}.tmp"
    with open(tmp, "w") as fh:
        fh.write(data)
    os.replace(tmp, path)


def report_to_dict(report: RunReport) -> dict:
    return {
        "verdict": report.verdict,
        "exit_code": report.exit_code,
        "layout": layout_to_dict(report.layout) if report.layout else None,
        "timings_ms": {k: round(v, 3) for k, v in report.timings_ms.items()},
        "counters": report.counters,
        "params": report.params,
        "detail": report.detail,
    }

"""Linear layouts: a spine order plus a page assignment, and their validators.

A stack page forbids two of its edges from crossing (u1 < u2 < v1 < v2 along
the spine); a queue page forbids two of its edges from nesting
(u1 < u2 < v2 < v1).  Edges sharing an endpoint never conflict.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Mapping

from .graphs import Edge, Graph, edge


class LayoutKind(enum.Enum):
    STACK = "stack"
    QUEUE = "queue"


class LayoutDomainError(ValueError):
    """Layout mentions vertices/edges that do not match the graph (or itself)."""


@dataclass(frozen=True)
class LinearLayout:
    kind: LayoutKind
    page_count: int
    spine: tuple[str, ...]
    pages: dict[Edge, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.page_count < 1:
            raise LayoutDomainError("page_count must be at least 1")

    def positions(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.spine)}

    def page_of(self, u: str, v: str) -> int:
        return self.pages[edge(u, v)]

    def relabel_pages(self, mapping: Mapping[int, int]) -> "LinearLayout":
        return LinearLayout(
            self.kind,
            self.page_count,
            self.spine,
            {e: mapping[p] for e, p in self.pages.items()},
        )


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple[tuple[Edge, Edge], ...] = ()


@dataclass(frozen=True)
class Cut:
    """A vertex bipartition together with the edges that cross it."""

    left: frozenset[str]
    right: frozenset[str]
    cut_set: frozenset[Edge]

    @classmethod
    def of(cls, g: Graph, left: frozenset[str] | set[str]) -> "Cut":
        left = frozenset(left)
        right = frozenset(g.vertices) - left
        crossing = frozenset(
            e for e in g.edges if (e[0] in left) != (e[1] in left)
        )
        return cls(left, right, crossing)


def _pair_conflicts(kind: LayoutKind, pos: Mapping[str, int], e: Edge, f: Edge) -> bool:
    if e[0] in f or e[1] in f:
        return False
    a1, b1 = sorted((pos[e[0]], pos[e[1]]))
    a2, b2 = sorted((pos[f[0]], pos[f[1]]))
    if a1 > a2:
        a1, b1, a2, b2 = a2, b2, a1, b1
    if kind is LayoutKind.STACK:
        return a1 < a2 < b1 < b2
    return a1 < a2 < b2 < b1


def _check_domain(g: Graph, layout: LinearLayout) -> dict[str, int]:
    if tuple(sorted(layout.spine)) != g.vertices or len(layout.spine) != g.n:
        raise LayoutDomainError("spine is not a permutation of the graph's vertices")
    if set(layout.pages) != set(g.edges):
        missing = set(g.edges) - set(layout.pages)
        extra = set(layout.pages) - set(g.edges)
        raise LayoutDomainError(
            f"page assignment does not cover the edge set exactly "
            f"(missing {sorted(missing)!r}, extra {sorted(extra)!r})"
        )
    bad = {e: p for e, p in layout.pages.items() if not 1 <= p <= layout.page_count}
    if bad:
        raise LayoutDomainError(f"page indices out of range: {bad!r}")
    return layout.positions()


def validate_layout(g: Graph, layout: LinearLayout) -> ValidationReport:
    """Check all layout invariants; report every offending same-page pair.

    Domain mismatches (unknown vertices or edges) raise
    :class:`LayoutDomainError` instead of being reported as violations.
    """
    pos = _check_domain(g, layout)
    by_page: dict[int, list[Edge]] = {}
    for e in g.edges:
        by_page.setdefault(layout.pages[e], []).append(e)
    violations = []
    for p in sorted(by_page):
        es = by_page[p]
        for i in range(len(es)):
            for j in range(i + 1, len(es)):
                if _pair_conflicts(layout.kind, pos, es[i], es[j]):
                    violations.append((es[i], es[j]))
    violations.sort()
    return ValidationReport(ok=not violations, violations=tuple(violations))


def spanning_edges(layout: LinearLayout, v: str) -> frozenset[Edge]:
    """Edges with one endpoint at or left of ``v`` and the other right of it."""
    pos = layout.positions()
    if v not in pos:
        raise LayoutDomainError(f"unknown vertex {v!r}")
    i = pos[v]
    out = []
    for e in layout.pages:
        if e[0] not in pos or e[1] not in pos:
            raise LayoutDomainError(f"edge {e!r} mentions a vertex missing from the spine")
        a, b = sorted((pos[e[0]], pos[e[1]]))
        if a <= i < b:
            out.append(e)
    return frozenset(out)


def page_width(layout: LinearLayout) -> int:
    """Maximum number of same-page edges spanning any single spine gap."""
    pos = layout.positions()
    n = len(layout.spine)
    if n == 0 or not layout.pages:
        return 0
    counts: dict[int, list[int]] = {}
    for e, p in layout.pages.items():
        if e[0] not in pos or e[1] not in pos:
            raise LayoutDomainError(f"edge {e!r} mentions a vertex missing from the spine")
        a, b = sorted((pos[e[0]], pos[e[1]]))
        per = counts.setdefault(p, [0] * n)
        for i in range(a, b):
            per[i] += 1
    return max(max(per) for per in counts.values())

"""Simple undirected graphs over opaque string vertex ids.

Vertex ids are ordered lexicographically; that order is the canonical
tie-breaker used by every solver in this package, so all derived sequences
(edge lists, components, neighbor lists) are kept sorted.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

Edge = tuple[str, str]


class GraphError(ValueError):
    """Violation of the graph construction rules (self-loop, parallel edge, ...)."""


def edge(u: str, v: str) -> Edge:
    """Canonical form of an undirected edge: endpoints in lexicographic order."""
    if u == v:
        raise GraphError(f"self-loop at {u!r}")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph; construct through :meth:`build` or :meth:`from_edges`."""

    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]

    @classmethod
    def build(cls, vertices: Iterable[str], edges: Iterable[tuple[str, str]]) -> "Graph":
        vs = tuple(sorted(set(vertices)))
        vset = set(vs)
        seen: set[Edge] = set()
        for u, v in edges:
            e = edge(u, v)
            if u not in vset or v not in vset:
                raise GraphError(f"edge {u!r}-{v!r} mentions an undeclared vertex")
            if e in seen:
                raise GraphError(f"parallel edge {e[0]!r}-{e[1]!r}")
            seen.add(e)
        return cls(vs, tuple(sorted(seen)))

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[str, str]], isolated: Iterable[str] = ()) -> "Graph":
        es = [edge(u, v) for u, v in edges]
        vs = {v for e in es for v in e} | set(isolated)
        return cls.build(vs, es)

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> dict[str, tuple[str, ...]]:
        adj: dict[str, list[str]] = {v: [] for v in self.vertices}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return {v: tuple(sorted(ns)) for v, ns in adj.items()}

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    def neighbors(self, v: str) -> tuple[str, ...]:
        if v not in self.adjacency:
            raise GraphError(f"unknown vertex {v!r}")
        return self.adjacency[v]

    def degree(self, v: str) -> int:
        return len(self.neighbors(v))

    def has_edge(self, u: str, v: str) -> bool:
        return u != v and edge(u, v) in self.edge_set

    def has_vertex(self, v: str) -> bool:
        return v in self.adjacency

    def components(self) -> tuple[tuple[str, ...], ...]:
        """Connected components, each sorted, listed by their smallest vertex."""
        seen: set[str] = set()
        comps: list[tuple[str, ...]] = []
        for start in self.vertices:
            if start in seen:
                continue
            queue = [start]
            seen.add(start)
            comp = []
            while queue:
                v = queue.pop()
                comp.append(v)
                for w in self.adjacency[v]:
                    if w not in seen:
                        seen.add(w)
                        queue.append(w)
            comps.append(tuple(sorted(comp)))
        return tuple(sorted(comps))

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def induced(self, vs: Iterable[str]) -> "Graph":
        keep = set(vs)
        unknown = keep - set(self.vertices)
        if unknown:
            raise GraphError(f"unknown vertices {sorted(unknown)!r}")
        return Graph.build(keep, [e for e in self.edges if e[0] in keep and e[1] in keep])

    def without_vertices(self, vs: Iterable[str]) -> "Graph":
        drop = set(vs)
        return self.induced(v for v in self.vertices if v not in drop)

    def subgraph_of_edges(self, edges: Iterable[Edge]) -> "Graph":
        """The graph (V(F), F) spanned by an edge subset."""
        es = list(edges)
        return Graph.build({v for e in es for v in e}, es)

    def iter_bfs(self, start: str) -> Iterator[str]:
        """Breadth-first vertex order from ``start``, neighbors in canonical order."""
        seen = {start}
        queue = [start]
        i = 0
        while i < len(queue):
            v = queue[i]
            i += 1
            yield v
            for w in self.adjacency[v]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)

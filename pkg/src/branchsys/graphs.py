"""Finite directed graphs: validation, paths, simple cycles, exits, and the
condition that every simple cycle has an exit."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (
    DanglingEdge,
    DuplicateId,
    GraphError,
    NotABasePoint,
    NotAPath,
    NonUniqueSimpleCycle,
    UnknownEdge,
    UnknownVertex,
)


@dataclass(frozen=True)
class Edge:
    id: str
    src: str
    dst: str


class DirectedGraph:
    """Finite directed graph with ordered vertex and edge lists.

    Edge order is the file order of the input; the standard interval layout
    and all reports depend on it, so it is preserved exactly.
    """

    def __init__(self, vertices: list[str], edges: list[Edge]):
        if not vertices:
            raise GraphError("graph must have at least one vertex")
        seen_v: set[str] = set()
        for v in vertices:
            if v in seen_v:
                raise DuplicateId(f"duplicate vertex id {v!r}")
            seen_v.add(v)
        seen_e: set[str] = set()
        for e in edges:
            if e.id in seen_e:
                raise DuplicateId(f"duplicate edge id {e.id!r}")
            seen_e.add(e.id)
            if e.src not in seen_v:
                raise DanglingEdge(f"edge {e.id!r} has unknown source {e.src!r}")
            if e.dst not in seen_v:
                raise DanglingEdge(f"edge {e.id!r} has unknown range vertex {e.dst!r}")
        self.vertices = list(vertices)
        self.edges = list(edges)
        self._edge_by_id = {e.id: e for e in edges}
        self._out: dict[str, list[Edge]] = {v: [] for v in vertices}
        self._in: dict[str, list[Edge]] = {v: [] for v in vertices}
        for e in edges:
            self._out[e.src].append(e)
            self._in[e.dst].append(e)

    def edge(self, edge_id: str) -> Edge:
        try:
            return self._edge_by_id[edge_id]
        except KeyError:
            raise UnknownEdge(f"no edge with id {edge_id!r}") from None

    def has_vertex(self, v: str) -> bool:
        return v in self._out

    def require_vertex(self, v: str) -> None:
        if v not in self._out:
            raise UnknownVertex(f"no vertex with id {v!r}")

    def out_edges(self, v: str) -> list[Edge]:
        self.require_vertex(v)
        return list(self._out[v])

    def in_edges(self, v: str) -> list[Edge]:
        self.require_vertex(v)
        return list(self._in[v])

    def out_degree(self, v: str) -> int:
        self.require_vertex(v)
        return len(self._out[v])

    def sinks(self) -> list[str]:
        return [v for v in self.vertices if not self._out[v]]

    def is_sink(self, v: str) -> bool:
        self.require_vertex(v)
        return not self._out[v]

    def __repr__(self) -> str:
        return f"DirectedGraph({len(self.vertices)} vertices, {len(self.edges)} edges)"


@dataclass(frozen=True)
class Path:
    """Nonempty finite path: edge ids with r(e_i) = s(e_{i+1})."""

    edges: tuple[str, ...]

    def __len__(self) -> int:
        return len(self.edges)

    def __str__(self) -> str:
        return ".".join(self.edges)


def validate_path(g: DirectedGraph, edge_ids: tuple[str, ...] | list[str]) -> Path:
    if not edge_ids:
        raise NotAPath("a path needs at least one edge")
    edges = [g.edge(x) for x in edge_ids]
    for a, b in zip(edges, edges[1:]):
        if a.dst != b.src:
            raise NotAPath(
                f"edges {a.id!r} and {b.id!r} do not compose: "
                f"r({a.id})={a.dst!r} but s({b.id})={b.src!r}"
            )
    return Path(tuple(edge_ids))


def path_source(g: DirectedGraph, p: Path) -> str:
    return g.edge(p.edges[0]).src


def path_range(g: DirectedGraph, p: Path) -> str:
    return g.edge(p.edges[-1]).dst


@dataclass(frozen=True)
class CycleInfo:
    path: Path
    base: str
    has_exit: bool
    exits: tuple[str, ...] = field(default=())


def _cycle_vertices(g: DirectedGraph, p: Path) -> list[str]:
    return [g.edge(x).src for x in p.edges]


def _cycle_exits(g: DirectedGraph, p: Path) -> list[str]:
    """Edges f with s(f) on the cycle and f not a cycle edge, in file order."""
    on_cycle = set(p.edges)
    verts = set(_cycle_vertices(g, p))
    return [e.id for e in g.edges if e.src in verts and e.id not in on_cycle]


def enumerate_simple_cycles(g: DirectedGraph) -> list[CycleInfo]:
    """All simple cycles (no repeated vertex), one per starting rotation.

    Each cycle is reported once, based at its first vertex in graph order,
    and results come out sorted by (base vertex position, edge id sequence).
    """
    order = {v: i for i, v in enumerate(g.vertices)}
    found: list[CycleInfo] = []

    def walk(start: str, here: str, trail: list[Edge], seen: set[str]) -> None:
        for e in sorted(g._out[here], key=lambda e: e.id):
            if e.dst == start:
                p = Path(tuple(x.id for x in trail) + (e.id,))
                exits = _cycle_exits(g, p)
                found.append(CycleInfo(p, start, bool(exits), tuple(exits)))
            elif e.dst not in seen and order[e.dst] > order[start]:
                walk(start, e.dst, trail + [e], seen | {e.dst})

    for v in g.vertices:
        walk(v, v, [], {v})
    found.sort(key=lambda c: (order[c.base], c.path.edges))
    return found


def condition_L(g: DirectedGraph) -> bool:
    """Every simple cycle has an exit."""
    return all(c.has_exit for c in enumerate_simple_cycles(g))


def exitless_base_points(g: DirectedGraph) -> list[str]:
    """Base vertices of exitless simple cycles, in graph order.

    A vertex on an exitless cycle lies on exactly one simple cycle, so each
    base point names its cycle unambiguously.
    """
    return [c.base for c in enumerate_simple_cycles(g) if not c.has_exit]


def exitless_cycle_at(g: DirectedGraph, base: str) -> CycleInfo:
    g.require_vertex(base)
    hits = [c for c in enumerate_simple_cycles(g) if not c.has_exit and c.base == base]
    if not hits:
        raise NotABasePoint(f"{base!r} is not the base of an exitless simple cycle")
    if len(hits) > 1:
        raise NonUniqueSimpleCycle(f"{base!r} bases more than one exitless cycle")
    return hits[0]


def cycle_vertices(g: DirectedGraph, c: CycleInfo) -> list[str]:
    return _cycle_vertices(g, c.path)

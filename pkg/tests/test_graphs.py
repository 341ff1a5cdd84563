"""Graph validation, simple-cycle enumeration, exits."""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from branchsys.errors import (
    DanglingEdge,
    DuplicateId,
    GraphError,
    NotABasePoint,
    NotAPath,
    UnknownEdge,
    UnknownVertex,
)
from branchsys.graphs import (
    CycleInfo,
    DirectedGraph,
    Edge,
    Path,
    condition_L,
    enumerate_simple_cycles,
    exitless_base_points,
    exitless_cycle_at,
    path_range,
    path_source,
    validate_path,
)


def g_of(vertices, edge_triples):
    return DirectedGraph(vertices, [Edge(*t) for t in edge_triples])


LOOP = g_of(["v"], [("e", "v", "v")])
TWO_CYCLE = g_of(["v", "w"], [("e1", "v", "w"), ("e2", "w", "v")])
CYCLE_WITH_EXIT = g_of(
    ["v", "w", "u"],
    [("e1", "v", "w"), ("e2", "w", "v"), ("f", "v", "u")],
)
SINK_FAN = g_of(["v", "s1", "s2"], [("a", "v", "s1"), ("b", "v", "s2")])


class TestValidation:
    def test_rejects_empty_vertex_list(self):
        with pytest.raises(GraphError):
            DirectedGraph([], [])

    def test_rejects_duplicates(self):
        with pytest.raises(DuplicateId):
            DirectedGraph(["v", "v"], [])
        with pytest.raises(DuplicateId):
            g_of(["v"], [("e", "v", "v"), ("e", "v", "v")])

    def test_rejects_dangling(self):
        with pytest.raises(DanglingEdge):
            g_of(["v"], [("e", "v", "x")])
        with pytest.raises(DanglingEdge):
            g_of(["v"], [("e", "x", "v")])

    def test_lookups(self):
        assert CYCLE_WITH_EXIT.edge("f").dst == "u"
        with pytest.raises(UnknownEdge):
            CYCLE_WITH_EXIT.edge("nope")
        with pytest.raises(UnknownVertex):
            CYCLE_WITH_EXIT.out_edges("nope")

    def test_adjacency_preserves_file_order(self):
        assert [e.id for e in SINK_FAN.out_edges("v")] == ["a", "b"]
        assert SINK_FAN.sinks() == ["s1", "s2"]
        assert SINK_FAN.is_sink("s1") and not SINK_FAN.is_sink("v")


class TestPaths:
    def test_validate_path(self):
        p = validate_path(TWO_CYCLE, ["e1", "e2", "e1"])
        assert path_source(TWO_CYCLE, p) == "v"
        assert path_range(TWO_CYCLE, p) == "w"
        assert str(p) == "e1.e2.e1"

    def test_rejects_noncomposable(self):
        with pytest.raises(NotAPath):
            validate_path(TWO_CYCLE, ["e1", "e1"])
        with pytest.raises(NotAPath):
            validate_path(TWO_CYCLE, [])
        with pytest.raises(UnknownEdge):
            validate_path(TWO_CYCLE, ["zz"])


class TestCycles:
    def test_single_loop(self):
        cs = enumerate_simple_cycles(LOOP)
        assert cs == [CycleInfo(Path(("e",)), "v", False, ())]
        assert not condition_L(LOOP)
        assert exitless_base_points(LOOP) == ["v"]

    def test_two_cycle(self):
        cs = enumerate_simple_cycles(TWO_CYCLE)
        assert len(cs) == 1
        assert cs[0].path == Path(("e1", "e2"))
        assert cs[0].base == "v"
        assert not cs[0].has_exit

    def test_exit_detection(self):
        cs = enumerate_simple_cycles(CYCLE_WITH_EXIT)
        assert len(cs) == 1
        assert cs[0].has_exit
        assert cs[0].exits == ("f",)
        assert condition_L(CYCLE_WITH_EXIT)
        assert exitless_base_points(CYCLE_WITH_EXIT) == []
        with pytest.raises(NotABasePoint):
            exitless_cycle_at(CYCLE_WITH_EXIT, "v")

    def test_two_loops_at_one_vertex_exit_each_other(self):
        g = g_of(["v"], [("e", "v", "v"), ("f", "v", "v")])
        cs = enumerate_simple_cycles(g)
        assert [c.path.edges for c in cs] == [("e",), ("f",)]
        assert all(c.has_exit for c in cs)
        assert condition_L(g)

    def test_acyclic(self):
        g = g_of(["a", "b"], [("e", "a", "b")])
        assert enumerate_simple_cycles(g) == []
        assert condition_L(g)

    def test_figure_eight_bases(self):
        g = g_of(
            ["v", "w", "u"],
            [("a", "v", "w"), ("b", "w", "v"), ("c", "v", "u"), ("d", "u", "v")],
        )
        cs = enumerate_simple_cycles(g)
        assert sorted(c.path.edges for c in cs) == [("a", "b"), ("c", "d")]
        assert all(c.base == "v" and c.has_exit for c in cs)


def brute_force_simple_cycles(g: DirectedGraph) -> set[tuple[str, ...]]:
    """Independent oracle: try every edge tuple up to the vertex count."""
    order = {v: i for i, v in enumerate(g.vertices)}
    out = set()
    ids = [e.id for e in g.edges]
    for n in range(1, len(g.vertices) + 1):
        for combo in itertools.product(ids, repeat=n):
            edges = [g.edge(x) for x in combo]
            if any(a.dst != b.src for a, b in zip(edges, edges[1:])):
                continue
            if edges[-1].dst != edges[0].src:
                continue
            verts = [e.src for e in edges]
            if len(set(verts)) != n:
                continue
            if any(order[v] < order[verts[0]] for v in verts):
                continue  # keep only the rotation based at the earliest vertex
            out.add(combo)
    return out


@st.composite
def small_graphs(draw):
    nv = draw(st.integers(min_value=1, max_value=4))
    vertices = [f"v{i}" for i in range(nv)]
    ne = draw(st.integers(min_value=0, max_value=6))
    edges = []
    for i in range(ne):
        edges.append(
            Edge(
                f"e{i}",
                draw(st.sampled_from(vertices)),
                draw(st.sampled_from(vertices)),
            )
        )
    return DirectedGraph(vertices, edges)


class TestCyclesAgainstBruteForce:
    @settings(max_examples=120, deadline=None)
    @given(small_graphs())
    def test_enumeration_matches_oracle(self, g):
        got = {c.path.edges for c in enumerate_simple_cycles(g)}
        assert got == brute_force_simple_cycles(g)

    @settings(max_examples=120, deadline=None)
    @given(small_graphs())
    def test_exits_match_oracle(self, g):
        for c in enumerate_simple_cycles(g):
            on_cycle = set(c.path.edges)
            verts = {g.edge(x).src for x in c.path.edges}
            expected = [
                e.id for e in g.edges if e.src in verts and e.id not in on_cycle
            ]
            assert list(c.exits) == expected
            assert c.has_exit == bool(expected)

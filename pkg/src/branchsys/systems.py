"""Branching systems over a graph: range sets R_e, domain sets D_v, and the
branch maps f_e : D_{r(e)} -> R_e, with exact verification of the defining
axioms.

The standard layout puts the range of the i-th edge (file order, 1-based) at
[i-1, i) and gives the i-th sink the domain [-i, 1-i); a non-sink's domain is
the union of its out-edges' ranges. Two builders fill in the maps:

* the plain affine rule sends D_{r(e)} onto R_e order-preservingly at
  constant slope, and
* the rotation rule additionally twists every edge lying on an exitless
  simple cycle by a chosen offset theta in [0, 1), which is what produces
  irrational-rotation dynamics on the cycle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional

from .errors import EmptyRangeDomain, LayoutError, ThetaOutOfRange
from .graphs import DirectedGraph, Path, enumerate_simple_cycles, validate_path
from .intervals import AffineBranch, Interval, IntervalSet, PiecewiseAffineMap
from .scalars import QuadScalar


@dataclass
class BranchingSystem:
    graph: DirectedGraph
    ranges: dict[str, IntervalSet]
    domains: dict[str, IntervalSet]
    maps: dict[str, PiecewiseAffineMap]
    field_d: int = 2
    thetas: dict[str, QuadScalar] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def range_of(self, edge_id: str) -> IntervalSet:
        self.graph.edge(edge_id)
        return self.ranges[edge_id]

    def domain_of(self, vertex: str) -> IntervalSet:
        self.graph.require_vertex(vertex)
        return self.domains[vertex]

    def map_of(self, edge_id: str) -> PiecewiseAffineMap:
        self.graph.edge(edge_id)
        return self.maps[edge_id]

    def carrier(self) -> IntervalSet:
        out = IntervalSet.empty()
        for s in self.domains.values():
            out = out.union(s)
        return out


def standard_layout(
    g: DirectedGraph,
) -> tuple[dict[str, IntervalSet], dict[str, IntervalSet]]:
    ranges: dict[str, IntervalSet] = {}
    for i, e in enumerate(g.edges, start=1):
        ranges[e.id] = IntervalSet.of(i - 1, i)
    domains: dict[str, IntervalSet] = {}
    sink_index = 0
    for v in g.vertices:
        out = g.out_edges(v)
        if out:
            d = IntervalSet.empty()
            for e in out:
                d = d.union(ranges[e.id])
            domains[v] = d
        else:
            sink_index += 1
            domains[v] = IntervalSet.of(-sink_index, 1 - sink_index)
    return ranges, domains


def _constant_slope_map(src: IntervalSet, dst: IntervalSet) -> PiecewiseAffineMap:
    """Order-preserving map src -> dst at a single rational slope.

    dst must be one interval here; src may have several components."""
    if not src:
        raise EmptyRangeDomain("map source is empty")
    if not dst:
        raise EmptyRangeDomain("map target is empty")
    if len(dst.parts) != 1:
        raise LayoutError("constant-slope rule expects a single target interval")
    ratio = dst.measure() / src.measure()
    if not ratio.is_rational():
        raise LayoutError(
            f"constant-slope rule needs a rational measure ratio, got {ratio}"
        )
    slope = Fraction(ratio.a)
    cursor = dst.parts[0].lo
    branches = []
    for piece in src:
        branches.append(AffineBranch(piece, slope, cursor - slope * piece.lo))
        cursor = cursor + slope * piece.length()
    return PiecewiseAffineMap(branches)


def build_affine_system(g: DirectedGraph, d: int = 2) -> BranchingSystem:
    """Standard layout with the plain order-preserving affine maps."""
    ranges, domains = standard_layout(g)
    maps = {}
    for e in g.edges:
        maps[e.id] = _constant_slope_map(domains[e.dst], ranges[e.id])
    return BranchingSystem(g, ranges, domains, maps, field_d=d)


def _rotation_branches(
    k: QuadScalar, l: QuadScalar, theta: QuadScalar
) -> PiecewiseAffineMap:
    """Translate [k, k+1) onto [l, l+1) and rotate by theta in [0, 1)."""
    one = QuadScalar(1)
    shift = l - k + theta
    if theta == QuadScalar(0):
        return PiecewiseAffineMap(
            [AffineBranch(Interval(k, k + one), Fraction(1), shift)]
        )
    cut = k + one - theta
    return PiecewiseAffineMap(
        [
            AffineBranch(Interval(k, cut), Fraction(1), shift),
            AffineBranch(Interval(cut, k + one), Fraction(1), shift - one),
        ]
    )


def build_rotation_system(
    g: DirectedGraph,
    thetas: Optional[Mapping[str, QuadScalar]] = None,
    d: int = 2,
) -> BranchingSystem:
    """Standard layout; edges on exitless simple cycles get rotation maps.

    thetas assigns each such edge its offset in [0, 1). Entries for edges not
    on any exitless cycle are ignored with a note; missing entries default to
    zero with a note. Edges off the exitless cycles get the plain affine rule.
    """
    thetas = dict(thetas or {})
    for edge_id, theta in thetas.items():
        g.edge(edge_id)
        if theta < 0 or theta >= 1:
            raise ThetaOutOfRange(
                f"theta for edge {edge_id!r} must lie in [0, 1), got {theta}"
            )
    ranges, domains = standard_layout(g)
    notes: list[str] = []
    effective: dict[str, QuadScalar] = {}
    maps: dict[str, PiecewiseAffineMap] = {}
    on_cycle: set[str] = set()
    for cyc in enumerate_simple_cycles(g):
        if cyc.has_exit:
            continue
        for edge_id in cyc.path.edges:
            on_cycle.add(edge_id)
            theta = thetas.get(edge_id)
            if theta is None:
                theta = QuadScalar(0)
                notes.append(
                    f"edge {edge_id!r} lies on an exitless cycle but has no "
                    "theta entry; defaulting to 0"
                )
            effective[edge_id] = theta
            e = g.edge(edge_id)
            k = domains[e.dst].parts[0].lo
            l = ranges[edge_id].parts[0].lo
            maps[edge_id] = _rotation_branches(k, l, theta)
    for edge_id in thetas:
        if edge_id not in on_cycle:
            notes.append(
                f"theta entry for edge {edge_id!r} ignored: the edge is not "
                "on an exitless simple cycle"
            )
    for e in g.edges:
        if e.id not in maps:
            maps[e.id] = _constant_slope_map(domains[e.dst], ranges[e.id])
    return BranchingSystem(
        g, ranges, domains, maps, field_d=d, thetas=effective, notes=notes
    )


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str = ""
    # step function separating the two sides of a failed operator identity;
    # set-level checks leave it None and describe the defect in `detail`
    witness: object | None = None


@dataclass
class AxiomReport:
    checks: list[CheckResult]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.ok]


def verify_axioms(bs: BranchingSystem) -> AxiomReport:
    """Exactly check the five branching-system axioms, with witnesses."""
    g = bs.graph
    checks: list[CheckResult] = []

    bad = []
    for i, e in enumerate(g.edges):
        for f in g.edges[i + 1 :]:
            hit = bs.ranges[e.id].intersect(bs.ranges[f.id])
            if hit:
                bad.append(f"R_{e.id} meets R_{f.id} on {hit}")
    checks.append(
        CheckResult("ranges pairwise disjoint", not bad, "; ".join(bad))
    )

    bad = []
    for v in g.vertices:
        if not bs.domains[v]:
            bad.append(f"D_{v} is empty")
    for i, v in enumerate(g.vertices):
        for w in g.vertices[i + 1 :]:
            hit = bs.domains[v].intersect(bs.domains[w])
            if hit:
                bad.append(f"D_{v} meets D_{w} on {hit}")
    checks.append(
        CheckResult("domains nonempty and pairwise disjoint", not bad, "; ".join(bad))
    )

    bad = []
    for e in g.edges:
        extra = bs.ranges[e.id].difference(bs.domains[e.src])
        if extra:
            bad.append(f"R_{e.id} is not inside D_{e.src}: extra part {extra}")
    checks.append(
        CheckResult("each range sits inside its source-vertex domain", not bad, "; ".join(bad))
    )

    bad = []
    for v in g.vertices:
        out = g.out_edges(v)
        if not out:
            continue
        union = IntervalSet.empty()
        for e in out:
            union = union.union(bs.ranges[e.id])
        if union != bs.domains[v]:
            missing = bs.domains[v].difference(union)
            extra = union.difference(bs.domains[v])
            bad.append(
                f"D_{v} != union of out-edge ranges"
                f" (missing {missing if missing else 'nothing'},"
                f" extra {extra if extra else 'nothing'})"
            )
    checks.append(
        CheckResult("non-sink domains partition into out-edge ranges", not bad, "; ".join(bad))
    )

    bad = []
    for e in g.edges:
        m = bs.maps[e.id]
        if m.domain() != bs.domains[e.dst]:
            bad.append(
                f"f_{e.id} is defined on {m.domain()}, expected D_{e.dst} = {bs.domains[e.dst]}"
            )
            continue
        if m.image() != bs.ranges[e.id]:
            bad.append(
                f"f_{e.id} lands on {m.image()}, expected R_{e.id} = {bs.ranges[e.id]}"
            )
            continue
        inv = m.inverse()
        if not m.after(inv).is_identity() or not inv.after(m).is_identity():
            bad.append(f"f_{e.id} does not invert cleanly")
            continue
        for b in m.branches:
            if b.slope * b.invert().slope != 1:
                bad.append(f"f_{e.id} derivative mismatch on {b.src}")
    checks.append(
        CheckResult("branch maps are bijections with the stated data", not bad, "; ".join(bad))
    )

    return AxiomReport(checks)


def compose_path_map(bs: BranchingSystem, path: Path | list[str]) -> PiecewiseAffineMap:
    """Map of a path e1...en: f_{e1} after ... after f_{en}.

    Defined on (a subset of) D at the path's range vertex, landing in R_{e1}.
    """
    if not isinstance(path, Path):
        path = validate_path(bs.graph, path)
    else:
        validate_path(bs.graph, path.edges)
    m = bs.maps[path.edges[-1]]
    for edge_id in reversed(path.edges[:-1]):
        m = bs.maps[edge_id].after(m)
    return m

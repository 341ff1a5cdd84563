"""Operators induced by a branching system on step functions.

Every operator that arises from the generating family (vertex projections,
edge operators, their adjoints, and sums/products of these) is a finite sum
of weighted composition terms

    (T phi)(y) = weight * phi(slope * y + offset)   for y in target,

with exact weight, rational slope and exact offset. Collecting terms by
their inner affine map and canonicalizing each weight function makes
equality of such sums syntactic, because distinct affine maps agree at no
more than one point.

Two conventions are supported for the edge operators:

* mode "cstar": the edge operator carries the square root of the measure
  distortion of its branch, so that it is an isometry in the L2 pairing and
  the adjoint relation holds exactly;
* mode "algebraic": plain composition with indicator cutoffs, weight one,
  which realizes the purely algebraic relations over the rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Literal, Optional

from .errors import SinkOrInfiniteEmitter
from .graphs import Path, validate_path
from .intervals import Interval, IntervalSet
from .scalars import QuadScalar, RadCoeff
from .stepfuncs import StepFunction
from .systems import AxiomReport, BranchingSystem, CheckResult

Mode = Literal["cstar", "algebraic"]


def _check_mode(mode: str) -> None:
    if mode not in ("cstar", "algebraic"):
        raise ValueError(f"mode must be 'cstar' or 'algebraic', got {mode!r}")


@dataclass(frozen=True)
class OpTerm:
    """One weighted composition term; the inner map is y -> slope*y + offset."""

    target: Interval
    slope: Fraction
    offset: QuadScalar
    weight: RadCoeff

    def inner_image(self) -> Interval:
        return Interval(
            self.slope * self.target.lo + self.offset,
            self.slope * self.target.hi + self.offset,
        )


class CanonicalOperator:
    """Finite sum of weighted composition terms in canonical form.

    Terms with the same inner map are collected and their weight functions
    put in step-function canonical form; zero weights drop out. Equal
    canonical forms mean equal operators, and a nonzero canonical form is a
    nonzero operator.
    """

    __slots__ = ("terms",)

    terms: tuple[OpTerm, ...]

    def __init__(self, terms: Iterable[OpTerm] = ()):
        groups: dict[tuple[Fraction, QuadScalar], StepFunction] = {}
        for t in terms:
            key = (t.slope, t.offset)
            piece = StepFunction([(t.target, t.weight)])
            got = groups.get(key)
            groups[key] = piece if got is None else got + piece
        out: list[OpTerm] = []
        for (slope, offset), weight_fn in groups.items():
            for target, weight in weight_fn.pieces:
                out.append(OpTerm(target, slope, offset, weight))
        out.sort(key=lambda t: (t.target.lo, t.target.hi, t.slope, t.offset))
        object.__setattr__(self, "terms", tuple(out))

    @staticmethod
    def zero() -> "CanonicalOperator":
        return CanonicalOperator()

    @staticmethod
    def multiplication_by(s: IntervalSet, weight=1) -> "CanonicalOperator":
        w = weight if isinstance(weight, RadCoeff) else RadCoeff.from_rational(weight)
        return CanonicalOperator(
            OpTerm(p, Fraction(1), QuadScalar(0), w) for p in s
        )

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, CanonicalOperator):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def __add__(self, other: "CanonicalOperator") -> "CanonicalOperator":
        if not isinstance(other, CanonicalOperator):
            return NotImplemented
        return CanonicalOperator(self.terms + other.terms)

    def __neg__(self) -> "CanonicalOperator":
        return self.scale(Fraction(-1))

    def __sub__(self, other: "CanonicalOperator") -> "CanonicalOperator":
        if not isinstance(other, CanonicalOperator):
            return NotImplemented
        return self + (-other)

    def scale(self, coeff) -> "CanonicalOperator":
        c = coeff if isinstance(coeff, RadCoeff) else RadCoeff.from_rational(coeff)
        return CanonicalOperator(
            OpTerm(t.target, t.slope, t.offset, t.weight * c) for t in self.terms
        )

    def after(self, inner: "CanonicalOperator") -> "CanonicalOperator":
        """Composite self(inner(phi))."""
        out = []
        for a in self.terms:
            for b in inner.terms:
                # need a's inner map to land in b's target
                lo = (b.target.lo - a.offset) / a.slope
                hi = (b.target.hi - a.offset) / a.slope
                cut = Interval(lo, hi).intersect(a.target)
                if cut is None:
                    continue
                out.append(
                    OpTerm(
                        cut,
                        b.slope * a.slope,
                        b.slope * a.offset + b.offset,
                        a.weight * b.weight,
                    )
                )
        return CanonicalOperator(out)

    def apply(self, phi: StepFunction) -> StepFunction:
        total = StepFunction.zero()
        for t in self.terms:
            contrib = []
            for p, v in phi.pieces:
                lo = (p.lo - t.offset) / t.slope
                hi = (p.hi - t.offset) / t.slope
                cut = Interval(lo, hi).intersect(t.target)
                if cut is not None:
                    contrib.append((cut, t.weight * v))
            total = total + StepFunction(contrib)
        return total

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        rows = [
            f"({t.weight}) on {t.target} via y -> {t.slope}*y + {t.offset}"
            for t in self.terms
        ]
        return "; ".join(rows)

    def __repr__(self) -> str:
        return f"CanonicalOperator({len(self.terms)} terms)"


def op_vertex(bs: BranchingSystem, vertex: str) -> CanonicalOperator:
    """Projection: multiplication by the indicator of D_vertex."""
    return CanonicalOperator.multiplication_by(bs.domain_of(vertex))


def op_edge(bs: BranchingSystem, edge_id: str, mode: Mode = "cstar") -> CanonicalOperator:
    """Edge operator, supported on R_e: phi goes through the inverse branch
    map, weighted by the square root of the inverse branch slope in cstar
    mode and by one in algebraic mode."""
    _check_mode(mode)
    terms = []
    for b in bs.map_of(edge_id).branches:
        inv = b.invert()
        if mode == "cstar":
            weight = RadCoeff.sqrt_rational(inv.slope)
        else:
            weight = RadCoeff.one()
        terms.append(OpTerm(inv.src, inv.slope, inv.offset, weight))
    return CanonicalOperator(terms)


def op_edge_adjoint(
    bs: BranchingSystem, edge_id: str, mode: Mode = "cstar"
) -> CanonicalOperator:
    """Adjoint edge operator, supported on D_{r(e)}: phi goes through the
    branch map itself, weighted by the square root of the branch slope in
    cstar mode and by one in algebraic mode."""
    _check_mode(mode)
    terms = []
    for b in bs.map_of(edge_id).branches:
        if mode == "cstar":
            weight = RadCoeff.sqrt_rational(b.slope)
        else:
            weight = RadCoeff.one()
        terms.append(OpTerm(b.src, b.slope, b.offset, weight))
    return CanonicalOperator(terms)


def op_path(bs: BranchingSystem, path: Path | list[str], mode: Mode = "cstar") -> CanonicalOperator:
    if not isinstance(path, Path):
        path = validate_path(bs.graph, path)
    op = op_edge(bs, path.edges[0], mode)
    for edge_id in path.edges[1:]:
        op = op.after(op_edge(bs, edge_id, mode))
    return op


def op_path_adjoint(
    bs: BranchingSystem, path: Path | list[str], mode: Mode = "cstar"
) -> CanonicalOperator:
    if not isinstance(path, Path):
        path = validate_path(bs.graph, path)
    op = op_edge_adjoint(bs, path.edges[-1], mode)
    for edge_id in reversed(path.edges[:-1]):
        op = op.after(op_edge_adjoint(bs, edge_id, mode))
    return op


def verify_relations(bs: BranchingSystem, mode: Mode = "cstar") -> AxiomReport:
    """Exactly check the generating relations of the induced representation.

    A failed check carries a step-function witness on which the two sides of
    the first broken identity differ.
    """
    _check_mode(mode)
    g = bs.graph
    checks: list[CheckResult] = []
    edge_ops = {e.id: op_edge(bs, e.id, mode) for e in g.edges}
    adj_ops = {e.id: op_edge_adjoint(bs, e.id, mode) for e in g.edges}
    vertex_ops = {v: op_vertex(bs, v) for v in g.vertices}

    bad: list[str]
    witness: Optional[StepFunction]

    def note(msg: str, defect: CanonicalOperator) -> None:
        nonlocal witness
        bad.append(msg)
        if witness is None:
            try:
                witness = nonzero_witness(defect)
            except RuntimeError:
                witness = None

    bad, witness = [], None
    for e in g.edges:
        got = adj_ops[e.id].after(edge_ops[e.id])
        if got != vertex_ops[e.dst]:
            note(
                f"adjoint({e.id}) after edge({e.id}) is not the projection at {e.dst}",
                got - vertex_ops[e.dst],
            )
    checks.append(
        CheckResult("co-isometry relation on each edge", not bad, "; ".join(bad), witness)
    )

    bad, witness = [], None
    for e in g.edges:
        for f in g.edges:
            if e.id == f.id:
                continue
            got = adj_ops[e.id].after(edge_ops[f.id])
            if not got.is_zero():
                note(f"adjoint({e.id}) after edge({f.id}) is nonzero", got)
    checks.append(
        CheckResult("distinct edges have orthogonal ranges", not bad, "; ".join(bad), witness)
    )

    bad, witness = [], None
    for v in g.vertices:
        out = g.out_edges(v)
        if not out:
            continue
        total = CanonicalOperator.zero()
        for e in out:
            total = total + edge_ops[e.id].after(adj_ops[e.id])
        if total != vertex_ops[v]:
            note(
                f"sum of range projections at {v} differs from the vertex projection",
                total - vertex_ops[v],
            )
    checks.append(
        CheckResult("vertex projections split over out-edges", not bad, "; ".join(bad), witness)
    )

    bad, witness = [], None
    for e in g.edges:
        range_proj = edge_ops[e.id].after(adj_ops[e.id])
        dominated = vertex_ops[e.src].after(range_proj)
        if dominated != range_proj:
            note(
                f"range projection of {e.id} is not dominated by the projection at {e.src}",
                dominated - range_proj,
            )
    checks.append(
        CheckResult(
            "range projections sit under their source projections", not bad, "; ".join(bad), witness
        )
    )

    bad, witness = [], None
    for v in g.vertices:
        squared = vertex_ops[v].after(vertex_ops[v])
        if squared != vertex_ops[v]:
            note(f"projection at {v} is not idempotent", squared - vertex_ops[v])
        for w in g.vertices:
            if v < w:
                overlap = vertex_ops[v].after(vertex_ops[w])
                if not overlap.is_zero():
                    note(f"projections at {v} and {w} are not orthogonal", overlap)
    checks.append(
        CheckResult(
            "vertex projections are orthogonal idempotents", not bad, "; ".join(bad), witness
        )
    )

    bad, witness = [], None
    for e in g.edges:
        ve = vertex_ops[e.src].after(edge_ops[e.id])
        ev = edge_ops[e.id].after(vertex_ops[e.dst])
        if ve != edge_ops[e.id]:
            note(
                f"edge({e.id}) is not compatible with its endpoint projections",
                ve - edge_ops[e.id],
            )
        elif ev != edge_ops[e.id]:
            note(
                f"edge({e.id}) is not compatible with its endpoint projections",
                ev - edge_ops[e.id],
            )
    checks.append(
        CheckResult(
            "edges compose with their endpoint projections", not bad, "; ".join(bad), witness
        )
    )

    return AxiomReport(checks)


def range_projection_sum(bs: BranchingSystem, vertex: str, mode: Mode = "cstar") -> CanonicalOperator:
    """Sum of edge range projections at a vertex; the vertex must emit."""
    out = bs.graph.out_edges(vertex)
    if not out:
        raise SinkOrInfiniteEmitter(f"vertex {vertex!r} emits no edges")
    total = CanonicalOperator.zero()
    for e in out:
        total = total + op_edge(bs, e.id, mode).after(op_edge_adjoint(bs, e.id, mode))
    return total


_WITNESS_DEPTH_CAP = 24
_WITNESS_BUDGET = 20000


def nonzero_witness(op: CanonicalOperator) -> Optional[StepFunction]:
    """A step function phi with op(phi) != 0, or None for the zero operator.

    Candidates are indicators of the term targets and of their images under
    the inner maps, subdivided dyadically at increasing depth. Distinct
    affine maps agree at no more than one point, so shrinking pieces
    eventually separate the terms and the search terminates.
    """
    if op.is_zero():
        return None
    bases: list[Interval] = []
    for t in op.terms:
        bases.append(t.inner_image())
        bases.append(t.target)
    tested = 0
    for depth in range(_WITNESS_DEPTH_CAP + 1):
        parts = 2 ** depth
        for base in bases:
            width = base.length() * Fraction(1, parts)
            for k in range(parts):
                lo = base.lo + width * k
                phi = StepFunction.indicator(IntervalSet([Interval(lo, lo + width)]))
                tested += 1
                if op.apply(phi):
                    return phi
                if tested > _WITNESS_BUDGET:
                    raise RuntimeError(
                        "witness search exhausted its budget on a nonzero operator"
                    )
    raise RuntimeError("witness search hit the depth cap on a nonzero operator")

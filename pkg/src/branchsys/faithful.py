"""Faithfulness analysis for rotation systems, and the two counterexample
constructions that witness the converse of the uniqueness theorem.

At a base point w of an exitless simple cycle the composite cycle map is a
rotation of the interval D_w; call its angle theta_w. The criterion is a
dichotomy in theta_w:

* irrational: no power of the cycle returns, and a short interval F at the
  left end of D_w is exactly disjoint from all its images under the cycle
  powers under scrutiny (a separating set);
* rational p/q in lowest terms: the q-fold cycle map is the identity, so
  s_{alpha^q} - p_w maps to zero while every lower power stays visibly
  nonzero.

When the graph has an exitless cycle at all, one can also force theta_w = 0
by construction. Re-enumerating the edges so the cycle comes first makes
every cycle-edge map a plain translation, the full cycle map the identity,
and s_alpha* - p_{s(alpha_1)} a kernel element even though no vertex
projection vanishes: the induced representation cannot be faithful. The
algebraic variant additionally builds a second system whose perturbed first
cycle edge bends the cycle map away from the identity, which certifies that
the same element is nonzero in the algebra itself.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import ConditionLHolds, LayoutError, NotABasePoint, RationalTheta
from .graphs import CycleInfo, DirectedGraph, Path, enumerate_simple_cycles
from .intervals import AffineBranch, Interval, IntervalSet, PiecewiseAffineMap
from .operators import nonzero_witness, op_vertex
from .scalars import QuadScalar
from .stepfuncs import StepFunction
from .systems import (
    BranchingSystem,
    build_affine_system,
    compose_path_map,
    verify_axioms,
)
from .terms import LeavittTerm, evaluate, is_in_kernel


def _exitless_cycle(g: DirectedGraph, base: str) -> CycleInfo:
    hits = [
        c for c in enumerate_simple_cycles(g) if not c.has_exit and c.base == base
    ]
    if not hits:
        raise NotABasePoint(f"{base!r} is not the base of an exitless simple cycle")
    return hits[0]


def cycle_rotation(
    bs: BranchingSystem, base: str
) -> tuple[CycleInfo, PiecewiseAffineMap, QuadScalar]:
    """The cycle at a base point, its composite map, and its angle theta_w.

    The composite must be a rotation of the single interval D_w; anything
    else means the system was not built by the rotation rule."""
    cycle = _exitless_cycle(bs.graph, base)
    m = compose_path_map(bs, cycle.path)
    dom = bs.domain_of(base)
    if len(dom.parts) != 1 or m.domain() != dom or m.image() != dom:
        raise LayoutError(
            f"cycle map at {base!r} is not a self-bijection of a single interval"
        )
    if any(b.slope != 1 for b in m.branches) or len(m.branches) > 2:
        raise LayoutError(f"cycle map at {base!r} is not a rotation")
    l1 = dom.parts[0].lo
    theta = m.at(l1) - l1
    return cycle, m, theta


def theta_at(bs: BranchingSystem, base: str) -> QuadScalar:
    return cycle_rotation(bs, base)[2]


def separating_set(
    bs: BranchingSystem, base: str, powers: list[int]
) -> IntervalSet:
    """F = [l1, l1 + margin/2) at the left end of D_base, exactly disjoint
    from its image under every listed power of the cycle.

    The margin is the smallest distance from any power's rotation angle to
    the integers; half of it keeps F clear of all the rotated copies. The
    disjointness is re-verified exactly, power by power."""
    if not powers or any(q < 1 for q in powers):
        raise ValueError("powers must be a nonempty list of positive integers")
    cycle, _, theta = cycle_rotation(bs, base)
    if theta.is_rational():
        raise RationalTheta(
            f"theta at {base!r} is the rational {theta}; no separating set exists "
            "for the power equal to its reduced denominator"
        )
    l1 = bs.domain_of(base).parts[0].lo
    margin: Optional[QuadScalar] = None
    for q in powers:
        frac = (theta * q).mod_one()
        for candidate in (frac, QuadScalar(1) - frac):
            if margin is None or candidate < margin:
                margin = candidate
    assert margin is not None and margin.sign() > 0
    c = l1 + margin * Fraction(1, 2)
    sep = IntervalSet([Interval(l1, c)])
    for q in powers:
        beta = Path(cycle.path.edges * q)
        moved = compose_path_map(bs, beta).apply_set(sep)
        if not moved.is_disjoint(sep):
            raise RuntimeError(
                f"separating set failed exact disjointness at power {q}"
            )
    return sep


_EXPONENT_NOTE = (
    "kernel exponent is the reduced denominator q of theta_w = p/q "
    "(q*theta_w is an integer, so the q-fold cycle map is the identity); "
    "powers below q, including the numerator p when p < q, are not in "
    "the kernel"
)


@dataclass
class CycleVerdict:
    base: str
    cycle: Path
    theta: QuadScalar
    rational: bool
    exponent: Optional[int] = None
    kernel_term: Optional[LeavittTerm] = None
    kernel_confirmed: Optional[bool] = None
    separating: Optional[IntervalSet] = None
    powers: tuple[int, ...] = ()
    note: str = ""


@dataclass
class FaithfulnessVerdict:
    condition_L: bool
    faithful: bool
    max_power: int
    records: list[CycleVerdict] = field(default_factory=list)

    def reason(self) -> str:
        if self.condition_L:
            return "every simple cycle has an exit; the criterion is vacuous"
        if self.faithful:
            return "theta is irrational at every exitless-cycle base point"
        bad = [r.base for r in self.records if r.rational]
        return f"rational theta at base point(s) {', '.join(bad)}"


def cycle_power_term(g: DirectedGraph, cycle: Path, n: int, base: str) -> LeavittTerm:
    """s_{alpha^n} - p_base."""
    return LeavittTerm.path(g, list(cycle.edges) * n) - LeavittTerm.vertex(base)


def faithfulness_check(bs: BranchingSystem, max_power: int = 10) -> FaithfulnessVerdict:
    """Decide the criterion at every base point of an exitless simple cycle.

    Irrational theta_w: exhibit a separating set for all powers up to
    max_power. Rational theta_w = p/q: exhibit the kernel element
    s_{alpha^q} - p_w and confirm exactly that it maps to zero."""
    if max_power < 1:
        raise ValueError("max_power must be positive")
    g = bs.graph
    cycles = enumerate_simple_cycles(g)
    cond_L = all(c.has_exit for c in cycles)
    verdict = FaithfulnessVerdict(
        condition_L=cond_L, faithful=True, max_power=max_power
    )
    for cyc in cycles:
        if cyc.has_exit:
            continue
        _, _, theta = cycle_rotation(bs, cyc.base)
        if theta.is_rational():
            q = theta.a.denominator
            term = cycle_power_term(g, cyc.path, q, cyc.base)
            confirmed = evaluate(bs, term, "cstar").is_zero()
            verdict.records.append(
                CycleVerdict(
                    base=cyc.base,
                    cycle=cyc.path,
                    theta=theta,
                    rational=True,
                    exponent=q,
                    kernel_term=term,
                    kernel_confirmed=confirmed,
                    note=_EXPONENT_NOTE,
                )
            )
            verdict.faithful = False
        else:
            powers = list(range(1, max_power + 1))
            sep = separating_set(bs, cyc.base, powers)
            verdict.records.append(
                CycleVerdict(
                    base=cyc.base,
                    cycle=cyc.path,
                    theta=theta,
                    rational=False,
                    separating=sep,
                    powers=tuple(powers),
                )
            )
    return verdict


def kernel_power_scan(
    bs: BranchingSystem, base: str, up_to: int
) -> list[tuple[int, bool, Optional[StepFunction]]]:
    """For n = 1..up_to: is s_{alpha^n} - p_base in the kernel, with a
    witness function when it is not."""
    cycle = _exitless_cycle(bs.graph, base)
    out = []
    for n in range(1, up_to + 1):
        term = cycle_power_term(bs.graph, cycle.path, n, base)
        in_ker, witness = is_in_kernel(bs, term, "cstar")
        out.append((n, in_ker, witness))
    return out


def _first_exitless_cycle(g: DirectedGraph) -> CycleInfo:
    for c in enumerate_simple_cycles(g):
        if not c.has_exit:
            return c
    raise ConditionLHolds(
        "every simple cycle of the graph has an exit; the converse "
        "construction needs an exitless cycle"
    )


def reorder_for_cycle(g: DirectedGraph) -> tuple[DirectedGraph, CycleInfo]:
    """Re-enumerate edges so the first exitless cycle's edges come first, in
    cycle order; everything else keeps its file order."""
    cycle = _first_exitless_cycle(g)
    head = [g.edge(x) for x in cycle.path.edges]
    chosen = set(cycle.path.edges)
    tail = [e for e in g.edges if e.id not in chosen]
    g2 = DirectedGraph(list(g.vertices), head + tail)
    return g2, _first_exitless_cycle(g2)


@dataclass
class ConverseCstarReport:
    system: BranchingSystem
    cycle: CycleInfo
    kernel_term: LeavittTerm
    kernel_confirmed: bool
    vertex_witnesses: dict[str, StepFunction]

    @property
    def vertices_nonzero(self) -> bool:
        return all(bool(w) for w in self.vertex_witnesses.values())


def converse_ckut_cstar(g: DirectedGraph) -> ConverseCstarReport:
    """Branching system on which no vertex projection vanishes yet
    s_alpha* - p_{s(alpha_1)} maps to zero, so the representation cannot be
    faithful. Requires an exitless cycle."""
    g2, cycle = reorder_for_cycle(g)
    bs = build_affine_system(g2)
    term = LeavittTerm.path_adjoint(g2, list(cycle.path.edges)) - LeavittTerm.vertex(
        cycle.base
    )
    confirmed = evaluate(bs, term, "cstar").is_zero()
    witnesses = {}
    for v in g2.vertices:
        w = nonzero_witness(op_vertex(bs, v))
        assert w is not None  # domains are nonempty by construction
        witnesses[v] = w
    return ConverseCstarReport(bs, cycle, term, confirmed, witnesses)


def _perturb_first_cycle_edge(bs: BranchingSystem, cycle: CycleInfo) -> BranchingSystem:
    """Replace f_{alpha_1} by a two-slope increasing bijection of the same
    domain and range, bending the cycle map away from the identity."""
    first = cycle.path.edges[0]
    dom = bs.maps[first].domain()
    rng = bs.maps[first].image()
    k = dom.parts[0].lo
    k2 = rng.parts[0].lo
    half = QuadScalar(Fraction(1, 2))
    quarter = QuadScalar(Fraction(1, 4))
    bent = PiecewiseAffineMap(
        [
            AffineBranch(
                Interval(k, k + half), Fraction(1, 2), k2 - Fraction(1, 2) * k
            ),
            AffineBranch(
                Interval(k + half, k + QuadScalar(1)),
                Fraction(3, 2),
                k2 + quarter - Fraction(3, 2) * (k + half),
            ),
        ]
    )
    maps = dict(bs.maps)
    maps[first] = bent
    return BranchingSystem(
        bs.graph,
        dict(bs.ranges),
        dict(bs.domains),
        maps,
        field_d=bs.field_d,
        notes=bs.notes + [f"edge {first!r} carries the bent two-slope map"],
    )


@dataclass
class ConverseLeavittReport:
    affine_system: BranchingSystem
    perturbed_system: BranchingSystem
    cycle: CycleInfo
    kernel_term: LeavittTerm
    affine_zero: bool
    perturbed_axioms_ok: bool
    witness: StepFunction
    witness_image: StepFunction
    vertex_witnesses: dict[str, StepFunction]


def converse_ckut_leavitt(g: DirectedGraph) -> ConverseLeavittReport:
    """Two systems certifying the algebraic statement: the affine one sends
    s_alpha* - p_{s(alpha_1)} to zero (so its representation is not
    faithful), and the perturbed one sends the same element to a visibly
    nonzero operator (so the element is nonzero in the algebra)."""
    g2, cycle = reorder_for_cycle(g)
    affine = build_affine_system(g2)
    term = LeavittTerm.path_adjoint(g2, list(cycle.path.edges)) - LeavittTerm.vertex(
        cycle.base
    )
    affine_zero = evaluate(affine, term, "algebraic").is_zero()
    perturbed = _perturb_first_cycle_edge(affine, cycle)
    axioms_ok = verify_axioms(perturbed).ok
    image_op = evaluate(perturbed, term, "algebraic")
    witness = nonzero_witness(image_op)
    if witness is None:
        raise RuntimeError("perturbed system unexpectedly killed the kernel element")
    witnesses = {}
    for v in g2.vertices:
        w = nonzero_witness(op_vertex(perturbed, v))
        assert w is not None
        witnesses[v] = w
    return ConverseLeavittReport(
        affine_system=affine,
        perturbed_system=perturbed,
        cycle=cycle,
        kernel_term=term,
        affine_zero=affine_zero,
        perturbed_axioms_ok=axioms_ok,
        witness=witness,
        witness_image=image_op.apply(witness),
        vertex_witnesses=witnesses,
    )

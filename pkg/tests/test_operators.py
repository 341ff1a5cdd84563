"""Step functions and the induced weighted-composition operators."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from branchsys.errors import LayoutError, SinkOrInfiniteEmitter
from branchsys.graphs import DirectedGraph, Edge
from branchsys.intervals import Interval, IntervalSet
from branchsys.operators import (
    CanonicalOperator,
    OpTerm,
    nonzero_witness,
    op_edge,
    op_edge_adjoint,
    op_path,
    op_path_adjoint,
    op_vertex,
    range_projection_sum,
    verify_relations,
)
from branchsys.scalars import QuadScalar, RadCoeff
from branchsys.stepfuncs import StepFunction, inner_product, norm_squared
from branchsys.systems import build_affine_system, build_rotation_system

SQRT2 = QuadScalar(0, 1, 2)


def g_of(vertices, edge_triples):
    return DirectedGraph(vertices, [Edge(*t) for t in edge_triples])


def iv(lo, hi):
    lo = lo if isinstance(lo, QuadScalar) else QuadScalar(Fraction(lo))
    hi = hi if isinstance(hi, QuadScalar) else QuadScalar(Fraction(hi))
    return Interval(lo, hi)


LOOP = g_of(["v"], [("e", "v", "v")])
TWO_LOOPS = g_of(["v"], [("e", "v", "v"), ("f", "v", "v")])
TWO_CYCLE = g_of(["v", "w"], [("e1", "v", "w"), ("e2", "w", "v")])
SINK_EDGE = g_of(["v", "s"], [("a", "v", "s")])


class TestStepFunction:
    def test_canonicalization(self):
        f = StepFunction([(iv(1, 2), 3), (iv(0, 1), 3)])
        assert f.pieces == ((iv(0, 2), RadCoeff.from_rational(3)),)
        g = StepFunction([(iv(0, 1), 1), (iv(1, 2), 2)])
        assert len(g.pieces) == 2
        assert StepFunction([(iv(0, 1), 0)]) == StepFunction.zero()

    def test_rejects_overlap(self):
        with pytest.raises(LayoutError):
            StepFunction([(iv(0, 2), 1), (iv(1, 3), 1)])

    def test_pointwise_algebra(self):
        f = StepFunction.indicator(IntervalSet.of(0, 2))
        g = StepFunction.indicator(IntervalSet.of(1, 3), Fraction(1, 2))
        assert (f + g).at(Fraction(3, 2)) == RadCoeff.from_rational(Fraction(3, 2))
        assert (f + g).at(Fraction(1, 2)) == RadCoeff.one()
        assert (f - f) == StepFunction.zero()
        assert (f * g).support() == IntervalSet.of(1, 2)
        assert f.scale(2).at(0) == RadCoeff.from_rational(2)
        assert f.restrict(IntervalSet.of(1, 5)) == StepFunction.indicator(IntervalSet.of(1, 2))

    def test_addition_cancels_to_zero(self):
        f = StepFunction([(iv(0, 1), 1), (iv(1, 2), -1)])
        g = StepFunction([(iv(0, 1), -1), (iv(1, 2), 1)])
        assert f + g == StepFunction.zero()
        assert not (f + g)

    def test_integral_exact(self):
        f = StepFunction([(Interval(QuadScalar(0), SQRT2), RadCoeff.from_rational(3))])
        assert f.integral() == RadCoeff.from_mapping({2: 3})
        g = StepFunction([(iv(0, 1), RadCoeff.sqrt_rational(2))])
        assert g.integral() == RadCoeff.sqrt_rational(2)

    def test_inner_product_and_norm(self):
        f = StepFunction.indicator(IntervalSet.of(0, 2))
        g = StepFunction([(iv(1, 3), RadCoeff.sqrt_rational(2))])
        assert inner_product(f, g) == RadCoeff.sqrt_rational(2)
        assert norm_squared(g) == RadCoeff.from_rational(4)


class TestOperatorCanonicalForm:
    def test_same_map_terms_merge(self):
        a = OpTerm(iv(0, 1), Fraction(1), QuadScalar(0), RadCoeff.one())
        b = OpTerm(iv(1, 2), Fraction(1), QuadScalar(0), RadCoeff.one())
        assert CanonicalOperator([a, b]) == CanonicalOperator(
            [OpTerm(iv(0, 2), Fraction(1), QuadScalar(0), RadCoeff.one())]
        )

    def test_different_maps_stay_apart(self):
        a = OpTerm(iv(0, 1), Fraction(1), QuadScalar(0), RadCoeff.one())
        b = OpTerm(iv(0, 1), Fraction(2), QuadScalar(0), RadCoeff.one())
        assert len(CanonicalOperator([a, b]).terms) == 2

    def test_cancellation_gives_zero(self):
        a = OpTerm(iv(0, 1), Fraction(1), QuadScalar(0), RadCoeff.one())
        op = CanonicalOperator([a]) - CanonicalOperator([a])
        assert op.is_zero()
        assert nonzero_witness(op) is None

    def test_overlapping_targets_add_weights(self):
        a = OpTerm(iv(0, 2), Fraction(1), QuadScalar(0), RadCoeff.one())
        b = OpTerm(iv(1, 3), Fraction(1), QuadScalar(0), RadCoeff.one())
        op = CanonicalOperator([a, b])
        weights = [(t.target, t.weight) for t in op.terms]
        assert weights == [
            (iv(0, 1), RadCoeff.one()),
            (iv(1, 2), RadCoeff.from_rational(2)),
            (iv(2, 3), RadCoeff.one()),
        ]


class TestEdgeOperators:
    def test_identity_loop_edge_is_indicator(self):
        bs = build_affine_system(LOOP)
        op = op_edge(bs, "e")
        assert op == CanonicalOperator.multiplication_by(IntervalSet.of(0, 1))

    def test_two_loops_edge_terms(self):
        bs = build_affine_system(TWO_LOOPS)
        assert op_edge(bs, "e").terms == (
            OpTerm(iv(0, 1), Fraction(2), QuadScalar(0), RadCoeff.sqrt_rational(2)),
        )
        assert op_edge_adjoint(bs, "e").terms == (
            OpTerm(iv(0, 2), Fraction(1, 2), QuadScalar(0), RadCoeff.sqrt_rational(Fraction(1, 2))),
        )
        # algebraic mode drops the measure weights
        assert op_edge(bs, "e", "algebraic").terms == (
            OpTerm(iv(0, 1), Fraction(2), QuadScalar(0), RadCoeff.one()),
        )

    def test_apply_matches_hand_computation(self):
        bs = build_affine_system(TWO_LOOPS)
        phi = StepFunction.indicator(IntervalSet.of(0, 2))
        out = op_edge(bs, "e").apply(phi)
        assert out == StepFunction([(iv(0, 1), RadCoeff.sqrt_rational(2))])
        # isometry: norms agree exactly
        assert norm_squared(out) == norm_squared(phi)

    def test_adjoint_pairing_exact(self):
        bs = build_affine_system(TWO_LOOPS)
        phi = StepFunction([(iv(0, 1), 1), (iv(1, 2), RadCoeff.sqrt_rational(3))])
        psi = StepFunction([(iv(0, Fraction(1, 2)), 2)])
        lhs = inner_product(op_edge(bs, "e").apply(phi), psi)
        rhs = inner_product(phi, op_edge_adjoint(bs, "e").apply(psi))
        assert lhs == rhs

    def test_rejects_unknown_mode(self):
        bs = build_affine_system(LOOP)
        with pytest.raises(ValueError):
            op_edge(bs, "e", "unitary")


class TestRelations:
    def test_co_isometry_two_loops(self):
        bs = build_affine_system(TWO_LOOPS)
        got = op_edge_adjoint(bs, "e").after(op_edge(bs, "e"))
        assert got == op_vertex(bs, "v")

    def test_range_projection_is_indicator_of_range(self):
        bs = build_affine_system(TWO_LOOPS)
        proj = op_edge(bs, "e").after(op_edge_adjoint(bs, "e"))
        assert proj == CanonicalOperator.multiplication_by(bs.range_of("e"))

    def test_full_reports_pass(self):
        for g in (LOOP, TWO_LOOPS, TWO_CYCLE, SINK_EDGE):
            for mode in ("cstar", "algebraic"):
                report = verify_relations(build_affine_system(g), mode)
                assert report.ok, [c.detail for c in report.failures()]

    def test_rotation_system_relations(self):
        theta = SQRT2 - QuadScalar(1)
        bs = build_rotation_system(LOOP, {"e": theta})
        for mode in ("cstar", "algebraic"):
            report = verify_relations(bs, mode)
            assert report.ok, [c.detail for c in report.failures()]

    def test_range_projection_sum_requires_emitter(self):
        bs = build_affine_system(SINK_EDGE)
        assert range_projection_sum(bs, "v") == op_vertex(bs, "v")
        with pytest.raises(SinkOrInfiniteEmitter):
            range_projection_sum(bs, "s")


class TestPathOperators:
    def test_path_operator_is_ordered_composition(self):
        bs = build_rotation_system(
            TWO_CYCLE, {"e1": QuadScalar(Fraction(1, 3)), "e2": QuadScalar(Fraction(1, 4))}
        )
        direct = op_edge(bs, "e1").after(op_edge(bs, "e2"))
        assert op_path(bs, ["e1", "e2"]) == direct
        adj = op_edge_adjoint(bs, "e2").after(op_edge_adjoint(bs, "e1"))
        assert op_path_adjoint(bs, ["e1", "e2"]) == adj

    def test_path_co_isometry(self):
        bs = build_rotation_system(
            TWO_CYCLE, {"e1": QuadScalar(Fraction(1, 3)), "e2": QuadScalar(Fraction(1, 4))}
        )
        # r(e1.e2) = v, so the co-isometry relation lands on the projection at v
        got = op_path_adjoint(bs, ["e1", "e2"]).after(op_path(bs, ["e1", "e2"]))
        assert got == op_vertex(bs, "v")


class TestWitness:
    def test_vertex_projection_witness(self):
        bs = build_affine_system(TWO_CYCLE)
        op = op_vertex(bs, "v")
        phi = nonzero_witness(op)
        assert phi is not None
        assert op.apply(phi)

    def test_composite_vs_direct_equality(self):
        bs = build_affine_system(TWO_LOOPS)
        composite = op_edge(bs, "e").after(op_edge_adjoint(bs, "e"))
        direct = CanonicalOperator.multiplication_by(bs.range_of("e"))
        assert (composite - direct).is_zero()
        assert nonzero_witness(composite - direct) is None

    def test_witness_for_rational_rotation_defect(self):
        # rotation by 1/2: the square of the loop map is the identity, the
        # loop map itself is not, and the difference from the projection is
        # seen on a dyadic piece
        bs = build_rotation_system(LOOP, {"e": QuadScalar(Fraction(1, 2))})
        defect = op_path(bs, ["e"]) - op_vertex(bs, "v")
        phi = nonzero_witness(defect)
        assert phi is not None
        assert defect.apply(phi)
        square = op_path(bs, ["e", "e"]) - op_vertex(bs, "v")
        assert square.is_zero()


@st.composite
def small_graphs(draw):
    nv = draw(st.integers(min_value=1, max_value=3))
    vertices = [f"v{i}" for i in range(nv)]
    ne = draw(st.integers(min_value=0, max_value=4))
    edges = [
        Edge(f"e{i}", draw(st.sampled_from(vertices)), draw(st.sampled_from(vertices)))
        for i in range(ne)
    ]
    return DirectedGraph(vertices, edges)


@st.composite
def step_functions(draw):
    cuts = sorted(
        set(
            draw(
                st.lists(
                    st.fractions(min_value=Fraction(-2), max_value=Fraction(4), max_denominator=8),
                    min_size=2,
                    max_size=5,
                )
            )
        )
    )
    pieces = []
    values = st.sampled_from(
        [
            RadCoeff.one(),
            RadCoeff.from_rational(-2),
            RadCoeff.sqrt_rational(2),
            RadCoeff.from_rational(Fraction(1, 3)),
            RadCoeff.zero(),
        ]
    )
    for a, b in zip(cuts, cuts[1:]):
        pieces.append((iv(a, b), draw(values)))
    return StepFunction(pieces)


class TestOperatorProperties:
    @settings(max_examples=60, deadline=None)
    @given(small_graphs())
    def test_relations_hold_for_random_graphs(self, g):
        bs = build_affine_system(g)
        for mode in ("cstar", "algebraic"):
            report = verify_relations(bs, mode)
            assert report.ok, [c.detail for c in report.failures()]

    @settings(max_examples=40, deadline=None)
    @given(small_graphs(), step_functions(), step_functions())
    def test_apply_is_linear_and_respects_composition(self, g, phi, psi):
        bs = build_affine_system(g)
        if not g.edges:
            return
        a = op_edge(bs, g.edges[0].id)
        b = op_edge_adjoint(bs, g.edges[-1].id)
        assert a.apply(phi + psi) == a.apply(phi) + a.apply(psi)
        assert (a + b).apply(phi) == a.apply(phi) + b.apply(phi)
        assert a.after(b).apply(phi) == a.apply(b.apply(phi))
        assert a.scale(Fraction(-3)).apply(phi) == a.apply(phi).scale(Fraction(-3))

    @settings(max_examples=40, deadline=None)
    @given(small_graphs(), step_functions(), step_functions())
    def test_adjoint_pairing_random(self, g, phi, psi):
        bs = build_affine_system(g)
        for e in g.edges[:2]:
            lhs = inner_product(op_edge(bs, e.id).apply(phi), psi)
            rhs = inner_product(phi, op_edge_adjoint(bs, e.id).apply(psi))
            assert lhs == rhs

    @settings(max_examples=30, deadline=None)
    @given(step_functions())
    def test_rotation_edge_is_isometric_on_its_domain(self, phi):
        theta = SQRT2 - QuadScalar(1)
        bs = build_rotation_system(LOOP, {"e": theta})
        s = op_edge(bs, "e")
        p = op_vertex(bs, "v")
        assert norm_squared(s.apply(phi)) == norm_squared(p.apply(phi))

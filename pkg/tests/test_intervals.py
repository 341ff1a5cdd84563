"""Interval sets and piecewise affine maps."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from branchsys.errors import LayoutError
from branchsys.intervals import (
    AffineBranch,
    Interval,
    IntervalSet,
    PiecewiseAffineMap,
)
from branchsys.scalars import QuadScalar

SQRT2 = QuadScalar(0, 1, 2)


def iv(lo, hi):
    return Interval(QuadScalar(Fraction(lo)), QuadScalar(Fraction(hi)))


class TestInterval:
    def test_rejects_empty(self):
        with pytest.raises(LayoutError):
            iv(1, 1)
        with pytest.raises(LayoutError):
            iv(2, 1)

    def test_membership_is_half_open(self):
        p = iv(0, 1)
        assert p.contains(0)
        assert p.contains(Fraction(999, 1000))
        assert not p.contains(1)

    def test_irrational_endpoints(self):
        p = Interval(QuadScalar(0), SQRT2)
        assert p.contains(QuadScalar(Fraction(7, 5)))  # 1.4 < sqrt2
        assert not p.contains(QuadScalar(Fraction(3, 2)))
        assert p.length() == SQRT2

    def test_intersect(self):
        assert iv(0, 2).intersect(iv(1, 3)) == iv(1, 2)
        assert iv(0, 1).intersect(iv(1, 2)) is None


class TestIntervalSet:
    def test_canonical_merges_touching_and_overlapping(self):
        s = IntervalSet([iv(1, 2), iv(0, 1), iv(3, 4), iv(Fraction(7, 2), 5)])
        assert s.parts == (iv(0, 2), iv(3, 5))
        assert IntervalSet([iv(0, 2), iv(1, 3)]) == IntervalSet.of(0, 3)

    def test_measure(self):
        s = IntervalSet([iv(0, 1), iv(2, 4)])
        assert s.measure() == 3
        t = IntervalSet([Interval(QuadScalar(0), SQRT2)])
        assert t.measure() == SQRT2

    def test_set_algebra(self):
        a = IntervalSet([iv(0, 2), iv(3, 5)])
        b = IntervalSet([iv(1, 4)])
        assert a.intersect(b) == IntervalSet([iv(1, 2), iv(3, 4)])
        assert a.union(b) == IntervalSet.of(0, 5)
        assert a.difference(b) == IntervalSet([iv(0, 1), iv(4, 5)])
        assert b.difference(a) == IntervalSet([iv(2, 3)])
        assert a.is_subset(IntervalSet.of(0, 5))
        assert not IntervalSet.of(0, 5).is_subset(a)
        assert a.is_disjoint(IntervalSet([iv(2, 3)]))
        assert not a.is_disjoint(b)

    def test_empty(self):
        e = IntervalSet.empty()
        assert not e
        assert e.measure() == 0
        assert e.is_subset(IntervalSet.of(0, 1))
        assert IntervalSet.of(0, 1).difference(IntervalSet.of(0, 1)) == e


class TestAffineBranch:
    def test_image_and_inverse(self):
        b = AffineBranch(iv(0, 2), Fraction(1, 2), QuadScalar(3))
        assert b.image() == iv(3, 4)
        inv = b.invert()
        assert inv.src == iv(3, 4)
        assert inv.slope == 2
        assert inv.offset == QuadScalar(-6)
        assert inv.at(b.at(QuadScalar(Fraction(1, 3)))) == QuadScalar(Fraction(1, 3))

    def test_rejects_bad_slope(self):
        with pytest.raises(LayoutError):
            AffineBranch(iv(0, 1), Fraction(0), QuadScalar(0))
        with pytest.raises(LayoutError):
            AffineBranch(iv(0, 1), Fraction(-1), QuadScalar(0))


def rotation(theta: QuadScalar) -> PiecewiseAffineMap:
    """Rotation of [0,1) by theta in [0,1): two slope-one branches."""
    one = QuadScalar(1)
    zero = QuadScalar(0)
    if theta == zero:
        return PiecewiseAffineMap([AffineBranch(Interval(zero, one), Fraction(1), zero)])
    cut = one - theta
    return PiecewiseAffineMap(
        [
            AffineBranch(Interval(zero, cut), Fraction(1), theta),
            AffineBranch(Interval(cut, one), Fraction(1), theta - one),
        ]
    )


class TestPiecewiseAffineMap:
    def test_canonical_merges_continuations(self):
        m = PiecewiseAffineMap(
            [
                AffineBranch(iv(1, 2), Fraction(1), QuadScalar(5)),
                AffineBranch(iv(0, 1), Fraction(1), QuadScalar(5)),
            ]
        )
        assert len(m.branches) == 1
        assert m.branches[0].src == iv(0, 2)

    def test_rejects_overlaps(self):
        with pytest.raises(LayoutError):
            PiecewiseAffineMap(
                [
                    AffineBranch(iv(0, 2), Fraction(1), QuadScalar(0)),
                    AffineBranch(iv(1, 3), Fraction(1), QuadScalar(10)),
                ]
            )
        with pytest.raises(LayoutError):
            # disjoint sources, colliding images
            PiecewiseAffineMap(
                [
                    AffineBranch(iv(0, 1), Fraction(1), QuadScalar(0)),
                    AffineBranch(iv(2, 3), Fraction(1), QuadScalar(-2)),
                ]
            )

    def test_apply_and_sets(self):
        theta = SQRT2 - QuadScalar(1)
        r = rotation(theta)
        assert r.domain() == IntervalSet.of(0, 1)
        assert r.image() == IntervalSet.of(0, 1)
        assert r.at(QuadScalar(0)) == theta
        # point past the cut wraps
        assert r.at(QuadScalar(2) - SQRT2) == QuadScalar(0)
        img = r.apply_set(IntervalSet.of(0, Fraction(1, 10)))
        assert img == IntervalSet([Interval(theta, theta + QuadScalar(Fraction(1, 10)))])

    def test_inverse_round_trip_is_identity(self):
        r = rotation(SQRT2 - QuadScalar(1))
        assert r.after(r.inverse()).is_identity()
        assert r.inverse().after(r).is_identity()
        assert r.after(r.inverse()) == PiecewiseAffineMap.identity_on(IntervalSet.of(0, 1))

    def test_rotation_composition_adds_angles(self):
        a = SQRT2 - QuadScalar(1)
        r = rotation(a)
        rr = r.after(r)
        # 2*(sqrt2 - 1) = 2*sqrt2 - 2 is already in [0,1)
        assert rr == rotation(QuadScalar(-2, 2, 2))

    def test_identity_detection_through_rational_rotation(self):
        r = rotation(QuadScalar(Fraction(1, 3)))
        r3 = r.after(r).after(r)
        assert r3.is_identity()
        assert not r.after(r).is_identity()

    def test_slope_composition(self):
        half = PiecewiseAffineMap([AffineBranch(iv(0, 2), Fraction(1, 2), QuadScalar(0))])
        double = PiecewiseAffineMap([AffineBranch(iv(0, 1), Fraction(2), QuadScalar(0))])
        assert double.after(half).is_identity()
        assert half.after(double) == PiecewiseAffineMap(
            [AffineBranch(iv(0, 1), Fraction(1), QuadScalar(0))]
        )


@st.composite
def partitions(draw):
    """Random partition of [0,1) into at most four rational pieces."""
    cuts = sorted(
        set(
            draw(
                st.lists(
                    st.fractions(min_value=Fraction(1, 8), max_value=Fraction(7, 8), max_denominator=16),
                    max_size=3,
                )
            )
        )
    )
    points = [Fraction(0)] + cuts + [Fraction(1)]
    return [iv(a, b) for a, b in zip(points, points[1:]) if a < b]


@st.composite
def bijections_of_unit(draw):
    """Random piecewise affine bijection of [0,1): shuffle partition pieces."""
    pieces = draw(partitions())
    order = draw(st.permutations(range(len(pieces))))
    branches = []
    lo = Fraction(0)
    for idx in order:
        p = pieces[idx]
        length = p.hi.a - p.lo.a
        # send p onto [lo, lo+length) with slope 1
        branches.append(AffineBranch(p, Fraction(1), QuadScalar(lo - p.lo.a)))
        lo += length
    return PiecewiseAffineMap(branches)


class TestMapProperties:
    @settings(max_examples=150, deadline=None)
    @given(bijections_of_unit())
    def test_inverse_cancels(self, m):
        assert m.after(m.inverse()).is_identity()
        assert m.inverse().after(m).is_identity()

    @settings(max_examples=150, deadline=None)
    @given(bijections_of_unit(), bijections_of_unit())
    def test_composition_matches_pointwise(self, f, g):
        fg = f.after(g)
        assert fg.domain() == IntervalSet.of(0, 1)
        for k in range(7):
            x = QuadScalar(Fraction(k, 7))
            assert fg.at(x) == f.at(g.at(x))

    @settings(max_examples=100, deadline=None)
    @given(bijections_of_unit())
    def test_apply_set_preserves_measure_for_slope_one(self, m):
        s = IntervalSet([iv(0, Fraction(1, 3)), iv(Fraction(1, 2), Fraction(5, 6))])
        assert m.apply_set(s).measure() == s.measure()

    @settings(max_examples=100, deadline=None)
    @given(bijections_of_unit())
    def test_preimage_inverts_apply(self, m):
        s = IntervalSet([iv(Fraction(1, 5), Fraction(2, 5))])
        assert m.preimage_set(m.apply_set(s)) == s

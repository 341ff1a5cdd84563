"""Half-open intervals with exact endpoints, canonical finite unions, and
injective piecewise affine maps between them.

Everything here is exact: endpoints are QuadScalar, slopes are positive
rationals, and equality of sets or maps is equality of canonical forms.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .errors import LayoutError
from .scalars import QuadScalar, _rational


def _scalar(x) -> QuadScalar:
    if isinstance(x, QuadScalar):
        return x
    return QuadScalar(_rational(x))


@dataclass(frozen=True)
class Interval:
    """Nonempty half-open interval [lo, hi)."""

    lo: QuadScalar
    hi: QuadScalar

    def __post_init__(self):
        object.__setattr__(self, "lo", _scalar(self.lo))
        object.__setattr__(self, "hi", _scalar(self.hi))
        if not self.lo < self.hi:
            raise LayoutError(f"empty interval [{self.lo}, {self.hi})")

    def length(self) -> QuadScalar:
        return self.hi - self.lo

    def contains(self, x) -> bool:
        x = _scalar(x)
        return self.lo <= x and x < self.hi

    def intersect(self, other: "Interval") -> Optional["Interval"]:
        lo = self.lo if self.lo >= other.lo else other.lo
        hi = self.hi if self.hi <= other.hi else other.hi
        return Interval(lo, hi) if lo < hi else None

    def __str__(self) -> str:
        return f"[{self.lo}, {self.hi})"


class IntervalSet:
    """Finite union of half-open intervals in canonical form: components are
    sorted, pairwise disjoint, and never touching (touching pieces merge)."""

    __slots__ = ("parts",)

    parts: tuple[Interval, ...]

    def __init__(self, pieces: Iterable[Interval] = ()):
        merged: list[Interval] = []
        for piece in sorted(pieces, key=lambda p: (p.lo, p.hi)):
            if merged and piece.lo <= merged[-1].hi:
                last = merged[-1]
                if piece.hi > last.hi:
                    merged[-1] = Interval(last.lo, piece.hi)
            else:
                merged.append(piece)
        object.__setattr__(self, "parts", tuple(merged))

    @staticmethod
    def of(lo, hi) -> "IntervalSet":
        return IntervalSet([Interval(_scalar(lo), _scalar(hi))])

    @staticmethod
    def empty() -> "IntervalSet":
        return IntervalSet()

    def __bool__(self) -> bool:
        return bool(self.parts)

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntervalSet):
            return NotImplemented
        return self.parts == other.parts

    def __hash__(self):
        return hash(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def measure(self) -> QuadScalar:
        total = QuadScalar(0)
        for p in self.parts:
            total = total + p.length()
        return total

    def contains(self, x) -> bool:
        x = _scalar(x)
        return any(p.contains(x) for p in self.parts)

    def union(self, other: "IntervalSet") -> "IntervalSet":
        return IntervalSet(self.parts + other.parts)

    def intersect(self, other: "IntervalSet") -> "IntervalSet":
        out = []
        for p in self.parts:
            for q in other.parts:
                r = p.intersect(q)
                if r is not None:
                    out.append(r)
        return IntervalSet(out)

    def difference(self, other: "IntervalSet") -> "IntervalSet":
        out: list[Interval] = []
        for p in self.parts:
            segments = [p]
            for q in other.parts:
                nxt: list[Interval] = []
                for s in segments:
                    cut = s.intersect(q)
                    if cut is None:
                        nxt.append(s)
                        continue
                    if s.lo < cut.lo:
                        nxt.append(Interval(s.lo, cut.lo))
                    if cut.hi < s.hi:
                        nxt.append(Interval(cut.hi, s.hi))
                segments = nxt
            out.extend(segments)
        return IntervalSet(out)

    def is_subset(self, other: "IntervalSet") -> bool:
        return not self.difference(other)

    def is_disjoint(self, other: "IntervalSet") -> bool:
        return not self.intersect(other)

    def __str__(self) -> str:
        if not self.parts:
            return "{}"
        return " u ".join(str(p) for p in self.parts)

    def __repr__(self) -> str:
        return f"IntervalSet({self})"


@dataclass(frozen=True)
class AffineBranch:
    """x |-> slope*x + offset on the source interval; slope > 0 rational."""

    src: Interval
    slope: Fraction
    offset: QuadScalar

    def __post_init__(self):
        object.__setattr__(self, "slope", _rational(self.slope))
        object.__setattr__(self, "offset", _scalar(self.offset))
        if self.slope <= 0:
            raise LayoutError(f"branch slope must be positive, got {self.slope}")

    def at(self, x: QuadScalar) -> QuadScalar:
        return self.slope * x + self.offset

    def image(self) -> Interval:
        return Interval(self.at(self.src.lo), self.at(self.src.hi))

    def invert(self) -> "AffineBranch":
        m = Fraction(1) / self.slope
        return AffineBranch(self.image(), m, -m * self.offset)

    def restrict(self, to: Interval) -> Optional["AffineBranch"]:
        overlap = self.src.intersect(to)
        if overlap is None:
            return None
        return AffineBranch(overlap, self.slope, self.offset)


class PiecewiseAffineMap:
    """Injective piecewise affine map given by finitely many branches.

    Canonical form: branches sorted by source, sources pairwise disjoint,
    images pairwise disjoint, and adjacent branches that continue the same
    affine rule are merged. Two maps are equal iff their canonical branch
    tuples are equal.
    """

    __slots__ = ("branches",)

    branches: tuple[AffineBranch, ...]

    def __init__(self, branches: Iterable[AffineBranch]):
        ordered = sorted(branches, key=lambda b: (b.src.lo, b.src.hi))
        for a, b in zip(ordered, ordered[1:]):
            if b.src.lo < a.src.hi:
                raise LayoutError(
                    f"branch sources overlap: {a.src} and {b.src}"
                )
        images = sorted((b.image() for b in ordered), key=lambda p: (p.lo, p.hi))
        for a, b in zip(images, images[1:]):
            if b.lo < a.hi:
                raise LayoutError(f"branch images overlap: {a} and {b}; map not injective")
        merged: list[AffineBranch] = []
        for b in ordered:
            if (
                merged
                and merged[-1].src.hi == b.src.lo
                and merged[-1].slope == b.slope
                and merged[-1].offset == b.offset
            ):
                merged[-1] = AffineBranch(
                    Interval(merged[-1].src.lo, b.src.hi), b.slope, b.offset
                )
            else:
                merged.append(b)
        object.__setattr__(self, "branches", tuple(merged))

    @staticmethod
    def identity_on(s: IntervalSet) -> "PiecewiseAffineMap":
        return PiecewiseAffineMap(
            [AffineBranch(p, Fraction(1), QuadScalar(0)) for p in s]
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, PiecewiseAffineMap):
            return NotImplemented
        return self.branches == other.branches

    def __hash__(self):
        return hash(self.branches)

    def domain(self) -> IntervalSet:
        return IntervalSet(b.src for b in self.branches)

    def image(self) -> IntervalSet:
        return IntervalSet(b.image() for b in self.branches)

    def at(self, x) -> QuadScalar:
        x = _scalar(x)
        for b in self.branches:
            if b.src.contains(x):
                return b.at(x)
        raise LayoutError(f"{x} is outside the domain of the map")

    def apply_set(self, s: IntervalSet) -> IntervalSet:
        out = []
        for b in self.branches:
            for p in s:
                cut = b.src.intersect(p)
                if cut is not None:
                    out.append(AffineBranch(cut, b.slope, b.offset).image())
        return IntervalSet(out)

    def preimage_set(self, s: IntervalSet) -> IntervalSet:
        return self.inverse().apply_set(s)

    def inverse(self) -> "PiecewiseAffineMap":
        return PiecewiseAffineMap(b.invert() for b in self.branches)

    def after(self, inner: "PiecewiseAffineMap") -> "PiecewiseAffineMap":
        """Composite self(inner(x)), defined where inner lands in our domain."""
        out = []
        for gb in inner.branches:
            g_img = gb.image()
            for fb in self.branches:
                overlap = g_img.intersect(fb.src)
                if overlap is None:
                    continue
                back = gb.invert()
                src = Interval(back.at(overlap.lo), back.at(overlap.hi))
                out.append(
                    AffineBranch(
                        src,
                        fb.slope * gb.slope,
                        fb.slope * gb.offset + fb.offset,
                    )
                )
        return PiecewiseAffineMap(out)

    def is_identity(self) -> bool:
        return all(
            b.slope == 1 and b.offset == QuadScalar(0) for b in self.branches
        )

    def __str__(self) -> str:
        rows = []
        for b in self.branches:
            rows.append(f"{b.src} -> {b.image()} (slope {b.slope})")
        return "; ".join(rows) if rows else "(empty map)"

    def __repr__(self) -> str:
        return f"PiecewiseAffineMap({self})"

"""Step functions: finitely many half-open intervals with exact values in
the radical coefficient ring. These are the vectors the operators act on."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Union

from .errors import LayoutError
from .intervals import Interval, IntervalSet
from .scalars import QuadScalar, RadCoeff

Piece = tuple[Interval, RadCoeff]


def _coeff(value) -> RadCoeff:
    if isinstance(value, RadCoeff):
        return value
    if isinstance(value, (int, Fraction)):
        return RadCoeff.from_rational(value)
    raise TypeError(f"cannot use {type(value).__name__} as a step-function value")


class StepFunction:
    """Exact step function, zero outside finitely many half-open intervals.

    Canonical form: pieces sorted and pairwise disjoint, values nonzero,
    touching pieces with equal value merged. Equality is therefore equality
    of functions.
    """

    __slots__ = ("pieces",)

    pieces: tuple[Piece, ...]

    def __init__(self, pieces: Iterable[Piece] = ()):
        cleaned = [(p, _coeff(v)) for p, v in pieces if _coeff(v)]
        cleaned.sort(key=lambda t: (t[0].lo, t[0].hi))
        for (a, _), (b, _) in zip(cleaned, cleaned[1:]):
            if b.lo < a.hi:
                raise LayoutError(f"step-function pieces overlap: {a} and {b}")
        merged: list[Piece] = []
        for p, v in cleaned:
            if merged and merged[-1][0].hi == p.lo and merged[-1][1] == v:
                merged[-1] = (Interval(merged[-1][0].lo, p.hi), v)
            else:
                merged.append((p, v))
        object.__setattr__(self, "pieces", tuple(merged))

    @staticmethod
    def zero() -> "StepFunction":
        return StepFunction()

    @staticmethod
    def indicator(s: IntervalSet, value: Union[int, Fraction, RadCoeff] = 1) -> "StepFunction":
        v = _coeff(value)
        return StepFunction((p, v) for p in s)

    def __bool__(self) -> bool:
        return bool(self.pieces)

    def __eq__(self, other) -> bool:
        if not isinstance(other, StepFunction):
            return NotImplemented
        return self.pieces == other.pieces

    def __hash__(self):
        return hash(self.pieces)

    def support(self) -> IntervalSet:
        return IntervalSet(p for p, _ in self.pieces)

    def at(self, x) -> RadCoeff:
        for p, v in self.pieces:
            if p.contains(x):
                return v
        return RadCoeff.zero()

    def _cells(self, other: "StepFunction") -> list[Interval]:
        pts: list[QuadScalar] = []
        for f in (self, other):
            for p, _ in f.pieces:
                pts.append(p.lo)
                pts.append(p.hi)
        pts.sort()
        unique: list[QuadScalar] = []
        for x in pts:
            if not unique or unique[-1] != x:
                unique.append(x)
        return [Interval(a, b) for a, b in zip(unique, unique[1:])]

    def __add__(self, other: "StepFunction") -> "StepFunction":
        if not isinstance(other, StepFunction):
            return NotImplemented
        out = []
        for cell in self._cells(other):
            v = self.at(cell.lo) + other.at(cell.lo)
            if v:
                out.append((cell, v))
        return StepFunction(out)

    def __neg__(self) -> "StepFunction":
        return StepFunction((p, -v) for p, v in self.pieces)

    def __sub__(self, other: "StepFunction") -> "StepFunction":
        return self + (-other)

    def __mul__(self, other) -> "StepFunction":
        if isinstance(other, StepFunction):
            out = []
            for cell in self._cells(other):
                v = self.at(cell.lo) * other.at(cell.lo)
                if v:
                    out.append((cell, v))
            return StepFunction(out)
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, value) -> "StepFunction":
        v = _coeff(value)
        return StepFunction((p, c * v) for p, c in self.pieces)

    def restrict(self, s: IntervalSet) -> "StepFunction":
        out = []
        for p, v in self.pieces:
            for q in s:
                cut = p.intersect(q)
                if cut is not None:
                    out.append((cut, v))
        return StepFunction(out)

    def integral(self) -> RadCoeff:
        total = RadCoeff.zero()
        for p, v in self.pieces:
            total = total + v * RadCoeff.from_quad(p.length())
        return total

    def __str__(self) -> str:
        if not self.pieces:
            return "0"
        return " + ".join(f"({v})*chi{p}" for p, v in self.pieces)

    def __repr__(self) -> str:
        return f"StepFunction({self})"


def inner_product(phi: StepFunction, psi: StepFunction) -> RadCoeff:
    """L2 pairing; values are real, so no conjugation is involved."""
    return (phi * psi).integral()


def norm_squared(phi: StepFunction) -> RadCoeff:
    return inner_product(phi, phi)

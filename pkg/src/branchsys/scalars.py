"""Exact arithmetic: numbers a + b*sqrt(d) of a fixed real quadratic field,
and the radical coefficient ring of finite sums sum_r c_r*sqrt(r)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Mapping, Union

from .errors import MixedField, NonPositiveRadicand

RationalLike = Union[int, Fraction]

# Precision of the rational seed used to locate floors before exact adjustment.
_SQRT_SCALE = 10 ** 30
_sqrt_seed_cache: dict[int, Fraction] = {}


def _rational(x: RationalLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected a rational, got {type(x).__name__}")


def squarefree_split(n: int) -> tuple[int, int]:
    """Write n = k^2 * r with r squarefree; return (k, r).

    Trial division; radicands at desk scale are small products of slopes."""
    if n <= 0:
        raise NonPositiveRadicand(f"radicand must be positive, got {n}")
    k, r = 1, 1
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            k *= p ** (e // 2)
            if e % 2:
                r *= p
        p += 1 if p == 2 else 2
    return k, r * m


def is_squarefree(n: int) -> bool:
    return n >= 1 and squarefree_split(n)[0] == 1


def _sqrt_seed(d: int) -> Fraction:
    """Rational lower bound of sqrt(d), within 1/_SQRT_SCALE."""
    seed = _sqrt_seed_cache.get(d)
    if seed is None:
        seed = Fraction(isqrt(d * _SQRT_SCALE * _SQRT_SCALE), _SQRT_SCALE)
        _sqrt_seed_cache[d] = seed
    return seed


class QuadScalar:
    """Exact element a + b*sqrt(d) of the real quadratic field Q(sqrt(d)).

    d is squarefree and >= 2, so sqrt(d) is irrational and the (a, b)
    representation is unique. Values with b = 0 are field-agnostic and mix
    freely with any d; combining two genuinely irrational values from
    different fields raises MixedField. The ordering is the real order,
    decided exactly in integer arithmetic.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a: RationalLike, b: RationalLike = 0, d: int = 2):
        if not isinstance(d, int) or d < 2 or not is_squarefree(d):
            raise ValueError(f"d must be a squarefree integer >= 2, got {d!r}")
        object.__setattr__(self, "a", _rational(a))
        object.__setattr__(self, "b", _rational(b))
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("QuadScalar is immutable")

    # -- coercion ------------------------------------------------------------

    def _pair(self, other) -> tuple["QuadScalar", "QuadScalar"]:
        if isinstance(other, (int, Fraction)):
            other = QuadScalar(other, 0, self.d)
        elif not isinstance(other, QuadScalar):
            return NotImplemented, NotImplemented  # type: ignore[return-value]
        if self.d == other.d:
            return self, other
        if other.b == 0:
            return self, QuadScalar(other.a, 0, self.d)
        if self.b == 0:
            return QuadScalar(self.a, 0, other.d), other
        raise MixedField(f"cannot combine sqrt({self.d}) with sqrt({other.d})")

    # -- ordering -------------------------------------------------------------

    def sign(self) -> int:
        """Exact sign of a + b*sqrt(d)."""
        a, b = self.a, self.b
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return 1 if b > 0 else -1
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        # opposite signs: compare a^2 against b^2*d, the sign of a wins ties' side
        diff = a * a - b * b * self.d
        if diff == 0:
            # cannot happen for squarefree d >= 2 unless a = b = 0
            return 0
        positive_part_is_a = a > 0
        return (1 if diff > 0 else -1) if positive_part_is_a else (1 if diff < 0 else -1)

    def compare(self, other) -> int:
        x, y = self._pair(other)
        if x is NotImplemented:
            raise TypeError(f"cannot compare QuadScalar with {type(other).__name__}")
        return QuadScalar(x.a - y.a, x.b - y.b, x.d).sign()

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if not isinstance(other, QuadScalar):
            return NotImplemented
        if self.b == 0 and other.b == 0:
            return self.a == other.a
        return self.d == other.d and self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.a, self.b, self.d if self.b != 0 else 0))

    def __lt__(self, other):
        return self.compare(other) < 0

    def __le__(self, other):
        return self.compare(other) <= 0

    def __gt__(self, other):
        return self.compare(other) > 0

    def __ge__(self, other):
        return self.compare(other) >= 0

    # -- field operations ------------------------------------------------------

    def __add__(self, other):
        x, y = self._pair(other)
        if x is NotImplemented:
            return NotImplemented
        return QuadScalar(x.a + y.a, x.b + y.b, x.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadScalar(-self.a, -self.b, self.d)

    def __sub__(self, other):
        x, y = self._pair(other)
        if x is NotImplemented:
            return NotImplemented
        return QuadScalar(x.a - y.a, x.b - y.b, x.d)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        x, y = self._pair(other)
        if x is NotImplemented:
            return NotImplemented
        return QuadScalar(x.a * y.a + x.b * y.b * x.d, x.a * y.b + x.b * y.a, x.d)

    __rmul__ = __mul__

    def inverse(self) -> "QuadScalar":
        norm = self.a * self.a - self.b * self.b * self.d
        if norm == 0:
            raise ZeroDivisionError("inverse of zero QuadScalar")
        return QuadScalar(self.a / norm, -self.b / norm, self.d)

    def __truediv__(self, other):
        x, y = self._pair(other)
        if x is NotImplemented:
            return NotImplemented
        return x * y.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    # -- integer structure ------------------------------------------------------

    def floor(self) -> int:
        """Greatest integer <= value; seeded by a rational sqrt bound, then
        adjusted with exact comparisons."""
        approx = self.a + self.b * _sqrt_seed(self.d)
        n = approx.numerator // approx.denominator
        while QuadScalar(self.a - (n + 1), self.b, self.d).sign() >= 0:
            n += 1
        while QuadScalar(self.a - n, self.b, self.d).sign() < 0:
            n -= 1
        return n

    def mod_one(self) -> "QuadScalar":
        """x - floor(x), in [0, 1)."""
        return QuadScalar(self.a - self.floor(), self.b, self.d)

    def is_rational(self) -> bool:
        return self.b == 0

    def is_integer(self) -> bool:
        return self.b == 0 and self.a.denominator == 1

    # -- rendering ---------------------------------------------------------------

    def __float__(self) -> float:
        return float(self.a + self.b * _sqrt_seed(self.d))

    def __repr__(self) -> str:
        if self.b == 0:
            return f"QuadScalar({self.a})"
        return f"QuadScalar({self.a}, {self.b}, d={self.d})"

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        head = "" if self.a == 0 else f"{self.a}"
        if self.b == 1:
            tail = f"sqrt({self.d})"
        elif self.b == -1:
            tail = f"-sqrt({self.d})"
        else:
            tail = f"{self.b}*sqrt({self.d})"
        if head and not tail.startswith("-"):
            return f"{head}+{tail}"
        return f"{head}{tail}"


def quad_compare(x: QuadScalar, y: QuadScalar) -> int:
    """Exact three-way comparison: -1, 0, or 1."""
    return x.compare(y)


def mod_one(x: QuadScalar) -> QuadScalar:
    return x.mod_one()


def is_rational(x: QuadScalar) -> bool:
    return x.is_rational()


@dataclass(frozen=True)
class RadCoeff:
    """Element sum_r c_r * sqrt(r) of the radical coefficient ring.

    Radicands r are positive squarefree integers (r = 1 is the rational
    part), coefficients are nonzero rationals, terms sorted by radicand. The
    sqrt(r) for distinct squarefree r are linearly independent over Q, so
    this canonical form makes equality syntactic.
    """

    terms: tuple[tuple[int, Fraction], ...]

    @staticmethod
    def from_mapping(mapping: Mapping[int, RationalLike]) -> "RadCoeff":
        acc: dict[int, Fraction] = {}
        for radicand, coeff in mapping.items():
            k, r = squarefree_split(radicand)
            c = _rational(coeff) * k
            if c:
                acc[r] = acc.get(r, Fraction(0)) + c
        return RadCoeff(tuple(sorted((r, c) for r, c in acc.items() if c)))

    @staticmethod
    def from_rational(q: RationalLike) -> "RadCoeff":
        q = _rational(q)
        return RadCoeff(((1, q),) if q else ())

    @staticmethod
    def from_quad(x: QuadScalar) -> "RadCoeff":
        return RadCoeff.from_mapping({1: x.a, x.d: x.b})

    @staticmethod
    def sqrt_rational(q: RationalLike) -> "RadCoeff":
        """Exact sqrt of a positive rational: sqrt(m/n) = (k/n)*sqrt(s) with
        m*n = k^2*s, s squarefree."""
        q = _rational(q)
        if q <= 0:
            raise NonPositiveRadicand(f"sqrt of non-positive rational {q}")
        k, s = squarefree_split(q.numerator * q.denominator)
        return RadCoeff(((s, Fraction(k, q.denominator)),))

    @staticmethod
    def zero() -> "RadCoeff":
        return RadCoeff(())

    @staticmethod
    def one() -> "RadCoeff":
        return RadCoeff(((1, Fraction(1)),))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: "RadCoeff") -> "RadCoeff":
        acc = dict(self.terms)
        for r, c in other.terms:
            acc[r] = acc.get(r, Fraction(0)) + c
        return RadCoeff(tuple(sorted((r, c) for r, c in acc.items() if c)))

    def __neg__(self) -> "RadCoeff":
        return RadCoeff(tuple((r, -c) for r, c in self.terms))

    def __sub__(self, other: "RadCoeff") -> "RadCoeff":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = _rational(other)
            if not q:
                return RadCoeff(())
            return RadCoeff(tuple((r, c * q) for r, c in self.terms))
        if not isinstance(other, RadCoeff):
            return NotImplemented
        acc: dict[int, Fraction] = {}
        for r, c in self.terms:
            for s, e in other.terms:
                k, sf = squarefree_split(r * s)
                coeff = c * e * k
                acc[sf] = acc.get(sf, Fraction(0)) + coeff
        return RadCoeff(tuple(sorted((r, c) for r, c in acc.items() if c)))

    __rmul__ = __mul__

    def rational_part(self) -> Fraction:
        for r, c in self.terms:
            if r == 1:
                return c
        return Fraction(0)

    def __float__(self) -> float:
        total = Fraction(0)
        for r, c in self.terms:
            total += c * _sqrt_seed(r) if r != 1 else c
        return float(total)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for r, c in self.terms:
            if r == 1:
                parts.append(str(c))
            elif c == 1:
                parts.append(f"sqrt({r})")
            elif c == -1:
                parts.append(f"-sqrt({r})")
            else:
                parts.append(f"{c}*sqrt({r})")
        out = parts[0]
        for p in parts[1:]:
            out += p if p.startswith("-") else "+" + p
        return out


def rad_add(x: RadCoeff, y: RadCoeff) -> RadCoeff:
    return x + y


def rad_mul(x: RadCoeff, y: RadCoeff) -> RadCoeff:
    return x * y


def rad_sqrt_rational(q: RationalLike) -> RadCoeff:
    return RadCoeff.sqrt_rational(q)

"""Formal linear combinations of monomials s_mu s_nu* over the rationals,
their product rules, one-step expansion, evaluation through a branching
system, and a small literal syntax:

    s[e1.e2]*s[f1]^ + 2/3*p[v] - s[e1]

A monomial is a pair of paths with a common range vertex; either path may be
trivial, and p[v] is the doubly trivial monomial at v. The star is written
^ after the closing bracket.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional

from .errors import NotAPath, SinkOrInfiniteEmitter, TermSyntaxError
from .graphs import DirectedGraph, validate_path
from .operators import (
    CanonicalOperator,
    Mode,
    _check_mode,
    nonzero_witness,
    op_path,
    op_path_adjoint,
    op_vertex,
)
from .stepfuncs import StepFunction
from .systems import BranchingSystem


@dataclass(frozen=True)
class Monomial:
    """s_mu s_nu* with r(mu) = r(nu) = vertex; empty tuples are trivial paths."""

    mu: tuple[str, ...]
    nu: tuple[str, ...]
    vertex: str

    def is_vertex(self) -> bool:
        return not self.mu and not self.nu

    def __str__(self) -> str:
        if self.is_vertex():
            return f"p[{self.vertex}]"
        parts = []
        if self.mu:
            parts.append("s[" + ".".join(self.mu) + "]")
        if self.nu:
            parts.append("s[" + ".".join(self.nu) + "]^")
        return "*".join(parts)


def _word_source(g: DirectedGraph, edges: tuple[str, ...], vertex: str) -> str:
    return g.edge(edges[0]).src if edges else vertex


def validate_monomial(g: DirectedGraph, m: Monomial) -> None:
    g.require_vertex(m.vertex)
    for word in (m.mu, m.nu):
        if word:
            p = validate_path(g, word)
            rng = g.edge(p.edges[-1]).dst
            if rng != m.vertex:
                raise NotAPath(
                    f"word {'.'.join(word)} ends at {rng!r}, not at {m.vertex!r}"
                )


class LeavittTerm:
    """Rational linear combination of monomials, zero coefficients dropped."""

    __slots__ = ("summands",)

    summands: tuple[tuple[Monomial, Fraction], ...]

    def __init__(self, summands: Mapping[Monomial, Fraction] | Iterable[tuple[Monomial, Fraction]] = ()):
        if isinstance(summands, Mapping):
            items = summands.items()
        else:
            items = summands
        acc: dict[Monomial, Fraction] = {}
        for m, c in items:
            c = Fraction(c)
            if c:
                acc[m] = acc.get(m, Fraction(0)) + c
        cleaned = [(m, c) for m, c in acc.items() if c]
        cleaned.sort(key=lambda t: (t[0].mu, t[0].nu, t[0].vertex))
        object.__setattr__(self, "summands", tuple(cleaned))

    @staticmethod
    def zero() -> "LeavittTerm":
        return LeavittTerm()

    @staticmethod
    def vertex(v: str) -> "LeavittTerm":
        return LeavittTerm({Monomial((), (), v): Fraction(1)})

    @staticmethod
    def path(g: DirectedGraph, edges: Iterable[str]) -> "LeavittTerm":
        p = validate_path(g, list(edges))
        rng = g.edge(p.edges[-1]).dst
        return LeavittTerm({Monomial(p.edges, (), rng): Fraction(1)})

    @staticmethod
    def path_adjoint(g: DirectedGraph, edges: Iterable[str]) -> "LeavittTerm":
        p = validate_path(g, list(edges))
        rng = g.edge(p.edges[-1]).dst
        return LeavittTerm({Monomial((), p.edges, rng): Fraction(1)})

    def __bool__(self) -> bool:
        return bool(self.summands)

    def is_zero(self) -> bool:
        return not self.summands

    def __eq__(self, other) -> bool:
        if not isinstance(other, LeavittTerm):
            return NotImplemented
        return self.summands == other.summands

    def __hash__(self):
        return hash(self.summands)

    def __add__(self, other: "LeavittTerm") -> "LeavittTerm":
        if not isinstance(other, LeavittTerm):
            return NotImplemented
        return LeavittTerm(list(self.summands) + list(other.summands))

    def __neg__(self) -> "LeavittTerm":
        return self.scale(Fraction(-1))

    def __sub__(self, other: "LeavittTerm") -> "LeavittTerm":
        return self + (-other)

    def scale(self, c) -> "LeavittTerm":
        c = Fraction(c)
        return LeavittTerm([(m, k * c) for m, k in self.summands])

    def __str__(self) -> str:
        if not self.summands:
            return "0"
        chunks = []
        for i, (m, c) in enumerate(self.summands):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            body = str(m) if mag == 1 else f"{mag}*{m}"
            if i == 0:
                chunks.append(body if sign == "+" else "-" + body)
            else:
                chunks.append(f" {sign} {body}")
        return "".join(chunks)

    def __repr__(self) -> str:
        return f"LeavittTerm({self})"


def _mul_monomials(g: DirectedGraph, a: Monomial, b: Monomial) -> Optional[Monomial]:
    """(s_mu1 s_nu1*)(s_mu2 s_nu2*): reduce the middle or vanish."""
    nu1, mu2 = a.nu, b.mu
    if len(mu2) >= len(nu1):
        if mu2[: len(nu1)] != nu1:
            return None
        if _word_source(g, mu2, b.vertex) != _word_source(g, nu1, a.vertex):
            return None
        kappa = mu2[len(nu1):]
        # s_nu1* s_mu2 = s_kappa, so the product is s_{mu1 kappa} s_nu2*
        return Monomial(a.mu + kappa, b.nu, b.vertex)
    if nu1[: len(mu2)] != mu2:
        return None
    if _word_source(g, nu1, a.vertex) != _word_source(g, mu2, b.vertex):
        return None
    kappa = nu1[len(mu2):]
    # s_nu1* s_mu2 = s_kappa*, so the product is s_mu1 (s_nu2 s_kappa)*
    return Monomial(a.mu, b.nu + kappa, a.vertex)


def term_mul(g: DirectedGraph, a: LeavittTerm, b: LeavittTerm) -> LeavittTerm:
    out: list[tuple[Monomial, Fraction]] = []
    for ma, ca in a.summands:
        for mb, cb in b.summands:
            m = _mul_monomials(g, ma, mb)
            if m is not None:
                out.append((m, ca * cb))
    return LeavittTerm(out)


def ck2_expand(g: DirectedGraph, t: LeavittTerm) -> LeavittTerm:
    """Expand every monomial one step at its range vertex:
    s_mu s_nu* = sum over edges e with s(e) = r(mu) of s_{mu e} s_{nu e}*.

    Equal as operators through any valid branching system. The range vertex
    must emit, otherwise there is nothing to expand into."""
    out: list[tuple[Monomial, Fraction]] = []
    for m, c in t.summands:
        edges = g.out_edges(m.vertex)
        if not edges:
            raise SinkOrInfiniteEmitter(
                f"cannot expand at {m.vertex!r}: it emits no edges"
            )
        for e in edges:
            out.append((Monomial(m.mu + (e.id,), m.nu + (e.id,), e.dst), c))
    return LeavittTerm(out)


def evaluate(bs: BranchingSystem, t: LeavittTerm, mode: Mode = "cstar") -> CanonicalOperator:
    """Image of the term under the induced representation."""
    _check_mode(mode)
    total = CanonicalOperator.zero()
    for m, c in t.summands:
        validate_monomial(bs.graph, m)
        if m.is_vertex():
            op = op_vertex(bs, m.vertex)
        elif not m.nu:
            op = op_path(bs, list(m.mu), mode)
        elif not m.mu:
            op = op_path_adjoint(bs, list(m.nu), mode)
        else:
            op = op_path(bs, list(m.mu), mode).after(
                op_path_adjoint(bs, list(m.nu), mode)
            )
        total = total + op.scale(c)
    return total


def is_in_kernel(
    bs: BranchingSystem, t: LeavittTerm, mode: Mode = "cstar"
) -> tuple[bool, Optional[StepFunction]]:
    """Whether the term represents the zero operator; if not, also a step
    function on which the image provably acts nonzero."""
    op = evaluate(bs, t, mode)
    if op.is_zero():
        return True, None
    return False, nonzero_witness(op)


_FACTOR_RE = re.compile(
    r"""
    \s*(?:
        (?P<coeff>-?\d+(?:/\d+)?)
      | s\[(?P<spath>[^\]]+)\](?P<star>\^?)
      | p\[(?P<vertex>[^\]]+)\]
    )\s*$
    """,
    re.VERBOSE,
)


def _split_outside_brackets(text: str, seps: str) -> list[tuple[str, str]]:
    """Split into (separator, chunk) pairs; the first chunk gets sep ''."""
    chunks: list[tuple[str, str]] = []
    depth = 0
    cur: list[str] = []
    sep = ""
    for ch in text:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth = max(0, depth - 1)
        if depth == 0 and ch in seps:
            chunks.append((sep, "".join(cur)))
            sep = ch
            cur = []
        else:
            cur.append(ch)
    chunks.append((sep, "".join(cur)))
    return chunks


def parse_term(g: DirectedGraph, text: str) -> LeavittTerm:
    """Parse the literal syntax against a graph.

    Summands are separated by + or -, factors within a summand by *. A
    factor is s[path], s[path]^, p[vertex], or a leading rational
    coefficient. Paths use dots between edge ids."""
    if not text.strip():
        raise TermSyntaxError("empty term")
    total = LeavittTerm.zero()
    pieces = _split_outside_brackets(text, "+-")
    for sep, chunk in pieces:
        if not chunk.strip():
            if sep == "-" or (sep == "" and not chunk):
                # allow a leading sign: fold it into the next chunk
                continue
            raise TermSyntaxError(f"empty summand near {sep!r}")
        negate = sep == "-"
        coeff = Fraction(1)
        factors: list[LeavittTerm] = []
        for fsep, fchunk in _split_outside_brackets(chunk, "*"):
            if fsep == "" and not fchunk.strip():
                raise TermSyntaxError("empty factor")
            m = _FACTOR_RE.match(fchunk)
            if not m:
                raise TermSyntaxError(f"cannot read factor {fchunk.strip()!r}")
            if m.group("coeff") is not None:
                if factors:
                    raise TermSyntaxError(
                        f"coefficient {m.group('coeff')} must come first in its summand"
                    )
                coeff *= Fraction(m.group("coeff"))
            elif m.group("spath") is not None:
                edges = [x.strip() for x in m.group("spath").split(".")]
                if any(not x for x in edges):
                    raise TermSyntaxError(f"bad path literal {m.group('spath')!r}")
                if m.group("star"):
                    factors.append(LeavittTerm.path_adjoint(g, edges))
                else:
                    factors.append(LeavittTerm.path(g, edges))
            else:
                v = m.group("vertex").strip()
                g.require_vertex(v)
                factors.append(LeavittTerm.vertex(v))
        if not factors:
            raise TermSyntaxError("a summand needs at least one s[...] or p[...] factor")
        acc = factors[0]
        for f in factors[1:]:
            acc = term_mul(g, acc, f)
        acc = acc.scale(-coeff if negate else coeff)
        total = total + acc
    return total

"""JSON codecs for graphs, theta configs, system dumps, step functions, and
verdicts.

Exact values never pass through floats: rationals travel as "p/q" strings
and field elements as {"a": "p/q", "b": "r/s"} pairs relative to the
system's d. Decimal approximations appear only in pretty-rendered reports,
explicitly labeled.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Mapping, Optional

from .errors import InputError
from .graphs import DirectedGraph, Edge
from .intervals import AffineBranch, Interval, IntervalSet, PiecewiseAffineMap
from .scalars import QuadScalar, RadCoeff, is_squarefree
from .stepfuncs import StepFunction
from .systems import AxiomReport, BranchingSystem
from .faithful import (
    ConverseCstarReport,
    ConverseLeavittReport,
    CycleVerdict,
    FaithfulnessVerdict,
)


def _expect(obj: Any, key: str, kind: type, where: str) -> Any:
    if not isinstance(obj, Mapping):
        raise InputError(f"{where}: expected an object, got {type(obj).__name__}")
    if key not in obj:
        raise InputError(f"{where}: missing field {key!r}")
    val = obj[key]
    if kind is not object and not isinstance(val, kind):
        raise InputError(
            f"{where}.{key}: expected {kind.__name__}, got {type(val).__name__}"
        )
    return val


def fraction_to_json(q: Fraction) -> str:
    return str(q)


def fraction_from_json(text: Any, where: str) -> Fraction:
    if isinstance(text, bool) or not isinstance(text, (str, int)):
        raise InputError(f"{where}: expected a rational string, got {text!r}")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"{where}: bad rational {text!r} ({exc})") from None


def scalar_to_json(x: QuadScalar) -> dict:
    return {"a": str(x.a), "b": str(x.b)}


def scalar_from_json(obj: Any, d: int, where: str) -> QuadScalar:
    if isinstance(obj, (str, int)):
        return QuadScalar(fraction_from_json(obj, where), 0, d)
    a = fraction_from_json(_expect(obj, "a", object, where), f"{where}.a")
    b = Fraction(0)
    if isinstance(obj, Mapping) and "b" in obj:
        b = fraction_from_json(obj["b"], f"{where}.b")
    return QuadScalar(a, b, d)


def radcoeff_to_json(x: RadCoeff) -> dict:
    return {
        "text": str(x),
        "terms": [{"radicand": r, "coeff": str(c)} for r, c in x.terms],
    }


def graph_to_json(g: DirectedGraph) -> dict:
    return {
        "vertices": list(g.vertices),
        "edges": [{"id": e.id, "src": e.src, "dst": e.dst} for e in g.edges],
    }


def graph_from_json(obj: Any) -> DirectedGraph:
    vertices = _expect(obj, "vertices", list, "graph")
    for i, v in enumerate(vertices):
        if not isinstance(v, str) or not v:
            raise InputError(f"graph.vertices[{i}]: ids must be nonempty strings")
    raw_edges = _expect(obj, "edges", list, "graph")
    edges = []
    for i, e in enumerate(raw_edges):
        where = f"graph.edges[{i}]"
        eid = _expect(e, "id", str, where)
        src = _expect(e, "src", str, where)
        dst = _expect(e, "dst", str, where)
        if not eid or not src or not dst:
            raise InputError(f"{where}: ids must be nonempty strings")
        edges.append(Edge(eid, src, dst))
    return DirectedGraph(vertices, edges)


def config_from_json(obj: Any) -> tuple[int, dict[str, QuadScalar]]:
    """Theta config: {"d": 2, "theta": {"e": {"a":"0","b":"1"}}}.

    Values are reduced mod one on load, so any real offset is accepted."""
    if obj is None:
        return 2, {}
    if not isinstance(obj, Mapping):
        raise InputError("config: expected an object")
    d = obj.get("d", 2)
    if isinstance(d, bool) or not isinstance(d, int) or d < 2 or not is_squarefree(d):
        raise InputError(f"config.d: must be a squarefree integer >= 2, got {d!r}")
    thetas: dict[str, QuadScalar] = {}
    raw = obj.get("theta", {})
    if not isinstance(raw, Mapping):
        raise InputError("config.theta: expected an object of edge entries")
    for edge_id, entry in raw.items():
        x = scalar_from_json(entry, d, f"config.theta.{edge_id}")
        thetas[str(edge_id)] = x.mod_one()
    return d, thetas


def interval_to_json(p: Interval) -> dict:
    return {"lo": scalar_to_json(p.lo), "hi": scalar_to_json(p.hi)}


def interval_from_json(obj: Any, d: int, where: str) -> Interval:
    lo = scalar_from_json(_expect(obj, "lo", object, where), d, f"{where}.lo")
    hi = scalar_from_json(_expect(obj, "hi", object, where), d, f"{where}.hi")
    if not lo < hi:
        raise InputError(f"{where}: empty interval [{lo}, {hi})")
    return Interval(lo, hi)


def intervalset_to_json(s: IntervalSet) -> list:
    return [interval_to_json(p) for p in s]


def intervalset_from_json(obj: Any, d: int, where: str) -> IntervalSet:
    if not isinstance(obj, list):
        raise InputError(f"{where}: expected a list of intervals")
    return IntervalSet(
        interval_from_json(p, d, f"{where}[{i}]") for i, p in enumerate(obj)
    )


def branch_to_json(b: AffineBranch) -> dict:
    return {
        "src": interval_to_json(b.src),
        "slope": str(b.slope),
        "offset": scalar_to_json(b.offset),
    }


def branch_from_json(obj: Any, d: int, where: str) -> AffineBranch:
    src = interval_from_json(_expect(obj, "src", object, where), d, f"{where}.src")
    slope = fraction_from_json(_expect(obj, "slope", object, where), f"{where}.slope")
    if slope <= 0:
        raise InputError(f"{where}.slope: must be positive, got {slope}")
    offset = scalar_from_json(_expect(obj, "offset", object, where), d, f"{where}.offset")
    return AffineBranch(src, slope, offset)


def system_to_json(bs: BranchingSystem) -> dict:
    return {
        "d": bs.field_d,
        "graph": graph_to_json(bs.graph),
        "R": {e.id: intervalset_to_json(bs.ranges[e.id]) for e in bs.graph.edges},
        "D": {v: intervalset_to_json(bs.domains[v]) for v in bs.graph.vertices},
        "maps": {
            e.id: [branch_to_json(b) for b in bs.maps[e.id].branches]
            for e in bs.graph.edges
        },
        "thetas": {k: scalar_to_json(v) for k, v in sorted(bs.thetas.items())},
        "notes": list(bs.notes),
    }


def system_from_json(obj: Any) -> BranchingSystem:
    d = _expect(obj, "d", int, "system")
    if isinstance(d, bool) or d < 2 or not is_squarefree(d):
        raise InputError(f"system.d: must be a squarefree integer >= 2, got {d!r}")
    g = graph_from_json(_expect(obj, "graph", object, "system"))
    raw_R = _expect(obj, "R", Mapping, "system")
    raw_D = _expect(obj, "D", Mapping, "system")
    raw_maps = _expect(obj, "maps", Mapping, "system")
    ranges = {}
    for e in g.edges:
        if e.id not in raw_R:
            raise InputError(f"system.R: missing entry for edge {e.id!r}")
        ranges[e.id] = intervalset_from_json(raw_R[e.id], d, f"system.R.{e.id}")
    domains = {}
    for v in g.vertices:
        if v not in raw_D:
            raise InputError(f"system.D: missing entry for vertex {v!r}")
        domains[v] = intervalset_from_json(raw_D[v], d, f"system.D.{v}")
    maps = {}
    for e in g.edges:
        if e.id not in raw_maps:
            raise InputError(f"system.maps: missing entry for edge {e.id!r}")
        entries = raw_maps[e.id]
        if not isinstance(entries, list) or not entries:
            raise InputError(f"system.maps.{e.id}: expected a nonempty list of branches")
        branches = [
            branch_from_json(b, d, f"system.maps.{e.id}[{i}]")
            for i, b in enumerate(entries)
        ]
        maps[e.id] = PiecewiseAffineMap(branches)
    thetas = {}
    for k, v in (obj.get("thetas") or {}).items():
        thetas[str(k)] = scalar_from_json(v, d, f"system.thetas.{k}")
    notes = obj.get("notes") or []
    if not isinstance(notes, list):
        raise InputError("system.notes: expected a list of strings")
    return BranchingSystem(
        g, ranges, domains, maps, field_d=d, thetas=thetas, notes=[str(n) for n in notes]
    )


def stepfunc_to_json(phi: StepFunction) -> list:
    return [
        {"interval": interval_to_json(p), "value": radcoeff_to_json(v)}
        for p, v in phi.pieces
    ]


def axiom_report_to_json(report: AxiomReport) -> dict:
    return {
        "ok": report.ok,
        "checks": [
            {
                "name": c.name,
                "ok": c.ok,
                **({"detail": c.detail} if c.detail else {}),
                **(
                    {"witness": stepfunc_to_json(c.witness)}
                    if getattr(c, "witness", None) is not None
                    else {}
                ),
            }
            for c in report.checks
        ],
    }


def cycle_verdict_to_json(rec: CycleVerdict) -> dict:
    out: dict[str, Any] = {
        "base": rec.base,
        "cycle": list(rec.cycle.edges),
        "theta_w": scalar_to_json(rec.theta),
        "rational": rec.rational,
    }
    if rec.rational:
        out["q"] = rec.exponent
        out["kernel_term"] = str(rec.kernel_term)
        out["kernel_confirmed"] = rec.kernel_confirmed
        out["note"] = rec.note
    else:
        assert rec.separating is not None
        out["F"] = interval_to_json(rec.separating.parts[0])
        out["powers"] = list(rec.powers)
    return out


def verdict_to_json(v: FaithfulnessVerdict) -> dict:
    return {
        "condition_L": v.condition_L,
        "faithful": v.faithful,
        "max_power": v.max_power,
        "reason": v.reason(),
        "records": [cycle_verdict_to_json(r) for r in v.records],
    }


def converse_cstar_to_json(rep: ConverseCstarReport) -> dict:
    return {
        "variant": "cstar",
        "cycle": list(rep.cycle.path.edges),
        "base": rep.cycle.base,
        "kernel_term": str(rep.kernel_term),
        "kernel_confirmed": rep.kernel_confirmed,
        "vertices_nonzero": rep.vertices_nonzero,
        "vertex_witnesses": {
            v: stepfunc_to_json(w) for v, w in sorted(rep.vertex_witnesses.items())
        },
        "system": system_to_json(rep.system),
    }


def converse_leavitt_to_json(rep: ConverseLeavittReport) -> dict:
    return {
        "variant": "leavitt",
        "cycle": list(rep.cycle.path.edges),
        "base": rep.cycle.base,
        "kernel_term": str(rep.kernel_term),
        "affine_kills_term": rep.affine_zero,
        "perturbed_axioms_ok": rep.perturbed_axioms_ok,
        "witness": stepfunc_to_json(rep.witness),
        "witness_image": stepfunc_to_json(rep.witness_image),
        "vertices_nonzero": all(bool(w) for w in rep.vertex_witnesses.values()),
        "vertex_witnesses": {
            v: stepfunc_to_json(w) for v, w in sorted(rep.vertex_witnesses.items())
        },
        "affine_system": system_to_json(rep.affine_system),
        "perturbed_system": system_to_json(rep.perturbed_system),
    }


def _looks_like_scalar(obj: Any) -> bool:
    return (
        isinstance(obj, Mapping)
        and set(obj) >= {"a", "b"}
        and all(isinstance(obj[k], str) for k in ("a", "b"))
    )


def _approx_of(obj: Mapping, d: int) -> float:
    a = Fraction(obj["a"])
    b = Fraction(obj["b"])
    return float(QuadScalar(a, b, d))


def decorate_with_approx(report: Any, d: int = 2) -> Any:
    """Copy of a report with 'approx' fields next to exact scalars; used by
    the pretty renderer only."""
    if _looks_like_scalar(report):
        out = dict(report)
        out["approx"] = round(_approx_of(report, d), 12)
        return out
    if isinstance(report, Mapping):
        d2 = report.get("d", d) if isinstance(report.get("d", d), int) else d
        return {k: decorate_with_approx(v, d2) for k, v in report.items()}
    if isinstance(report, list):
        return [decorate_with_approx(x, d) for x in report]
    return report


def dumps(report: Any, pretty: bool = False, d: int = 2) -> str:
    if pretty:
        return json.dumps(decorate_with_approx(report, d), indent=2, sort_keys=False)
    return json.dumps(report, separators=(",", ":"), sort_keys=False)

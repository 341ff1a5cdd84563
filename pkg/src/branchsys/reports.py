"""Command handlers shared by the CLI and the HTTP service.

Each handler takes already-parsed JSON payloads, runs the engine, and
returns a plain-dict report together with the process exit code that the
report implies:

* 0: everything checked out,
* 2: an axiom or relation check failed,
* 3: a non-faithfulness witness was found.

For the converse constructions a non-faithfulness witness is the point of
the exercise, so 3 is remapped to 0 and the report carries
"expected_nonfaithful": true.

Malformed input raises; callers turn exceptions into error JSON and exit
code 1 via `error_report`.
"""

from __future__ import annotations

from typing import Any, Optional

from . import serialize as ser
from .errors import BranchSystemError, InputError, LayoutError
from .faithful import (
    converse_ckut_cstar,
    converse_ckut_leavitt,
    faithfulness_check,
)
from .graphs import (
    DirectedGraph,
    condition_L,
    enumerate_simple_cycles,
    exitless_base_points,
)
from .operators import verify_relations
from .scalars import QuadScalar
from .systems import (
    AxiomReport,
    BranchingSystem,
    CheckResult,
    build_affine_system,
    build_rotation_system,
    verify_axioms,
)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_CHECK_FAILED = 2
EXIT_NOT_FAITHFUL = 3

_MODES = ("cstar", "algebraic")


def error_report(exc: BaseException) -> dict:
    return {"error": {"type": type(exc).__name__, "message": str(exc)}}


def _require_mode(mode: str) -> str:
    if mode not in _MODES:
        raise InputError(f"mode must be one of {_MODES}, got {mode!r}")
    return mode


def analyze(graph_json: Any) -> tuple[dict, int]:
    """Static facts about the graph: sinks, simple cycles with their exits,
    Condition (L), and the exitless base points W."""
    g = ser.graph_from_json(graph_json)
    cycles = enumerate_simple_cycles(g)
    report = {
        "vertices": list(g.vertices),
        "edges": [e.id for e in g.edges],
        "sinks": g.sinks(),
        "cycles": [
            {
                "edges": list(c.path.edges),
                "base": c.base,
                "has_exit": c.has_exit,
                "exits": list(c.exits),
            }
            for c in cycles
        ],
        "condition_L": condition_L(g),
        "W": exitless_base_points(g),
    }
    return report, EXIT_OK


def _build_system(graph_json: Any, config_json: Any) -> BranchingSystem:
    g = ser.graph_from_json(graph_json)
    if config_json is None:
        return build_affine_system(g)
    d, thetas = ser.config_from_json(config_json)
    return build_rotation_system(g, thetas, d=d)


def build(graph_json: Any, config_json: Any = None) -> tuple[dict, int]:
    """Construct the standard-layout system and dump it. With a config the
    rotation builder is used; without one, the plain affine builder."""
    bs = _build_system(graph_json, config_json)
    report = {"system": ser.system_to_json(bs), "notes": list(bs.notes)}
    return report, EXIT_OK


def _load_for_verify(payload: Any) -> BranchingSystem:
    if not isinstance(payload, dict):
        raise InputError("verify: expected an object payload")
    if "system" in payload and payload["system"] is not None:
        return ser.system_from_json(payload["system"])
    if "graph" in payload and payload["graph"] is not None:
        return _build_system(payload["graph"], payload.get("config"))
    raise InputError("verify: payload needs either 'system' or 'graph'")


def verify(payload: Any, mode: str = "cstar") -> tuple[dict, int]:
    """Axiom checks on the system plus relation checks on the induced
    operators. A dump whose branch data cannot even assemble into maps
    (overlapping sources, say) is reported as a failed axiom check rather
    than a parse error, since the file shape itself was fine."""
    _require_mode(mode)
    try:
        bs = _load_for_verify(payload)
    except LayoutError as exc:
        broken = AxiomReport(
            [CheckResult("system data assembles into branch maps", False, str(exc))]
        )
        report = {
            "mode": mode,
            "axioms": ser.axiom_report_to_json(broken),
            "relations": None,
            "ok": False,
        }
        return report, EXIT_CHECK_FAILED
    axioms = verify_axioms(bs)
    relations = verify_relations(bs, mode)
    ok = axioms.ok and relations.ok
    report = {
        "mode": mode,
        "d": bs.field_d,
        "axioms": ser.axiom_report_to_json(axioms),
        "relations": ser.axiom_report_to_json(relations),
        "ok": ok,
    }
    return report, EXIT_OK if ok else EXIT_CHECK_FAILED


def faithful(
    graph_json: Any, config_json: Any = None, max_power: int = 10
) -> tuple[dict, int]:
    """Faithfulness verdict for the rotation system over the graph."""
    bs = _build_system(graph_json, config_json)
    verdict = faithfulness_check(bs, max_power=max_power)
    report = {"d": bs.field_d, **ser.verdict_to_json(verdict)}
    return report, EXIT_OK if verdict.faithful else EXIT_NOT_FAITHFUL


def converse(graph_json: Any, variant: str) -> tuple[dict, int]:
    """Counterexample construction for a graph failing Condition (L). The
    non-faithfulness witness is expected here, so a confirmed kernel element
    is the success outcome."""
    g = ser.graph_from_json(graph_json)
    if variant == "cstar":
        rep = converse_ckut_cstar(g)
        report = ser.converse_cstar_to_json(rep)
        confirmed = rep.kernel_confirmed and rep.vertices_nonzero
    elif variant == "leavitt":
        rep = converse_ckut_leavitt(g)
        report = ser.converse_leavitt_to_json(rep)
        confirmed = (
            rep.affine_zero
            and rep.perturbed_axioms_ok
            and bool(rep.witness_image)
            and all(bool(w) for w in rep.vertex_witnesses.values())
        )
    else:
        raise InputError(f"converse: variant must be 'cstar' or 'leavitt', got {variant!r}")
    report["expected_nonfaithful"] = True
    report["confirmed"] = confirmed
    return report, EXIT_OK if confirmed else EXIT_CHECK_FAILED


def _loop_graph() -> dict:
    return {
        "vertices": ["v"],
        "edges": [{"id": "e", "src": "v", "dst": "v"}],
    }


def reproduce(name: str, max_power: int = 10) -> tuple[dict, int]:
    """Bundled scenarios over the single-loop graph.

    * example-irrational-loop: d=2, theta = -1 + sqrt(2); axioms, relations
      and the faithfulness verdict with its separating set.
    * converse-cstar / converse-leavitt: the counterexample constructions.
    """
    if name == "example-irrational-loop":
        graph = _loop_graph()
        config = {"d": 2, "theta": {"e": {"a": "-1", "b": "1"}}}
        ver_report, ver_code = verify({"graph": graph, "config": config}, "cstar")
        faith_report, faith_code = faithful(graph, config, max_power=max_power)
        code = max(ver_code, faith_code)
        report = {
            "scenario": name,
            "graph": graph,
            "config": config,
            "verify": ver_report,
            "faithful": faith_report,
        }
        return report, code
    if name == "converse-cstar":
        report, code = converse(_loop_graph(), "cstar")
        return {"scenario": name, "graph": _loop_graph(), **report}, code
    if name == "converse-leavitt":
        report, code = converse(_loop_graph(), "leavitt")
        return {"scenario": name, "graph": _loop_graph(), **report}, code
    raise InputError(
        "reproduce: name must be one of 'example-irrational-loop', "
        f"'converse-cstar', 'converse-leavitt', got {name!r}"
    )

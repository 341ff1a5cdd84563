"""Exact interval branching systems for finite directed graphs and the
induced graph-algebra representations on step functions.

The layers, bottom to top:

* scalars: exact quadratic-field arithmetic and the radical coefficient
  ring the operator weights live in;
* graphs: finite directed graphs, paths, simple cycles, Condition (L);
* intervals: half-open intervals, finite unions, piecewise-affine maps;
* systems: branching systems, the standard layout, the affine and rotation
  builders, and the axiom checker;
* stepfuncs / operators: step functions, the induced weighted-composition
  operators in canonical form, and the relation checker;
* terms: graph-algebra terms (monomial sums), reduction, parsing, and
  evaluation through the operator layer;
* faithful: faithfulness verdicts, separating sets, kernel elements, and
  the converse uniqueness counterexample constructions;
* reports / serialize / service / cli: JSON formats, command handlers, the
  HTTP service, and the command-line front end.
"""

from .errors import (
    BranchSystemError,
    ConditionLHolds,
    DanglingEdge,
    DuplicateId,
    EmptyRangeDomain,
    GraphError,
    GraphMismatch,
    InputError,
    LayoutError,
    MixedField,
    NonPositiveRadicand,
    NotABasePoint,
    NotAPath,
    RationalTheta,
    SinkOrInfiniteEmitter,
    TermSyntaxError,
    ThetaOutOfRange,
    UnknownEdge,
    UnknownVertex,
)
from .scalars import (
    QuadScalar,
    RadCoeff,
    is_rational,
    is_squarefree,
    mod_one,
    quad_compare,
    rad_sqrt_rational,
    squarefree_split,
)
from .graphs import (
    CycleInfo,
    DirectedGraph,
    Edge,
    Path,
    condition_L,
    cycle_vertices,
    enumerate_simple_cycles,
    exitless_base_points,
    exitless_cycle_at,
    path_range,
    path_source,
    validate_path,
)
from .intervals import AffineBranch, Interval, IntervalSet, PiecewiseAffineMap
from .systems import (
    AxiomReport,
    BranchingSystem,
    CheckResult,
    build_affine_system,
    build_rotation_system,
    compose_path_map,
    standard_layout,
    verify_axioms,
)
from .stepfuncs import StepFunction, inner_product, norm_squared
from .operators import (
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
from .terms import (
    LeavittTerm,
    Monomial,
    ck2_expand,
    evaluate,
    is_in_kernel,
    parse_term,
    term_mul,
    validate_monomial,
)
from .faithful import (
    ConverseCstarReport,
    ConverseLeavittReport,
    CycleVerdict,
    FaithfulnessVerdict,
    converse_ckut_cstar,
    converse_ckut_leavitt,
    cycle_power_term,
    cycle_rotation,
    faithfulness_check,
    kernel_power_scan,
    reorder_for_cycle,
    separating_set,
    theta_at,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # errors
    "BranchSystemError",
    "ConditionLHolds",
    "DanglingEdge",
    "DuplicateId",
    "EmptyRangeDomain",
    "GraphError",
    "GraphMismatch",
    "InputError",
    "LayoutError",
    "MixedField",
    "NonPositiveRadicand",
    "NotABasePoint",
    "NotAPath",
    "RationalTheta",
    "SinkOrInfiniteEmitter",
    "TermSyntaxError",
    "ThetaOutOfRange",
    "UnknownEdge",
    "UnknownVertex",
    # scalars
    "QuadScalar",
    "RadCoeff",
    "is_rational",
    "is_squarefree",
    "mod_one",
    "quad_compare",
    "rad_sqrt_rational",
    "squarefree_split",
    # graphs
    "CycleInfo",
    "DirectedGraph",
    "Edge",
    "Path",
    "condition_L",
    "cycle_vertices",
    "enumerate_simple_cycles",
    "exitless_base_points",
    "exitless_cycle_at",
    "path_range",
    "path_source",
    "validate_path",
    # intervals
    "AffineBranch",
    "Interval",
    "IntervalSet",
    "PiecewiseAffineMap",
    # systems
    "AxiomReport",
    "BranchingSystem",
    "CheckResult",
    "build_affine_system",
    "build_rotation_system",
    "compose_path_map",
    "standard_layout",
    "verify_axioms",
    # step functions and operators
    "StepFunction",
    "inner_product",
    "norm_squared",
    "CanonicalOperator",
    "OpTerm",
    "nonzero_witness",
    "op_edge",
    "op_edge_adjoint",
    "op_path",
    "op_path_adjoint",
    "op_vertex",
    "range_projection_sum",
    "verify_relations",
    # terms
    "LeavittTerm",
    "Monomial",
    "ck2_expand",
    "evaluate",
    "is_in_kernel",
    "parse_term",
    "term_mul",
    "validate_monomial",
    # faithfulness
    "ConverseCstarReport",
    "ConverseLeavittReport",
    "CycleVerdict",
    "FaithfulnessVerdict",
    "converse_ckut_cstar",
    "converse_ckut_leavitt",
    "cycle_power_term",
    "cycle_rotation",
    "faithfulness_check",
    "kernel_power_scan",
    "reorder_for_cycle",
    "separating_set",
    "theta_at",
]

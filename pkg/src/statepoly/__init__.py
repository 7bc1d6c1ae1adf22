"""Exact state polytopes of homogeneous ideals and torus stability verdicts.

Everything runs over exact rationals: basis computations, support-function
oracles, vertex enumeration, convex-hull and membership LPs, block-chain
Minkowski decompositions, and weight pairings.  No floats anywhere.
"""

from .chains import (
    BlockSpec,
    ChainInput,
    ChainSemistabilityReport,
    ChainValidation,
    ExtremalityError,
    MixedIdealSet,
    TauVector,
    assemble_ideal,
    barycenter_decompose,
    component_block_ideal,
    decomposed_state_polytope,
    extremality_witness,
    initial_slice_partition,
    mixed_ideals,
    semistability_via_components,
    tau_vector,
    validate_chain,
)
from .groebner import (
    DegreeSlice,
    MonomialIdeal,
    ReducedGB,
    buchberger,
    cone_interior_weight,
    degree_slice,
    eliminate,
    hilbert_values,
    implicitize,
    initial_ideal,
    intersect_ideals,
    monomial_slice,
    normal_form,
)
from .hm import (
    HMReport,
    OnePS,
    hm_from_aggregates,
    hm_index_decomposed,
    hm_index_direct,
)
from .lp import (
    LinearProgram,
    LPResult,
    member_convex_hull,
    relative_interior_member,
    solve_lp,
)
from .orders import (
    MonomialOrder,
    grevlex_order,
    grlex_order,
    lex_order,
    make_order,
    matrix_order,
    merge_chain_weights,
    merge_junction_orders,
    merge_junction_weights,
    monomial_compare,
    named_order,
    order_validate,
    weight_order,
)
from .parsing import (
    IdealFile,
    ParseError,
    format_polynomial,
    parse_ideal_file,
    parse_polynomial,
)
from .polytope import (
    FacetSystem,
    VPolytope,
    extreme_points,
    facets,
    load_polytope,
    minkowski_sum,
    minkowski_sum_many,
    polytope_from_payload,
    polytope_payload,
    save_polytope,
    trivial_character_point,
    vpolytope,
)
from .rings import Ideal, Polynomial
from .rosary import (
    RosarySpec,
    WValue,
    rosary_assembled_ideal,
    rosary_component_ideal,
    rosary_end_conics,
    rosary_mixed_sets,
    rosary_slice_decomposition_check,
    rosary_w,
    rosary_w_table,
    slice_weight_sum,
)
from .state import (
    BudgetExhausted,
    SemistabilityReport,
    StateOracle,
    StatePolytopeResult,
    argmax_state,
    enumerate_state_polytope,
    semistability_report,
    state_polytope,
)

__version__ = "0.1.0"

__all__ = [
    "BlockSpec",
    "BudgetExhausted",
    "ChainInput",
    "ChainSemistabilityReport",
    "ChainValidation",
    "DegreeSlice",
    "ExtremalityError",
    "FacetSystem",
    "HMReport",
    "Ideal",
    "IdealFile",
    "LPResult",
    "LinearProgram",
    "MixedIdealSet",
    "MonomialIdeal",
    "MonomialOrder",
    "OnePS",
    "ParseError",
    "Polynomial",
    "ReducedGB",
    "RosarySpec",
    "SemistabilityReport",
    "StateOracle",
    "StatePolytopeResult",
    "TauVector",
    "VPolytope",
    "WValue",
    "argmax_state",
    "assemble_ideal",
    "barycenter_decompose",
    "buchberger",
    "component_block_ideal",
    "cone_interior_weight",
    "decomposed_state_polytope",
    "degree_slice",
    "eliminate",
    "enumerate_state_polytope",
    "extreme_points",
    "extremality_witness",
    "facets",
    "format_polynomial",
    "grevlex_order",
    "grlex_order",
    "hilbert_values",
    "hm_from_aggregates",
    "hm_index_decomposed",
    "hm_index_direct",
    "implicitize",
    "initial_ideal",
    "initial_slice_partition",
    "intersect_ideals",
    "lex_order",
    "load_polytope",
    "make_order",
    "matrix_order",
    "member_convex_hull",
    "merge_chain_weights",
    "merge_junction_orders",
    "merge_junction_weights",
    "minkowski_sum",
    "minkowski_sum_many",
    "mixed_ideals",
    "monomial_compare",
    "monomial_slice",
    "named_order",
    "normal_form",
    "order_validate",
    "parse_ideal_file",
    "parse_polynomial",
    "polytope_from_payload",
    "polytope_payload",
    "relative_interior_member",
    "rosary_assembled_ideal",
    "rosary_component_ideal",
    "rosary_end_conics",
    "rosary_mixed_sets",
    "rosary_slice_decomposition_check",
    "rosary_w",
    "rosary_w_table",
    "save_polytope",
    "semistability_report",
    "semistability_via_components",
    "slice_weight_sum",
    "solve_lp",
    "state_polytope",
    "tau_vector",
    "trivial_character_point",
    "validate_chain",
    "vpolytope",
    "weight_order",
]

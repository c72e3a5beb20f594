"""lrctk: construct, certify and repair linear codes with (r, delta) locality."""

from .bounds import (
    BoundReport,
    asymptotic_concat_bound,
    concat_bound,
    concat_classical_bounds,
    gopalan_bound,
    locality_bound,
)
from .codes import (
    LinearCode,
    WeightHierarchy,
    dual_code,
    dual_support_weight,
    dual_support_weight_equals,
    encode,
    from_generator,
    gap_numbers,
    gaussian_binomial,
    hierarchy_auto,
    min_distance,
    min_weight_word,
    puncture,
    shorten,
    support_weight,
    wei_dual_hierarchy,
    weight_hierarchy,
)
from .constructions import (
    ConstructionRecipe,
    build_from_recipe,
    concatenate,
    parity_split_code,
    pyramid_code,
    random_all_symbol_code,
    rs_code,
    vandermonde,
)
from .gf import GF, make_field
from .linalg import null_space_basis, rank, rref, solve
from .locality import (
    GeneralPositionReport,
    LocalGroup,
    LocalityProfile,
    OptimalityCertificate,
    certify_optimality,
    check_general_position,
    check_profile,
    is_k_core,
    is_k_core_subject_to,
    max_deficient_support,
    symbol_locality,
)
from .repair import (
    ErasurePattern,
    RepairReport,
    global_decode,
    local_repair,
    repairability,
)
from .simulator import FailureModel, Scenario, SimReport, run_scenario

__version__ = "0.1.0"

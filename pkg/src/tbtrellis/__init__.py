"""Exact-arithmetic analysis of linear and group tail-biting trellis realizations."""

from .abelian import (
    GroupElement,
    ProductGroup,
    QuotientView,
    Subgroup,
    close,
    concat_groups,
    contains,
    cross_section,
    invariant_factors,
    project,
    quotient,
    subgroup_sum,
)
from .control import (
    ControlReport,
    component_count,
    control_report,
    controllability_test,
    controllable_subrealization,
    lemma_quotients,
    syndrome_image,
)
from .factorize import (
    Decomposition,
    FactorizationReport,
    SetTrellis,
    canonical_can_be_homomorphic,
    controller_canonical,
    decompose,
    first_state_chain,
    granule_products,
    is_homomorphic,
    size_formulas,
    technical_lemma_check,
    verify_unique_factorization,
)
from .fragments import Fragment, all_fragments, covers, hasse_dot, leq
from .granules import (
    GranuleTable,
    build_granule_table,
    below,
    ell_chain,
    granule,
    nondynamical_alphabet,
    subbehavior,
)
from .trellis import (
    BehaviorBundle,
    Realization,
    compute_behavior,
    is_branch_trim,
    is_reduced,
    is_state_trim,
    reduce_realization,
    universe_order,
)

__version__ = "0.1.0"

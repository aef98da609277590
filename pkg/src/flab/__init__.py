"""flab: exact computations with fusion systems, linking systems and Robinson amalgams.

The layers, bottom up: `groups` (permutation and table groups, all element
sets materialized), `fusion` (fusion systems over a finite p-group), `linking`
(transporter categories, centric linking systems, orbit categories and limits),
`amalgam` (Robinson stars with Bass-Serre normal-form arithmetic), `autos`
(self-equivalences, amalgam automorphisms, and the split between them), and
`cli` (the worked-example catalog and the `flab` command).
"""

from .amalgam import (
    LIBMAN_SEELIGER,
    ROBINSON,
    AmalgamGroup,
    AmalgamWord,
    RobinsonSetup,
    amalgam_center,
    build_amalgam,
    build_setup,
    transporter_in_amalgam,
    verify_fusion,
)
from .autos import (
    AmalgamAutomorphism,
    AutContext,
    IsotypicalEquivalence,
    OutClass,
    enumerate_aut_typ,
    exact_sequence_report,
    fusion_preserving_autos,
    induced_equivalence,
    itworks_check,
    leaf_permutation,
    only2_applies,
    section_automorphism,
    verify_split,
)
from .fusion import (
    FusionSystem,
    analyze,
    check_saturation,
    controlling_family,
    f_conjugates,
    fusion_equals,
    fusion_from_data,
    fusion_from_group,
    fusion_to_data,
    generated_fusion,
    inner_fusion,
    is_f_centric,
    is_f_radical,
    is_fully_centralized,
    is_fully_normalized,
    is_normal_in_f,
    normalizer_fusion_system,
)
from .groups import (
    FiniteGroup,
    FiniteGroupTable,
    GroupHom,
    Perm,
    PermGroup,
    Subgroup,
    automorphisms,
    center,
    centralizer,
    closure,
    normal_p_complement,
    normalizer,
    quotient,
    subgroups_up_to_conjugacy,
    sylow,
)
from .linking import (
    AbFunctor,
    FiniteCategory,
    LinkingSystem,
    TransporterCategory,
    aut_l_restricted,
    center_functor,
    constant_functor,
    higher_limits,
    inverse_limit,
    linking_from_data,
    linking_from_group,
    linking_to_data,
    orbit_category,
    transporter_category,
    validate_linking,
)
from .zlinalg import FiniteAbelian, smith_normal_form

__all__ = [name for name in dir() if not name.startswith("_")]

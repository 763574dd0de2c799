"""Exact-arithmetic Grothendieck groups, graded monoid rings, localization."""

from .errors import (
    AxiomViolationError,
    BaseMismatchError,
    GrothlocError,
    InvalidInputError,
    MalformedDenominatorError,
    MalformedElementError,
    MissingOrderError,
    NotHomogeneousError,
    OracleRequiredError,
    PreconditionError,
    StrategyUnavailableError,
    TorsionWitnessError,
    UndecidableConfigurationError,
    UnsupportedFamilyError,
    ZeroDegreeError,
)
from .grothendieck import (
    FGAbelianStructure,
    GrothElement,
    GrothendieckGroup,
    GrothOrder,
    SNFResult,
    build_total_order,
    canonical_map,
    canonical_map_injective,
    class_index,
    direct_sum_groth,
    finite_groth_structure,
    groth_classes,
    groth_of_presentation,
    is_abelian_group,
    is_torsion_free,
    monoid_groth_structure,
    order_from_monoid_order,
    presentation_matrix,
    smith_normal_form,
    structure_from_snf,
    universal_extend,
)
from .localization import (
    EmbeddingReport,
    Fraction,
    LocalizedRing,
    MultiplicativeSet,
    SaturationSet,
    SupportSubmonoid,
    UnitGroup,
    UnitsIsoReport,
    decompose_fraction,
    enumerate_ideals,
    find_saturation_witness,
    fraction_degree,
    groth_units_embedding,
    groth_units_iso,
    ideal_closure,
    kx_counterexample_check,
    localization_classes,
    maximal_ideals,
    multset_cayley,
    one_plus_ideal_check,
    prime_ideals,
    sample_fraction,
    saturate,
    sum_components,
    support_submonoid,
    units_of_localization,
)
from .monoid import (
    CayleyMonoid,
    CommutativeMonoid,
    DirectSumMonoid,
    FreeCommutativeMonoid,
    IntegerLatticeMonoid,
    MonoidPresentation,
    OrderedMonoid,
    check_order_compatible,
    find_order_violation,
    is_cancellative,
    lex_compare,
    monoid_from_dict,
    monoid_to_dict,
    natural_order,
    numeric_compare,
    quasi_zero_submonoid,
    sample_element,
    tuple_lex_compare,
)
from .ring import (
    GroupRing,
    GroupRingElement,
    HomogeneousPart,
    IntegerRing,
    ModRing,
    MonoidRing,
    MRElement,
    all_monomials_nonzerodivisors,
    canonical_to_group_ring,
    degree_of,
    degrees_submonoid,
    group_ring_map_injective,
    homogeneous_components,
    monomial_is_nonzerodivisor,
    regrade,
    ring_from_dict,
)
from .isomorphisms import (
    HMapContext,
    group_ring_specialization,
    h_forward,
    h_inverse,
    laurent_iso,
    sample_group_ring_element,
    sample_t_fraction,
    verify_isomorphism,
)
from .rng import Lcg64

__version__ = "0.1.0"

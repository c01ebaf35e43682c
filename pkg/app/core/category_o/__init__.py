"""范畴 O' 层面的算法：极大向量、Verma 嵌入、幂零度、公理、滤过、投射对象与互反律"""

from .axioms import AxiomReport, check_oprime_axioms
from .filtrations import FiltrationReport, highest_weight_filtration, standard_filtration
from .maximal import (
    IrreducibilityReport,
    LinkageCompleteness,
    MaximalVectors,
    SingularCheck,
    composition_multiplicities_sl2,
    embed_verma,
    find_maximal_vectors,
    has_headroom,
    irreducibility_check,
    irreducible_quotient,
    linkage_completeness,
    maximal_submodule,
    singular_vector_formula_check,
    verma_maximal_vectors,
)
from .nilpotency import j2_nilpotency_degree, shifted_nilpotency_degree
from .projectives import (
    LiftResult,
    NonLiftabilityCertificate,
    ReciprocityReport,
    TowerLevel,
    hom_dimension,
    jordan_tower,
    jordan_tower_growth,
    jordan_witness,
    module_map_space,
    nonliftability_certificate,
    reciprocity_check_sl2,
    verify_serialized_lift,
)

__all__ = [
    "AxiomReport",
    "FiltrationReport",
    "IrreducibilityReport",
    "LiftResult",
    "LinkageCompleteness",
    "MaximalVectors",
    "NonLiftabilityCertificate",
    "ReciprocityReport",
    "SingularCheck",
    "TowerLevel",
    "check_oprime_axioms",
    "composition_multiplicities_sl2",
    "embed_verma",
    "find_maximal_vectors",
    "has_headroom",
    "highest_weight_filtration",
    "hom_dimension",
    "irreducibility_check",
    "irreducible_quotient",
    "j2_nilpotency_degree",
    "jordan_tower",
    "jordan_tower_growth",
    "jordan_witness",
    "linkage_completeness",
    "maximal_submodule",
    "module_map_space",
    "nonliftability_certificate",
    "reciprocity_check_sl2",
    "shifted_nilpotency_degree",
    "singular_vector_formula_check",
    "standard_filtration",
    "verify_serialized_lift",
    "verma_maximal_vectors",
]

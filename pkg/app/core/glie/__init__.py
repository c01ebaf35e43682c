"""广义约化 Lie 代数：g₀ 的 Chevalley 基、根基 J、泛函 g"""

from .algebra import GenReductiveAlgebra, RadicalSummand, format_linear
from .chevalley import chevalley_structure, irreducible_representation
from .construction import build_algebra, g0_algebra, split_radical
from .functional import (
    BorelCharacter,
    GFunctional,
    GValidation,
    Violation,
    borel_character,
    from_summands,
    require_g,
    validate_g,
    zero_functional,
)
from .simple import SimpleRealization, realize_simple

__all__ = [
    "BorelCharacter",
    "GFunctional",
    "GValidation",
    "GenReductiveAlgebra",
    "RadicalSummand",
    "SimpleRealization",
    "Violation",
    "borel_character",
    "build_algebra",
    "chevalley_structure",
    "format_linear",
    "from_summands",
    "g0_algebra",
    "irreducible_representation",
    "realize_simple",
    "require_g",
    "split_radical",
    "validate_g",
    "zero_functional",
]

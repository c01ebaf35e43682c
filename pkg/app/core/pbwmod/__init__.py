"""PBW 基上的截断权模：Verma 模、子模与商、张量积、Jordan 型扩张"""

from .constructions import (
    apply,
    direct_sum,
    jordan_sum,
    quotient,
    quotient_with_projection,
    span_closure,
    submodule_from_spaces,
    submodule_generated,
    submodule_with_inclusion,
    tensor_with_simple,
)
from .module import ModuleMap, TruncatedModule, WeightVector
from .pbw import FMonomial, PBWEngine, monomial_drop, monomial_label, monomials_up_to
from .verma import build_verma, check_depth, verma_image, verma_to

__all__ = [
    "FMonomial",
    "ModuleMap",
    "PBWEngine",
    "TruncatedModule",
    "WeightVector",
    "apply",
    "build_verma",
    "check_depth",
    "direct_sum",
    "jordan_sum",
    "monomial_drop",
    "monomial_label",
    "monomials_up_to",
    "quotient",
    "quotient_with_projection",
    "span_closure",
    "submodule_from_spaces",
    "submodule_generated",
    "submodule_with_inclusion",
    "tensor_with_simple",
    "verma_image",
    "verma_to",
]

"""精确有理线性代数"""

from .elimination import (
    SolveOutcome,
    SolveTag,
    Subspace,
    inverse,
    kernel,
    rank,
    rank_rational,
    reduced_echelon,
    rref_rational,
    solve,
)
from .matrix import (
    RationalMatrix,
    Vector,
    add_vectors,
    as_vector,
    block_diagonal,
    dot,
    hstack,
    is_zero_vector,
    kronecker,
    scale_vector,
    unit_vector,
    vstack,
    zero_vector,
)

__all__ = [
    "RationalMatrix",
    "Vector",
    "SolveOutcome",
    "SolveTag",
    "Subspace",
    "add_vectors",
    "as_vector",
    "block_diagonal",
    "dot",
    "hstack",
    "inverse",
    "is_zero_vector",
    "kernel",
    "kronecker",
    "rank",
    "rank_rational",
    "reduced_echelon",
    "rref_rational",
    "scale_vector",
    "solve",
    "unit_vector",
    "vstack",
    "zero_vector",
]

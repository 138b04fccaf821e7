"""Exact-arithmetic construction and verification of nonderived n-ary
algebraic structures built from binary ones via block-shift matrices."""

from .scalars import (
    CC,
    QQ,
    ComplexRational,
    GrassmannAlgebra,
    GrassmannElement,
    NotInvertibleError,
    ParseError,
)
from .matrices import Matrix, ShapeError, SuperMatrix
from .blockshift import (
    BlockShiftMatrix,
    PatternError,
    character_determinant_report,
    dense_nary_product,
    from_blocks,
    from_dense,
    is_nary_idempotent,
    make_idempotent,
    nary_identity,
    nary_product,
    polyadic_zero,
    polyadize,
    polyadized_character,
    product_pattern,
    querelement,
    unique_polyadize,
)
from .decomposition import (
    DiagShift,
    PMatrix,
    ShiftDiag,
    diagshift_nary_product,
    patterns_distinct,
    pmatrix_ternary_product,
    shiftdiag_nary_product,
)
from .shiftdeform import (
    AssociativityWitness,
    ShiftTuple,
    Turn,
    associativity_witness,
    cyclic_shift,
    is_identity_tuple,
    nu_s,
    quer_tuple,
)
from .verify import (
    NaryStructure,
    VerificationReport,
    check_commutative,
    check_identity,
    check_idempotent,
    check_nilpotent,
    check_querelement,
    check_total_associativity,
    polyadic_power,
)

__version__ = "0.1.0"

__all__ = [
    "CC",
    "QQ",
    "ComplexRational",
    "GrassmannAlgebra",
    "GrassmannElement",
    "NotInvertibleError",
    "ParseError",
    "Matrix",
    "ShapeError",
    "SuperMatrix",
    "BlockShiftMatrix",
    "PatternError",
    "character_determinant_report",
    "dense_nary_product",
    "from_blocks",
    "from_dense",
    "is_nary_idempotent",
    "make_idempotent",
    "nary_identity",
    "nary_product",
    "polyadic_zero",
    "polyadize",
    "polyadized_character",
    "product_pattern",
    "querelement",
    "unique_polyadize",
    "DiagShift",
    "PMatrix",
    "ShiftDiag",
    "diagshift_nary_product",
    "patterns_distinct",
    "pmatrix_ternary_product",
    "shiftdiag_nary_product",
    "AssociativityWitness",
    "ShiftTuple",
    "Turn",
    "associativity_witness",
    "cyclic_shift",
    "is_identity_tuple",
    "nu_s",
    "quer_tuple",
    "NaryStructure",
    "VerificationReport",
    "check_commutative",
    "check_identity",
    "check_idempotent",
    "check_nilpotent",
    "check_querelement",
    "check_total_associativity",
    "polyadic_power",
    "__version__",
]

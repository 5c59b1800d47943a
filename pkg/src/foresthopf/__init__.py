"""Exact arithmetic for the Hopf algebra of decorated planar rooted forests.

Forests carry two decoration alphabets — X on leaves only, Ω anywhere — and
support a one-parameter coproduct family, the undeformed antipode by two
independent routes, the dual (quasi-)shuffle products built from matrix
completions, a forest↔matrix codec, and a conformance suite that checks
every algebraic law exhaustively on small weights.
"""

from .algebra import (
    InterpretationError,
    Interpretation,
    LambdaNotZeroError,
    LinComb,
    TensorLinComb,
    antipode,
    antipode_recursive,
    antipode_takeuchi,
    apply_graft,
    as_lincomb,
    coproduct,
    coproduct_recursive,
    counit,
    evaluate,
    inclusion_interpretation,
    n_count,
    pairing,
    pairing2,
    phi_lambda,
    product,
    reduced_coproduct,
    star,
    star_lambda,
)
from .forests import (
    Decoration,
    DecorationRegistry,
    EMPTY_FOREST,
    Forest,
    ForestHopfError,
    ForestStats,
    InvalidGraftError,
    ParseError,
    RegistryError,
    SizeLimitError,
    Tree,
    VertexRow,
    concat,
    enumerate_forests,
    forest_of,
    forest_to_text,
    graft,
    induced_subforest,
    leq_h,
    leq_r,
    make_leaf,
    parse_forest,
    stats,
    vertex_table,
)
from .kernels import IMPLEMENTATION as KERNEL_IMPLEMENTATION
from .matrices import (
    ForestMatrix,
    MatrixEntry,
    NotRepresentableError,
    QuasiShuffle,
    Representability,
    ShapeMismatchError,
    Shuffle,
    decode,
    encode,
    fm_sigma,
    fm_sigma_quasi,
    is_representable,
    matrix_to_text,
    parse_matrix,
    quasi_shuffles,
    shuffles,
)
from .poly import LAMBDA, ONE, PolyLambda, ZERO
from .verify import (
    ALL_CHECKS,
    Backend,
    CheckConfigError,
    CheckFailure,
    CheckReport,
    SuiteConfig,
    run_suite,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "KERNEL_IMPLEMENTATION",
    # forests
    "Decoration",
    "DecorationRegistry",
    "EMPTY_FOREST",
    "Forest",
    "ForestHopfError",
    "ForestStats",
    "InvalidGraftError",
    "ParseError",
    "RegistryError",
    "SizeLimitError",
    "Tree",
    "VertexRow",
    "concat",
    "enumerate_forests",
    "forest_of",
    "forest_to_text",
    "graft",
    "induced_subforest",
    "leq_h",
    "leq_r",
    "make_leaf",
    "parse_forest",
    "stats",
    "vertex_table",
    # polynomials
    "LAMBDA",
    "ONE",
    "PolyLambda",
    "ZERO",
    # matrices
    "ForestMatrix",
    "MatrixEntry",
    "NotRepresentableError",
    "QuasiShuffle",
    "Representability",
    "ShapeMismatchError",
    "Shuffle",
    "decode",
    "encode",
    "fm_sigma",
    "fm_sigma_quasi",
    "is_representable",
    "matrix_to_text",
    "parse_matrix",
    "quasi_shuffles",
    "shuffles",
    # algebra
    "Interpretation",
    "InterpretationError",
    "LambdaNotZeroError",
    "LinComb",
    "TensorLinComb",
    "antipode",
    "antipode_recursive",
    "antipode_takeuchi",
    "apply_graft",
    "as_lincomb",
    "coproduct",
    "coproduct_recursive",
    "counit",
    "evaluate",
    "inclusion_interpretation",
    "n_count",
    "pairing",
    "pairing2",
    "phi_lambda",
    "product",
    "reduced_coproduct",
    "star",
    "star_lambda",
    # verification
    "ALL_CHECKS",
    "Backend",
    "CheckConfigError",
    "CheckFailure",
    "CheckReport",
    "SuiteConfig",
    "run_suite",
]

"""Exact factorization of matrices through large subspaces of M_n(K).

Spanning matrix space by pairwise products from a subspace, writing any
matrix as a product drawn from a large affine subspace, factoring through
a hyperplane in exactly two factors (n >= 3), the full n = 2 hyperplane
classification, and brute-force oracles over small prime fields.
"""

from .errors import (
    BudgetExhaustedError,
    DimensionMismatchError,
    FieldMismatchError,
    InfiniteFieldError,
    InternalContradictionError,
    NoSolutionError,
    PreconditionViolatedError,
    SingularMatrixError,
    SpanDeficientError,
    SpanfactorError,
    TooLargeError,
)
from .fields import GF, QQ, Field, PrimeField, RationalField, Scalar, arith, enumerate_field
from .matrix import (
    Matrix,
    adjugate,
    conjugate,
    det,
    inverse,
    inverse_and_adjugate,
    kernel_basis,
    rank,
    rref,
    solve,
    solve_or_certificate,
    transvection,
    transvection_factor,
)
from .subspace import (
    AffineSubspace,
    Hyperplane,
    LinearSubspace,
    affine_meet_hyperplane,
    codim,
    commutator_span,
    intersect,
    intersect_affine,
    ortho_complement,
    product_span_two,
    sl_subspace,
    span_from,
)
from .witness import SearchBudget, find_nonsingular_in_affine, find_rank_r_in_affine, inverse_pair
from .factor2 import (
    Impossible,
    N2Class,
    NonDegenerate,
    PairFactorization,
    SumOfProducts,
    degenerate_pair_witness,
    hyperplane_pair_factor,
    n2_classify,
    n2_pair_factor,
    sum_of_products_decompose,
    two_hyperplanes_factor,
)
from .semigroup import (
    ChainFactorization,
    ExceptionalTrace,
    GoodSituation,
    exceptional_factor,
    good_situation_transform,
    semigroup_factor,
    singular_reduce,
    trace_level_affine,
    unipotent_row_factor,
)
from .oracle import ClosureResult, closure, enumerate_affine, product_set

__version__ = "0.1.0"

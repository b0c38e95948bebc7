"""Pair factorizations through hyperplanes and their classification limits.

Covers: decomposing a matrix as a sum of pairwise products from one large
subspace; factoring any matrix as B·C with both factors in a hyperplane
(n >= 3), or with B and C drawn from two different hyperplanes; the n = 2
trichotomy of hyperplanes with its explicit obstructions; and recovering
the standard presentation of a degenerate subspace pair.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple, Union

from .errors import (
    InternalContradictionError,
    PreconditionViolatedError,
    SpanDeficientError,
)
from .fields import Field, PRIME_FIELD
from .matrix import (
    Matrix,
    adjugate,
    complete_to_basis,
    conjugate,
    det,
    inverse,
    kernel_basis,
    rank,
    rref,
    solve,
)
from .subspace import (
    AffineSubspace,
    Hyperplane,
    LinearSubspace,
    SpanBuilder,
    affine_meet_hyperplane,
    ortho_complement,
    product_span_two,
    span_from,
)
from .witness import SearchBudget, find_rank_r_in_affine, inverse_pair


@dataclass(frozen=True)
class PairFactorization:
    """target = left · right with left in left_space and right in right_space."""

    target: Matrix
    left: Matrix
    right: Matrix
    left_space: Hyperplane
    right_space: Hyperplane
    verified: bool = False

    @classmethod
    def build(cls, target: Matrix, left: Matrix, right: Matrix,
              left_space: Hyperplane, right_space: Hyperplane) -> "PairFactorization":
        if left * right != target:
            raise InternalContradictionError("factor product does not equal the target")
        if not left_space.contains(left) or not right_space.contains(right):
            raise InternalContradictionError("factor escapes its hyperplane")
        return cls(target, left, right, left_space, right_space, True)


@dataclass(frozen=True)
class SumOfProducts:
    """target = sum of A_i·B_i with every A_i, B_i in the subspace."""

    target: Matrix
    terms: Tuple[Tuple[Matrix, Matrix], ...]
    subspace: LinearSubspace
    verified: bool = False

    @classmethod
    def build(cls, target: Matrix, terms, subspace: LinearSubspace) -> "SumOfProducts":
        acc = Matrix.zero(target.field, target.rows, target.cols)
        for a, b in terms:
            if not subspace.contains(a) or not subspace.contains(b):
                raise InternalContradictionError("sum term escapes the subspace")
            acc = acc + a * b
        if acc != target:
            raise InternalContradictionError("sum of products does not equal the target")
        return cls(target, tuple(terms), subspace, True)


def sum_of_products_decompose(v: LinearSubspace, m: Matrix) -> SumOfProducts:
    """Write m as a sum of products A·B with A, B in v.

    Works whenever the pairwise products of v span the matrix space (always
    true for codim v < n-1); raises SpanDeficientError otherwise.
    """
    n = v.n
    field = v.field
    ident = Matrix.identity(field, n)
    if v.contains(m) and v.contains(ident):
        return SumOfProducts.build(m, [(m, ident)], v)
    basis = v.basis()
    builder = SpanBuilder(field, n * n)
    for i, a in enumerate(basis):
        for j, b in enumerate(basis):
            builder.add((a * b).flat(), tag=(i, j))
        if builder.full:
            break
    combo = builder.express(m.flat())
    if combo is None:
        raise SpanDeficientError(
            "products of the subspace do not span the target "
            f"(codim {v.codim} vs n-1 = {n - 1})")
    terms = [(basis[i].scale(c), basis[j]) for (i, j), c in sorted(combo.items())]
    return SumOfProducts.build(m, terms, v)


def _row_space_rows(m: Matrix) -> List[tuple]:
    red, pivots, rk = rref(m)
    return [red.row_raw(i) for i in range(rk)]


def _first_nonzero_row(m: Matrix) -> int:
    zero = m.field.zero
    for i in range(m.rows):
        if any(x != zero for x in m.row_raw(i)):
            return i
    raise ValueError("zero matrix")


def _trace_cut(gens: List[Matrix], normal: Matrix) -> List[Matrix]:
    """Spanning set of {X in span(gens) : tr(normal·X) = 0}.

    Assumes the generators are independent; one elimination over their
    trace values cuts the hyperplane condition without a full subspace
    intersection.
    """
    field = normal.field
    vals = [normal.trace_product(g) for g in gens]
    j0 = next((j for j, t in enumerate(vals) if t != field.zero), None)
    if j0 is None:
        return list(gens)
    pivot = gens[j0]
    pval = vals[j0]
    out = []
    for j, g in enumerate(gens):
        if j == j0:
            continue
        if vals[j] == field.zero:
            out.append(g)
        else:
            out.append(g - pivot.scale(field.div(vals[j], pval)))
    return out


def _singular_pair_core(hl: Hyperplane, hr: Hyperplane, m: Matrix,
                        budget: SearchBudget) -> Tuple[Matrix, Matrix]:
    """Factor a singular nonzero m as B·C, B in hl, C in hr.

    Requires the first row of hl's normal to be nonzero; the caller
    conjugates to arrange that.  C is a rank-matching matrix in hr whose
    kernel equals Ker m and whose image avoids e_1; B solves B·C = m inside
    hl via the affine-meets-hyperplane lemma.
    """
    field = m.field
    n = m.rows
    p = rank(m)
    # V = {C : Ker m ⊆ Ker C, im C ⊆ span(e_2..e_n)}: rows 2..n from the
    # row space of m, first row zero.  dim = (n-1)·p.
    rows_basis = _row_space_rows(m)
    gen: List[Matrix] = []
    zero_row = (field.zero,) * n
    for i in range(1, n):
        for r in rows_basis:
            flat = zero_row * i + r + zero_row * (n - 1 - i)
            gen.append(Matrix._raw(field, n, n, flat))
    vh = span_from(_trace_cut(gen, hr.normal), field, (n, n))
    c = find_rank_r_in_affine(
        AffineSubspace(Matrix.zero(field, n), vh), p, budget)
    b0 = solve(c, m, unknown="left")
    if b0 is None:
        raise InternalContradictionError("kernel-matched C does not divide m")
    # Translation space {B : B·C = 0}: every row from the left kernel of C.
    left_null = [kv.transpose() for kv in kernel_basis(c.transpose())]
    tgen: List[Matrix] = []
    for i in range(n):
        for lv in left_null:
            flat = zero_row * i + lv.flat() + zero_row * (n - 1 - i)
            tgen.append(Matrix._raw(field, n, n, flat))
    plane = AffineSubspace(b0, span_from(tgen, field, (n, n)))
    b = affine_meet_hyperplane(hl, plane)
    if b is None:
        raise InternalContradictionError(
            "B-plane misses the hyperplane although the normal's first row is nonzero")
    return b, c


def _singular_pair_factor(hl: Hyperplane, hr: Hyperplane, m: Matrix,
                          budget: SearchBudget) -> Tuple[Matrix, Matrix]:
    i = _first_nonzero_row(hl.normal)
    if i == 0:
        return _singular_pair_core(hl, hr, m, budget)
    images = list(range(m.rows))
    images[0], images[i] = images[i], images[0]
    perm = Matrix.permutation(m.field, images)
    b1, c1 = _singular_pair_core(hl.conjugated(perm), hr.conjugated(perm),
                                 conjugate(m, perm), budget)
    pinv = inverse(perm)
    return pinv * b1 * perm, pinv * c1 * perm


def two_hyperplanes_factor(h1: Hyperplane, h2: Hyperplane, m: Matrix,
                           budget: SearchBudget) -> PairFactorization:
    """m = B·C with B in h1 and C in h2 (n >= 3, any m)."""
    if h1.field != h2.field or h1.n != h2.n:
        raise PreconditionViolatedError("hyperplanes must share field and size")
    n = h1.n
    if n < 3:
        raise PreconditionViolatedError("two-factor splitting needs n >= 3")
    if (m.rows, m.cols) != (n, n) or m.field != h1.field:
        raise PreconditionViolatedError("target shape or field mismatch")
    field = m.field
    if m.is_zero:
        z = Matrix.zero(field, n)
        return PairFactorization.build(m, z, z, h1, h2)
    if det(m).value != field.zero:
        # P in h2 with P^{-1} in {X : m·X in h1}; then (m·P^{-1})·P = m.
        pulled = Hyperplane(h1.normal * m)
        p = inverse_pair(h2, pulled, budget)
        return PairFactorization.build(m, m * inverse(p), p, h1, h2)
    b, c = _singular_pair_factor(h1, h2, m, budget)
    return PairFactorization.build(m, b, c, h1, h2)


def hyperplane_pair_factor(h: Hyperplane, m: Matrix,
                           budget: SearchBudget) -> PairFactorization:
    """m = B·C with both factors in the hyperplane h (n >= 3)."""
    return two_hyperplanes_factor(h, h, m, budget)


# -- the case n = 2 ----------------------------------------------------------

FACTORABLE = "factorable"
CONJUGATE_H0 = "conjugate_H0"
CONJUGATE_T2PLUS = "conjugate_T2plus"


@dataclass(frozen=True)
class N2Class:
    """Trichotomy of hyperplanes of M_2(K) by their normal A.

    rank A = 2: every matrix is a product of two elements.  rank A = 1 with
    tr A != 0: conjugate to {X : X_11 = 0}.  rank A = 1 with tr A = 0:
    conjugate to the upper triangular subalgebra.  The conjugator P maps the
    hyperplane onto its standard model: P·H·P^{-1} = standard.
    """

    verdict: str
    conjugator: Optional[Matrix]


@dataclass(frozen=True)
class Impossible:
    """Certificate that a target admits no pair factorization in H."""

    reason: str
    conjugator: Matrix
    standardized_target: Matrix


@dataclass(frozen=True)
class NonDegenerate:
    """product_span_two(V, W) is the whole matrix space."""


def _rank_one_row_col(a: Matrix):
    """u (column) and w (row) with a = u·w."""
    field = a.field
    i0 = _first_nonzero_row(a)
    w = a.row_raw(i0)
    j0 = next(j for j, x in enumerate(w) if x != field.zero)
    u = [field.div(a.raw(i, j0), w[j0]) for i in range(a.rows)]
    return Matrix.column(field, u), Matrix.row_vector(field, w)


def n2_classify(h: Hyperplane) -> N2Class:
    if h.n != 2:
        raise PreconditionViolatedError("n2_classify requires n = 2")
    a = h.normal
    field = h.field
    if rank(a) == 2:
        return N2Class(FACTORABLE, None)
    u, w = _rank_one_row_col(a)
    t = a.trace().value
    if t != field.zero:
        # A·u = t·u, A·z = 0 for z spanning ker(w·): diagonalize.
        z = Matrix.column(field, [field.neg(w.raw(0, 1)), w.raw(0, 0)])
        s = Matrix(field, [[u.raw(0, 0), z.raw(0, 0)], [u.raw(1, 0), z.raw(1, 0)]])
        p = inverse(s)
        std = conjugate(a, p)
        if Hyperplane(std) != Hyperplane(Matrix.elementary(field, 2, 2, 0, 0)):
            raise InternalContradictionError("H0 standardization failed")
        return N2Class(CONJUGATE_H0, p)
    # Nilpotent rank one: A·u = 0, A·v = u for w·v = 1.
    j0 = 0 if w.raw(0, 0) != field.zero else 1
    vvec = [field.zero, field.zero]
    vvec[j0] = field.inv(w.raw(0, j0))
    s = Matrix(field, [[u.raw(0, 0), vvec[0]], [u.raw(1, 0), vvec[1]]])
    p = inverse(s)
    std = conjugate(a, p)
    if Hyperplane(std) != Hyperplane(Matrix.elementary(field, 2, 2, 0, 1)):
        raise InternalContradictionError("T2+ standardization failed")
    return N2Class(CONJUGATE_T2PLUS, p)


def _nonsingular_in_subspace_small(v: LinearSubspace) -> Optional[Matrix]:
    """Nonsingular element of a subspace of M_2; deterministic small search.

    det is a quadratic form on the subspace, so over the rationals the grid
    {0,1,2}^dim already contains a nonzero point whenever one exists; over
    GF(p) the whole coefficient space is scanned.
    """
    field = v.field
    basis = v.basis()
    if not basis:
        return None
    import itertools
    values = range(field.p) if field.kind == PRIME_FIELD else range(3)
    for coeffs in itertools.product(values, repeat=len(basis)):
        m = Matrix.zero(field, 2)
        for cf, b in zip(coeffs, basis):
            if cf:
                m = m + b.scale(cf)
        if det(m).value != field.zero:
            return m
    return None


def n2_pair_factor(h: Hyperplane, m: Matrix,
                   budget: SearchBudget) -> Union[PairFactorization, Impossible]:
    """Factor m = B·C in a hyperplane of M_2, or certify impossibility."""
    if h.n != 2:
        raise PreconditionViolatedError("n2_pair_factor requires n = 2")
    if (m.rows, m.cols) != (2, 2) or m.field != h.field:
        raise PreconditionViolatedError("target shape or field mismatch")
    field = h.field
    cls = n2_classify(h)
    if cls.verdict == FACTORABLE:
        if m.is_zero:
            z = Matrix.zero(field, 2)
            return PairFactorization.build(m, z, z, h, h)
        if det(m).value != field.zero:
            # B ranges over {m·adj(N) : N in H}; a nonsingular B = m·adj(C)
            # in H gives m = B·(C/det C).
            v = span_from([m * adjugate(nb) for nb in h.subspace().basis()],
                          field, (2, 2))
            b = _nonsingular_in_subspace_small(v.intersect(h.subspace()))
            if b is None:
                raise InternalContradictionError(
                    "no nonsingular matrix in V ∩ H although the normal is nonsingular")
            c = adjugate(inverse(m) * b)
            if not h.contains(c) or det(c).value == field.zero:
                raise InternalContradictionError("recovered C is not usable")
            right = c.scale(field.inv(det(c).value))
            return PairFactorization.build(m, b, right, h, h)
        # rank 1: C kills Ker m inside H, then B solves B·C = m inside H.
        e1 = kernel_basis(m)[0]
        rv = Matrix.row_vector(field, [field.neg(e1.raw(1, 0)), e1.raw(0, 0)])
        zero_row = (field.zero,) * 2
        plane = span_from([
            Matrix._raw(field, 2, 2, rv.flat() + zero_row),
            Matrix._raw(field, 2, 2, zero_row + rv.flat()),
        ])
        ch = plane.intersect(h.subspace())
        if ch.dim == 0:
            raise InternalContradictionError("kernel plane misses the hyperplane")
        c = ch.basis()[0]
        b0 = solve(c, m, unknown="left")
        if b0 is None:
            raise InternalContradictionError("C does not divide m")
        left_null = [kv.transpose() for kv in kernel_basis(c.transpose())]
        tgen = []
        for i in range(2):
            for lv in left_null:
                flat = zero_row * i + lv.flat() + zero_row * (1 - i)
                tgen.append(Matrix._raw(field, 2, 2, flat))
        b = affine_meet_hyperplane(h, AffineSubspace(b0, span_from(tgen, field, (2, 2))))
        if b is None:
            raise InternalContradictionError(
                "B-plane misses the hyperplane although the normal is nonsingular")
        return PairFactorization.build(m, b, c, h, h)

    p = cls.conjugator
    ms = conjugate(m, p)
    pinv = inverse(p)
    if cls.verdict == CONJUGATE_H0:
        pair = _h0_standard_factor(ms)
        if pair is None:
            return Impossible(
                "standardized target has 0 at the (1,1) entry and nonzero "
                "off-diagonal entries; any factorization in H0 forces a "
                "nonzero (1,1) entry in the left factor", p, ms)
        bs, cs = pair
    else:
        if ms.raw(1, 0) != field.zero:
            return Impossible(
                "standardized target is not upper triangular; products of "
                "upper triangular matrices stay upper triangular", p, ms)
        bs, cs = ms, Matrix.identity(field, 2)
    return PairFactorization.build(m, pinv * bs * p, pinv * cs * p, h, h)


def _h0_standard_factor(ms: Matrix) -> Optional[Tuple[Matrix, Matrix]]:
    """Factor inside H0 = {X : X_11 = 0} when possible."""
    field = ms.field
    m11, m12, m21, m22 = ms.raw(0, 0), ms.raw(0, 1), ms.raw(1, 0), ms.raw(1, 1)
    zero = field.zero
    if m11 != zero:
        r = field.div(m12, m11)
        c = m21
        a = field.sub(m22, field.mul(c, r))
        b = Matrix(field, [[zero, m11], [a, c]])
        cm = Matrix(field, [[zero, field.one], [field.one, r]])
        return b, cm
    if m12 == zero:
        b = Matrix(field, [[zero, zero], [m22, m21]])
        cm = Matrix(field, [[zero, field.one], [field.one, zero]])
        return b, cm
    if m21 == zero:
        b = Matrix(field, [[zero, field.one], [m22, zero]])
        cm = Matrix(field, [[zero, field.one], [zero, m12]])
        return b, cm
    return None


# -- degenerate pairs (Prop 5(b)) --------------------------------------------


def standard_vp(field: Field, n: int, k: int) -> LinearSubspace:
    """First row supported on the last n-k coordinates, other rows free."""
    gens = [Matrix.elementary(field, n, n, 0, j) for j in range(k, n)]
    gens += [Matrix.elementary(field, n, n, i, j)
             for i in range(1, n) for j in range(n)]
    return span_from(gens, field, (n, n))


def standard_wp(field: Field, n: int, k: int) -> LinearSubspace:
    """First column supported on the first k coordinates, other columns free."""
    gens = [Matrix.elementary(field, n, n, i, 0) for i in range(k)]
    gens += [Matrix.elementary(field, n, n, i, j)
             for i in range(n) for j in range(1, n)]
    return span_from(gens, field, (n, n))


def transform_space(left: Matrix, v: LinearSubspace, right: Matrix) -> LinearSubspace:
    return span_from([left * b * right for b in v.basis()], v.field, v.shape)


def degenerate_pair_witness(v: LinearSubspace, w: LinearSubspace):
    """Either NonDegenerate, or (p, P, Q, R) with V = P·V_p·Q and W = Q^{-1}·W_p·R.

    Requires codim V + codim W = n.  Follows the constructive classification:
    a nonzero D orthogonal to all products has rank one, D = P0·E_11·R0
    normalizes the pair, and the first-row/first-column spans determine p
    and the middle change of basis Q.
    """
    n = v.n
    field = v.field
    if v.codim + w.codim != n:
        raise PreconditionViolatedError(
            f"codim V + codim W = {v.codim + w.codim} != n = {n}")
    prod = product_span_two(v, w)
    if prod.dim == n * n:
        return NonDegenerate()
    d = ortho_complement(prod).basis()[0]
    if rank(d) != 1:
        raise InternalContradictionError("orthogonal direction of rank != 1")
    u, wrow = _rank_one_row_col(d)
    p0 = complete_to_basis(field, [u], n)
    r0 = complete_to_basis(field, [wrow.transpose()], n).transpose()
    if p0 * Matrix.elementary(field, n, n, 0, 0) * r0 != d:
        raise InternalContradictionError("rank-one factorization failed")
    v1 = transform_space(r0, v, Matrix.identity(field, n))
    w1 = transform_space(Matrix.identity(field, n), w, p0)
    # First-row span of V1 and first-column span of W1.
    e_rows = span_from([Matrix._raw(field, 1, n, b.row_raw(0)) for b in v1.basis()],
                       field, (1, n))
    f_cols = span_from([Matrix.column(field, [b.raw(i, 0) for i in range(n)])
                        for b in w1.basis()], field, (n, 1))
    p = n - e_rows.dim
    if f_cols.dim != n - e_rows.dim:
        raise InternalContradictionError("dim E + dim F != n")
    for le in e_rows.basis():
        for cf in f_cols.basis():
            if (le * cf).raw(0, 0) != field.zero:
                raise InternalContradictionError("E and F do not annihilate")
    if e_rows.dim:
        emat = Matrix(field, [list(b.flat()) for b in e_rows.basis()])
        kern = kernel_basis(emat)
    else:
        kern = [Matrix.elementary(field, n, 1, i, 0) for i in range(n)]
    q = complete_to_basis(field, kern, n)
    qinv = inverse(q)
    p_out, q_out, r_out = inverse(r0), qinv, inverse(p0)
    if transform_space(p_out, standard_vp(field, n, p), q_out) != v:
        raise InternalContradictionError("V does not match P·V_p·Q")
    if transform_space(inverse(q_out), standard_wp(field, n, p), r_out) != w:
        raise InternalContradictionError("W does not match Q^{-1}·W_p·R")
    return p, p_out, q_out, r_out

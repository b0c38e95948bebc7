"""Factor any matrix into a product of elements of a large affine subspace.

The induction works on conjugated coordinates where the subspace is in a
"good situation": the first-column map is onto and the lower-right block of
the first-column slice is a large affine subspace of M_{n-1}, which feeds
the recursion.  Singular targets are reduced to the invertible case through
rank n-1 elements; the n = 3 trace-level hyperplanes need their own explicit
constructions and are handled separately.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, List, Optional, Sequence, Tuple, Union

from .errors import (
    BudgetExhaustedError,
    InternalContradictionError,
    PreconditionViolatedError,
)
from .fields import Field, PRIME_FIELD, Scalar
from .matrix import (
    Matrix,
    complete_to_basis,
    conjugate,
    det,
    inverse,
    rank,
    rank_normal_form,
    transvection_factor,
)
from .subspace import (
    AffineSubspace,
    Hyperplane,
    LinearSubspace,
    affine_image,
    affine_preimage_slice,
    ortho_complement,
    sl_subspace,
    span_from,
)
from .witness import (
    SearchBudget,
    _is_nonsingular,
    _random_coeff,
    find_nonsingular_in_affine,
    find_rank_r_in_affine,
)


@dataclass(frozen=True)
class ChainFactorization:
    """target = product of the factors (left to right), all inside subspace.

    conjugator records the coordinate change the solver used internally;
    the stored factors always live in the original subspace.
    """

    target: Matrix
    factors: Tuple[Matrix, ...]
    subspace: AffineSubspace
    conjugator: Matrix
    verified: bool = False

    @classmethod
    def build(cls, target, factors, subspace, conjugator=None) -> "ChainFactorization":
        field = target.field
        if conjugator is None:
            conjugator = Matrix.identity(field, target.rows)
        acc = Matrix.identity(field, target.rows)
        for f in factors:
            if not subspace.contains(f):
                raise InternalContradictionError("chain factor escapes the subspace")
            acc = acc * f
        if acc != target:
            raise InternalContradictionError("chain product does not equal the target")
        return cls(target, tuple(factors), subspace, conjugator, True)

    @property
    def length(self) -> int:
        return len(self.factors)


@dataclass(frozen=True)
class GoodSituation:
    """Conjugated coordinates where the inductive step applies.

    space = P·V·P^{-1}.  slice0 + span(slice_dirs) is the affine slice of
    elements whose first column is e_1; k_image is its lower-right block in
    M_{n-1} (codim < n-2); l_h spans the first-row tails available inside
    the translation space.
    """

    conjugator: Matrix
    space: AffineSubspace
    slice0: Matrix
    slice_dirs: Tuple[Matrix, ...]
    k_image: AffineSubspace
    l_h: LinearSubspace

    @property
    def n(self) -> int:
        return self.space.n

    def slice_space(self) -> AffineSubspace:
        return AffineSubspace(self.slice0, span_from(
            list(self.slice_dirs), self.space.field, self.space.shape))


@dataclass(frozen=True)
class ExceptionalTrace:
    """n = 3 and the subspace is exactly {M : tr M = a}."""

    a: Scalar


def _first_column(m: Matrix) -> Matrix:
    return Matrix.column(m.field, [m.raw(i, 0) for i in range(m.rows)])


def _row_i(m: Matrix, i: int) -> Matrix:
    return Matrix._raw(m.field, 1, m.cols, m.row_raw(i))


def _k_block(m: Matrix) -> Matrix:
    n = m.rows
    return Matrix._raw(m.field, n - 1, n - 1,
                       tuple(m.raw(i, j) for i in range(1, n) for j in range(1, n)))


def _l_row(m: Matrix) -> Matrix:
    return Matrix._raw(m.field, 1, m.cols - 1, m.row_raw(0)[1:])


def _corner(field: Field, row: Optional[Matrix], block: Matrix) -> Matrix:
    """[[1, row],[0, block]] with block of size n-1 (row defaults to zero)."""
    k = block.rows
    n = k + 1
    zero, one = field.zero, field.one
    flat = [zero] * (n * n)
    flat[0] = one
    if row is not None:
        for j in range(k):
            flat[1 + j] = row.raw(0, j)
    for i in range(k):
        for j in range(k):
            flat[(i + 1) * n + 1 + j] = block.raw(i, j)
    return Matrix._raw(field, n, n, tuple(flat))


def _conjugate_affine(v: AffineSubspace, p: Matrix) -> AffineSubspace:
    pinv = inverse(p)
    base = p * v.base * pinv
    dirs = [p * b * pinv for b in v.translation.basis()]
    return AffineSubspace(base, span_from(dirs, v.field, v.shape))


def _first_row_span(field: Field, n: int) -> LinearSubspace:
    return span_from([Matrix.elementary(field, n, n, 0, j) for j in range(n)],
                     field, (n, n))


def _check_conditions(v: AffineSubspace) -> Optional[Tuple[Matrix, Tuple[Matrix, ...],
                                                           AffineSubspace, LinearSubspace]]:
    """Conditions (i) and (ii) on an already-conjugated space, or None."""
    field = v.field
    n = v.n
    perp = ortho_complement(v.translation)
    if perp.intersect(_first_row_span(field, n)).dim != 0:
        return None  # some first-row-supported functional kills the C1 map
    e1 = Matrix.elementary(field, n, 1, 0, 0)
    sl = affine_preimage_slice(v, _first_column, e1)
    if sl is None:
        raise InternalContradictionError("onto C1 map with an empty slice")
    k_img = affine_image(sl, _k_block)
    if k_img.codim >= n - 2:
        return None
    tail = span_from([Matrix.elementary(field, n, n, 0, j) for j in range(1, n)],
                     field, (n, n))
    h = v.translation.intersect(tail)
    l_h = span_from([_l_row(b) for b in h.basis()], field, (1, n - 1))
    if l_h.dim == 0:
        raise InternalContradictionError(
            "codim < n-1 must leave a nonzero first-row tail in the translation")
    return sl.base, tuple(sl.translation.basis()), k_img, l_h


@lru_cache(maxsize=None)
def good_situation_transform(v: AffineSubspace, budget: SearchBudget
                             ) -> Union[GoodSituation, ExceptionalTrace]:
    """Find P with P·V·P^{-1} in the good situation, or certify the n = 3
    trace-level exception."""
    n = v.n
    field = v.field
    if v.codim >= n - 1:
        raise PreconditionViolatedError(f"codim {v.codim} >= n-1 = {n - 1}")
    if n == 3 and v.translation == sl_subspace(field, 3):
        return ExceptionalTrace(v.base.trace())

    def attempt(p: Matrix) -> Optional[GoodSituation]:
        vc = _conjugate_affine(v, p) if p != Matrix.identity(field, n) else v
        got = _check_conditions(vc)
        if got is None:
            return None
        slice0, dirs, k_img, l_h = got
        return GoodSituation(p, vc, slice0, dirs, k_img, l_h)

    got = attempt(Matrix.identity(field, n))
    if got is not None:
        return got
    import itertools
    for images in itertools.permutations(range(n)):
        got = attempt(Matrix.permutation(field, list(images)))
        if got is not None:
            return got
    rng = budget.rng()
    for _ in range(budget.max_random_trials):
        p = Matrix(field, [[_random_coeff(field, rng) for _ in range(n)]
                           for _ in range(n)])
        if not _is_nonsingular(p):
            continue
        got = attempt(p)
        if got is not None:
            return got
    raise BudgetExhaustedError("no conjugator reached the good situation")


# -- the invertible case under a good situation ------------------------------


@lru_cache(maxsize=None)
def _lift_block(gs: GoodSituation, pk: Matrix) -> Matrix:
    """The canonical element [[1, L],[0, pk]] of the first-column slice."""
    sl = gs.slice_space()
    lifted = affine_preimage_slice(sl, _k_block, pk)
    if lifted is None:
        raise InternalContradictionError("block outside K(W) cannot be lifted")
    return lifted.base


def _good_block_chain(gs: GoodSituation, pblock: Matrix,
                      budget: SearchBudget) -> Tuple[List[Matrix], Matrix]:
    """Factors in the slice whose product is [[1, L'],[0, pblock]]; returns L'."""
    sub = semigroup_factor(gs.k_image, pblock, budget)
    factors = [_lift_block(gs, pk) for pk in sub.factors]
    if not factors:
        raise InternalContradictionError("recursive chain may not be empty here")
    acc = factors[0]
    for f in factors[1:]:
        acc = acc * f
    if _k_block(acc) != pblock:
        raise InternalContradictionError("lifted chain has the wrong block")
    return factors, _l_row(acc)


@lru_cache(maxsize=None)
def _unipotent_row_chain(gs: GoodSituation, x: Matrix,
                         budget: SearchBudget) -> Tuple[Matrix, ...]:
    """Factors in the slice multiplying to [[1, x],[0, I_{n-1}]].

    Realized row by row: for each standard row e_i, a chain with block
    P_i^{-1} (its last factor shifted inside the translation by a first-row
    tail from l_h) times a chain with block P_i collapses to a unipotent
    factor; the shifts are solvable because E·P_i = e_i for the chosen P_i.
    """
    field = gs.space.field
    n = gs.n
    zero_row = Matrix.zero(field, 1, n - 1)
    if x == zero_row:
        return ()
    direct = _corner(field, x, Matrix.identity(field, n - 1))
    if gs.space.contains(direct):
        return (direct,)
    e = gs.l_h.basis()[0]
    t = complete_to_basis(field, [e.transpose()], n - 1).transpose()
    tinv = inverse(t)
    p_list = []
    for i in range(n - 1):
        images = list(range(n - 1))
        images[0], images[i] = images[i], images[0]
        p_list.append(tinv * Matrix.permutation(field, images))
    chains = []
    l_parts = []
    for p in p_list:
        chain_r, l_r = _good_block_chain(gs, inverse(p), budget)
        chain_w, l_w = _good_block_chain(gs, p, budget)
        chains.append((list(chain_r), chain_w, p))
        l_parts.append(l_w + l_r * p)
    total = Matrix.zero(field, 1, n - 1)
    for lp in l_parts:
        total = total + lp
    c = x - total
    out: List[Matrix] = []
    for i, (chain_r, chain_w, p) in enumerate(chains):
        ci = c.raw(0, i)
        if ci != field.zero:
            shift = _corner_shift(field, n, e.scale(ci))
            if not gs.space.translation.contains(shift):
                raise InternalContradictionError("l_h shift escapes the translation")
            chain_r = chain_r[:-1] + [chain_r[-1] + shift]
        out.extend(chain_r)
        out.extend(chain_w)
    acc = Matrix.identity(field, n)
    for f in out:
        acc = acc * f
    if acc != _corner(field, x, Matrix.identity(field, n - 1)):
        raise InternalContradictionError("unipotent chain has the wrong product")
    return tuple(out)


def _corner_shift(field: Field, n: int, row: Matrix) -> Matrix:
    """[[0, row],[0, 0]] as an n x n matrix."""
    flat = [field.zero] * (n * n)
    for j in range(n - 1):
        flat[1 + j] = row.raw(0, j)
    return Matrix._raw(field, n, n, tuple(flat))


@lru_cache(maxsize=None)
def _nonsingular_sharing_first_column(space: AffineSubspace, col: Matrix,
                                      budget: SearchBudget) -> Matrix:
    """Invertible N in the space with prescribed nonzero first column.

    Left-multiplying by P1 (P1·col = e_1) turns the constraint into a slice
    whose lower-right block is a large affine subspace of M_{n-1}; Dieudonné
    provides a nonsingular block, and any preimage works.
    """
    field = space.field
    n = space.n
    p1 = inverse(complete_to_basis(field, [col], n))
    moved = AffineSubspace(p1 * space.base,
                           span_from([p1 * b for b in space.translation.basis()],
                                     field, space.shape))
    e1 = Matrix.elementary(field, n, 1, 0, 0)
    sl = affine_preimage_slice(moved, _first_column, e1)
    if sl is None:
        raise InternalContradictionError("first-column map misses the prescribed column")
    k_img = affine_image(sl, _k_block)
    k0 = find_nonsingular_in_affine(k_img, budget)
    fiber = affine_preimage_slice(sl, _k_block, k0)
    if fiber is None:
        raise InternalContradictionError("nonsingular block has no preimage")
    cand = inverse(p1) * fiber.base
    if _first_column(cand) != col or not _is_nonsingular(cand):
        raise InternalContradictionError("first-column witness failed verification")
    return cand


@lru_cache(maxsize=None)
def _invertible_good(gs: GoodSituation, m: Matrix,
                     budget: SearchBudget) -> Tuple[Matrix, ...]:
    """Chain in the conjugated space for an invertible target."""
    field = m.field
    n = m.rows
    nmat = _nonsingular_sharing_first_column(gs.space, _first_column(m), budget)
    a = inverse(nmat) * m
    if _first_column(a) != Matrix.elementary(field, n, 1, 0, 0):
        raise InternalContradictionError("N^{-1}·M has the wrong first column")
    pa = _k_block(a)
    chain_a, l_prime = _good_block_chain(gs, pa, budget)
    x = _l_row(a) - l_prime
    chain_u = _unipotent_row_chain(gs, x, budget)
    return (nmat,) + tuple(chain_a) + chain_u


# -- singular reduction -------------------------------------------------------


@lru_cache(maxsize=None)
def _rank_nminus1_element(v: AffineSubspace, budget: SearchBudget) -> Matrix:
    """A rank n-1 element of the subspace (codim < n-1).

    Some row map is onto (the orthogonal space is too small to obstruct all
    of them), and the zero set of that row map is large enough to contain a
    rank n-1 matrix by the affine rank theorem.
    """
    field = v.field
    n = v.n
    perp = ortho_complement(v.translation)
    target_row = None
    for i in range(n):
        colspan = span_from([Matrix.elementary(field, n, n, k, i) for k in range(n)],
                            field, (n, n))
        if perp.intersect(colspan).dim == 0:
            target_row = i
            break
    if target_row is None:
        raise InternalContradictionError(
            "dim V^perp < n must leave an unobstructed column")
    zero_row = Matrix.zero(field, 1, n)
    sl = affine_preimage_slice(v, lambda m: _row_i(m, target_row), zero_row)
    if sl is None:
        raise InternalContradictionError("onto row map with an empty zero slice")
    return find_rank_r_in_affine(sl, n - 1, budget)


def _singular_reduce(v: AffineSubspace, m: Matrix,
                     invertible_cb: Callable[[Matrix], Sequence[Matrix]],
                     budget: SearchBudget) -> List[Matrix]:
    """Chain for a singular target, given a solver for invertible ones."""
    field = v.field
    n = v.n
    ident = Matrix.identity(field, n)
    b1 = _rank_nminus1_element(v, budget)
    ub1, vb1, rb1 = rank_normal_form(b1)
    if rb1 != n - 1:
        raise InternalContradictionError("rank n-1 witness has the wrong rank")

    def rank_nminus1_chain(target: Matrix) -> List[Matrix]:
        ut, vt, rt = rank_normal_form(target)
        p = ut * inverse(ub1)
        q = inverse(vb1) * vt
        out: List[Matrix] = []
        if p != ident:
            out.extend(invertible_cb(p))
        out.append(b1)
        if q != ident:
            out.extend(invertible_cb(q))
        return out

    r = rank(m)
    if r == n - 1:
        return rank_nminus1_chain(m)
    u1, u2, _ = rank_normal_form(m)
    out: List[Matrix] = []
    if u1 != ident:
        out.extend(invertible_cb(u1))
    for k in range(r, n):
        out.extend(rank_nminus1_chain(ident - Matrix.elementary(field, n, n, k, k)))
    if u2 != ident:
        out.extend(invertible_cb(u2))
    return out


def singular_reduce(v: AffineSubspace, m: Matrix,
                    nonsingular_solver: Callable[[Matrix], Sequence[Matrix]],
                    budget: SearchBudget) -> ChainFactorization:
    """Public wrapper around the singular reduction steps."""
    if rank(m) >= m.rows:
        raise PreconditionViolatedError("target is not singular")
    if v.contains(m):
        return ChainFactorization.build(m, [m], v)
    factors = _singular_reduce(v, m, nonsingular_solver, budget)
    return ChainFactorization.build(m, factors, v)


def unipotent_row_factor(gs: GoodSituation, row: Matrix,
                         budget: SearchBudget) -> ChainFactorization:
    """Factor [[1, row],[0, I]] into elements of the conjugated subspace."""
    field = gs.space.field
    n = gs.n
    target = _corner(field, row, Matrix.identity(field, n - 1))
    factors = _unipotent_row_chain(gs, row, budget)
    if not factors and not gs.space.contains(Matrix.identity(field, n)):
        # A zero-length chain stands for the empty product; when the
        # identity is outside the subspace, produce a canceling pair.
        e = gs.l_h.basis()[0]
        factors = _unipotent_row_chain(gs, e, budget) + \
            _unipotent_row_chain(gs, -e, budget)
    return ChainFactorization.build(target, factors, gs.space)


# -- the n = 3 trace-level exception ------------------------------------------


def _exceptional_transvection_chain(field: Field, a, tv: Matrix) -> List[Matrix]:
    """Chain of trace-a factors for a single 3 x 3 transvection."""
    n = 3
    ident = Matrix.identity(field, n)
    diff = [k for k, (x, y) in enumerate(zip(tv.flat(), ident.flat())) if x != y]
    if len(diff) != 1:
        raise InternalContradictionError("not a transvection")
    i, j = divmod(diff[0], n)
    lam = tv.raw(i, j)
    third = ({0, 1, 2} - {i, j}).pop()
    perm = Matrix.permutation(field, [i, j, third])
    if field.kind == PRIME_FIELD and field.p == 2:
        if a == field.one:
            out = [tv]  # tr(I + E_ij) = 3 = 1 over GF(2)
        else:
            fa = Matrix(field, [[0, 1, 1], [0, 0, 1], [1, 0, 0]])
            fb = Matrix(field, [[0, 0, 1], [1, 0, 0], [0, 1, 0]])
            pinv = inverse(perm)
            out = [perm * fa * pinv, perm * fb * pinv]
    else:
        one = field.one
        mu = field.canon(2)
        conj = perm * Matrix.diagonal(field, [lam, one, one])
        # Eigenbases of the two factors splitting the unit transvection:
        # [[mu,1-mu,0],[0,1,0],[0,0,1]] · [[1/mu,1,0],[0,1,0],[0,0,1]].
        c_a = Matrix(field, [[1, 1, 0], [0, 1, 0], [0, 0, 1]])
        c_b = Matrix(field, [[1, 1, 0], [0, field.sub(one, field.inv(mu)), 0],
                             [0, 0, 1]])
        out = _conjugate_dilatation_chain(field, a, conj * c_a, mu)
        out += _conjugate_dilatation_chain(field, a, conj * c_b, field.inv(mu))
    acc = ident
    for f in out:
        if f.trace().value != a:
            raise InternalContradictionError("chain factor has the wrong trace")
        acc = acc * f
    if acc != tv:
        raise InternalContradictionError("transvection chain product mismatch")
    return out


def _conjugate_dilatation_chain(field: Field, a, w: Matrix, lam) -> List[Matrix]:
    """Two trace-a factors multiplying to W·diag(lam,1,1)·W^{-1} (lam != 0, 1).

    Uses the explicit product
    [[a-1,1,0],[1,0,0],[0,0,1]] · [[0,lam,0],[1,a-1,0],[0,0,1]]
      = [[1,(lam+1)(a-1),0],[0,lam,0],[0,0,1]],
    which is similar to diag(lam,1,1).
    """
    one = field.one
    am1 = field.sub(a, one)
    c = field.mul(field.add(lam, one), am1)
    f1 = Matrix(field, [[am1, one, 0], [one, 0, 0], [0, 0, one]])
    f2 = Matrix(field, [[0, lam, 0], [one, am1, 0], [0, 0, one]])
    v = Matrix.column(field, [c, field.sub(lam, one), field.zero])
    e1 = Matrix.elementary(field, 3, 1, 0, 0)
    e3 = Matrix.elementary(field, 3, 1, 2, 0)
    s0 = Matrix(field, [[v.raw(0, 0), e1.raw(0, 0), e3.raw(0, 0)],
                        [v.raw(1, 0), e1.raw(1, 0), e3.raw(1, 0)],
                        [v.raw(2, 0), e1.raw(2, 0), e3.raw(2, 0)]])
    z = w * inverse(s0)
    zinv = inverse(z)
    out = [z * f1 * zinv, z * f2 * zinv]
    expected = w * Matrix.diagonal(field, [lam, one, one]) * inverse(w)
    if out[0] * out[1] != expected:
        raise InternalContradictionError("dilatation chain product mismatch")
    return out


def _dilatation_similarity(field: Field, delta) -> Matrix:
    """W with diag(1,1,delta) = W·diag(delta,1,1)·W^{-1}."""
    return Matrix.permutation(field, [2, 1, 0])


@lru_cache(maxsize=None)
def _exceptional_chain(a_scalar: Scalar, m: Matrix) -> Tuple[Matrix, ...]:
    field = a_scalar.field
    a = a_scalar.value
    n = 3
    ident = Matrix.identity(field, n)
    d = det(m).value
    if d not in (field.zero, field.one) and rank(m - ident) == 1:
        # m ~ diag(d, 1, 1): eigenvalue 1 with a 2-dimensional eigenspace,
        # third eigenvalue det(m); two trace-a factors suffice.
        from .matrix import kernel_basis
        lam_vec = kernel_basis(m - ident.scale(d))
        one_vecs = kernel_basis(m - ident)
        if len(lam_vec) == 1 and len(one_vecs) == 2:
            cols = [lam_vec[0]] + one_vecs
            w = Matrix(field, [[cols[j].raw(i, 0) for j in range(3)]
                               for i in range(3)])
            if _is_nonsingular(w):
                return tuple(_conjugate_dilatation_chain(field, a, w, d))
    tvs, dil = transvection_factor(m)
    out: List[Matrix] = []
    for tv in tvs:
        out.extend(_exceptional_transvection_chain(field, a, tv))
    delta = dil.raw(2, 2)
    if delta != field.one:
        w = _dilatation_similarity(field, delta)
        out.extend(_conjugate_dilatation_chain(field, a, w, delta))
    if not out:
        # m = I: either the identity has trace a, or split I = T·T^{-1}.
        three = field.canon(3)
        if three == a:
            out = [ident]
        else:
            t0 = Matrix(field, [[1, 1, 0], [0, 1, 0], [0, 0, 1]])
            out = _exceptional_transvection_chain(field, a, t0)
            out += _exceptional_transvection_chain(field, a, inverse(t0))
    return tuple(out)


def trace_level_affine(field: Field, n: int, a) -> AffineSubspace:
    """{M : tr M = a} as an affine subspace."""
    base = Matrix.zero(field, n) + Matrix.elementary(field, n, n, 0, 0).scale(a)
    return AffineSubspace(base, sl_subspace(field, n))


def exceptional_factor(a: Scalar, m: Matrix, budget: SearchBudget) -> ChainFactorization:
    """Factor an invertible 3 x 3 matrix through {M : tr M = a}."""
    if m.rows != 3 or not m.is_square:
        raise PreconditionViolatedError("the exceptional case lives in M_3")
    if det(m).value == m.field.zero:
        raise PreconditionViolatedError(
            "singular targets go through singular_reduce, not exceptional_factor")
    factors = _exceptional_chain(a, m)
    return ChainFactorization.build(
        m, factors, trace_level_affine(m.field, 3, a.value))


# -- the top-level operation ----------------------------------------------------


def semigroup_factor(v: AffineSubspace, m: Matrix,
                     budget: SearchBudget) -> ChainFactorization:
    """Write m as a product of elements of v (codim v < n-1)."""
    if v.shape[0] != v.shape[1]:
        raise PreconditionViolatedError("semigroup factorization needs square matrices")
    n = v.n
    if (m.rows, m.cols) != v.shape or m.field != v.field:
        raise PreconditionViolatedError("target shape or field mismatch")
    if v.codim >= n - 1:
        raise PreconditionViolatedError(f"codim {v.codim} >= n-1 = {n - 1}")
    field = v.field
    if n <= 2:
        # codim < n-1 <= 1 forces v to be the whole space.
        return ChainFactorization.build(m, [m], v)
    if v.contains(m):
        return ChainFactorization.build(m, [m], v)
    situation = good_situation_transform(v, budget)
    if isinstance(situation, ExceptionalTrace):
        a = situation.a

        def solve_invertible(x: Matrix) -> Sequence[Matrix]:
            return _exceptional_chain(a, x)

        if det(m).value != field.zero:
            factors: Sequence[Matrix] = solve_invertible(m)
        else:
            factors = _singular_reduce(v, m, solve_invertible, budget)
        return ChainFactorization.build(m, factors, v)

    gs = situation
    p = gs.conjugator
    pinv = inverse(p)
    mc = p * m * pinv

    def solve_invertible(x: Matrix) -> Sequence[Matrix]:
        return _invertible_good(gs, x, budget)

    if det(mc).value != field.zero:
        conj_factors: Sequence[Matrix] = solve_invertible(mc)
    else:
        conj_factors = _singular_reduce(gs.space, mc, solve_invertible, budget)
    factors = [pinv * f * p for f in conj_factors]
    return ChainFactorization.build(m, factors, v, conjugator=p)

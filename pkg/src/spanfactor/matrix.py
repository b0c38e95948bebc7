"""Dense exact matrices plus the elimination machinery built on them.

Entries are stored row-major in a flat tuple of raw field values (ints for
GF(p), Fractions for the rationals), which keeps matrices immutable and
hashable.  Gaussian elimination always picks the first nonzero pivot, so
every derived object (RREF, kernels, solutions) is deterministic.
"""

from __future__ import annotations

from typing import Iterable, List, Optional, Sequence, Tuple

from .errors import (
    DimensionMismatchError,
    FieldMismatchError,
    NoSolutionError,
    SingularMatrixError,
)
from .fields import Field, PRIME_FIELD, Scalar


class Matrix:
    __slots__ = ("field", "rows", "cols", "_e", "_hash")

    def __init__(self, field: Field, rows, entries=None):
        """Build from a grid of rows, or from (rows, cols, flat) via _raw."""
        if entries is None:
            grid = [list(r) for r in rows]
            nrows = len(grid)
            ncols = len(grid[0]) if grid else 0
            if any(len(r) != ncols for r in grid):
                raise DimensionMismatchError("ragged rows")
            flat = tuple(field.canon(x) for r in grid for x in r)
            self._init_raw(field, nrows, ncols, flat)
        else:
            self._init_raw(field, rows, entries[0], entries[1])

    def _init_raw(self, field, nrows, ncols, flat):
        if nrows <= 0 or ncols <= 0:
            raise DimensionMismatchError("matrix dimensions must be positive")
        self.field = field
        self.rows = nrows
        self.cols = ncols
        self._e = flat
        self._hash = hash((field, nrows, ncols, flat))

    @classmethod
    def _raw(cls, field: Field, nrows: int, ncols: int, flat: tuple) -> "Matrix":
        m = object.__new__(cls)
        m._init_raw(field, nrows, ncols, flat)
        return m

    @classmethod
    def from_rows(cls, field: Field, rows) -> "Matrix":
        return cls(field, rows)

    @classmethod
    def zero(cls, field: Field, rows: int, cols: Optional[int] = None) -> "Matrix":
        cols = rows if cols is None else cols
        return cls._raw(field, rows, cols, (field.zero,) * (rows * cols))

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        z, o = field.zero, field.one
        flat = tuple(o if i == j else z for i in range(n) for j in range(n))
        return cls._raw(field, n, n, flat)

    @classmethod
    def elementary(cls, field: Field, rows: int, cols: int, i: int, j: int) -> "Matrix":
        """E_(i,j): single 1 at 0-based position (i, j)."""
        z = field.zero
        flat = [z] * (rows * cols)
        flat[i * cols + j] = field.one
        return cls._raw(field, rows, cols, tuple(flat))

    @classmethod
    def rank_projector(cls, field: Field, n: int, r: int) -> "Matrix":
        """diag(1,...,1,0,...,0) with r ones."""
        z, o = field.zero, field.one
        flat = tuple(o if i == j and i < r else z for i in range(n) for j in range(n))
        return cls._raw(field, n, n, flat)

    @classmethod
    def diagonal(cls, field: Field, values) -> "Matrix":
        vals = [field.canon(v) for v in values]
        n = len(vals)
        z = field.zero
        flat = tuple(vals[i] if i == j else z for i in range(n) for j in range(n))
        return cls._raw(field, n, n, flat)

    @classmethod
    def permutation(cls, field: Field, images: Sequence[int]) -> "Matrix":
        """Permutation matrix P with P e_j = e_images[j] (0-based)."""
        n = len(images)
        z = field.zero
        flat = [z] * (n * n)
        for j, i in enumerate(images):
            flat[i * n + j] = field.one
        return cls._raw(field, n, n, tuple(flat))

    @classmethod
    def column(cls, field: Field, values) -> "Matrix":
        return cls(field, [[v] for v in values])

    @classmethod
    def row_vector(cls, field: Field, values) -> "Matrix":
        return cls(field, [list(values)])

    # -- basic structure ----------------------------------------------------

    def __getitem__(self, ij) -> Scalar:
        i, j = ij
        return Scalar(self.field, self._e[i * self.cols + j])

    def raw(self, i: int, j: int):
        return self._e[i * self.cols + j]

    def row_raw(self, i: int) -> tuple:
        return self._e[i * self.cols:(i + 1) * self.cols]

    def col_raw(self, j: int) -> tuple:
        return tuple(self._e[i * self.cols + j] for i in range(self.rows))

    def flat(self) -> tuple:
        return self._e

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def is_zero(self) -> bool:
        z = self.field.zero
        return all(x == z for x in self._e)

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self._hash == other._hash
            and self.field == other.field
            and self.rows == other.rows
            and self.cols == other.cols
            and self._e == other._e
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        f = self.field.format
        rows = ["[" + ", ".join(f(self.raw(i, j)) for j in range(self.cols)) + "]"
                for i in range(self.rows)]
        return f"Matrix({self.field}, [{', '.join(rows)}])"

    def _check_same_field(self, other: "Matrix"):
        if self.field != other.field:
            raise FieldMismatchError(f"{self.field} vs {other.field}")

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same_field(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatchError("addition shape mismatch")
        add = self.field.add
        flat = tuple(add(a, b) for a, b in zip(self._e, other._e))
        return Matrix._raw(self.field, self.rows, self.cols, flat)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same_field(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatchError("subtraction shape mismatch")
        sub = self.field.sub
        flat = tuple(sub(a, b) for a, b in zip(self._e, other._e))
        return Matrix._raw(self.field, self.rows, self.cols, flat)

    def __neg__(self) -> "Matrix":
        neg = self.field.neg
        return Matrix._raw(self.field, self.rows, self.cols, tuple(neg(a) for a in self._e))

    def scale(self, c) -> "Matrix":
        c = self.field.canon(c)
        mul = self.field.mul
        return Matrix._raw(self.field, self.rows, self.cols, tuple(mul(c, a) for a in self._e))

    def __mul__(self, other: "Matrix") -> "Matrix":
        self._check_same_field(other)
        if self.cols != other.rows:
            raise DimensionMismatchError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        n, m, k = self.rows, self.cols, other.cols
        a, b = self._e, other._e
        out = []
        if self.field.kind == PRIME_FIELD:
            p = self.field.p
            for i in range(n):
                ro = i * m
                for j in range(k):
                    s = 0
                    for t in range(m):
                        s += a[ro + t] * b[t * k + j]
                    out.append(s % p)
        else:
            for i in range(n):
                ro = i * m
                for j in range(k):
                    s = a[ro] * b[j]
                    for t in range(1, m):
                        s += a[ro + t] * b[t * k + j]
                    out.append(s)
        return Matrix._raw(self.field, n, k, tuple(out))

    def transpose(self) -> "Matrix":
        flat = tuple(self._e[i * self.cols + j]
                     for j in range(self.cols) for i in range(self.rows))
        return Matrix._raw(self.field, self.cols, self.rows, flat)

    def trace(self) -> Scalar:
        if not self.is_square:
            raise DimensionMismatchError("trace of a non-square matrix")
        add, z = self.field.add, self.field.zero
        s = z
        for i in range(self.rows):
            s = add(s, self._e[i * self.cols + i])
        return Scalar(self.field, s)

    def trace_product(self, other: "Matrix"):
        """Raw value of tr(self * other) without forming the product."""
        self._check_same_field(other)
        if self.cols != other.rows or self.rows != other.cols:
            raise DimensionMismatchError("trace-product shape mismatch")
        a, b = self._e, other._e
        m, n = self.rows, self.cols
        if self.field.kind == PRIME_FIELD:
            s = 0
            for i in range(m):
                ro = i * n
                for j in range(n):
                    s += a[ro + j] * b[j * m + i]
            return s % self.field.p
        s = self.field.zero
        for i in range(m):
            ro = i * n
            for j in range(n):
                s += a[ro + j] * b[j * m + i]
        return s


# -- raw row elimination ----------------------------------------------------
#
# The helpers below operate on lists of lists of raw values; they are shared
# by Matrix-level operations and by the subspace layer, which eliminates
# vectorized matrices.


def rref_rows(rows: List[List], field: Field) -> Tuple[List[List], List[int]]:
    """In-place reduced row echelon form; returns (rows, pivot columns)."""
    if not rows:
        return rows, []
    ncols = len(rows[0])
    zero, one = field.zero, field.one
    sub, mul, inv = field.sub, field.mul, field.inv
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, len(rows)):
            if rows[i][c] != zero:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        prow = rows[r]
        pv = prow[c]
        if pv != one:
            s = inv(pv)
            for j in range(c, ncols):
                prow[j] = mul(s, prow[j])
        for i in range(len(rows)):
            if i != r and rows[i][c] != zero:
                f = rows[i][c]
                row = rows[i]
                for j in range(c, ncols):
                    row[j] = sub(row[j], mul(f, prow[j]))
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank_rows(rows: Iterable[Sequence], field: Field) -> int:
    work = [list(r) for r in rows]
    _, pivots = rref_rows(work, field)
    return len(pivots)


def reduce_against(vec: List, basis_rows: List[List], pivots: List[int], field: Field) -> List:
    """Reduce vec modulo RREF rows; the residue is zero iff vec is in the span."""
    zero, sub, mul = field.zero, field.sub, field.mul
    out = list(vec)
    for row, c in zip(basis_rows, pivots):
        f = out[c]
        if f != zero:
            for j in range(c, len(out)):
                out[j] = sub(out[j], mul(f, row[j]))
    return out


def rref(m: Matrix) -> Tuple[Matrix, Tuple[int, ...], int]:
    """Reduced row echelon form, pivot columns (0-based), and rank."""
    rows = [list(m.row_raw(i)) for i in range(m.rows)]
    rows, pivots = rref_rows(rows, m.field)
    flat = tuple(x for row in rows for x in row)
    return Matrix._raw(m.field, m.rows, m.cols, flat), tuple(pivots), len(pivots)


def rank(m: Matrix) -> int:
    return rref(m)[2]


def kernel_basis(m: Matrix) -> List[Matrix]:
    """Basis of {x : Mx = 0} as column matrices; size = cols - rank."""
    field = m.field
    red, pivots, rk = rref(m)
    free = [c for c in range(m.cols) if c not in pivots]
    basis = []
    zero, one, neg = field.zero, field.one, field.neg
    for fc in free:
        vec = [zero] * m.cols
        vec[fc] = one
        for r, pc in enumerate(pivots):
            vec[pc] = neg(red.raw(r, fc))
        basis.append(Matrix.column(field, vec))
    return basis


def solve(a: Matrix, b: Matrix, unknown: str = "right") -> Optional[Matrix]:
    """One exact solution of A·X = B (unknown="right") or X·A = B ("left").

    Returns None when the system is inconsistent; ``solve_or_certificate``
    exposes the inconsistency certificate.
    """
    x, _ = solve_or_certificate(a, b, unknown)
    return x


def solve_or_certificate(a: Matrix, b: Matrix, unknown: str = "right"):
    """Like solve, but on failure also return a certificate row combination.

    The certificate is a row vector y (over the equations of the augmented
    system) with y·A = 0 and y·B != 0.
    """
    a._check_same_field(b)
    if unknown == "left":
        # X·A = B  <=>  A^T · X^T = B^T
        x, cert = solve_or_certificate(a.transpose(), b.transpose(), "right")
        if x is not None:
            return x.transpose(), None
        return None, cert
    if unknown != "right":
        raise ValueError("unknown must be 'left' or 'right'")
    if a.rows != b.rows:
        raise DimensionMismatchError("solve: row counts differ")
    field = a.field
    zero, one, sub, mul = field.zero, field.one, field.sub, field.mul
    # Augment with B and an identity block to track row operations.
    ncols = a.cols + b.cols + a.rows
    rows = []
    for i in range(a.rows):
        row = list(a.row_raw(i)) + list(b.row_raw(i)) + [zero] * a.rows
        row[a.cols + b.cols + i] = one
        rows.append(row)
    # Eliminate on the A-part only.
    pivots: List[int] = []
    r = 0
    inv = field.inv
    for c in range(a.cols):
        pr = None
        for i in range(r, len(rows)):
            if rows[i][c] != zero:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        prow = rows[r]
        pv = prow[c]
        if pv != one:
            s = inv(pv)
            for j in range(ncols):
                prow[j] = mul(s, prow[j])
        for i in range(len(rows)):
            if i != r and rows[i][c] != zero:
                f = rows[i][c]
                row = rows[i]
                for j in range(ncols):
                    row[j] = sub(row[j], mul(f, prow[j]))
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    # Inconsistent iff some zero A-row has a nonzero B-part.
    for i in range(r, len(rows)):
        brow = rows[i][a.cols:a.cols + b.cols]
        if any(x != zero for x in brow):
            cert = Matrix.row_vector(field, rows[i][a.cols + b.cols:])
            return None, cert
    # Particular solution with free variables set to zero.
    sol = [[zero] * b.cols for _ in range(a.cols)]
    for rr, c in enumerate(pivots):
        for j in range(b.cols):
            sol[c][j] = rows[rr][a.cols + j]
    return Matrix(field, sol), None


def _det_small(m: Matrix):
    e, f = m._e, m.field
    mul, sub, add = f.mul, f.sub, f.add
    if m.rows == 1:
        return e[0]
    if m.rows == 2:
        return sub(mul(e[0], e[3]), mul(e[1], e[2]))
    # 3x3 rule of Sarrus
    pos = add(add(mul(mul(e[0], e[4]), e[8]), mul(mul(e[1], e[5]), e[6])),
              mul(mul(e[2], e[3]), e[7]))
    neg = add(add(mul(mul(e[2], e[4]), e[6]), mul(mul(e[0], e[5]), e[7])),
              mul(mul(e[1], e[3]), e[8]))
    return sub(pos, neg)


def _minor(m: Matrix, i: int, j: int) -> Matrix:
    n = m.rows
    flat = tuple(m.raw(r, c) for r in range(n) if r != i for c in range(n) if c != j)
    return Matrix._raw(m.field, n - 1, n - 1, flat)


def _cofactor_det(m: Matrix):
    if m.rows <= 3:
        return _det_small(m)
    f = m.field
    s = f.zero
    for i in range(m.rows):
        c = _cofactor_det(_minor(m, i, 0))
        term = f.mul(m.raw(i, 0), c)
        s = f.add(s, term) if i % 2 == 0 else f.sub(s, term)
    return s


def det(m: Matrix) -> Scalar:
    if not m.is_square:
        raise DimensionMismatchError("determinant of a non-square matrix")
    if m.rows <= 3:
        return Scalar(m.field, _det_small(m))
    return Scalar(m.field, _det_elimination(m))


def _det_elimination(m: Matrix):
    field = m.field
    zero, sub, mul, inv = field.zero, field.sub, field.mul, field.inv
    rows = [list(m.row_raw(i)) for i in range(m.rows)]
    n = m.rows
    d = field.one
    for c in range(n):
        pr = None
        for i in range(c, n):
            if rows[i][c] != zero:
                pr = i
                break
        if pr is None:
            return zero
        if pr != c:
            rows[c], rows[pr] = rows[pr], rows[c]
            d = field.neg(d)
        d = mul(d, rows[c][c])
        s = inv(rows[c][c])
        for i in range(c + 1, n):
            if rows[i][c] != zero:
                f = mul(s, rows[i][c])
                for j in range(c, n):
                    rows[i][j] = sub(rows[i][j], mul(f, rows[c][j]))
    return d


def inverse(m: Matrix) -> Optional[Matrix]:
    """Exact inverse, or None when singular."""
    if not m.is_square:
        raise DimensionMismatchError("inverse of a non-square matrix")
    n = m.rows
    red, pivots, _ = rref(_augment_identity(m))
    if sum(1 for p in pivots if p < n) < n:
        return None
    flat = tuple(red.raw(i, n + j) for i in range(n) for j in range(n))
    return Matrix._raw(m.field, n, n, flat)


def _augment_identity(m: Matrix) -> Matrix:
    n = m.rows
    zero, one = m.field.zero, m.field.one
    flat = []
    for i in range(n):
        flat.extend(m.row_raw(i))
        flat.extend(one if j == i else zero for j in range(n))
    return Matrix._raw(m.field, n, 2 * n, tuple(flat))


def adjugate(m: Matrix) -> Matrix:
    """adj(M) with adj(M)·M = M·adj(M) = det(M)·I exactly.

    For n = 2 this is Com(M)^T; cofactor expansion is used for n <= 3 and
    for singular larger matrices, det·inverse otherwise.
    """
    if not m.is_square:
        raise DimensionMismatchError("adjugate of a non-square matrix")
    n, f = m.rows, m.field
    if n == 1:
        return Matrix._raw(f, 1, 1, (f.one,))
    d = det(m).value
    if n > 3 and d != f.zero:
        return inverse(m).scale(d)
    flat = []
    for i in range(n):
        for j in range(n):
            c = _cofactor_det(_minor(m, j, i))
            flat.append(c if (i + j) % 2 == 0 else f.neg(c))
    return Matrix._raw(f, n, n, tuple(flat))


def inverse_and_adjugate(m: Matrix) -> Tuple[Scalar, Matrix, Optional[Matrix]]:
    """(det, adj, inv); inv is present iff det != 0, and inv = adj/det."""
    d = det(m)
    adj = adjugate(m)
    inv = adj.scale(m.field.inv(d.value)) if d.value != m.field.zero else None
    return d, adj, inv


def conjugate(m: Matrix, p: Matrix) -> Matrix:
    """P·M·P^{-1}."""
    m._check_same_field(p)
    pinv = inverse(p)
    if pinv is None:
        raise SingularMatrixError("conjugator is singular")
    return p * m * pinv


def complete_to_basis(field: Field, cols: Sequence[Matrix], n: int) -> Matrix:
    """Invertible matrix whose leading columns are the given column vectors.

    Completion is greedy over the standard basis, so the result is
    deterministic.
    """
    chosen = [list(c.flat()) for c in cols]
    rows = [list(r) for r in chosen]
    for k in range(n):
        if len(chosen) == n:
            break
        e = [field.zero] * n
        e[k] = field.one
        if rank_rows(rows + [e], field) > rank_rows(rows, field):
            rows.append(e)
            chosen.append(e)
    if len(chosen) != n:
        raise DimensionMismatchError("given columns are linearly dependent")
    return Matrix(field, [[chosen[j][i] for j in range(n)] for i in range(n)])


def rref_with_transform(m: Matrix) -> Tuple[Matrix, Tuple[int, ...], Matrix]:
    """(R, pivots, E) with E invertible and E·M = R in reduced echelon form."""
    n, c = m.rows, m.cols
    zero, one = m.field.zero, m.field.one
    flat = []
    for i in range(n):
        flat.extend(m.row_raw(i))
        flat.extend(one if j == i else zero for j in range(n))
    red, pivots, _ = rref(Matrix._raw(m.field, n, c + n, tuple(flat)))
    r = Matrix._raw(m.field, n, c, tuple(red.raw(i, j) for i in range(n) for j in range(c)))
    e = Matrix._raw(m.field, n, n, tuple(red.raw(i, c + j) for i in range(n) for j in range(n)))
    return r, tuple(p for p in pivots if p < c), e


def rank_normal_form(m: Matrix) -> Tuple[Matrix, Matrix, int]:
    """(U1, U2, r) with M = U1 · J_r · U2, U1 and U2 invertible.

    J_r = diag(I_r, 0).  U1 undoes row reduction; U2 is built from the pivot
    columns and a kernel basis.
    """
    if not m.is_square:
        raise DimensionMismatchError("rank normal form needs a square matrix")
    n = m.rows
    field = m.field
    red, pivots, e = rref_with_transform(m)
    r = len(pivots)
    u1 = inverse(e)
    cols = [Matrix.elementary(field, n, 1, pc, 0) for pc in pivots]
    cols += kernel_basis(red)
    ecol = Matrix(field, [[cols[j].raw(i, 0) for j in range(n)] for i in range(n)])
    u2 = inverse(ecol)
    return u1, u2, r


def transvection(field: Field, n: int, i: int, j: int, lam) -> Matrix:
    """I + lam·E_(i,j) with i != j (0-based)."""
    if i == j:
        raise ValueError("transvection requires i != j")
    ident = Matrix.identity(field, n)
    flat = list(ident._e)
    flat[i * n + j] = field.canon(lam)
    return Matrix._raw(field, n, n, tuple(flat))


def transvection_factor(m: Matrix) -> Tuple[List[Matrix], Matrix]:
    """Write an invertible M as T_1···T_k · diag(1,...,1,det M).

    Each T is I + lam·E_(i,j) with i != j; k <= n^2.  Forward elimination
    brings M to unit upper triangular form (last pivot = det), backward
    elimination clears the strict upper part.
    """
    if not m.is_square:
        raise DimensionMismatchError("transvection factorization needs a square matrix")
    field = m.field
    n = m.rows
    zero, one = field.zero, field.one
    sub, mul, div, neg = field.sub, field.mul, field.div, field.neg
    rows = [list(m.row_raw(i)) for i in range(n)]
    ops: List[Tuple[int, int, object]] = []  # row_target += lam * row_source

    def apply(tgt: int, src: int, lam):
        if lam == zero:
            return
        trow, srow = rows[tgt], rows[src]
        for j in range(n):
            trow[j] = field.add(trow[j], mul(lam, srow[j]))
        ops.append((tgt, src, lam))

    if n == 1:
        if m.raw(0, 0) == zero:
            raise SingularMatrixError("matrix is singular")
        return [], m

    for c in range(n - 1):
        if rows[c][c] != one:
            src = None
            for i in range(c + 1, n):
                if rows[i][c] != zero:
                    src = i
                    break
            if src is None:
                if rows[c][c] == zero:
                    raise SingularMatrixError("matrix is singular")
                apply(c + 1, c, one)
                src = c + 1
            apply(c, src, div(sub(one, rows[c][c]), rows[src][c]))
        for i in range(c + 1, n):
            if rows[i][c] != zero:
                apply(i, c, neg(rows[i][c]))
    d = rows[n - 1][n - 1]
    if d == zero:
        raise SingularMatrixError("matrix is singular")
    for c in range(n - 1, 0, -1):
        for i in range(c - 1, -1, -1):
            if rows[i][c] != zero:
                apply(i, c, neg(div(rows[i][c], rows[c][c])))
    # ops applied left to right give L_k ... L_1 M = D, so
    # M = (I - lam_1 E) ... (I - lam_k E) D.
    factors = [transvection(field, n, tgt, src, neg(lam)) for tgt, src, lam in ops]
    dil = Matrix.diagonal(field, [one] * (n - 1) + [d])
    return factors, dil

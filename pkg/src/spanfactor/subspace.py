"""Linear and affine subspaces of matrix spaces.

Subspaces are stored as canonical bases: the reduced row echelon form of the
row-major vectorizations of their members.  Two equal subspaces therefore
have identical stored bases, and everything here is immutable and hashable.
Member matrices may be rectangular; the trace-form operations require square
matrices.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Callable, List, Optional, Sequence, Tuple

from .errors import (
    DimensionMismatchError,
    FieldMismatchError,
    InternalContradictionError,
)
from .fields import Field
from .matrix import Matrix, conjugate, kernel_basis, reduce_against, rref_rows, solve


class LinearSubspace:
    __slots__ = ("field", "shape", "_rows", "_pivots", "_hash")

    def __init__(self, field: Field, shape: Tuple[int, int], rref_basis_rows, pivots):
        self.field = field
        self.shape = shape
        self._rows = tuple(tuple(r) for r in rref_basis_rows)
        self._pivots = tuple(pivots)
        self._hash = hash((field, shape, self._rows))

    @classmethod
    def span(cls, field: Field, shape: Tuple[int, int],
             mats: Sequence[Matrix]) -> "LinearSubspace":
        for m in mats:
            if m.field != field:
                raise FieldMismatchError("span over mixed fields")
            if (m.rows, m.cols) != shape:
                raise DimensionMismatchError("span over mixed shapes")
        rows = [list(m.flat()) for m in mats]
        rows, pivots = rref_rows(rows, field)
        return cls(field, shape, rows[:len(pivots)], pivots)

    @classmethod
    def zero(cls, field: Field, shape: Tuple[int, int]) -> "LinearSubspace":
        return cls(field, shape, [], [])

    @classmethod
    def full(cls, field: Field, shape: Tuple[int, int]) -> "LinearSubspace":
        n = shape[0] * shape[1]
        zero, one = field.zero, field.one
        rows = [[one if j == i else zero for j in range(n)] for i in range(n)]
        return cls(field, shape, rows, list(range(n)))

    # -- structure -----------------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self._rows)

    @property
    def ambient_dim(self) -> int:
        return self.shape[0] * self.shape[1]

    @property
    def codim(self) -> int:
        return self.ambient_dim - self.dim

    @property
    def n(self) -> int:
        if self.shape[0] != self.shape[1]:
            raise DimensionMismatchError("not a space of square matrices")
        return self.shape[0]

    def basis(self) -> List[Matrix]:
        r, c = self.shape
        return [Matrix._raw(self.field, r, c, row) for row in self._rows]

    def basis_rows(self) -> Tuple[Tuple, ...]:
        return self._rows

    def contains(self, m: Matrix) -> bool:
        if (m.rows, m.cols) != self.shape or m.field != self.field:
            return False
        res = reduce_against(list(m.flat()), [list(r) for r in self._rows],
                             list(self._pivots), self.field)
        zero = self.field.zero
        return all(x == zero for x in res)

    def residue(self, m: Matrix) -> Matrix:
        """m reduced modulo the subspace; zero iff m is a member."""
        res = reduce_against(list(m.flat()), [list(r) for r in self._rows],
                             list(self._pivots), self.field)
        return Matrix._raw(self.field, self.shape[0], self.shape[1], tuple(res))

    def coordinates(self, m: Matrix) -> Optional[List]:
        """Coefficients of m over the stored basis, or None if m is outside."""
        zero = self.field.zero
        coeffs = []
        vec = list(m.flat())
        rows = [list(r) for r in self._rows]
        for row, c in zip(rows, self._pivots):
            f = vec[c]
            coeffs.append(f)
            if f != zero:
                for j in range(c, len(vec)):
                    vec[j] = self.field.sub(vec[j], self.field.mul(f, row[j]))
        if any(x != zero for x in vec):
            return None
        return coeffs

    def __eq__(self, other):
        return (isinstance(other, LinearSubspace) and self.field == other.field
                and self.shape == other.shape and self._rows == other._rows)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"LinearSubspace(dim={self.dim}, shape={self.shape}, {self.field})"

    def __le__(self, other: "LinearSubspace") -> bool:
        return all(other.contains(b) for b in self.basis())

    # -- lattice operations ---------------------------------------------------

    def add(self, other: "LinearSubspace") -> "LinearSubspace":
        self._require_compatible(other)
        rows = [list(r) for r in self._rows] + [list(r) for r in other._rows]
        rows, pivots = rref_rows(rows, self.field)
        return LinearSubspace(self.field, self.shape, rows[:len(pivots)], pivots)

    def std_complement(self) -> "LinearSubspace":
        """Orthogonal complement for the coordinate dot product (internal)."""
        field = self.field
        nc = self.ambient_dim
        zero, one, neg = field.zero, field.one, field.neg
        free = [c for c in range(nc) if c not in self._pivots]
        rows = []
        for fc in free:
            vec = [zero] * nc
            vec[fc] = one
            for r, pc in enumerate(self._pivots):
                vec[pc] = neg(self._rows[r][fc])
            rows.append(vec)
        rows, pivots = rref_rows(rows, field)
        return LinearSubspace(field, self.shape, rows[:len(pivots)], pivots)

    def intersect(self, other: "LinearSubspace") -> "LinearSubspace":
        self._require_compatible(other)
        comp = self.std_complement().add(other.std_complement())
        return comp.std_complement()

    def _require_compatible(self, other):
        if self.field != other.field:
            raise FieldMismatchError("subspaces over different fields")
        if self.shape != other.shape:
            raise DimensionMismatchError("subspaces of different shapes")


def span_from(mats: Sequence[Matrix], field: Optional[Field] = None,
              shape: Optional[Tuple[int, int]] = None) -> LinearSubspace:
    """Canonical subspace spanned by the given matrices."""
    if not mats:
        if field is None or shape is None:
            raise ValueError("empty span needs an explicit field and shape")
        return LinearSubspace.zero(field, shape)
    m0 = mats[0]
    return LinearSubspace.span(m0.field, (m0.rows, m0.cols), mats)


@lru_cache(maxsize=None)
def ortho_complement(v: LinearSubspace) -> LinearSubspace:
    """Orthogonal for the trace form b(A, B) = tr(AB); square matrices only.

    tr(A·B) is the coordinate pairing of vec(A) with vec(B^T), so the
    orthogonal is the coordinate kernel of the transposed basis.
    """
    n = v.n
    field = v.field
    rows = []
    for b in v.basis():
        rows.append(list(b.transpose().flat()))
    rows, pivots = rref_rows(rows, field)
    helper = LinearSubspace(field, (n, n), rows[:len(pivots)], pivots)
    return helper.std_complement()


def intersect(u: LinearSubspace, v: LinearSubspace) -> LinearSubspace:
    return u.intersect(v)


def product_span_two(v: LinearSubspace, w: LinearSubspace) -> LinearSubspace:
    """span{B·C : B in basis(V), C in basis(W)} = span(V·W) by bilinearity."""
    v._require_compatible(w)
    if v.shape[1] != w.shape[0]:
        raise DimensionMismatchError("product span shape mismatch")
    out_shape = (v.shape[0], w.shape[1])
    builder = SpanBuilder(v.field, out_shape[0] * out_shape[1])
    for b in v.basis():
        for c in w.basis():
            builder.add((b * c).flat())
            if builder.full:
                break
        if builder.full:
            break
    return builder.subspace(v.field, out_shape)


def commutator_span(v: LinearSubspace) -> LinearSubspace:
    """span{AB - BA : A, B in V}, computed over basis pairs."""
    n = v.n
    builder = SpanBuilder(v.field, n * n)
    basis = v.basis()
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            com = basis[i] * basis[j] - basis[j] * basis[i]
            builder.add(com.flat())
            if builder.full:
                return builder.subspace(v.field, (n, n))
    return builder.subspace(v.field, (n, n))


@lru_cache(maxsize=None)
def sl_subspace(field: Field, n: int) -> LinearSubspace:
    """The trace-zero hyperplane of n x n matrices."""
    return Hyperplane(Matrix.identity(field, n)).subspace()


class SpanBuilder:
    """Incremental echelon basis with provenance over the vectors added.

    Rows are kept mutually reduced, so expressing a vector over the inserted
    generators is a single reduction pass.
    """

    def __init__(self, field: Field, length: int):
        self.field = field
        self.length = length
        self.rows: List[List] = []
        self.pivots: List[int] = []
        self.combos: List[dict] = []  # provenance: {tag: coefficient}

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def full(self) -> bool:
        return len(self.rows) == self.length

    def _reduce(self, vec: List, combo: dict) -> Tuple[List, dict]:
        f = self.field
        zero = f.zero
        for row, c, rcombo in zip(self.rows, self.pivots, self.combos):
            factor = vec[c]
            if factor != zero:
                for j in range(c, self.length):
                    vec[j] = f.sub(vec[j], f.mul(factor, row[j]))
                for tag, coeff in rcombo.items():
                    combo[tag] = f.sub(combo.get(tag, zero), f.mul(factor, coeff))
        return vec, combo

    def add(self, vec, tag=None) -> bool:
        """Insert a generator; returns True when it enlarges the span."""
        f = self.field
        zero = f.zero
        work = list(vec)
        combo = {} if tag is None else {tag: f.one}
        work, combo = self._reduce(work, combo)
        pivot = next((j for j in range(self.length) if work[j] != zero), None)
        if pivot is None:
            return False
        s = f.inv(work[pivot])
        if s != f.one:
            work = [f.mul(s, x) for x in work]
            combo = {t: f.mul(s, c) for t, c in combo.items()}
        # Back-eliminate the new pivot from stored rows.
        for idx, row in enumerate(self.rows):
            factor = row[pivot]
            if factor != zero:
                for j in range(self.length):
                    row[j] = f.sub(row[j], f.mul(factor, work[j]))
                rc = self.combos[idx]
                for t, c in combo.items():
                    rc[t] = f.sub(rc.get(t, zero), f.mul(factor, c))
        pos = next((k for k, pc in enumerate(self.pivots) if pc > pivot), len(self.pivots))
        self.rows.insert(pos, work)
        self.pivots.insert(pos, pivot)
        self.combos.insert(pos, combo)
        return True

    def express(self, vec) -> Optional[dict]:
        """Write vec over the generators: {tag: coeff}, or None if outside."""
        f = self.field
        zero = f.zero
        work = list(vec)
        coeffs: dict = {}
        for row, c, rcombo in zip(self.rows, self.pivots, self.combos):
            factor = work[c]
            if factor != zero:
                for j in range(c, self.length):
                    work[j] = f.sub(work[j], f.mul(factor, row[j]))
                for tag, coeff in rcombo.items():
                    coeffs[tag] = f.add(coeffs.get(tag, zero), f.mul(factor, coeff))
        if any(x != zero for x in work):
            return None
        return {t: c for t, c in coeffs.items() if c != zero}

    def subspace(self, field: Field, shape: Tuple[int, int]) -> LinearSubspace:
        rows = [list(r) for r in self.rows]
        rows, pivots = rref_rows(rows, field)
        return LinearSubspace(field, shape, rows[:len(pivots)], pivots)


class AffineSubspace:
    """base + translation; the base point is reduced against the translation,
    so equal affine subspaces compare equal."""

    __slots__ = ("base", "translation", "_hash")

    def __init__(self, base: Matrix, translation: LinearSubspace):
        if (base.rows, base.cols) != translation.shape:
            raise DimensionMismatchError("base point shape differs from translation")
        if base.field != translation.field:
            raise FieldMismatchError("base point field differs from translation")
        self.base = translation.residue(base)
        self.translation = translation
        self._hash = hash((self.base, translation))

    @classmethod
    def point(cls, m: Matrix) -> "AffineSubspace":
        return cls(m, LinearSubspace.zero(m.field, (m.rows, m.cols)))

    @property
    def field(self) -> Field:
        return self.base.field

    @property
    def shape(self) -> Tuple[int, int]:
        return self.translation.shape

    @property
    def dim(self) -> int:
        return self.translation.dim

    @property
    def codim(self) -> int:
        return self.translation.codim

    @property
    def n(self) -> int:
        return self.translation.n

    def contains(self, m: Matrix) -> bool:
        if (m.rows, m.cols) != self.shape:
            return False
        return self.translation.contains(m - self.base)

    def __eq__(self, other):
        return (isinstance(other, AffineSubspace) and self.base == other.base
                and self.translation == other.translation)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"AffineSubspace(dim={self.dim}, shape={self.shape}, {self.field})"


def intersect_affine(a: AffineSubspace, b: AffineSubspace) -> Optional[AffineSubspace]:
    """Exact intersection; None when empty."""
    if a.field != b.field or a.shape != b.shape:
        raise DimensionMismatchError("affine intersection shape mismatch")
    field = a.field
    da, db = a.dim, b.dim
    if da == 0:
        return a if b.contains(a.base) else None
    if db == 0:
        return b if a.contains(b.base) else None
    # Solve base_a + A x = base_b + B y on coefficients (x, y).
    cols = []
    for bm in a.translation.basis():
        cols.append(list(bm.flat()))
    for bm in b.translation.basis():
        cols.append([field.neg(x) for x in bm.flat()])
    sysmat = Matrix(field, [[cols[k][r] for k in range(da + db)]
                            for r in range(a.translation.ambient_dim)])
    rhs_mat = b.base - a.base
    rhs = Matrix.column(field, list(rhs_mat.flat()))
    sol = solve(sysmat, rhs, "right")
    if sol is None:
        return None
    abasis = a.translation.basis()
    point = a.base
    for i in range(da):
        point = point + abasis[i].scale(sol.raw(i, 0))
    return AffineSubspace(point, a.translation.intersect(b.translation))


class Hyperplane:
    """{M : tr(A·M) = 0} for a nonzero normal A (square matrices).

    The normal is scaled so its first nonzero entry is one, making equal
    hyperplanes carry equal normals.
    """

    __slots__ = ("normal", "_hash")

    def __init__(self, normal: Matrix):
        if not normal.is_square:
            raise DimensionMismatchError("hyperplane normal must be square")
        if normal.is_zero:
            raise ValueError("hyperplane normal must be nonzero")
        field = normal.field
        lead = next(x for x in normal.flat() if x != field.zero)
        if lead != field.one:
            normal = normal.scale(field.inv(lead))
        self.normal = normal
        self._hash = hash(("hyperplane", normal))

    @property
    def field(self) -> Field:
        return self.normal.field

    @property
    def n(self) -> int:
        return self.normal.rows

    def contains(self, m: Matrix) -> bool:
        return self.normal.trace_product(m) == self.field.zero

    def subspace(self) -> LinearSubspace:
        return _hyperplane_subspace(self.normal)

    def as_affine(self) -> AffineSubspace:
        return AffineSubspace(Matrix.zero(self.field, self.n), self.subspace())

    def conjugated(self, p: Matrix) -> "Hyperplane":
        """The hyperplane {P·M·P^{-1} : M in self}, with normal P·A·P^{-1}."""
        return Hyperplane(conjugate(self.normal, p))

    def __eq__(self, other):
        return isinstance(other, Hyperplane) and self.normal == other.normal

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Hyperplane(n={self.n}, {self.field})"


@lru_cache(maxsize=None)
def _hyperplane_subspace(normal: Matrix) -> LinearSubspace:
    return ortho_complement(span_from([normal]))


def affine_meet_hyperplane(f: Hyperplane, g: AffineSubspace) -> Optional[Matrix]:
    """A point of F ∩ G, or None when they are disjoint.

    When None is returned the translation space of G lies inside F: every
    translation basis element pairs to zero with the normal while the base
    point does not (the affine-geometry lemma, checked exhaustively here).
    """
    if g.shape != (f.n, f.n) or g.field != f.field:
        raise DimensionMismatchError("hyperplane and affine subspace mismatch")
    field = f.field
    zero = field.zero
    t0 = f.normal.trace_product(g.base)
    if t0 == zero:
        return g.base
    for b in g.translation.basis():
        beta = f.normal.trace_product(b)
        if beta != zero:
            return g.base - b.scale(field.div(t0, beta))
    return None


def codim(space) -> int:
    """n^2 minus the dimension (translation dimension for affine subspaces)."""
    if isinstance(space, Hyperplane):
        return 1
    return space.codim


def affine_image(a: AffineSubspace, lin_map: Callable[[Matrix], Matrix]) -> AffineSubspace:
    """Image of an affine subspace under a linear matrix map."""
    base_img = lin_map(a.base)
    imgs = [lin_map(b) for b in a.translation.basis()]
    shape = (base_img.rows, base_img.cols)
    return AffineSubspace(base_img, span_from(imgs, a.field, shape))


def affine_preimage_slice(a: AffineSubspace, lin_map: Callable[[Matrix], Matrix],
                          target: Matrix) -> Optional[AffineSubspace]:
    """{M in A : lin_map(M) = target} as an affine subspace, or None if empty."""
    field = a.field
    base_img = lin_map(a.base)
    dirs = a.translation.basis()
    if not dirs:
        return a if base_img == target else None
    imgs = [lin_map(b) for b in dirs]
    mlen = base_img.rows * base_img.cols
    sysmat = Matrix(field, [[imgs[k].flat()[r] for k in range(len(dirs))]
                            for r in range(mlen)])
    rhs = Matrix.column(field, [field.sub(t, s) for t, s in
                                zip(target.flat(), base_img.flat())])
    x = solve(sysmat, rhs, "right")
    if x is None:
        return None
    point = a.base
    for i, d in enumerate(dirs):
        point = point + d.scale(x.raw(i, 0))
    kdirs = []
    for kv in kernel_basis(sysmat):
        acc = Matrix.zero(field, a.shape[0], a.shape[1])
        for i, d in enumerate(dirs):
            acc = acc + d.scale(kv.raw(i, 0))
        kdirs.append(acc)
    return AffineSubspace(point, span_from(kdirs, field, a.shape))

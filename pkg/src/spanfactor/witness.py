"""Searches backed by existence theorems.

Dieudonné's theorem (an affine subspace of codimension < n contains a
nonsingular matrix), its rank-r generalizations, and the inverse-pair
statement for hyperplanes guarantee witnesses exist; the searches here
convert those guarantees into found objects.  Every returned witness is
re-verified against its defining predicate before being handed back.
All randomness flows from the seed in the budget, so identical inputs give
identical witnesses.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Tuple

from . import kernels
from .errors import (
    BudgetExhaustedError,
    PreconditionViolatedError,
)
from .fields import Field, PRIME_FIELD
from .matrix import Matrix, adjugate, det, inverse, rank, solve
from .subspace import AffineSubspace, Hyperplane, LinearSubspace


@dataclass(frozen=True)
class SearchBudget:
    rng_seed: int = 0
    max_random_trials: int = 200
    allow_exhaustive: bool = True
    exhaustive_ceiling: int = 2_000_000

    def __post_init__(self):
        if self.max_random_trials < 1:
            raise ValueError("max_random_trials must be >= 1")

    def rng(self) -> random.Random:
        return random.Random(self.rng_seed)


def _random_coeff(field: Field, rng: random.Random):
    if field.kind == PRIME_FIELD:
        return rng.randrange(field.p)
    return Fraction(rng.randint(-9, 9))


def _random_element(space: AffineSubspace, rng: random.Random) -> Matrix:
    m = space.base
    for b in space.translation.basis():
        c = _random_coeff(space.field, rng)
        if c:
            m = m + b.scale(c)
    return m


def iter_affine_coefficients(dim: int, p: int) -> Iterable[Tuple[int, ...]]:
    return itertools.product(range(p), repeat=dim)


def _exhaustive_elements(space: AffineSubspace, ceiling: int) -> Optional[Iterable[Matrix]]:
    field = space.field
    if field.kind != PRIME_FIELD:
        return None
    if field.p ** space.dim > ceiling:
        return None
    basis = space.translation.basis()

    def gen():
        for coeffs in iter_affine_coefficients(space.dim, field.p):
            m = space.base
            for c, b in zip(coeffs, basis):
                if c:
                    m = m + b.scale(c)
            yield m

    return gen()


def _is_nonsingular(m: Matrix) -> bool:
    if m.field.kind == PRIME_FIELD:
        return kernels.rank_mod(m.flat(), m.rows, m.cols, m.field.p) == m.rows
    return det(m).value != 0


def _rank_of(m: Matrix) -> int:
    if m.field.kind == PRIME_FIELD:
        return kernels.rank_mod(m.flat(), m.rows, m.cols, m.field.p)
    return rank(m)


def find_nonsingular_in_affine(space: AffineSubspace, budget: SearchBudget) -> Matrix:
    """A nonsingular element of an affine subspace with codim < n."""
    if space.shape[0] != space.shape[1]:
        raise PreconditionViolatedError("nonsingular search needs square matrices")
    n = space.shape[0]
    if _is_nonsingular(space.base):
        return space.base
    if space.codim >= n:
        # The base point is checked first so degenerate-but-satisfied inputs
        # (like a single nonsingular point) succeed; past this point the
        # search relies on Dieudonné's guarantee.
        raise PreconditionViolatedError(
            f"codim {space.codim} >= n = {n}: Dieudonné's hypothesis fails")
    field = space.field
    basis = space.translation.basis()
    if field.kind != PRIME_FIELD:
        # det(base + t·B) has degree <= n in t, so n+1 sample points per
        # direction cover any direction along which det is not identically 0.
        for b in basis:
            for t in range(1, n + 2):
                cand = space.base + b.scale(t)
                if _is_nonsingular(cand):
                    return cand
    rng = budget.rng()
    for _ in range(budget.max_random_trials):
        cand = _random_element(space, rng)
        if _is_nonsingular(cand):
            return cand
    if budget.allow_exhaustive:
        elems = _exhaustive_elements(space, budget.exhaustive_ceiling)
        if elems is not None:
            for cand in elems:
                if _is_nonsingular(cand):
                    return cand
            raise BudgetExhaustedError(
                "affine subspace contains no nonsingular matrix (exhausted)")
    raise BudgetExhaustedError("nonsingular search ran out of trials")


def find_rank_r_in_affine(space: AffineSubspace, r: int, budget: SearchBudget) -> Matrix:
    """An element of exact rank r; existence is the caller's theorem."""
    rows, cols = space.shape
    if not 0 <= r <= min(rows, cols):
        raise PreconditionViolatedError(f"rank {r} impossible for shape {space.shape}")
    if space.dim == 0:
        if _rank_of(space.base) == r:
            return space.base
        raise PreconditionViolatedError(
            f"single-point space has rank {_rank_of(space.base)}, wanted {r}")
    if _rank_of(space.base) == r:
        return space.base
    field = space.field
    if field.kind != PRIME_FIELD:
        for b in space.translation.basis():
            for t in range(1, rows * cols + 2):
                cand = space.base + b.scale(t)
                if _rank_of(cand) == r:
                    return cand
    rng = budget.rng()
    for _ in range(budget.max_random_trials):
        cand = _random_element(space, rng)
        if _rank_of(cand) == r:
            return cand
    if budget.allow_exhaustive:
        elems = _exhaustive_elements(space, budget.exhaustive_ceiling)
        if elems is not None:
            for cand in elems:
                if _rank_of(cand) == r:
                    return cand
            raise BudgetExhaustedError(f"no rank-{r} matrix in the subspace (exhausted)")
    raise BudgetExhaustedError(f"rank-{r} search ran out of trials")


# -- inverse pairs (two hyperplanes) -----------------------------------------


def _blocks(a: Matrix):
    """Split an n x n matrix into [[alpha, L], [C, M]] with M of size n-1."""
    n = a.rows
    field = a.field
    alpha = a.raw(0, 0)
    L = Matrix._raw(field, 1, n - 1, a.row_raw(0)[1:])
    C = Matrix.column(field, [a.raw(i, 0) for i in range(1, n)])
    M = Matrix._raw(field, n - 1, n - 1,
                    tuple(a.raw(i, j) for i in range(1, n) for j in range(1, n)))
    return alpha, L, C, M


def _assemble_corner(field: Field, x_row: Optional[Matrix], y_col: Optional[Matrix],
                     q: Matrix) -> Matrix:
    """[[1, X],[0, Q]] when x_row is given, [[1, 0],[Y, Q]] when y_col is."""
    n = q.rows + 1
    zero, one = field.zero, field.one
    flat = [zero] * (n * n)
    flat[0] = one
    if x_row is not None:
        for j in range(n - 1):
            flat[j + 1] = x_row.raw(0, j)
    for i in range(n - 1):
        if y_col is not None:
            flat[(i + 1) * n] = y_col.raw(i, 0)
        for j in range(n - 1):
            flat[(i + 1) * n + j + 1] = q.raw(i, j)
    return Matrix._raw(field, n, n, tuple(flat))


def _inverse_pair_ok(h1: Hyperplane, h2: Hyperplane, p: Matrix) -> Optional[Matrix]:
    if not h1.contains(p):
        return None
    pinv = inverse(p)
    if pinv is None or not h2.contains(pinv):
        return None
    return p


def _cyclic_permutation(field: Field, n: int) -> Matrix:
    return Matrix.permutation(field, [(j + 1) % n for j in range(n)])


def _corner_family(h1: Hyperplane, h2: Hyperplane, q: Matrix,
                   transposed: bool) -> Optional[Matrix]:
    """Solve for P = [[1, X],[0, Q]] (or [[1, 0],[Y, Q]]) in H1 with P^-1 in H2.

    Both membership conditions are affine in the unknown row X (resp. column
    Y), which gives a 2-equation linear system.
    """
    field = h1.field
    qinv = inverse(q)
    if qinv is None:
        return None
    a1, l1, c1, m1 = _blocks(h1.normal)
    a2, l2, c2, m2 = _blocks(h2.normal)
    t1 = m1.trace_product(q)
    t2 = m2.trace_product(qinv)
    if not transposed:
        # tr(A1·P) = alpha1 + X·C1 + tr(M1 Q);  tr(A2·P^-1) = alpha2 - X·(Q^-1 C2) + tr(M2 Q^-1)
        row_a = [c1.raw(i, 0) for i in range(c1.rows)]
        row_b = [(qinv * c2).raw(i, 0) for i in range(c2.rows)]
        rhs = [field.neg(field.add(a1, t1)), field.add(a2, t2)]
    else:
        # tr(A1·P) = alpha1 + L1·Y + tr(M1 Q);  tr(A2·P^-1) = alpha2 - (L2 Q^-1)·Y + tr(M2 Q^-1)
        row_a = [l1.raw(0, j) for j in range(l1.cols)]
        row_b = [(l2 * qinv).raw(0, j) for j in range(l2.cols)]
        rhs = [field.neg(field.add(a1, t1)), field.add(a2, t2)]
    sysmat = Matrix(field, [row_a, row_b])
    sol = solve(sysmat, Matrix.column(field, rhs), "right")
    if sol is None:
        return None
    if not transposed:
        x = Matrix.row_vector(field, [sol.raw(i, 0) for i in range(sol.rows)])
        cand = _assemble_corner(field, x, None, q)
    else:
        y = Matrix.column(field, [sol.raw(i, 0) for i in range(sol.rows)])
        cand = _assemble_corner(field, None, y, q)
    return _inverse_pair_ok(h1, h2, cand)


def _pencil_roots(h1: Hyperplane, h2: Hyperplane, p0: Matrix) -> Optional[Matrix]:
    """Refine p0 along basis directions D of H1: tr(A2·adj(p0 + tD)) = 0.

    The left side is a polynomial of degree <= n-1 in t; over GF(p) every t
    is tried, over the rationals candidate roots come from the rational root
    theorem applied to the interpolated polynomial.
    """
    field = h1.field
    a2 = h2.normal
    n = h1.n
    for d in h1.subspace().basis():
        if field.kind == PRIME_FIELD:
            for t in range(field.p):
                cand = p0 + d.scale(t)
                got = _inverse_pair_ok(h1, h2, cand)
                if got is not None:
                    return got
        else:
            # Interpolate g(t) = tr(A2 · adj(p0 + tD)) at t = 0..n-1.
            pts = []
            for t in range(n):
                g = a2.trace_product(adjugate(p0 + d.scale(t)))
                pts.append((Fraction(t), g))
            coeffs = _lagrange_coefficients(pts)
            for t in _rational_roots(coeffs):
                cand = p0 + d.scale(t)
                got = _inverse_pair_ok(h1, h2, cand)
                if got is not None:
                    return got
    return None


def _lagrange_coefficients(points: List[Tuple[Fraction, Fraction]]) -> List[Fraction]:
    """Coefficients (ascending) of the interpolating polynomial."""
    k = len(points)
    coeffs = [Fraction(0)] * k
    for i, (xi, yi) in enumerate(points):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            # multiply basis by (x - xj)
            nxt = [Fraction(0)] * (len(basis) + 1)
            for d, c in enumerate(basis):
                nxt[d] -= c * xj
                nxt[d + 1] += c
            basis = nxt
            denom *= xi - xj
        scale = yi / denom
        for d, c in enumerate(basis):
            coeffs[d] += scale * c
    return coeffs


def _rational_roots(coeffs: List[Fraction]) -> List[Fraction]:
    """All rational roots of the polynomial with the given coefficients."""
    while coeffs and coeffs[-1] == 0:
        coeffs = coeffs[:-1]
    if not coeffs:
        return []
    if len(coeffs) == 1:
        return []
    denom_lcm = 1
    for c in coeffs:
        denom_lcm = denom_lcm * c.denominator // _gcd(denom_lcm, c.denominator)
    ints = [int(c * denom_lcm) for c in coeffs]
    while ints and ints[0] == 0:
        ints = ints[1:]  # factor out t; t = 0 re-added below
    roots = [Fraction(0)] if len(ints) < len(coeffs) else []
    if not ints:
        return roots
    a0, alead = abs(ints[0]), abs(ints[-1])
    if a0 == 0:
        return roots
    for pnum in _divisors(a0):
        for qden in _divisors(alead):
            for cand in (Fraction(pnum, qden), Fraction(-pnum, qden)):
                val = Fraction(0)
                for c in reversed(ints):
                    val = val * cand + c
                if val == 0 and cand not in roots:
                    roots.append(cand)
    return roots


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _divisors(x: int) -> List[int]:
    out = []
    d = 1
    while d * d <= x:
        if x % d == 0:
            out.append(d)
            if d != x // d:
                out.append(x // d)
        d += 1
    return sorted(out)


def inverse_pair(h1: Hyperplane, h2: Hyperplane, budget: SearchBudget,
                 _depth: int = 2) -> Matrix:
    """A nonsingular P in H1 with P^{-1} in H2 (n >= 3).

    Layered search: a small catalog, a Dieudonné starting point with pencil
    refinement, corner block families [[1,X],[0,Q]] / [[1,0],[Y,Q]] over
    deterministic and seeded Q, a conjugated retry, and an exhaustive
    fallback over small prime fields.
    """
    if h1.field != h2.field or h1.n != h2.n:
        raise PreconditionViolatedError("hyperplanes must share field and size")
    n = h1.n
    if n < 3:
        raise PreconditionViolatedError("inverse_pair requires n >= 3")
    field = h1.field

    cyc = _cyclic_permutation(field, n)
    for cand in (Matrix.identity(field, n), cyc, cyc.transpose()):
        got = _inverse_pair_ok(h1, h2, cand)
        if got is not None:
            return got

    try:
        p0 = find_nonsingular_in_affine(h1.as_affine(), budget)
    except BudgetExhaustedError:
        p0 = None
    if p0 is not None:
        got = _inverse_pair_ok(h1, h2, p0)
        if got is not None:
            return got
        got = _pencil_roots(h1, h2, p0)
        if got is not None:
            return got

    rng = budget.rng()
    q_candidates: List[Matrix] = [Matrix.identity(field, n - 1)]
    if n - 1 >= 2:
        q_candidates.append(_cyclic_permutation(field, n - 1))
    _, _, _, m1 = _blocks(h1.normal)
    _, _, _, m2 = _blocks(h2.normal)
    a2 = h2.normal.raw(0, 0)
    a1 = h1.normal.raw(0, 0)
    # Proof-guided Q: choose Q so that tr(M2·Q^{-1}) = -alpha2 via Dieudonné.
    if not m2.is_zero:
        try:
            nmat = _trace_level_nonsingular(m2, field.neg(a2), budget)
            q_candidates.append(inverse(nmat))
        except BudgetExhaustedError:
            pass
    if not m1.is_zero:
        try:
            nmat = _trace_level_nonsingular(m1, field.neg(a1), budget)
            q_candidates.append(nmat)
        except BudgetExhaustedError:
            pass
    for _ in range(budget.max_random_trials):
        cand = Matrix(field, [[_random_coeff(field, rng) for _ in range(n - 1)]
                              for _ in range(n - 1)])
        if _is_nonsingular(cand):
            q_candidates.append(cand)
        if len(q_candidates) >= 12:
            break
    for q in q_candidates:
        for transposed in (False, True):
            got = _corner_family(h1, h2, q, transposed)
            if got is not None:
                return got

    if _depth > 0:
        for _ in range(3):
            s = Matrix(field, [[_random_coeff(field, rng) for _ in range(n)]
                               for _ in range(n)])
            if not _is_nonsingular(s):
                continue
            try:
                pc = inverse_pair(h1.conjugated(s), h2.conjugated(s), budget, _depth - 1)
            except BudgetExhaustedError:
                continue
            p = inverse(s) * pc * s
            got = _inverse_pair_ok(h1, h2, p)
            if got is not None:
                return got

    if budget.allow_exhaustive and field.kind == PRIME_FIELD:
        elems = _exhaustive_elements(h1.as_affine(), budget.exhaustive_ceiling)
        if elems is not None:
            for cand in elems:
                got = _inverse_pair_ok(h1, h2, cand)
                if got is not None:
                    return got
            raise BudgetExhaustedError(
                "no inverse pair exists for these hyperplanes (exhausted)")
    raise BudgetExhaustedError("inverse_pair search ran out of strategies")


def _trace_level_nonsingular(m: Matrix, target, budget: SearchBudget) -> Matrix:
    """A nonsingular N with tr(M·N) = target, via Dieudonné on that hyperplane."""
    field = m.field
    k = m.rows
    # Particular point with tr(M·N0) = target.
    n0 = None
    for i in range(k):
        for j in range(k):
            if m.raw(j, i) != field.zero:
                n0 = Matrix.elementary(field, k, k, i, j).scale(
                    field.div(target, m.raw(j, i)))
                break
        if n0 is not None:
            break
    if n0 is None:
        raise BudgetExhaustedError("zero functional cannot reach a nonzero level")
    hyp = Hyperplane(m)
    space = AffineSubspace(n0, hyp.subspace())
    return find_nonsingular_in_affine(space, budget)

import random

import pytest

from spanfactor import (
    GF,
    QQ,
    AffineSubspace,
    Hyperplane,
    LinearSubspace,
    Matrix,
    affine_meet_hyperplane,
    codim,
    commutator_span,
    intersect_affine,
    ortho_complement,
    product_span_two,
    sl_subspace,
    span_from,
)
from spanfactor.matrix import rref_rows
from spanfactor.sampling import random_matrix, random_subspace_of_codim


def E(field, n, i, j):
    return Matrix.elementary(field, n, n, i, j)


def all_elementaries(field, n):
    return [E(field, n, i, j) for i in range(n) for j in range(n)]


def test_span_full(f5):
    v = span_from(all_elementaries(f5, 3))
    assert v.dim == 9 and v.codim == 0


def test_span_empty(f5):
    v = span_from([], f5, (3, 3))
    assert v.dim == 0 and not v.contains(E(f5, 3, 0, 0))
    assert v.contains(Matrix.zero(f5, 3))


def test_span_dependent(f5):
    v = span_from([E(f5, 3, 0, 0), E(f5, 3, 0, 0).scale(2)])
    assert v.dim == 1


def test_span_canonical(f5):
    a = span_from([E(f5, 2, 0, 0) + E(f5, 2, 0, 1), E(f5, 2, 0, 1)])
    b = span_from([E(f5, 2, 0, 0), E(f5, 2, 0, 1).scale(3)])
    assert a == b and a.basis() == b.basis()


def test_ortho_full_and_sl(f5):
    full = LinearSubspace.full(f5, (3, 3))
    assert ortho_complement(full).dim == 0
    perp = ortho_complement(sl_subspace(f5, 3))
    assert perp.dim == 1 and perp.contains(Matrix.identity(f5, 3))


def test_ortho_of_elementary(f5):
    v = ortho_complement(span_from([E(f5, 3, 0, 1)]))
    # tr(E_01 · M) = M_10, so the orthogonal is {M : M_10 = 0}.
    assert v.dim == 8
    assert all(b.raw(1, 0) == 0 for b in v.basis())


def test_ortho_involution_and_inclusion_reversal(f5):
    rng = random.Random(2)
    for _ in range(15):
        u = random_subspace_of_codim(f5, 3, rng.randrange(1, 4), rng)
        v = u.add(span_from([random_matrix(f5, 3, 3, rng)]))
        assert ortho_complement(ortho_complement(u)) == u
        assert u.dim + ortho_complement(u).dim == 9
        assert ortho_complement(v) <= ortho_complement(u)


def test_dimension_formula(f5):
    rng = random.Random(3)
    for _ in range(15):
        u = random_subspace_of_codim(f5, 3, rng.randrange(1, 4), rng)
        v = random_subspace_of_codim(f5, 3, rng.randrange(1, 4), rng)
        inter = u.intersect(v)
        assert inter.dim + u.add(v).dim == u.dim + v.dim
        for b in inter.basis():
            assert u.contains(b) and v.contains(b)


def test_intersect_examples(f5):
    sl2 = sl_subspace(f5, 2)
    offdiag = span_from([E(f5, 2, 0, 1), E(f5, 2, 1, 0)])
    assert sl2.intersect(offdiag) == offdiag
    assert sl2.intersect(sl2) == sl2


def test_intersect_affine_disjoint(qq):
    tr1 = AffineSubspace(Matrix.identity(qq, 2).scale("1/2"), sl_subspace(qq, 2))
    tr0 = AffineSubspace(Matrix.zero(qq, 2), sl_subspace(qq, 2))
    assert intersect_affine(tr1, tr0) is None


def test_intersect_affine_point(qq):
    a = AffineSubspace(Matrix.identity(qq, 2), span_from([E(qq, 2, 0, 1)]))
    b = AffineSubspace(Matrix.identity(qq, 2), span_from([E(qq, 2, 1, 0)]))
    got = intersect_affine(a, b)
    assert got is not None and got.dim == 0
    assert got.base == Matrix.identity(qq, 2)


def test_affine_meet_hyperplane_point(qq):
    f = Hyperplane(Matrix.identity(qq, 2))
    g = AffineSubspace(Matrix.identity(qq, 2), span_from([E(qq, 2, 0, 0)]))
    pt = affine_meet_hyperplane(f, g)
    assert pt is not None and f.contains(pt) and g.contains(pt)
    assert pt == Matrix.identity(qq, 2) - E(qq, 2, 0, 0).scale(2)


def test_affine_meet_hyperplane_disjoint(qq):
    f = Hyperplane(Matrix.identity(qq, 2))
    g = AffineSubspace(Matrix.identity(qq, 2), span_from([E(qq, 2, 0, 1)]))
    assert affine_meet_hyperplane(f, g) is None
    # Lemma: every translation direction lies inside the hyperplane.
    for b in g.translation.basis():
        assert f.contains(b)
    assert not f.contains(g.base)


def test_affine_meet_hyperplane_gf2(f2):
    f = Hyperplane(Matrix.identity(f2, 2))
    g = AffineSubspace.point(Matrix.identity(f2, 2))
    assert affine_meet_hyperplane(f, g) == Matrix.identity(f2, 2)


def test_product_span_full(f5):
    full = LinearSubspace.full(f5, (3, 3))
    assert product_span_two(full, full) == full


def test_product_span_blocks(f5):
    # First row of V supported away from column 0, first column of W on
    # row 0 only: products keep a zero upper-left entry.
    from spanfactor.factor2 import standard_vp, standard_wp
    v1, w1 = standard_vp(f5, 3, 1), standard_wp(f5, 3, 1)
    prod = product_span_two(v1, w1)
    assert prod.dim < 9
    for b in prod.basis():
        assert b.raw(0, 0) == 0


def test_product_span_random_codim1_full(f5):
    rng = random.Random(4)
    for _ in range(10):
        v = random_subspace_of_codim(f5, 3, 1, rng)
        assert product_span_two(v, v).dim == 9


def test_product_span_matches_oracle_gf2(f2):
    # Independent check: the span of the full product set equals the span
    # of basis pair products.
    from spanfactor import oracle
    rng = random.Random(5)
    for _ in range(3):
        v = random_subspace_of_codim(f2, 3, 1, rng)
        ps = oracle.product_set(v)
        rows = [list(m.flat()) for m in sorted(ps, key=lambda m: m.flat())]
        rows, pivots = rref_rows(rows, f2)
        full_span_dim = len(pivots)
        assert full_span_dim == product_span_two(v, v).dim


def test_commutator_span_full_space(f5):
    v = span_from(all_elementaries(f5, 2))
    assert commutator_span(v) == sl_subspace(f5, 2)


def test_commutator_span_scalars(f5):
    v = span_from([Matrix.identity(f5, 3)])
    assert commutator_span(v).dim == 0


def test_commutator_span_random_codim1(f3):
    rng = random.Random(6)
    for _ in range(10):
        v = random_subspace_of_codim(f3, 3, 1, rng)
        got = commutator_span(v)
        assert got == sl_subspace(f3, 3)
        # independent recomputation over all ordered basis pairs
        rows = []
        basis = v.basis()
        for a in basis:
            for b in basis:
                rows.append(list((a * b - b * a).flat()))
        rows, pivots = rref_rows(rows, f3)
        assert len(pivots) == got.dim


def test_spans_below_critical_codim():
    # codim < n-1 forces full product span and full commutator span.
    rng = random.Random(7)
    for p in (2, 3, 5):
        field = GF(p)
        for n in (3, 4):
            for _ in range(3):
                c = rng.randrange(1, n - 1)
                v = random_subspace_of_codim(field, n, c, rng)
                assert product_span_two(v, v).dim == n * n
                assert commutator_span(v) == sl_subspace(field, n)


def test_codim(f5):
    assert codim(LinearSubspace.full(f5, (3, 3))) == 0
    assert codim(Hyperplane(Matrix.identity(f5, 3))) == 1
    w1 = span_from([E(f5, 3, 0, 0)] +
                   [E(f5, 3, i, j) for i in range(3) for j in range(1, 3)])
    assert codim(w1) == 2  # n - 1 for n = 3


def test_affine_membership_and_canonical_base(f5):
    base = Matrix.identity(f5, 3)
    v = AffineSubspace(base, sl_subspace(f5, 3))
    assert v.contains(base)
    assert v.contains(base + E(f5, 3, 0, 1))
    assert not v.contains(base + E(f5, 3, 0, 0))
    # two descriptions of the same affine subspace compare equal
    v2 = AffineSubspace(base + E(f5, 3, 0, 1) - E(f5, 3, 1, 0), sl_subspace(f5, 3))
    assert v == v2 and v.base == v2.base


def test_hyperplane_normal_canonicalized(f5):
    h1 = Hyperplane(Matrix.identity(f5, 3).scale(3))
    h2 = Hyperplane(Matrix.identity(f5, 3))
    assert h1 == h2 and h1.normal == h2.normal

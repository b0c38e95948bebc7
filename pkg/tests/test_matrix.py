import random

import pytest
from hypothesis import given, settings, strategies as st

from spanfactor import (
    GF,
    QQ,
    DimensionMismatchError,
    Matrix,
    SingularMatrixError,
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
    transvection_factor,
)


def E(field, n, i, j):
    return Matrix.elementary(field, n, n, i, j)


def test_elementary_products(f5):
    assert E(f5, 3, 0, 1) * E(f5, 3, 1, 0) == E(f5, 3, 0, 0)
    assert (E(f5, 3, 0, 1) * E(f5, 3, 0, 1)).is_zero


def test_trace_identity_gf3(f3):
    assert Matrix.identity(f3, 3).trace().value == 0


def test_rank_projector(f5):
    assert Matrix.rank_projector(f5, 3, 2) == Matrix.identity(f5, 3) - E(f5, 3, 2, 2)


def test_dimension_mismatch(f5):
    with pytest.raises(DimensionMismatchError):
        Matrix.identity(f5, 2) * Matrix.identity(f5, 3)
    with pytest.raises(DimensionMismatchError):
        Matrix.identity(f5, 2) + Matrix.zero(f5, 2, 3)


def test_rref_identity(qq):
    r, pivots, rk = rref(Matrix.identity(qq, 4))
    assert r == Matrix.identity(qq, 4)
    assert pivots == (0, 1, 2, 3) and rk == 4


def test_rref_zero(qq):
    r, pivots, rk = rref(Matrix.zero(qq, 3))
    assert r.is_zero and pivots == () and rk == 0


def test_rref_proportional_rows(qq):
    r, pivots, rk = rref(Matrix(qq, [[1, 2], [2, 4]]))
    assert rk == 1 and pivots == (0,)


def test_kernel_of_elementary(f5):
    kb = kernel_basis(E(f5, 2, 0, 0))
    assert len(kb) == 1 and kb[0] == Matrix.column(f5, [0, 1])


def test_kernel_of_invertible(qq):
    assert kernel_basis(Matrix(qq, [[2, 1], [1, 1]])) == []


def test_kernel_gf2(f2):
    kb = kernel_basis(Matrix(f2, [[1, 1], [1, 1]]))
    assert len(kb) == 1 and kb[0] == Matrix.column(f2, [1, 1])
    for v in kb:
        assert (Matrix(f2, [[1, 1], [1, 1]]) * v).is_zero


def test_solve_left(f2):
    c = E(f2, 2, 1, 0)
    x = solve(c, E(f2, 2, 0, 0), unknown="left")
    assert x is not None and x * c == E(f2, 2, 0, 0)


def test_solve_rank_obstruction(qq):
    # X·C = M with rank C < rank M has no solution.
    c = E(qq, 2, 0, 0)
    m = Matrix.identity(qq, 2)
    assert solve(c, m, unknown="left") is None


def test_solve_inverse(qq):
    a = Matrix(qq, [[2, 1], [1, 1]])
    x = solve(a, Matrix.identity(qq, 2), unknown="right")
    assert x == inverse(a)


def test_solve_certificate(qq):
    a = Matrix(qq, [[1, 1], [1, 1]])
    b = Matrix.column(qq, [1, 2])
    x, cert = solve_or_certificate(a, b)
    assert x is None and cert is not None
    assert (cert * a).is_zero and not (cert * b).is_zero


def test_inverse_and_adjugate_cycle(f5):
    p = E(f5, 3, 0, 2) + E(f5, 3, 1, 0) + E(f5, 3, 2, 1)
    d, adj, inv = inverse_and_adjugate(p)
    assert inv == p.transpose()


def test_adjugate_zero(qq):
    d, adj, inv = inverse_and_adjugate(Matrix.zero(qq, 3))
    assert d.value == 0 and adj.is_zero and inv is None
    d2, adj2, inv2 = inverse_and_adjugate(Matrix.zero(qq, 2))
    assert adj2.is_zero and inv2 is None


def test_unitriangular_inverse(qq):
    m = Matrix(qq, [[1, 1], [0, 1]])
    d, adj, inv = inverse_and_adjugate(m)
    assert d.value == 1 and inv == Matrix(qq, [[1, -1], [0, 1]])


def test_adjugate_identity_random_gf5(f5):
    rng = random.Random(0)
    for n in (2, 3, 4):
        for _ in range(25):
            m = Matrix(f5, [[rng.randrange(5) for _ in range(n)] for _ in range(n)])
            prod = adjugate(m) * m
            assert prod == Matrix.identity(f5, n).scale(det(m).value)
            assert m * adjugate(m) == prod


def test_conjugate(f5):
    perm = Matrix.permutation(f5, [1, 0, 2])
    assert conjugate(Matrix.identity(f5, 3), Matrix.identity(f5, 3)) == Matrix.identity(f5, 3)
    assert conjugate(E(f5, 3, 0, 0), perm) == E(f5, 3, 1, 1)
    m = Matrix(f5, [[1, 2, 3], [4, 0, 1], [2, 2, 2]])
    assert conjugate(m, perm).trace() == m.trace()
    with pytest.raises(SingularMatrixError):
        conjugate(m, Matrix.zero(f5, 3))


def test_rank_inequalities(f5):
    rng = random.Random(1)
    for _ in range(40):
        a = Matrix(f5, [[rng.randrange(5) for _ in range(3)] for _ in range(3)])
        b = Matrix(f5, [[rng.randrange(5) for _ in range(3)] for _ in range(3)])
        assert rank(a * b) <= min(rank(a), rank(b))
    # invertible factors preserve rank
    for _ in range(20):
        m = Matrix(f5, [[rng.randrange(5) for _ in range(3)] for _ in range(3)])
        while True:
            p = Matrix(f5, [[rng.randrange(5) for _ in range(3)] for _ in range(3)])
            q = Matrix(f5, [[rng.randrange(5) for _ in range(3)] for _ in range(3)])
            if det(p).value and det(q).value:
                break
        assert rank(p * m * q) == rank(m)


def test_transvection_factor_identity(f5):
    ts, d = transvection_factor(Matrix.identity(f5, 3))
    assert ts == [] and d == Matrix.identity(f5, 3)


def test_transvection_factor_single(qq):
    m = Matrix.identity(qq, 3) + E(qq, 3, 0, 1)
    ts, d = transvection_factor(m)
    assert ts == [m] and d == Matrix.identity(qq, 3)


def test_transvection_factor_dilatation(f5):
    m = Matrix.diagonal(f5, [2, 1, 1])
    ts, d = transvection_factor(m)
    acc = Matrix.identity(f5, 3)
    for t in ts:
        acc = acc * t
    assert acc * d == m


def test_transvection_factor_singular_rejected(f5):
    with pytest.raises(SingularMatrixError):
        transvection_factor(Matrix.zero(f5, 3))


@settings(deadline=None, max_examples=60)
@given(st.integers(0, 10**6), st.sampled_from([2, 3, 4]), st.sampled_from([2, 3, 5]))
def test_transvection_factor_roundtrip(seed, n, p):
    field = GF(p)
    rng = random.Random(seed)
    m = Matrix(field, [[rng.randrange(p) for _ in range(n)] for _ in range(n)])
    if det(m).value == 0:
        return
    ts, d = transvection_factor(m)
    assert len(ts) <= n * n
    ident = Matrix.identity(field, n)
    acc = ident
    for t in ts:
        assert det(t).value == 1
        offdiag = [k for k, (x, y) in enumerate(zip(t.flat(), ident.flat())) if x != y]
        assert len(offdiag) == 1 and offdiag[0] % (n + 1) != 0
        acc = acc * t
    assert acc * d == m
    expected_tail = [1] * (n - 1) + [det(m).value]
    assert d == Matrix.diagonal(field, expected_tail)

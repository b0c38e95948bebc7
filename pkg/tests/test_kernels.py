import random

import pytest

from spanfactor import _kernels_py
from spanfactor.kernels import BACKEND

try:
    from spanfactor import _kernels_cy
except ImportError:
    _kernels_cy = None

needs_compiled = pytest.mark.skipif(_kernels_cy is None,
                                    reason="compiled kernels unavailable")


def random_flat(rng, n, p):
    return tuple(rng.randrange(p) for _ in range(n * n))


def test_mat_mul_mod_identity():
    ident = (1, 0, 0, 0, 1, 0, 0, 0, 1)
    a = (1, 2, 3, 4, 0, 1, 2, 2, 2)
    assert _kernels_py.mat_mul_mod(a, ident, 3, 3, 3, 5) == a


def test_rank_mod_basics():
    assert _kernels_py.rank_mod((1, 0, 0, 1), 2, 2, 2) == 2
    assert _kernels_py.rank_mod((1, 1, 1, 1), 2, 2, 2) == 1
    assert _kernels_py.rank_mod((0, 0, 0, 0), 2, 2, 3) == 0


def test_product_pairs_small():
    ident = (1, 0, 0, 1)
    swap = (0, 1, 1, 0)
    got = _kernels_py.product_pairs_mod([ident, swap], 2, 2)
    assert got == {ident, swap}


def test_closure_ceiling_none():
    gens = [(1, 1, 0, 1), (1, 0, 1, 1)]
    assert _kernels_py.closure_mod(gens, 2, 2, 2) is None


@needs_compiled
def test_backends_agree_mat_mul():
    rng = random.Random(0)
    for p in (2, 3, 5):
        for _ in range(50):
            a, b = random_flat(rng, 3, p), random_flat(rng, 3, p)
            assert _kernels_py.mat_mul_mod(a, b, 3, 3, 3, p) == \
                _kernels_cy.mat_mul_mod(a, b, 3, 3, 3, p)


@needs_compiled
def test_backends_agree_rank():
    rng = random.Random(1)
    for p in (2, 3, 5):
        for _ in range(100):
            a = random_flat(rng, 3, p)
            assert _kernels_py.rank_mod(a, 3, 3, p) == _kernels_cy.rank_mod(a, 3, 3, p)


@needs_compiled
def test_backends_agree_product_pairs():
    rng = random.Random(2)
    elems = list({random_flat(rng, 3, 2) for _ in range(30)})
    assert _kernels_py.product_pairs_mod(elems, 3, 2) == \
        _kernels_cy.product_pairs_mod(list(elems), 3, 2)


@needs_compiled
def test_backends_agree_closure():
    rng = random.Random(3)
    gens = list({random_flat(rng, 2, 3) for _ in range(6)})
    py = _kernels_py.closure_mod(gens, 2, 3, 10 ** 6)
    cy = _kernels_cy.closure_mod(list(gens), 2, 3, 10 ** 6)
    assert set(py[0]) == set(cy[0])
    assert py[1] == cy[1]


def test_backend_reported():
    assert BACKEND in ("cython", "python")

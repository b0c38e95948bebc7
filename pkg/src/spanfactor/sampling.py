"""Seeded random generators for matrices, hyperplanes, and subspaces.

Used by the verification suites and the tests; all functions take an
explicit random.Random so runs are reproducible.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional

from .fields import Field, PRIME_FIELD
from .matrix import Matrix, det
from .subspace import AffineSubspace, Hyperplane, LinearSubspace, ortho_complement, span_from


def random_entry(field: Field, rng: random.Random, span: int = 9):
    if field.kind == PRIME_FIELD:
        return rng.randrange(field.p)
    return Fraction(rng.randint(-span, span))


def random_matrix(field: Field, rows: int, cols: int, rng: random.Random,
                  span: int = 9) -> Matrix:
    return Matrix(field, [[random_entry(field, rng, span) for _ in range(cols)]
                          for _ in range(rows)])


def random_nonzero_matrix(field: Field, rows: int, cols: int,
                          rng: random.Random, span: int = 9) -> Matrix:
    while True:
        m = random_matrix(field, rows, cols, rng, span)
        if not m.is_zero:
            return m


def random_invertible(field: Field, n: int, rng: random.Random, span: int = 9) -> Matrix:
    while True:
        m = random_matrix(field, n, n, rng, span)
        if det(m).value != field.zero:
            return m


def random_hyperplane(field: Field, n: int, rng: random.Random) -> Hyperplane:
    return Hyperplane(random_nonzero_matrix(field, n, n, rng))


def random_subspace_of_codim(field: Field, n: int, c: int,
                             rng: random.Random) -> LinearSubspace:
    """A uniformly seeded subspace of M_n with the exact codimension c."""
    if c == 0:
        return LinearSubspace.full(field, (n, n))
    while True:
        normals = [random_nonzero_matrix(field, n, n, rng) for _ in range(c)]
        spanned = span_from(normals, field, (n, n))
        if spanned.dim == c:
            return ortho_complement(spanned)


def random_affine_of_codim(field: Field, n: int, c: int,
                           rng: random.Random) -> AffineSubspace:
    return AffineSubspace(random_matrix(field, n, n, rng),
                          random_subspace_of_codim(field, n, c, rng))

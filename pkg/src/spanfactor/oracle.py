"""Brute-force ground truth over small finite fields.

Enumerates affine subspaces element by element, computes product sets and
multiplicative closures exactly, and exposes exhaustive theorem checks.
The hot loops run in the selected kernel backend on flat integer tuples;
BFS closure keeps shortest witness words.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Tuple, Union

from . import kernels
from .errors import InfiniteFieldError, TooLargeError
from .fields import Field, PRIME_FIELD
from .matrix import Matrix
from .subspace import AffineSubspace, Hyperplane, LinearSubspace
from .witness import iter_affine_coefficients

DEFAULT_CEILING = 2_000_000

SetSource = Union[AffineSubspace, LinearSubspace, Hyperplane, Iterable[Matrix]]


def enumerate_affine(space: AffineSubspace, ceiling: int = DEFAULT_CEILING) -> Iterator[Matrix]:
    """All p^dim elements of an affine subspace over GF(p), each exactly once."""
    field = space.field
    if field.kind != PRIME_FIELD:
        raise InfiniteFieldError("cannot enumerate an affine subspace over QQ")
    count = field.p ** space.dim
    if count > ceiling:
        raise TooLargeError(f"{count} elements exceed the ceiling {ceiling}")
    basis = space.translation.basis()
    for coeffs in iter_affine_coefficients(space.dim, field.p):
        m = space.base
        for c, b in zip(coeffs, basis):
            if c:
                m = m + b.scale(c)
        yield m


def _as_element_list(source: SetSource, ceiling: int) -> Tuple[List[Matrix], Field, int]:
    if isinstance(source, Hyperplane):
        source = source.as_affine()
    if isinstance(source, LinearSubspace):
        source = AffineSubspace(Matrix.zero(source.field, *_shape_args(source)), source)
    if isinstance(source, AffineSubspace):
        elems = list(enumerate_affine(source, ceiling))
    else:
        elems = list(source)
        if not elems:
            raise ValueError("empty generator set")
        if len(elems) > ceiling:
            raise TooLargeError("generator list exceeds the ceiling")
    field = elems[0].field
    n = elems[0].rows
    return elems, field, n


def _shape_args(s: LinearSubspace):
    return s.shape[0], s.shape[1]


def product_set(source: SetSource, ceiling: int = DEFAULT_CEILING) -> FrozenSet[Matrix]:
    """{A·B : A, B in the set}, exactly."""
    elems, field, n = _as_element_list(source, ceiling)
    if not elems[0].is_square:
        raise ValueError("product_set needs square matrices")
    if field.kind == PRIME_FIELD:
        flats = [m.flat() for m in elems]
        prods = kernels.product_pairs_mod(flats, n, field.p)
        return frozenset(Matrix._raw(field, n, n, t) for t in prods)
    out = set()
    for a in elems:
        for b in elems:
            out.add(a * b)
    return frozenset(out)


@dataclass(frozen=True)
class ClosureResult:
    """Multiplicative closure with shortest generator words.

    witness_paths maps each element to a tuple of generator indices whose
    left-to-right product equals the element.
    """

    elements: FrozenSet[Matrix]
    saturated_at: int
    witness_paths: Dict[Matrix, Tuple[int, ...]]
    generators: Tuple[Matrix, ...]

    def contains(self, m: Matrix) -> bool:
        return m in self.elements

    def witness_product(self, m: Matrix) -> Matrix:
        word = self.witness_paths[m]
        acc = self.generators[word[0]]
        for idx in word[1:]:
            acc = acc * self.generators[idx]
        return acc


def closure(source: SetSource, ceiling: int = DEFAULT_CEILING) -> ClosureResult:
    """Least multiplicatively closed superset of the generators (BFS)."""
    elems, field, n = _as_element_list(source, ceiling)
    if field.kind != PRIME_FIELD:
        raise InfiniteFieldError("closure is only computed over finite fields")
    flats = [m.flat() for m in elems]
    res = kernels.closure_mod(flats, n, field.p, ceiling)
    if res is None:
        raise TooLargeError(f"closure exceeds the ceiling {ceiling}")
    parents, rounds = res
    words: Dict[tuple, Tuple[int, ...]] = {}

    def word_of(key: tuple) -> Tuple[int, ...]:
        stack = []
        k = key
        while k not in words:
            stack.append(k)
            prev, _ = parents[k]
            if prev is None:
                break
            k = prev
        while stack:
            item = stack.pop()
            prev, idx = parents[item]
            words[item] = (words[prev] + (idx,)) if prev is not None else (idx,)
        return words[key]

    witness: Dict[Matrix, Tuple[int, ...]] = {}
    elements = set()
    for key in parents:
        m = Matrix._raw(field, n, n, key)
        elements.add(m)
        witness[m] = word_of(key)
    return ClosureResult(frozenset(elements), rounds, witness, tuple(elems))

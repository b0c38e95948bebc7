"""Pure-Python kernels for hot finite-field loops.

Matrices over GF(p) are flat row-major tuples of ints in [0, p).  The
compiled twin in ``_kernels_cy`` implements the same four functions; the
``kernels`` module picks whichever is available.
"""

from typing import Dict, List, Optional, Set, Tuple

IntMat = Tuple[int, ...]


def mat_mul_mod(a: IntMat, b: IntMat, n: int, m: int, k: int, p: int) -> IntMat:
    """(n x m) times (m x k) modulo p."""
    out = []
    for i in range(n):
        ro = i * m
        for j in range(k):
            s = 0
            for t in range(m):
                s += a[ro + t] * b[t * k + j]
            out.append(s % p)
    return tuple(out)


def product_pairs_mod(elems: List[IntMat], n: int, p: int) -> Set[IntMat]:
    """{A·B : A, B in elems} for square n x n matrices."""
    out: Set[IntMat] = set()
    rng = range(n)
    for a in elems:
        for b in elems:
            prod = []
            for i in rng:
                ro = i * n
                for j in rng:
                    s = 0
                    for t in rng:
                        s += a[ro + t] * b[t * n + j]
                    prod.append(s % p)
            out.add(tuple(prod))
    return out


def closure_mod(gens: List[IntMat], n: int, p: int,
                ceiling: int) -> Optional[Tuple[Dict[IntMat, Tuple[Optional[IntMat], int]], int]]:
    """Multiplicative closure of the generators by breadth-first saturation.

    Returns (parents, rounds) where parents maps each element to
    (predecessor, generator index); generators map to (None, index).
    Returns None when the element count would exceed the ceiling.
    """
    parents: Dict[IntMat, Tuple[Optional[IntMat], int]] = {}
    frontier: List[IntMat] = []
    for idx, g in enumerate(gens):
        if g not in parents:
            parents[g] = (None, idx)
            frontier.append(g)
    rounds = 0
    while frontier:
        rounds += 1
        nxt: List[IntMat] = []
        for cur in frontier:
            for idx, g in enumerate(gens):
                prod = mat_mul_mod(cur, g, n, n, n, p)
                if prod not in parents:
                    parents[prod] = (cur, idx)
                    nxt.append(prod)
                    if len(parents) > ceiling:
                        return None
        frontier = nxt
    return parents, rounds


def rank_mod(entries: IntMat, rows: int, cols: int, p: int) -> int:
    """Rank over GF(p) by Gaussian elimination."""
    mat = [list(entries[i * cols:(i + 1) * cols]) for i in range(rows)]
    r = 0
    for c in range(cols):
        pr = None
        for i in range(r, rows):
            if mat[i][c] % p:
                pr = i
                break
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        inv = pow(mat[r][c], p - 2, p)
        row_r = mat[r]
        for j in range(c, cols):
            row_r[j] = row_r[j] * inv % p
        for i in range(r + 1, rows):
            f = mat[i][c] % p
            if f:
                row_i = mat[i]
                for j in range(c, cols):
                    row_i[j] = (row_i[j] - f * row_r[j]) % p
        r += 1
        if r == rows:
            break
    return r

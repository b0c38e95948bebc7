# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of _kernels_py; same signatures, C inner loops.

Matrix size is capped at 8x8 (the package works with small n), which lets
the hot paths run on stack buffers.
"""

from libc.string cimport memcpy

DEF MAXN = 8
DEF MAXLEN = 64


cdef inline void _unpack(tuple t, long* buf, int length):
    cdef int i
    for i in range(length):
        buf[i] = t[i]


cdef inline tuple _pack(long* buf, int length):
    cdef int i
    return tuple([buf[i] for i in range(length)])


def mat_mul_mod(tuple a, tuple b, int n, int m, int k, int p):
    """(n x m) times (m x k) modulo p."""
    cdef long abuf[MAXLEN]
    cdef long bbuf[MAXLEN]
    cdef long obuf[MAXLEN]
    cdef int i, j, t
    cdef long s
    if n > MAXN or m > MAXN or k > MAXN:
        raise ValueError("matrix too large for compiled kernel")
    _unpack(a, abuf, n * m)
    _unpack(b, bbuf, m * k)
    for i in range(n):
        for j in range(k):
            s = 0
            for t in range(m):
                s += abuf[i * m + t] * bbuf[t * k + j]
            obuf[i * k + j] = s % p
    return _pack(obuf, n * k)


def product_pairs_mod(list elems, int n, int p):
    """{A·B : A, B in elems} for square n x n matrices."""
    cdef int count = len(elems)
    cdef int nn = n * n
    cdef int i, j, t, ia, ib
    cdef long s
    cdef long prod[MAXLEN]
    if n > MAXN:
        raise ValueError("matrix too large for compiled kernel")
    import array
    arr = array.array('l')
    for e in elems:
        arr.extend(e)
    cdef long[::1] data = arr
    out = set()
    for ia in range(count):
        for ib in range(count):
            for i in range(n):
                for j in range(n):
                    s = 0
                    for t in range(n):
                        s += data[ia * nn + i * n + t] * data[ib * nn + t * n + j]
                    prod[i * n + j] = s % p
            out.add(_pack(prod, nn))
    return out


def closure_mod(list gens, int n, int p, long ceiling):
    """BFS closure; returns (parents, rounds) or None past the ceiling."""
    cdef int nn = n * n
    cdef int i, j, t, idx
    cdef long s
    cdef long cur[MAXLEN]
    cdef long prod[MAXLEN]
    if n > MAXN:
        raise ValueError("matrix too large for compiled kernel")
    import array
    arr = array.array('l')
    for g in gens:
        arr.extend(g)
    cdef long[::1] gdata = arr
    cdef int ngens = len(gens)
    parents = {}
    frontier = []
    for idx in range(ngens):
        g = gens[idx]
        if g not in parents:
            parents[g] = (None, idx)
            frontier.append(g)
    cdef int rounds = 0
    cdef tuple telem
    while frontier:
        rounds += 1
        nxt = []
        for telem in frontier:
            _unpack(telem, cur, nn)
            for idx in range(ngens):
                for i in range(n):
                    for j in range(n):
                        s = 0
                        for t in range(n):
                            s += cur[i * n + t] * gdata[idx * nn + t * n + j]
                        prod[i * n + j] = s % p
                key = _pack(prod, nn)
                if key not in parents:
                    parents[key] = (telem, idx)
                    nxt.append(key)
                    if len(parents) > ceiling:
                        return None
        frontier = nxt
    return parents, rounds


def rank_mod(tuple entries, int rows, int cols, int p):
    """Rank over GF(p) by Gaussian elimination."""
    cdef long mat[MAXLEN]
    cdef int r, c, i, j, pr
    cdef long f, inv, e
    if rows > MAXN or cols > MAXN:
        raise ValueError("matrix too large for compiled kernel")
    _unpack(entries, mat, rows * cols)
    r = 0
    for c in range(cols):
        pr = -1
        for i in range(r, rows):
            if mat[i * cols + c] % p != 0:
                pr = i
                break
        if pr < 0:
            continue
        if pr != r:
            for j in range(cols):
                f = mat[r * cols + j]
                mat[r * cols + j] = mat[pr * cols + j]
                mat[pr * cols + j] = f
        inv = 1
        e = mat[r * cols + c] % p
        for i in range(p - 2):
            inv = inv * e % p
        for j in range(c, cols):
            mat[r * cols + j] = mat[r * cols + j] * inv % p
        for i in range(r + 1, rows):
            f = mat[i * cols + c] % p
            if f != 0:
                for j in range(c, cols):
                    mat[i * cols + j] = (mat[i * cols + j] - f * mat[r * cols + j]) % p
                    if mat[i * cols + j] < 0:
                        mat[i * cols + j] += p
        r += 1
        if r == rows:
            break
    return r

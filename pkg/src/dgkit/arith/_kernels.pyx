# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled row reduction over F_p (p < 2**31)."""
from libc.stdlib cimport malloc, free


cdef long long _inv(long long a, long long p):
    cdef long long r = 1, e = p - 2
    a %= p
    while e > 0:
        if e & 1:
            r = (r * a) % p
        a = (a * a) % p
        e >>= 1
    return r


def rref_modp(rows, Py_ssize_t ncols, long long p):
    """Same contract as the pure-Python ``rref_modp``."""
    cdef Py_ssize_t nrows = len(rows)
    cdef Py_ssize_t i, j, c, r = 0, piv
    cdef long long f, inv, t
    if p >= 2147483648:
        raise OverflowError("modulus too large for the compiled kernel")
    cdef long long *m = <long long *> malloc(max(nrows * ncols, 1) * sizeof(long long))
    if m == NULL:
        raise MemoryError()
    pivots = []
    try:
        for i in range(nrows):
            row = rows[i]
            for j in range(ncols):
                t = row[j] % p
                m[i * ncols + j] = t
        for c in range(ncols):
            if r == nrows:
                break
            piv = -1
            for i in range(r, nrows):
                if m[i * ncols + c] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for j in range(ncols):
                    t = m[r * ncols + j]
                    m[r * ncols + j] = m[piv * ncols + j]
                    m[piv * ncols + j] = t
            inv = _inv(m[r * ncols + c], p)
            for j in range(ncols):
                m[r * ncols + j] = (m[r * ncols + j] * inv) % p
            for i in range(nrows):
                if i != r:
                    f = m[i * ncols + c]
                    if f != 0:
                        for j in range(c, ncols):
                            t = (m[i * ncols + j] - f * m[r * ncols + j]) % p
                            if t < 0:
                                t += p
                            m[i * ncols + j] = t
            pivots.append(c)
            r += 1
        out = [[m[i * ncols + j] for j in range(ncols)] for i in range(r)]
    finally:
        free(m)
    return out, pivots

# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled matrix-group hot loops; same contract as _pykernels."""

from libc.stdlib cimport malloc, free

cdef enum:
    MAXNN = 64


cdef inline void _decode(long long code, int nn, long long q, int* out) nogil:
    cdef int i
    for i in range(nn - 1, -1, -1):
        out[i] = <int>(code % q)
        code //= q


cdef inline long long _encode(const int* e, int nn, long long q) nogil:
    cdef long long code = 0
    cdef int i
    for i in range(nn):
        code = code * q + e[i]
    return code


cdef inline void _product(const int* a, const int* b, int n, int q,
                          const int* addt, const int* mult, int* out) nogil:
    cdef int i, j, k, acc
    for i in range(n):
        for j in range(n):
            acc = 0
            for k in range(n):
                acc = addt[acc * q + mult[a[i * n + k] * q + b[k * n + j]]]
            out[i * n + j] = acc


cdef inline long long _canonical(const int* c, int nn, int q, const int* mult,
                                 const int* scalars, int nscal) nogil:
    cdef long long best = _encode(c, nn, q)
    cdef long long code
    cdef int s, i, sv
    for s in range(nscal):
        sv = scalars[s]
        if sv == 1:
            continue
        code = 0
        for i in range(nn):
            code = code * q + mult[sv * q + c[i]]
        if code < best:
            best = code
    return best


cdef int* _int_buffer(seq) except NULL:
    cdef int n = len(seq)
    cdef int* buf = <int*>malloc(max(n, 1) * sizeof(int))
    if buf == NULL:
        raise MemoryError()
    for i in range(n):
        buf[i] = seq[i]
    return buf


def mul_canon(long long a, long long b, int n, int q, addt, mult, scalars):
    cdef int nn = n * n
    cdef int A[MAXNN]
    cdef int B[MAXNN]
    cdef int C[MAXNN]
    cdef int* at = _int_buffer(addt)
    cdef int* mt = _int_buffer(mult)
    cdef int* sc = _int_buffer(scalars)
    cdef long long out
    try:
        _decode(a, nn, q, A)
        _decode(b, nn, q, B)
        _product(A, B, n, q, at, mt, C)
        out = _canonical(C, nn, q, mt, sc, len(scalars))
    finally:
        free(at)
        free(mt)
        free(sc)
    return out


def cayley_bfs(gens, long long identity, int n, int q, addt, mult, scalars, long long budget):
    cdef int nn = n * n
    cdef int ngen = len(gens)
    cdef int* at = _int_buffer(addt)
    cdef int* mt = _int_buffer(mult)
    cdef int* sc = _int_buffer(scalars)
    cdef int nscal = len(scalars)
    cdef int* G = <int*>malloc(max(ngen, 1) * nn * sizeof(int))
    cdef int A[MAXNN]
    cdef int C[MAXNN]
    cdef long long h, head = 0
    cdef int i
    cdef dict index = {identity: 0}
    cdef list elems = [identity]
    cdef list nbr = []
    cdef list parent = [-1]
    cdef list pgen = [-1]
    try:
        for i in range(ngen):
            _decode(gens[i], nn, q, G + i * nn)
        while head < len(elems):
            _decode(elems[head], nn, q, A)
            for i in range(ngen):
                _product(A, G + i * nn, n, q, at, mt, C)
                h = _canonical(C, nn, q, mt, sc, nscal)
                j = index.get(h)
                if j is None:
                    j = len(elems)
                    if j >= budget:
                        return None
                    index[h] = j
                    elems.append(h)
                    parent.append(head)
                    pgen.append(i)
                nbr.append(j)
            head += 1
    finally:
        free(at)
        free(mt)
        free(sc)
        free(G)
    return elems, nbr, parent, pgen

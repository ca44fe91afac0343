"""Compiled sweep kernels.

Same contracts as apnlab._kernels_py (which is the readable reference);
see its docstrings for array layouts and range semantics.
"""

from libc.string cimport memset

import numpy as np

cimport numpy as cnp

cnp.import_array()

BACKEND = "cython"


cdef inline unsigned int _clmulmod(unsigned int a, unsigned int b,
                                   unsigned int modulus, unsigned int hi) noexcept nogil:
    cdef unsigned int r = 0
    while b:
        if b & 1u:
            r ^= a
        b >>= 1
        a <<= 1
        if a & hi:
            a ^= modulus
    return r


def build_exp_table(int n, unsigned int modulus, unsigned int generator):
    cdef long long size = (1ll << n) - 1
    out = np.empty(size, dtype=np.uint32)
    cdef unsigned int[::1] exp = out
    cdef unsigned int hi = 1u << n
    cdef unsigned int v = 1
    cdef long long i
    exp[0] = 1
    with nogil:
        for i in range(1, size):
            v = _clmulmod(v, generator, modulus, hi)
            exp[i] = v
    return out


def delta_max(lut_arr, long a_start=1, a_stop=None, long abort_above=0):
    lut_arr = np.ascontiguousarray(lut_arr, dtype=np.uint32)
    cdef const unsigned int[::1] lut = lut_arr
    cdef long size = lut.shape[0]
    cdef long stop = size if a_stop is None else <long> a_stop
    row_arr = np.zeros(size, dtype=np.int32)
    cdef int[::1] row = row_arr
    cdef long a, x, best = 0, mx
    cdef int c
    with nogil:
        for a in range(a_start, stop):
            mx = 0
            for x in range(size):
                c = row[lut[x] ^ lut[x ^ a]] + 1
                row[lut[x] ^ lut[x ^ a]] = c
                if c > mx:
                    mx = c
            memset(&row[0], 0, size * sizeof(int))
            if mx > best:
                best = mx
                if abort_above and best > abort_above:
                    break
    return int(best)


cdef void _fwht(int* f, long size) noexcept nogil:
    cdef long h = 1, i, j
    cdef int a, b
    while h < size:
        i = 0
        while i < size:
            for j in range(i, i + h):
                a = f[j]
                b = f[j + h]
                f[j] = a + b
                f[j + h] = a - b
            i += 2 * h
        h *= 2


cdef void _signs(const unsigned int[::1] lut, const unsigned int[::1] exp2,
                 const long long[::1] logt, const unsigned char[::1] tr1,
                 long a, int* buf, long size) noexcept nogil:
    cdef long x
    cdef long long la = logt[a]
    cdef unsigned int y, v
    for x in range(size):
        y = lut[x]
        v = 0 if y == 0 else exp2[la + logt[y]]
        buf[x] = 1 - 2 * tr1[v]


def walsh_value_counts(lut_arr, exp2_arr, log_arr, tr1_arr,
                       long a_start=1, a_stop=None):
    lut_arr = np.ascontiguousarray(lut_arr, dtype=np.uint32)
    cdef const unsigned int[::1] lut = lut_arr
    cdef const unsigned int[::1] exp2 = np.ascontiguousarray(exp2_arr, dtype=np.uint32)
    cdef const long long[::1] logt = np.ascontiguousarray(log_arr, dtype=np.int64)
    cdef const unsigned char[::1] tr1 = np.ascontiguousarray(tr1_arr, dtype=np.uint8)
    cdef long size = lut.shape[0]
    cdef long stop = size if a_stop is None else <long> a_stop
    counts_arr = np.zeros(2 * size + 1, dtype=np.int64)
    cdef long long[::1] counts = counts_arr
    buf_arr = np.empty(size, dtype=np.int32)
    cdef int[::1] buf = buf_arr
    cdef long a, x
    with nogil:
        for a in range(a_start, stop):
            _signs(lut, exp2, logt, tr1, a, &buf[0], size)
            _fwht(&buf[0], size)
            for x in range(size):
                counts[buf[x] + size] += 1
    return counts_arr


def bent_component_mask(lut_arr, exp2_arr, log_arr, tr1_arr, long target,
                        long a_start=1, a_stop=None):
    lut_arr = np.ascontiguousarray(lut_arr, dtype=np.uint32)
    cdef const unsigned int[::1] lut = lut_arr
    cdef const unsigned int[::1] exp2 = np.ascontiguousarray(exp2_arr, dtype=np.uint32)
    cdef const long long[::1] logt = np.ascontiguousarray(log_arr, dtype=np.int64)
    cdef const unsigned char[::1] tr1 = np.ascontiguousarray(tr1_arr, dtype=np.uint8)
    cdef long size = lut.shape[0]
    cdef long stop = size if a_stop is None else <long> a_stop
    mask_arr = np.zeros(size, dtype=bool)
    cdef unsigned char[::1] mask = mask_arr.view(np.uint8)
    buf_arr = np.empty(size, dtype=np.int32)
    cdef int[::1] buf = buf_arr
    cdef long a, x
    cdef int ok
    with nogil:
        for a in range(a_start, stop):
            _signs(lut, exp2, logt, tr1, a, &buf[0], size)
            _fwht(&buf[0], size)
            ok = 1
            for x in range(size):
                if buf[x] != target and buf[x] != -target:
                    ok = 0
                    break
            mask[a] = ok
    return mask_arr

# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled scan kernels; behavioural twin of qrlab._pykernels.

Each entry point takes Python ints and dispatches to a C fast path when the
operands fit machine words, otherwise defers to the pure implementation.
"""

from qrlab import _pykernels as _py

BACKEND = "c"

_LIMIT31 = 1 << 31
_LIMIT62 = 1 << 62


cdef long long _gauss_flips(long long a, long long p):
    cdef long long h = (p - 1) // 2
    cdef long long n = 0, x
    for x in range(1, h + 1):
        if (a * x) % p > h:
            n += 1
    return n


def gauss_flip_count(a, p):
    if 0 < p < _LIMIT31:
        return _gauss_flips(a % p, p)
    return _py.gauss_flip_count(a, p)


cdef void _lattice(long long p, long long q, long long* mn):
    cdef long long pp = (p - 1) // 2
    cdef long long qq = (q - 1) // 2
    cdef long long x, y, t, qx
    mn[0] = 0
    mn[1] = 0
    for x in range(1, pp + 1):
        qx = q * x
        for y in range(1, qq + 1):
            t = qx - p * y
            if -pp <= t <= -1:
                mn[0] += 1
            elif 1 <= t <= qq:
                mn[1] += 1


def lattice_band_counts(p, q):
    cdef long long mn[2]
    if 0 < p < _LIMIT31 and 0 < q < _LIMIT31:
        _lattice(p, q, mn)
        return mn[0], mn[1]
    return _py.lattice_band_counts(p, q)


def trial_factor_range(n, lo, hi):
    cdef long long m, c, e
    if not (0 < n < _LIMIT62 and 0 <= lo and hi < _LIMIT31):
        return _py.trial_factor_range(n, lo, hi)
    m = n
    out = []
    for small in (2, 3):
        c = small
        if lo < c <= hi and m % c == 0:
            e = 0
            while m % c == 0:
                m //= c
                e += 1
            out.append((c, e))
    c = 5 if lo < 5 else (lo // 6) * 6 - 1
    while c <= lo:
        c += 2 if c % 6 == 5 else 4
    while c <= hi and c * c <= m:
        if m % c == 0:
            e = 0
            while m % c == 0:
                m //= c
                e += 1
            out.append((c, e))
        c += 2 if c % 6 == 5 else 4
    return out, m

# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled wedge/differential kernels; same contract as ``_kernels_py``.

Masks must fit in 64 bits (complex dimension n <= 32); callers fall back to
the pure-Python kernels otherwise.
"""

from libc.stdint cimport uint64_t


cdef extern from * nogil:
    int popcount64 "__builtin_popcountll"(unsigned long long)
    int ctz64 "__builtin_ctzll"(unsigned long long)


cdef inline int _parity(uint64_t m1, uint64_t m2) nogil:
    cdef int parity = 0
    cdef uint64_t low
    cdef int b
    while m2:
        low = m2 & (~m2 + 1)
        b = ctz64(low)
        if b < 63:
            parity += popcount64(m1 >> (b + 1))
        m2 ^= low
    return parity & 1


def mask_sign(m1, m2):
    return -1 if _parity(<uint64_t>m1, <uint64_t>m2) else 1


def wedge_terms(dict t1, dict t2):
    cdef dict out = {}
    cdef uint64_t a, b, m
    for k1, c1 in t1.items():
        a = <uint64_t>k1
        for k2, c2 in t2.items():
            b = <uint64_t>k2
            if a & b:
                continue
            v = c1 * c2
            if _parity(a, b):
                v = -v
            m = a | b
            key = m
            old = out.get(key)
            if old is None:
                out[key] = v
            else:
                out[key] = old + v
    return {k: v for k, v in out.items() if v}


def differential_terms(dict terms, list gens):
    cdef dict out = {}
    cdef uint64_t m, bits, low, rest, gm
    cdef int rank, b, flip
    cdef object g
    for key, c in terms.items():
        m = <uint64_t>key
        rank = 0
        bits = m
        while bits:
            low = bits & (~bits + 1)
            b = ctz64(low)
            bits ^= low
            g = gens[b]
            if g:
                rest = m ^ low
                for gk, gc in (<dict>g).items():
                    gm = <uint64_t>gk
                    if gm & rest:
                        continue
                    v = c * gc
                    flip = _parity(gm, rest) ^ (rank & 1)
                    if flip:
                        v = -v
                    nk = gm | rest
                    old = out.get(nk)
                    if old is None:
                        out[nk] = v
                    else:
                        out[nk] = old + v
            rank += 1
    return {k: v for k, v in out.items() if v}

# cython: language_level=3, boundscheck=False, wraparound=False
# distutils: language = c++
"""Compiled evidence kernels; same contract and accumulation order as _pykernels."""

from libc.stdint cimport uint64_t
from libcpp.vector cimport vector


cdef void _load(object bits, object vals, vector[uint64_t]& b, vector[double]& v) except *:
    cdef Py_ssize_t n = len(bits)
    if len(vals) != n:
        raise ValueError("bits and values differ in length")
    b.reserve(n)
    v.reserve(n)
    for x in bits:
        b.push_back(<uint64_t>x)
    for y in vals:
        v.push_back(<double>y)


cdef inline size_t _slot(uint64_t key, int shift) nogil:
    # Fibonacci hashing: the top bits of key * 2^64/phi
    return <size_t>((key * <uint64_t>0x9E3779B97F4A7C15ULL) >> shift)


cdef void _rehash(vector[size_t]& table, const vector[uint64_t]& keys, int shift) nogil:
    cdef size_t mask = table.size() - 1, s, i
    for i in range(keys.size()):
        s = _slot(keys[i], shift)
        while table[s] != 0:
            s = (s + 1) & mask
        table[s] = i + 1


def conjunctive(bits1, vals1, bits2, vals2):
    cdef vector[uint64_t] b1, b2, seen
    cdef vector[double] v1, v2, sums
    # open addressing: table[s] is 1 + position of the key in `seen`, 0 if free
    cdef vector[size_t] table
    cdef size_t i, j, s, mask, pos
    cdef uint64_t c
    cdef double p, k = 0.0
    cdef int shift = 64 - 6
    _load(bits1, vals1, b1, v1)
    _load(bits2, vals2, b2, v2)
    with nogil:
        table.resize(<size_t>1 << (64 - shift), 0)
        mask = table.size() - 1
        for i in range(b1.size()):
            for j in range(b2.size()):
                c = b1[i] & b2[j]
                p = v1[i] * v2[j]
                if not c:
                    k += p
                    continue
                s = _slot(c, shift)
                while True:
                    pos = table[s]
                    if pos == 0:
                        table[s] = seen.size() + 1
                        seen.push_back(c)
                        sums.push_back(p)
                        if 2 * seen.size() > table.size():
                            shift -= 1
                            table.assign(table.size() * 2, 0)
                            mask = table.size() - 1
                            _rehash(table, seen, shift)
                        break
                    if seen[pos - 1] == c:
                        sums[pos - 1] += p
                        break
                    s = (s + 1) & mask
    out = {}
    for i in range(seen.size()):
        out[seen[i]] = sums[i]
    return out, k


def conflict(bits1, vals1, bits2, vals2):
    cdef vector[uint64_t] b1, b2
    cdef vector[double] v1, v2
    cdef size_t i, j
    cdef double k = 0.0
    _load(bits1, vals1, b1, v1)
    _load(bits2, vals2, b2, v2)
    with nogil:
        for i in range(b1.size()):
            for j in range(b2.size()):
                if not (b1[i] & b2[j]):
                    k += v1[i] * v2[j]
    return k


def belief(bits, vals, target):
    cdef vector[uint64_t] b
    cdef vector[double] v
    cdef uint64_t t = <uint64_t>target
    cdef size_t i
    cdef double total = 0.0
    _load(bits, vals, b, v)
    for i in range(b.size()):
        if b[i] & ~t == 0:
            total += v[i]
    return total


def plausibility(bits, vals, target):
    cdef vector[uint64_t] b
    cdef vector[double] v
    cdef uint64_t t = <uint64_t>target
    cdef size_t i
    cdef double total = 0.0
    _load(bits, vals, b, v)
    for i in range(b.size()):
        if b[i] & t:
            total += v[i]
    return total

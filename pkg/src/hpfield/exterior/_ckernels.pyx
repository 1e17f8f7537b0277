# distutils: language = c++
# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled blade kernels; same contract as ``_pykernels``."""

from libcpp.vector cimport vector
from libcpp.pair cimport pair
from libcpp.algorithm cimport sort

ctypedef unsigned long long u64

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil


cdef inline double _merge_sign(u64 a, u64 b) noexcept nogil:
    cdef int swaps = 0
    cdef int j
    while b:
        j = __builtin_ctzll(b)
        swaps += __builtin_popcountll(a >> (j + 1))
        b &= b - 1
    return -1.0 if swaps & 1 else 1.0


cdef void _unpack(dict d, vector[u64]& keys, vector[double]& vals):
    keys.reserve(len(d))
    vals.reserve(len(d))
    for k, v in d.items():
        keys.push_back(<u64>k)
        vals.push_back(<double>v)


cdef dict _collect(vector[pair[u64, size_t]]& order, vector[double]& terms):
    # (key, insertion index) ordering reproduces the sequential dict accumulation
    sort(order.begin(), order.end())
    cdef dict out = {}
    cdef size_t i = 0
    cdef size_t n = order.size()
    cdef u64 key
    cdef double acc
    while i < n:
        key = order[i].first
        acc = 0.0
        while i < n and order[i].first == key:
            acc += terms[order[i].second]
            i += 1
        if acc != 0.0:
            out[key] = acc
    return out


def merge_sign(a, b):
    return _merge_sign(<u64>a, <u64>b)


def wedge_terms(dict a, dict b):
    cdef vector[u64] ka, kb
    cdef vector[double] ca, cb
    _unpack(a, ka, ca)
    _unpack(b, kb, cb)
    cdef vector[pair[u64, size_t]] order
    cdef vector[double] terms
    cdef size_t i, j
    cdef u64 ma, mb
    with nogil:
        for i in range(ka.size()):
            ma = ka[i]
            for j in range(kb.size()):
                mb = kb[j]
                if ma & mb:
                    continue
                order.push_back(pair[u64, size_t](ma | mb, terms.size()))
                terms.push_back(_merge_sign(ma, mb) * ca[i] * cb[j])
    return _collect(order, terms)


def contract_terms(dict small, dict big):
    cdef vector[u64] ks, kb
    cdef vector[double] cs, cb
    _unpack(small, ks, cs)
    _unpack(big, kb, cb)
    cdef vector[pair[u64, size_t]] order
    cdef vector[double] terms
    cdef size_t i, j
    cdef u64 mi, mj, rest
    with nogil:
        for i in range(ks.size()):
            mi = ks[i]
            for j in range(kb.size()):
                mj = kb[j]
                if mi & ~mj:
                    continue
                rest = mj ^ mi
                order.push_back(pair[u64, size_t](rest, terms.size()))
                terms.push_back(_merge_sign(mi, rest) * cs[i] * cb[j])
    return _collect(order, terms)


def pair_terms(dict a, dict b):
    cdef double total = 0.0
    if len(a) > len(b):
        a, b = b, a
    for m, c in a.items():
        other = b.get(m)
        if other is not None:
            total += <double>c * <double>other
    return total

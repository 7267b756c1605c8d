# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Popcount kernel for bulk Tanimoto mining over packed uint64 rows.

Expects rows already sorted by popcount (the `order` array, empty
fingerprints excluded); emits candidate pairs with original indices.
Results are bit-identical to the pure-Python path: both compute
intersection/union as exact integers and divide once in double precision.
"""


cdef extern from *:
    """
    #if defined(_MSC_VER)
    #include <intrin.h>
    #define MOLFORGE_POPCNT64(x) ((unsigned long long)__popcnt64(x))
    #else
    #define MOLFORGE_POPCNT64(x) ((unsigned long long)__builtin_popcountll(x))
    #endif
    """
    unsigned long long MOLFORGE_POPCNT64(unsigned long long x) nogil


def similar_pairs(const unsigned long long[:, ::1] words,
                  const long long[::1] pops,
                  const long long[::1] order,
                  double threshold):
    cdef Py_ssize_t n = order.shape[0]
    cdef Py_ssize_t nwords = words.shape[1]
    cdef Py_ssize_t a, b, w
    cdef long long i, j, lo, hi
    cdef long long pa, pb, uni
    cdef unsigned long long inter
    cdef double sim
    out = []
    for a in range(n):
        i = order[a]
        pa = pops[i]
        for b in range(a + 1, n):
            j = order[b]
            pb = pops[j]
            if (<double> pa) / (<double> pb) <= threshold:
                break
            inter = 0
            for w in range(nwords):
                inter += MOLFORGE_POPCNT64(words[i, w] & words[j, w])
            uni = pa + pb - <long long> inter
            sim = (<double> inter) / (<double> uni)
            if sim > threshold:
                if i < j:
                    lo, hi = i, j
                else:
                    lo, hi = j, i
                out.append((lo, hi, sim))
    return out

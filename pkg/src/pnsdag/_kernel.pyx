# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled minimal-witness kernels.

Same contract as ``_kernel_py.min_witness``: the first candidate subset in
(cardinality, lexicographic) order that forces the target.

``min_witness_table`` evaluates the graph on 64 subsets per machine word,
walking the 2**m subset space one word at a time. ``min_witness_enum``
enumerates subsets in order with early exit.
"""

from libc.stdint cimport uint64_t
from libc.stdlib cimport free, malloc

cdef extern from * nogil:
    int __builtin_popcountll(unsigned long long)

# subsets of size <= this go through the word-parallel table
TABLE_MAX_LEAVES = 34

# bit k of LOW[i] is bit i of k, for the six in-word index bits
cdef uint64_t[6] LOW = [
    0xAAAAAAAAAAAAAAAAULL, 0xCCCCCCCCCCCCCCCCULL, 0xF0F0F0F0F0F0F0F0ULL,
    0xFF00FF00FF00FF00ULL, 0xFFFF0000FFFF0000ULL, 0xFFFFFFFF00000000ULL,
]


cdef int* _as_c_ints(object seq) except NULL:
    cdef Py_ssize_t i, n = len(seq)
    cdef int* out = <int*> malloc((n + 1) * sizeof(int))
    if out == NULL:
        raise MemoryError()
    for i in range(n):
        out[i] = seq[i]
    return out


cdef inline bint _lex_before(uint64_t a, uint64_t b) nogil:
    # a precedes b iff a holds the lowest index where they differ
    cdef uint64_t diff = a ^ b
    return (a & (diff & (~diff + 1))) != 0


def min_witness_table(ops, args, offsets, kids, int m, bint disproof):
    if m > TABLE_MAX_LEAVES:
        raise ValueError(f"table kernel supports at most {TABLE_MAX_LEAVES} leaves")
    cdef int n = len(ops)
    cdef int* c_ops = _as_c_ints(ops)
    cdef int* c_args = _as_c_ints(args)
    cdef int* c_offsets = _as_c_ints(offsets)
    cdef int* c_kids = _as_c_ints(kids)
    cdef uint64_t* vals = <uint64_t*> malloc((n + 1) * sizeof(uint64_t))
    cdef uint64_t[7] by_count
    cdef uint64_t valid, good, word, acc, bits, b, k
    cdef uint64_t wi, n_words, best_k = 0
    cdef int i, j, op, arg, size, best_size = -1, high
    try:
        if vals == NULL:
            raise MemoryError()
        for j in range(7):
            by_count[j] = 0
        for i in range(64):
            by_count[__builtin_popcountll(i)] |= (<uint64_t> 1) << i
        if m >= 6:
            valid = ~(<uint64_t> 0)
            n_words = (<uint64_t> 1) << (m - 6)
        else:
            valid = ((<uint64_t> 1) << (1 << m)) - 1
            n_words = 1
        with nogil:
            for wi in range(n_words):
                high = __builtin_popcountll(wi)
                if best_size >= 0 and high > best_size:
                    continue
                for i in range(n):
                    op = c_ops[i]
                    if op == 0:
                        arg = c_args[i]
                        if arg < 6:
                            word = LOW[arg]
                        elif (wi >> (arg - 6)) & 1:
                            word = ~(<uint64_t> 0)
                        else:
                            word = 0
                        vals[i] = ~word if disproof else word
                    elif op == 1:
                        vals[i] = ~(<uint64_t> 0)
                    elif op == 2:
                        vals[i] = 0
                    elif op == 3:
                        acc = 0
                        for j in range(c_offsets[i], c_offsets[i + 1]):
                            acc |= vals[c_kids[j]]
                        vals[i] = acc
                    else:
                        acc = ~(<uint64_t> 0)
                        for j in range(c_offsets[i], c_offsets[i + 1]):
                            acc &= vals[c_kids[j]]
                        vals[i] = acc
                good = (~vals[n - 1] if disproof else vals[n - 1]) & valid
                if good == 0:
                    continue
                for j in range(7):
                    bits = good & by_count[j]
                    if bits:
                        break
                size = high + j
                if best_size >= 0 and size > best_size:
                    continue
                while bits:
                    b = bits & (~bits + 1)
                    bits ^= b
                    k = (wi << 6) | <uint64_t> __builtin_popcountll(b - 1)
                    if best_size < 0 or size < best_size or _lex_before(k, best_k):
                        best_size = size
                        best_k = k
        if best_size < 0:
            return -1, None
        return best_size, tuple([i for i in range(m) if (best_k >> i) & 1])
    finally:
        free(c_ops)
        free(c_args)
        free(c_offsets)
        free(c_kids)
        free(vals)


cdef inline bint _evaluate(int n, const int* ops, const int* args, const int* offsets,
                           const int* kids, const char* chosen, bint disproof,
                           char* vals) nogil:
    cdef int i, k, op
    cdef char v
    for i in range(n):
        op = ops[i]
        if op == 0:
            vals[i] = chosen[args[i]] != disproof
        elif op == 1:
            vals[i] = 1
        elif op == 2:
            vals[i] = 0
        elif op == 3:
            v = 0
            for k in range(offsets[i], offsets[i + 1]):
                if vals[kids[k]]:
                    v = 1
                    break
            vals[i] = v
        else:
            v = 1
            for k in range(offsets[i], offsets[i + 1]):
                if not vals[kids[k]]:
                    v = 0
                    break
            vals[i] = v
    return vals[n - 1] != disproof


def min_witness_enum(ops, args, offsets, kids, int m, bint disproof):
    cdef int n = len(ops)
    cdef int* c_ops = _as_c_ints(ops)
    cdef int* c_args = _as_c_ints(args)
    cdef int* c_offsets = _as_c_ints(offsets)
    cdef int* c_kids = _as_c_ints(kids)
    cdef char* chosen = <char*> malloc(m + 1)
    cdef char* vals = <char*> malloc(n + 1)
    cdef int* comb = <int*> malloc((m + 1) * sizeof(int))
    cdef int s, i, j, found = -1
    cdef bint ok
    try:
        if chosen == NULL or vals == NULL or comb == NULL:
            raise MemoryError()
        with nogil:
            for i in range(m):
                chosen[i] = 1
            ok = _evaluate(n, c_ops, c_args, c_offsets, c_kids, chosen, disproof, vals)
            if ok:
                for s in range(m + 1):
                    for i in range(s):
                        comb[i] = i
                    while True:
                        for i in range(m):
                            chosen[i] = 0
                        for i in range(s):
                            chosen[comb[i]] = 1
                        if _evaluate(n, c_ops, c_args, c_offsets, c_kids, chosen, disproof, vals):
                            found = s
                            break
                        # next combination in itertools order
                        i = s - 1
                        while i >= 0 and comb[i] == m - s + i:
                            i -= 1
                        if i < 0:
                            break
                        comb[i] += 1
                        for j in range(i + 1, s):
                            comb[j] = comb[j - 1] + 1
                    if found >= 0:
                        break
        if found < 0:
            return -1, None
        return found, tuple([comb[i] for i in range(found)])
    finally:
        free(c_ops)
        free(c_args)
        free(c_offsets)
        free(c_kids)
        free(chosen)
        free(vals)
        free(comb)


def min_witness(ops, args, offsets, kids, int m, bint disproof):
    if m <= TABLE_MAX_LEAVES:
        return min_witness_table(ops, args, offsets, kids, m, disproof)
    return min_witness_enum(ops, args, offsets, kids, m, disproof)

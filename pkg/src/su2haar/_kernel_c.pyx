# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernel: integer convolutions and constrained composition search.

Twin of _kernel_py; coefficient arithmetic stays on Python ints (arbitrary
precision), the win is removing interpreter overhead from the inner loops
and running the composition search on C integers.
"""

from cpython.list cimport PyList_GET_ITEM, PyList_GET_SIZE


def convolve(a, b):
    """Product of two dense integer coefficient vectors."""
    cdef list la = list(a)
    cdef list lb = list(b)
    cdef Py_ssize_t na = PyList_GET_SIZE(la)
    cdef Py_ssize_t nb = PyList_GET_SIZE(lb)
    if na == 0 or nb == 0:
        return []
    cdef list out = [0] * (na + nb - 1)
    cdef Py_ssize_t i, j
    cdef object ai, bj
    for i in range(na):
        ai = <object>PyList_GET_ITEM(la, i)
        if not ai:
            continue
        for j in range(nb):
            bj = <object>PyList_GET_ITEM(lb, j)
            if bj:
                out[i + j] = out[i + j] + ai * bj
    return out


def vec_pow(v, p):
    """p-th convolution power of v (p = 0 gives the unit [1])."""
    cdef long long e = p
    if e < 0:
        raise ValueError("negative power")
    result = [1]
    base = list(v)
    while e:
        if e & 1:
            result = convolve(result, base)
        e >>= 1
        if e:
            base = convolve(base, base)
    return result


def balanced_compositions(ms2, ns2, total, tm2, tn2):
    """All alpha in N^k with sum(alpha) = total and prescribed weighted sums.

    Same contract as the pure twin: coordinates are twice-values, output in
    descending lexicographic order (alpha_1 largest first).
    """
    cdef int k = len(ms2)
    if k != len(ns2):
        raise ValueError("coordinate lists must have equal length")
    if k == 0:
        return [()] if (total == 0 and tm2 == 0 and tn2 == 0) else []
    if k > 64:
        raise ValueError("too many coordinates for the compiled kernel")

    cdef long long[64] cm, cn, mn_min, mn_max, nn_min, nn_max, alpha, rm_s, rn_s, bud_s
    cdef int i
    for i in range(k):
        cm[i] = ms2[i]
        cn[i] = ns2[i]
    mn_min[k - 1] = cm[k - 1]; mn_max[k - 1] = cm[k - 1]
    nn_min[k - 1] = cn[k - 1]; nn_max[k - 1] = cn[k - 1]
    for i in range(k - 2, -1, -1):
        mn_min[i] = cm[i] if cm[i] < mn_min[i + 1] else mn_min[i + 1]
        mn_max[i] = cm[i] if cm[i] > mn_max[i + 1] else mn_max[i + 1]
        nn_min[i] = cn[i] if cn[i] < nn_min[i + 1] else nn_min[i + 1]
        nn_max[i] = cn[i] if cn[i] > nn_max[i + 1] else nn_max[i + 1]

    cdef long long P = total
    cdef long long tm = tm2
    cdef long long tn = tn2
    out = []
    if not (P * mn_min[0] <= tm <= P * mn_max[0] and P * nn_min[0] <= tn <= P * nn_max[0]):
        return out

    # iterative DFS over alpha[0..k-1]; alpha[i] counts down from the budget
    # (descending lexicographic output); budget+1 marks an unvisited level
    cdef int depth = 0
    cdef long long a, rem, m_left, n_left, budget, rm, rn
    for i in range(k):
        alpha[i] = 0
    bud_s[0] = P
    rm_s[0] = tm
    rn_s[0] = tn
    alpha[0] = P + 1
    while depth >= 0:
        if depth == k - 1:
            budget = bud_s[depth]
            if budget * cm[depth] == rm_s[depth] and budget * cn[depth] == rn_s[depth]:
                alpha[depth] = budget
                out.append(tuple([alpha[i] for i in range(k)]))
            depth -= 1
            continue
        a = alpha[depth] - 1
        budget = bud_s[depth]
        rm = rm_s[depth]
        rn = rn_s[depth]
        while a >= 0:
            rem = budget - a
            m_left = rm - a * cm[depth]
            n_left = rn - a * cn[depth]
            if (rem * mn_min[depth + 1] <= m_left <= rem * mn_max[depth + 1]
                    and rem * nn_min[depth + 1] <= n_left <= rem * nn_max[depth + 1]):
                break
            a -= 1
        if a < 0:
            depth -= 1
            continue
        # rem, m_left, n_left correspond to the chosen a from the scan above
        alpha[depth] = a
        depth += 1
        bud_s[depth] = rem
        rm_s[depth] = m_left
        rn_s[depth] = n_left
        alpha[depth] = rem + 1
    return out

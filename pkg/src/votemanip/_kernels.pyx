# cython: boundscheck=False, wraparound=False, initializedcheck=False, language_level=3
"""Compiled implementations of the hot kernels (see _kernels_py for semantics).

Both backends consume the same pre-drawn uniforms and produce bit-identical
results; this one just runs the inner loops in C.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()

BACKEND = "compiled"


def rim_decode(object uniforms_in, object cumweights_in):
    cdef double[:, ::1] uniforms = np.ascontiguousarray(uniforms_in, dtype=np.float64)
    cdef double[:, ::1] cumweights = np.ascontiguousarray(cumweights_in, dtype=np.float64)
    cdef Py_ssize_t n_samples = uniforms.shape[0]
    cdef Py_ssize_t m = uniforms.shape[1] + 1
    out_arr = np.zeros((n_samples, m), dtype=np.int64)
    cdef cnp.int64_t[:, ::1] out = out_arr
    cdef Py_ssize_t s, t, p, q
    cdef double x
    for s in range(n_samples):
        for t in range(1, m):
            x = uniforms[s, t - 1] * cumweights[t - 1, t]
            p = 0
            while x >= cumweights[t - 1, p]:
                p += 1
            for q in range(t, p, -1):
                out[s, q] = out[s, q - 1]
            out[s, p] = t
    return out_arr


def positional_scores(object votes_in, object alpha_in):
    cdef cnp.int64_t[:, :, ::1] votes = np.ascontiguousarray(votes_in, dtype=np.int64)
    cdef cnp.int64_t[::1] alpha = np.ascontiguousarray(alpha_in, dtype=np.int64)
    cdef Py_ssize_t n_profiles = votes.shape[0]
    cdef Py_ssize_t n = votes.shape[1]
    cdef Py_ssize_t m = votes.shape[2]
    out_arr = np.zeros((n_profiles, m), dtype=np.int64)
    cdef cnp.int64_t[:, ::1] out = out_arr
    cdef Py_ssize_t p, v, k
    for p in range(n_profiles):
        for v in range(n):
            for k in range(m):
                out[p, votes[p, v, k]] += alpha[k]
    return out_arr


def psm_counts(object votes_in):
    cdef cnp.int64_t[:, ::1] votes = np.ascontiguousarray(votes_in, dtype=np.int64)
    cdef Py_ssize_t n = votes.shape[0]
    cdef Py_ssize_t m = votes.shape[1]
    out_arr = np.zeros((m, m), dtype=np.int64)
    cdef cnp.int64_t[:, ::1] out = out_arr
    cdef Py_ssize_t v, k
    for v in range(n):
        for k in range(m):
            out[votes[v, k], k] += 1
    return out_arr


def kendall_tau_block(object orders_in, object ref_ranks_in):
    cdef cnp.int64_t[:, ::1] orders = np.ascontiguousarray(orders_in, dtype=np.int64)
    cdef cnp.int64_t[::1] ref_ranks = np.ascontiguousarray(ref_ranks_in, dtype=np.int64)
    cdef Py_ssize_t n_samples = orders.shape[0]
    cdef Py_ssize_t m = orders.shape[1]
    out_arr = np.zeros(n_samples, dtype=np.int64)
    cdef cnp.int64_t[::1] out = out_arr
    seq_arr = np.empty(m, dtype=np.int64)
    cdef cnp.int64_t[::1] seq = seq_arr
    cdef Py_ssize_t s, k, l
    cdef cnp.int64_t count
    for s in range(n_samples):
        for k in range(m):
            seq[k] = ref_ranks[orders[s, k]]
        count = 0
        for k in range(m):
            for l in range(k + 1, m):
                if seq[k] > seq[l]:
                    count += 1
        out[s] = count
    return out_arr

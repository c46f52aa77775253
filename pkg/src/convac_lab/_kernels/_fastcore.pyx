# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot kernels: entropy reductions and factored forward evaluation."""

from libc.math cimport log

import numpy as np

cimport numpy as cnp

cnp.import_array()

NAME = "compiled"


def entropy_nats(const double[::1] pmf):
    """-sum(p log p) with the 0 log 0 = 0 convention."""
    cdef double acc = 0.0
    cdef double v
    cdef Py_ssize_t i
    for i in range(pmf.shape[0]):
        v = pmf[i]
        if v > 0.0:
            acc -= v * log(v)
    return acc


def row_entropies_nats(const double[:, ::1] rows):
    """Entropy of each row of a 2-D array, in nats."""
    cdef Py_ssize_t k = rows.shape[0]
    cdef Py_ssize_t n = rows.shape[1]
    out_arr = np.empty(k, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef double acc, v
    cdef Py_ssize_t i, j
    for i in range(k):
        acc = 0.0
        for j in range(n):
            v = rows[i, j]
            if v > 0.0:
                acc -= v * log(v)
        out[i] = acc
    return out_arr


def cp_forward_batch(const double[::1] top,
                     const double[:, :, ::1] site_mix,
                     const cnp.npy_intp[:, ::1] assignments):
    """Factored rank-Z mixture evaluation on a batch of assignments."""
    cdef Py_ssize_t n_batch = assignments.shape[0]
    cdef Py_ssize_t n_sites = assignments.shape[1]
    cdef Py_ssize_t n_terms = top.shape[0]
    out_arr = np.empty(n_batch, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef double acc, prod
    cdef Py_ssize_t b, i, z
    for b in range(n_batch):
        acc = 0.0
        for z in range(n_terms):
            prod = top[z]
            for i in range(n_sites):
                prod *= site_mix[i, z, assignments[b, i]]
            acc += prod
        out[b] = acc
    return out_arr


def ht_forward_batch(list levels,
                     const double[::1] top,
                     const double[:, :, ::1] bank,
                     const cnp.npy_intp[:, ::1] assignments):
    """Bottom-up tree evaluation on a batch of assignments."""
    cdef Py_ssize_t n_batch = assignments.shape[0]
    cdef Py_ssize_t n_sites = assignments.shape[1]
    cdef Py_ssize_t n_comp = bank.shape[1]
    cdef const double[:, :, ::1] mats
    cdef Py_ssize_t max_r = n_comp
    cdef Py_ssize_t l, i, b, g, a, nodes, r_out, r_in

    for l in range(len(levels)):
        mats = levels[l]
        if mats.shape[1] > max_r:
            max_r = mats.shape[1]

    cur_arr = np.zeros((n_sites, max_r, n_batch), dtype=np.float64)
    cdef double[:, :, ::1] cur = cur_arr
    cdef double[:, :, ::1] nxt
    cdef double left, right

    for i in range(n_sites):
        for g in range(n_comp):
            for b in range(n_batch):
                cur[i, g, b] = bank[i, g, assignments[b, i]]

    nodes = n_sites
    for l in range(len(levels)):
        mats = levels[l]
        r_out = mats.shape[1]
        r_in = mats.shape[2]
        nodes = nodes // 2
        nxt_arr = np.zeros((nodes, max_r, n_batch), dtype=np.float64)
        nxt = nxt_arr
        for i in range(nodes):
            for g in range(r_out):
                for b in range(n_batch):
                    left = 0.0
                    right = 0.0
                    for a in range(r_in):
                        left += mats[2 * i, g, a] * cur[2 * i, a, b]
                        right += mats[2 * i + 1, g, a] * cur[2 * i + 1, a, b]
                    nxt[i, g, b] = left * right
        cur = nxt

    out_arr = np.empty(n_batch, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef double acc
    for b in range(n_batch):
        acc = 0.0
        for g in range(top.shape[0]):
            acc += top[g] * cur[0, g, b]
        out[b] = acc
    return out_arr


def cp_rank_one_sum(const double[::1] top, const double[:, :, ::1] site_factors):
    """Flattened sum of weighted rank-1 outer products."""
    cdef Py_ssize_t n_modes = site_factors.shape[0]
    cdef Py_ssize_t n_terms = site_factors.shape[1]
    cdef Py_ssize_t dim = site_factors.shape[2]
    cdef Py_ssize_t total = 1
    cdef Py_ssize_t i, z, idx
    for i in range(n_modes):
        total *= dim
    out_arr = np.zeros(total, dtype=np.float64)
    cdef double[::1] out = out_arr
    digits_arr = np.zeros(n_modes, dtype=np.intp)
    cdef cnp.npy_intp[::1] digits = digits_arr
    cdef double prod
    for z in range(n_terms):
        for i in range(n_modes):
            digits[i] = 0
        for idx in range(total):
            prod = top[z]
            for i in range(n_modes):
                prod *= site_factors[i, z, digits[i]]
            out[idx] += prod
            # row-major odometer: last mode varies fastest
            i = n_modes - 1
            while i >= 0:
                digits[i] += 1
                if digits[i] < dim:
                    break
                digits[i] = 0
                i -= 1
    return out_arr

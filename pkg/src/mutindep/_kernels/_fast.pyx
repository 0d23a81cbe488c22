# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled factorization kernels.

Reference semantics live in _pure.py; the two backends must stay
behaviorally identical (same tolerance rule, same error reporting).
"""

from libc.math cimport log, sqrt
from libc.stdlib cimport free, malloc

import numpy as np

cimport numpy as cnp

from ..errors import not_pd_submatrix

cnp.import_array()

BACKEND = "c"

PIVOT_TOL = 1e-12

cdef double _PIVOT_TOL = 1e-12


cdef int _chol_logdet(double* a, Py_ssize_t n, double* out) noexcept nogil:
    """In-place lower Cholesky of the row-major n*n buffer `a`.

    Returns 0 and writes the log-determinant to `out`, or -1 when a pivot
    drops to or below 1e-12 * n * max(diagonal)."""
    cdef Py_ssize_t i, j, t
    cdef double tol, maxd, s, piv, acc
    maxd = 0.0
    for i in range(n):
        if a[i * n + i] > maxd:
            maxd = a[i * n + i]
    tol = _PIVOT_TOL * n * maxd
    acc = 0.0
    for j in range(n):
        s = a[j * n + j]
        for t in range(j):
            s -= a[j * n + t] * a[j * n + t]
        if s <= tol:
            return -1
        piv = sqrt(s)
        a[j * n + j] = piv
        acc += log(piv)
        for i in range(j + 1, n):
            s = a[i * n + j]
            for t in range(j):
                s -= a[i * n + t] * a[j * n + t]
            a[i * n + j] = s / piv
    out[0] = 2.0 * acc
    return 0


def logdet_spd(matrix):
    """Log-determinant of a symmetric positive-definite matrix."""
    cdef cnp.ndarray[double, ndim=2, mode="c"] a = np.array(
        matrix, dtype=np.float64, order="C"
    )
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("expected a square matrix")
    cdef Py_ssize_t n = a.shape[0]
    if n < 1:
        raise ValueError("expected dimension >= 1")
    cdef double ld = 0.0
    if _chol_logdet(&a[0, 0], n, &ld) != 0:
        raise not_pd_submatrix("full")
    return ld


def mdi_statistic_batch(r_in, masks_in, k):
    """Raw dichotomy statistics for every members bitmask in `masks_in`."""
    cdef cnp.ndarray[double, ndim=2, mode="c"] r = np.ascontiguousarray(
        r_in, dtype=np.float64
    )
    cdef Py_ssize_t n = r.shape[0]
    if r.ndim != 2 or r.shape[1] != n:
        raise ValueError("correlation matrix must be square")
    cdef cnp.ndarray[cnp.uint64_t, ndim=1, mode="c"] masks = np.ascontiguousarray(
        masks_in, dtype=np.uint64
    )
    cdef Py_ssize_t m = masks.shape[0]
    cdef cnp.ndarray[double, ndim=1, mode="c"] out = np.empty(m, dtype=np.float64)
    cdef double scale = <double> k - 1.0

    cdef double* scratch = <double*> malloc(n * n * sizeof(double))
    cdef double* full = <double*> malloc(n * n * sizeof(double))
    cdef Py_ssize_t* sel = <Py_ssize_t*> malloc(n * sizeof(Py_ssize_t))
    if scratch == NULL or full == NULL or sel == NULL:
        free(scratch)
        free(full)
        free(sel)
        raise MemoryError()

    cdef int fail_part = -1  # 0 = full, 1 = members, 2 = complement
    cdef Py_ssize_t fail_idx = -1
    cdef unsigned long long mask
    cdef Py_ssize_t i, j, row, col, na, nc
    cdef double ld_full = 0.0, ld_a = 0.0, ld_c = 0.0

    with nogil:
        for i in range(n * n):
            full[i] = (&r[0, 0])[i]
        if _chol_logdet(full, n, &ld_full) != 0:
            fail_part = 0
        else:
            for j in range(m):
                mask = masks[j]
                na = 0
                for i in range(n):
                    if (mask >> i) & 1:
                        sel[na] = i
                        na += 1
                for row in range(na):
                    for col in range(na):
                        scratch[row * na + col] = r[sel[row], sel[col]]
                if _chol_logdet(scratch, na, &ld_a) != 0:
                    fail_part = 1
                    fail_idx = j
                    break
                nc = 0
                for i in range(n):
                    if not (mask >> i) & 1:
                        sel[nc] = i
                        nc += 1
                for row in range(nc):
                    for col in range(nc):
                        scratch[row * nc + col] = r[sel[row], sel[col]]
                if _chol_logdet(scratch, nc, &ld_c) != 0:
                    fail_part = 2
                    fail_idx = j
                    break
                out[j] = scale * (ld_a + ld_c - ld_full)

    free(scratch)
    free(full)
    free(sel)

    if fail_part == 0:
        raise not_pd_submatrix("full")
    if fail_part > 0:
        mask = masks[fail_idx]
        if fail_part == 1:
            elements = [i + 1 for i in range(n) if (int(mask) >> i) & 1]
            raise not_pd_submatrix("members", elements)
        elements = [i + 1 for i in range(n) if not (int(mask) >> i) & 1]
        raise not_pd_submatrix("complement", elements)
    return out

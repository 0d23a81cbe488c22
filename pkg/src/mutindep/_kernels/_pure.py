"""Pure numpy reference implementation of the factorization kernels.

Semantics (shared with the compiled backend in _fast.pyx):

* Cholesky factorization of symmetric positive-definite input, failing with
  NotPositiveDefiniteError when a pivot drops to or below the tolerance
  1e-12 * dim * max(diagonal).
* The dichotomy-test statistic for a correlation matrix R, sample count k
  and a members bitmask a is (k-1) * [logdet(R_aa) + logdet(R_cc) -
  logdet(R)], where c is the complement of a.  Statistics are returned raw
  (no clamping); callers own the nonnegativity policy.
"""

import math

import numpy as np

from ..errors import not_pd_submatrix

BACKEND = "python"

PIVOT_TOL = 1e-12


def _chol_logdet(a):
    """In-place lower Cholesky; returns log det, or None on a failed pivot."""
    n = a.shape[0]
    tol = PIVOT_TOL * n * float(a.diagonal().max(initial=0.0))
    acc = 0.0
    for j in range(n):
        s = float(a[j, j] - a[j, :j] @ a[j, :j])
        if s <= tol:
            return None
        piv = math.sqrt(s)
        a[j, j] = piv
        acc += math.log(piv)
        if j + 1 < n:
            a[j + 1 :, j] = (a[j + 1 :, j] - a[j + 1 :, :j] @ a[j, :j]) / piv
    return 2.0 * acc


def logdet_spd(matrix):
    """Log-determinant of a symmetric positive-definite matrix."""
    a = np.array(matrix, dtype=np.float64, order="C")
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("expected a square matrix")
    if a.shape[0] < 1:
        raise ValueError("expected dimension >= 1")
    ld = _chol_logdet(a)
    if ld is None:
        raise not_pd_submatrix("full")
    return ld


def mdi_statistic_batch(r, masks, k):
    """Raw dichotomy statistics for every members bitmask in `masks`."""
    r = np.ascontiguousarray(r, dtype=np.float64)
    n = r.shape[0]
    if r.ndim != 2 or r.shape[1] != n:
        raise ValueError("correlation matrix must be square")
    masks = np.ascontiguousarray(masks, dtype=np.uint64)
    ld_full = _chol_logdet(r.copy())
    if ld_full is None:
        raise not_pd_submatrix("full")
    out = np.empty(masks.shape[0], dtype=np.float64)
    scale = float(k - 1)
    for j, mask in enumerate(masks):
        mask = int(mask)
        sel = [i for i in range(n) if (mask >> i) & 1]
        comp = [i for i in range(n) if not (mask >> i) & 1]
        ld_a = _chol_logdet(r[np.ix_(sel, sel)])
        if ld_a is None:
            raise not_pd_submatrix("members", [i + 1 for i in sel])
        ld_c = _chol_logdet(r[np.ix_(comp, comp)])
        if ld_c is None:
            raise not_pd_submatrix("complement", [i + 1 for i in comp])
        out[j] = scale * (ld_a + ld_c - ld_full)
    return out

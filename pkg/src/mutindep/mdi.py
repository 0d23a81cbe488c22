"""The minimum discrimination information test for one dichotomy.

For a bipartition a | c of the variables and a correlation model (r, k),
the statistic (k-1) * ln[det(R_aa) det(R_cc) / det(R)] is asymptotically
chi-squared with |a|*|c| degrees of freedom under the null hypothesis that
the two groups are independent; a noncentral chi-squared approximation with
an explicit noncentrality parameter is available as an alternative mode.
"""

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .distributions import chi2_sf, noncentral_chi2_sf
from .errors import InternalNumericError
from .linalg import CorrelationModel
from .partitions import Bipartition

MODES = ("central", "noncentral")

# Statistics within this of zero are floating-point cancellation and get
# clamped; anything more negative means a broken determinant.
_NEGATIVE_SLACK = -1e-9


@dataclass(frozen=True)
class TestResult:
    """Outcome of one dichotomy test."""

    bipartition: Bipartition
    statistic: float
    df: int
    noncentrality: float
    p_value: float
    mode: str


def degrees_of_freedom(bipartition):
    """|a| * |complement| degrees of freedom for the test of a | complement."""
    na, nc = bipartition.sizes()
    return na * nc


def _odd_cubic(t):
    return 2 * t**3 + 3 * t**2 - t


def noncentrality(bipartition, k):
    """Noncentrality parameter of the noncentral chi-squared approximation.

    Equals [(2n^3 + 3n^2 - n) - (2na^3 + 3na^2 - na) - (2nc^3 + 3nc^2 - nc)]
    / (12(k-1)) for block sizes na, nc; always nonnegative and O(1/k).
    """
    if k < 2:
        raise ValueError(f"need a sample count of at least 2, got {k}")
    na, nc = bipartition.sizes()
    n = bipartition.n
    return (_odd_cubic(n) - _odd_cubic(na) - _odd_cubic(nc)) / (12.0 * (k - 1))


def _check_model(model, n):
    if not isinstance(model, CorrelationModel):
        raise TypeError("expected a CorrelationModel")
    if model.n != n:
        raise ValueError(f"dimension mismatch: model has n={model.n}, test has n={n}")
    if model.k < 3:
        raise ValueError(f"the test needs a sample count of at least 3, got {model.k}")


def _clamped(raw):
    low = raw.min(initial=0.0)
    if low < _NEGATIVE_SLACK:
        raise InternalNumericError(
            f"dichotomy statistic came out at {low}, below the -1e-9 slack; "
            "the determinant computation is inconsistent"
        )
    return np.maximum(raw, 0.0)


def mdi_statistics(model, bipartitions):
    """Statistics for a batch of bipartitions over one shared model.

    The full-matrix determinant is factored once; a positive-definiteness
    failure in any submatrix aborts the whole batch, naming the variables of
    the failing block.
    """
    bipartitions = list(bipartitions)
    for b in bipartitions:
        _check_model(model, b.n)
    masks = np.array([b.members for b in bipartitions], dtype=np.uint64)
    raw = _kernels.mdi_statistic_batch(model.r, masks, model.k)
    return _clamped(raw)


def mdi_statistic(model, bipartition):
    """The dichotomy statistic (k-1) * ln[det(R_aa) det(R_cc) / det(R)]."""
    return float(mdi_statistics(model, [bipartition])[0])


def test_bipartitions(model, bipartitions, mode="central"):
    """TestResults for a batch of bipartitions over one shared model."""
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    bipartitions = list(bipartitions)
    stats = mdi_statistics(model, bipartitions)
    results = []
    for b, stat in zip(bipartitions, stats):
        stat = float(stat)
        df = degrees_of_freedom(b)
        lam = noncentrality(b, model.k)
        if mode == "central":
            p = chi2_sf(stat, df)
        else:
            p = noncentral_chi2_sf(stat, df, lam)
        results.append(TestResult(b, stat, df, lam, p, mode))
    return results


def test_bipartition(model, bipartition, mode="central"):
    """Test one dichotomy; central mode is the default for all analyses."""
    return test_bipartitions(model, [bipartition], mode)[0]

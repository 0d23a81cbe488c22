"""Monte Carlo study of the inference pipeline.

Block-structured Gaussian ground truths are generated at random, data is
sampled from them once per run, and inference quality (sensitivity,
specificity, AUC, exact-pattern recovery) is evaluated on nested prefixes
of the dataset so that larger sample sizes refine the same experiment.
"""

import csv
import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateDataError, NotPositiveDefiniteError
from .inference import classify_against_truth, infer_from_model
from .linalg import DataMatrix, sample_correlation
from .mdi import MODES
from .partitions import entailed_dichotomies, enumerate_bipartitions, format_partition
from .randomness import (
    RngStream,
    random_partition_with_k_blocks,
    sample_mvn,
    sample_wishart_correlation,
)

CSV_COLUMNS = (
    "run_id",
    "blocks",
    "truth",
    "size",
    "sensitivity",
    "specificity",
    "auc",
    "correct",
    "mean_abs_within_block_corr",
    "failed",
)

_DECILE_EDGES = [i / 10.0 for i in range(11)]


@dataclass(frozen=True)
class SimulationConfig:
    """Campaign parameters; defaults mirror the full reference study."""

    n: int = 6
    block_counts: tuple = (1, 2, 3, 4, 5, 6)
    runs_per_k: int = 500
    max_samples: int = 300
    subset_sizes: tuple = (50, 100, 150, 200, 250, 300)
    alpha: float = 0.1
    correction: str = "fdr"
    mode: str = "central"
    master_seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "block_counts", tuple(self.block_counts))
        object.__setattr__(self, "subset_sizes", tuple(self.subset_sizes))
        if self.n < 2:
            raise ValueError("need at least 2 variables")
        if not self.block_counts:
            raise ValueError("need at least one block count")
        for blocks in self.block_counts:
            if not 1 <= blocks <= self.n:
                raise ValueError(f"block count {blocks} outside 1..{self.n}")
        if self.runs_per_k < 1:
            raise ValueError("need at least one run per block count")
        if not self.subset_sizes:
            raise ValueError("need at least one subset size")
        for size in self.subset_sizes:
            if not 3 <= size <= self.max_samples:
                raise ValueError(
                    f"subset size {size} outside 3..max_samples={self.max_samples}"
                )
        if not 0.0 < self.alpha < 1.0:
            raise ValueError("alpha must lie in (0, 1)")
        if self.correction not in ("fdr", "bonferroni"):
            raise ValueError(f"unknown correction {self.correction!r}")
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")


@dataclass(frozen=True)
class SubsetAnalysis:
    """Inference metrics for one nested prefix of a run's dataset."""

    size: int
    failed: bool
    p_values: tuple | None
    confusion: object | None
    auc: float | None
    correct: bool | None


@dataclass(frozen=True)
class RunRecord:
    """One simulated model plus its per-subset-size analyses."""

    run_id: int
    block_count: int
    truth: object
    block_correlations: tuple
    mean_abs_within_block_corr: float | None
    analyses: tuple


def generate_model(n, blocks, rng):
    """Random ground truth: a uniform partition with the given block count
    and a block-diagonal correlation matrix (identity across blocks, a
    rescaled Wishart draw inside each block of size >= 2)."""
    truth = random_partition_with_k_blocks(n, blocks, rng)
    sigma = np.eye(n)
    for block in truth.blocks():
        if len(block) == 1:
            continue
        idx = np.array(block) - 1
        sigma[np.ix_(idx, idx)] = sample_wishart_correlation(len(block), rng)
    return truth, sigma


def auc(pvalues, truth):
    """Probability a random positive bipartition has a smaller p-value than
    a random negative one, ties counted one half.

    Positives are the bipartitions whose dichotomic independence fails under
    `truth`; negatives are the entailed ones.  None when either side is
    empty (e.g. a 1-block or all-singleton truth).
    """
    bipartitions = enumerate_bipartitions(truth.n)
    p = np.asarray(pvalues, dtype=np.float64)
    if p.shape[0] != len(bipartitions):
        raise ValueError("need one p-value per bipartition")
    negatives = set(entailed_dichotomies(truth))
    neg_mask = np.array([b in negatives for b in bipartitions])
    pos = p[~neg_mask]
    neg = p[neg_mask]
    if pos.size == 0 or neg.size == 0:
        return None
    wins = np.count_nonzero(pos[:, None] < neg[None, :])
    ties = np.count_nonzero(pos[:, None] == neg[None, :])
    return float((wins + 0.5 * ties) / (pos.size * neg.size))


def sensitivity(confusion):
    """TP / (TP + FN); None when the truth has no positive case."""
    denom = confusion.tp + confusion.fn
    return confusion.tp / denom if denom else None


def specificity(confusion):
    """TN / (TN + FP); None when the truth has no negative case."""
    denom = confusion.tn + confusion.fp
    return confusion.tn / denom if denom else None


def correct_ratio(flags):
    """Fraction of runs whose inferred pattern equals the truth exactly."""
    flags = [f for f in flags if f is not None]
    if not flags:
        return None
    return sum(1 for f in flags if f) / len(flags)


def within_block_correlation(truth, matrix):
    """Mean absolute correlation over within-block pairs; None without any
    block of size >= 2."""
    matrix = np.asarray(matrix)
    if matrix.shape[0] != truth.n:
        raise ValueError("matrix dimension does not match the partition")
    values = []
    for block in truth.blocks():
        for i in range(len(block)):
            for j in range(i + 1, len(block)):
                values.append(abs(matrix[block[i] - 1, block[j] - 1]))
    if not values:
        return None
    return float(np.mean(values))


def _execute_run(config, run_id, blocks):
    rng = RngStream(config.master_seed, run_id)
    truth, sigma = generate_model(config.n, blocks, rng)
    data = sample_mvn(sigma, config.max_samples, rng)
    rows = data.values
    analyses = []
    for size in config.subset_sizes:
        try:
            model = sample_correlation(DataMatrix(rows[:size]))
            outcome = infer_from_model(
                model, alpha=config.alpha, correction=config.correction, mode=config.mode
            )
        except (DegenerateDataError, NotPositiveDefiniteError):
            analyses.append(SubsetAnalysis(size, True, None, None, None, None))
            continue
        confusion = classify_against_truth(outcome, truth)
        p_values = tuple(t.p_value for t in outcome.tests)
        analyses.append(
            SubsetAnalysis(
                size=size,
                failed=False,
                p_values=p_values,
                confusion=confusion,
                auc=auc(p_values, truth),
                correct=outcome.mu_hat == truth,
            )
        )
    block_corrs = tuple(
        sigma[np.ix_(np.array(b) - 1, np.array(b) - 1)] for b in truth.blocks()
    )
    return RunRecord(
        run_id=run_id,
        block_count=blocks,
        truth=truth,
        block_correlations=block_corrs,
        mean_abs_within_block_corr=within_block_correlation(truth, sigma),
        analyses=tuple(analyses),
    )


def run_campaign(config, threads=None):
    """Execute the whole campaign; deterministic given config.master_seed.

    Each run draws from a private (master_seed, run id) stream, so the
    result is byte-identical for any thread count.  Inference failures are
    recorded per run with a failure flag instead of aborting the campaign.
    """
    jobs = []
    run_id = 0
    for blocks in config.block_counts:
        for _ in range(config.runs_per_k):
            jobs.append((run_id, blocks))
            run_id += 1
    if threads is None:
        threads = os.cpu_count() or 1
    if threads <= 1:
        records = [_execute_run(config, rid, blocks) for rid, blocks in jobs]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            records = list(
                pool.map(lambda job: _execute_run(config, *job), jobs)
            )
    return Campaign(config, tuple(records))


def _fmt_cell(value):
    if value is None:
        return ""
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        return repr(value)
    return str(value)


class Campaign:
    """Campaign results: per-run records, CSV rows, and aggregate summary."""

    def __init__(self, config, records):
        self.config = config
        self.records = records

    def failure_count(self):
        return sum(
            1 for rec in self.records for a in rec.analyses if a.failed
        )

    def iter_rows(self):
        """One row per (run, subset size), in run order."""
        for rec in self.records:
            for a in rec.analyses:
                sens = spec = None
                if a.confusion is not None:
                    sens = sensitivity(a.confusion)
                    spec = specificity(a.confusion)
                yield (
                    rec.run_id,
                    rec.block_count,
                    format_partition(rec.truth),
                    a.size,
                    sens,
                    spec,
                    a.auc,
                    a.correct,
                    rec.mean_abs_within_block_corr,
                    a.failed,
                )

    def write_csv(self, path):
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(CSV_COLUMNS)
            for row in self.iter_rows():
                writer.writerow([_fmt_cell(v) for v in row])

    def summary(self):
        """Aggregate medians/quartiles per (block count, subset size), the
        exact-recovery ratio, failure counts, and AUC binned by within-block
        correlation deciles."""
        by_cell = {}
        for rec in self.records:
            for a in rec.analyses:
                cell = by_cell.setdefault(
                    (rec.block_count, a.size),
                    {"auc": [], "sensitivity": [], "specificity": [], "correct": [],
                     "failed": 0, "runs": 0},
                )
                cell["runs"] += 1
                if a.failed:
                    cell["failed"] += 1
                    continue
                if a.auc is not None:
                    cell["auc"].append(a.auc)
                s = sensitivity(a.confusion)
                if s is not None:
                    cell["sensitivity"].append(s)
                s = specificity(a.confusion)
                if s is not None:
                    cell["specificity"].append(s)
                cell["correct"].append(a.correct)

        def quartiles(values):
            if not values:
                return None
            q25, med, q75 = np.percentile(values, [25.0, 50.0, 75.0])
            return {"q25": float(q25), "median": float(med), "q75": float(q75),
                    "count": len(values)}

        by_block = {}
        for (blocks, size), cell in sorted(by_cell.items()):
            target = by_block.setdefault(str(blocks), {})
            target[str(size)] = {
                "auc": quartiles(cell["auc"]),
                "sensitivity": quartiles(cell["sensitivity"]),
                "specificity": quartiles(cell["specificity"]),
                "correct_ratio": correct_ratio(cell["correct"]),
                "failed": cell["failed"],
                "runs": cell["runs"],
            }

        return {
            "config": {
                "n": self.config.n,
                "block_counts": list(self.config.block_counts),
                "runs_per_k": self.config.runs_per_k,
                "max_samples": self.config.max_samples,
                "subset_sizes": list(self.config.subset_sizes),
                "alpha": self.config.alpha,
                "correction": self.config.correction,
                "mode": self.config.mode,
                "master_seed": self.config.master_seed,
            },
            "total_runs": len(self.records),
            "failed_analyses": self.failure_count(),
            "by_block_count": by_block,
            "auc_by_within_block_correlation": self._correlation_auc_bins(),
        }

    def _correlation_auc_bins(self):
        # Deciles of mean |rho| within blocks vs AUC, pooled over subset
        # sizes, one table per block count that admits an AUC.
        out = {}
        for rec in self.records:
            rho = rec.mean_abs_within_block_corr
            if rho is None:
                continue
            for a in rec.analyses:
                if a.failed or a.auc is None:
                    continue
                bin_idx = min(int(rho * 10), 9)
                key = out.setdefault(str(rec.block_count), [[] for _ in range(10)])
                key[bin_idx].append(a.auc)
        tables = {}
        for blocks, bins in sorted(out.items()):
            tables[blocks] = [
                {
                    "lo": _DECILE_EDGES[i],
                    "hi": _DECILE_EDGES[i + 1],
                    "count": len(vals),
                    "mean_auc": float(np.mean(vals)) if vals else None,
                }
                for i, vals in enumerate(bins)
            ]
        return tables

    def write_summary(self, path):
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.summary(), fh, sort_keys=True, indent=2)
            fh.write("\n")

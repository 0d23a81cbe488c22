import json

import numpy as np
import pytest

from mutindep.inference import ConfusionCounts, infer_from_model
from mutindep.linalg import DataMatrix, sample_correlation
from mutindep.partitions import (
    Partition,
    entailed_dichotomies,
    enumerate_bipartitions,
    parse_partition,
)
from mutindep.randomness import RngStream, sample_mvn
from mutindep.simulation import (
    SimulationConfig,
    auc,
    correct_ratio,
    generate_model,
    run_campaign,
    sensitivity,
    specificity,
    within_block_correlation,
)

import oracles


# --- model generation -------------------------------------------------------


def test_generate_model_all_singletons_is_identity():
    truth, sigma = generate_model(6, 6, RngStream(20260832))
    assert truth == Partition.singletons(6)
    assert (sigma == np.eye(6)).all()


def test_generate_model_one_dense_block():
    truth, sigma = generate_model(5, 1, RngStream(20260833))
    assert truth == Partition.one_block(5)
    assert (np.abs(sigma[~np.eye(5, dtype=bool)]) > 0).all()


def test_generate_model_block_diagonal_structure():
    rng = RngStream(20260834)
    for blocks in (2, 3, 4, 5):
        truth, sigma = generate_model(6, blocks, rng)
        assert truth.block_count == blocks
        assert len(entailed_dichotomies(truth)) == 2 ** (blocks - 1) - 1
        labels = truth.assignment
        for i in range(6):
            for j in range(6):
                if labels[i] != labels[j]:
                    assert sigma[i, j] == 0.0
        np.linalg.cholesky(sigma)  # positive definite


# --- metrics ----------------------------------------------------------------


def test_auc_edge_values():
    truth = parse_partition("12|3|4")  # 3 negatives, 4 positives
    negatives = {str(b) for b in entailed_dichotomies(truth)}
    order = [str(b) for b in enumerate_bipartitions(4)]
    perfect = [1.0 if s in negatives else 0.0 for s in order]
    assert auc(perfect, truth) == 1.0
    assert auc([0.5] * 7, truth) == 0.5
    anti = [0.0 if s in negatives else 1.0 for s in order]
    assert auc(anti, truth) == 0.0


def test_auc_hand_example_via_oracle():
    # positives {0.01, 0.2} vs negatives {0.05, 0.5}: 3 of 4 pairs ordered
    assert oracles.roc_auc_sweep([0.01, 0.2], [0.05, 0.5]) == pytest.approx(0.75)


def test_auc_undefined_cases():
    assert auc([0.5] * 31, Partition.one_block(6)) is None
    assert auc([0.5] * 31, Partition.singletons(6)) is None


def test_auc_matches_threshold_sweep_oracle():
    rng = np.random.default_rng(20260835)
    truth = parse_partition("12|34|5|6")
    bips = enumerate_bipartitions(6)
    negatives = {str(b) for b in entailed_dichotomies(truth)}
    for _ in range(100):
        # discretized p-values force plenty of ties
        pvals = rng.integers(0, 6, size=31) / 5.0
        got = auc(pvals, truth)
        pos = [p for b, p in zip(bips, pvals) if str(b) not in negatives]
        neg = [p for b, p in zip(bips, pvals) if str(b) in negatives]
        assert got == pytest.approx(oracles.roc_auc_sweep(pos, neg), abs=1e-12)


def test_sensitivity_specificity_undefined_flags():
    assert sensitivity(ConfusionCounts(tp=0, fn=0, tn=3, fp=1)) is None
    assert specificity(ConfusionCounts(tp=2, fn=1, tn=0, fp=0)) is None
    c = ConfusionCounts(tp=3, fn=1, tn=5, fp=0)
    assert sensitivity(c) == 0.75
    assert specificity(c) == 1.0


def test_correct_ratio():
    assert correct_ratio([True, True, False, True]) == 0.75
    assert correct_ratio([None, True]) == 1.0
    assert correct_ratio([]) is None


def test_within_block_correlation():
    truth = parse_partition("12|3")
    m = np.eye(3)
    assert within_block_correlation(truth, m) == 0.0
    m[0, 1] = m[1, 0] = -0.7
    assert within_block_correlation(truth, m) == pytest.approx(0.7)
    assert within_block_correlation(Partition.singletons(4), np.eye(4)) is None
    truth = parse_partition("123|4")
    m = np.eye(4)
    m[0, 1] = m[1, 0] = 0.1
    m[0, 2] = m[2, 0] = -0.3
    m[1, 2] = m[2, 1] = 0.5
    assert within_block_correlation(truth, m) == pytest.approx(0.3)


# --- campaign ---------------------------------------------------------------


def small_config(**overrides):
    base = dict(
        n=6,
        block_counts=(1, 3, 6),
        runs_per_k=4,
        max_samples=120,
        subset_sizes=(50, 120),
        alpha=0.1,
        master_seed=99,
    )
    base.update(overrides)
    return SimulationConfig(**base)


def test_config_validation():
    with pytest.raises(ValueError):
        SimulationConfig(n=6, block_counts=(7,))
    with pytest.raises(ValueError):
        SimulationConfig(subset_sizes=(50, 400))
    with pytest.raises(ValueError):
        SimulationConfig(runs_per_k=0)
    with pytest.raises(ValueError):
        SimulationConfig(alpha=1.5)
    with pytest.raises(ValueError):
        SimulationConfig(correction="storey")


def test_campaign_shape_and_determinism(tmp_path):
    config = small_config()
    campaign = run_campaign(config, threads=1)
    assert len(campaign.records) == 12
    rows = list(campaign.iter_rows())
    assert len(rows) == 24
    for rec in campaign.records:
        for a in rec.analyses:
            if not a.failed:
                assert a.confusion.total == 31
                if a.auc is not None:
                    assert 0.0 <= a.auc <= 1.0

    path_a, path_b = tmp_path / "a.csv", tmp_path / "b.csv"
    campaign.write_csv(path_a)
    run_campaign(config, threads=3).write_csv(path_b)
    assert path_a.read_bytes() == path_b.read_bytes()


def test_run_records_carry_block_correlations():
    config = small_config(block_counts=(3,), runs_per_k=2)
    campaign = run_campaign(config, threads=1)
    for rec in campaign.records:
        blocks = rec.truth.blocks()
        assert len(rec.block_correlations) == len(blocks)
        for block, corr in zip(blocks, rec.block_correlations):
            assert corr.shape == (len(block), len(block))
            assert np.allclose(np.diag(corr), 1.0)
            if len(block) >= 2:
                np.linalg.cholesky(corr)


def test_campaign_nested_subsets_reuse_prefix():
    # the analysis at size s must equal inference on the first s rows of the
    # run's own dataset, reconstructed from the run's private stream
    config = small_config(block_counts=(3,), runs_per_k=1)
    campaign = run_campaign(config, threads=1)
    record = campaign.records[0]
    rng = RngStream(config.master_seed, record.run_id)
    truth, sigma = generate_model(config.n, 3, rng)
    assert truth == record.truth
    data = sample_mvn(sigma, config.max_samples, rng)
    for analysis in record.analyses:
        model = sample_correlation(DataMatrix(data.values[: analysis.size]))
        outcome = infer_from_model(model, alpha=config.alpha)
        assert tuple(t.p_value for t in outcome.tests) == analysis.p_values


def test_campaign_records_failures_without_aborting():
    config = small_config(block_counts=(2,), runs_per_k=3, subset_sizes=(4, 50))
    campaign = run_campaign(config, threads=1)
    # 4 samples of 6 variables cannot give a positive-definite correlation
    for rec in campaign.records:
        assert rec.analyses[0].failed
        assert not rec.analyses[1].failed
    assert campaign.failure_count() == 3
    for rec in campaign.records:
        assert rec.analyses[0].p_values is None
        assert rec.analyses[0].auc is None


def test_summary_structure(tmp_path):
    config = small_config()
    campaign = run_campaign(config, threads=2)
    summary = campaign.summary()
    assert summary["total_runs"] == 12
    cell = summary["by_block_count"]["3"]["120"]
    assert cell["runs"] == 4
    assert cell["auc"] is None or 0.0 <= cell["auc"]["median"] <= 1.0
    assert summary["by_block_count"]["1"]["120"]["specificity"] is None
    assert summary["by_block_count"]["6"]["120"]["sensitivity"] is None
    out = tmp_path / "summary.json"
    campaign.write_summary(out)
    parsed = json.loads(out.read_text())
    assert parsed == json.loads(json.dumps(summary))

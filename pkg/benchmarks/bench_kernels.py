"""Benchmark the compiled kernels against the pure-numpy fallback.

Usage: python benchmarks/bench_kernels.py

Times the two hot operations (symmetric log-determinant and the
all-dichotomies statistic batch) on correlation matrices of growing size,
then an end-to-end desk simulation run through each backend.
"""

import time

import numpy as np

from mutindep._kernels import load_backend
from mutindep.randomness import RngStream, sample_wishart_correlation

PURE = load_backend("python")
FAST = load_backend("c")


def _time(fn, min_seconds=0.2):
    fn()  # warm up
    calls = 0
    start = time.perf_counter()
    while True:
        fn()
        calls += 1
        elapsed = time.perf_counter() - start
        if elapsed >= min_seconds:
            return elapsed / calls


def bench_logdet():
    print("logdet_spd (per call)")
    print(f"{'dim':>5} {'python':>12} {'compiled':>12} {'speedup':>9}")
    rng = RngStream(1)
    for dim in (4, 6, 10, 16, 24):
        r = sample_wishart_correlation(dim, rng)
        t_pure = _time(lambda: PURE.logdet_spd(r))
        t_fast = _time(lambda: FAST.logdet_spd(r))
        print(f"{dim:>5} {t_pure * 1e6:>10.1f}us {t_fast * 1e6:>10.1f}us "
              f"{t_pure / t_fast:>8.1f}x")


def bench_batch():
    print()
    print("mdi_statistic_batch over all dichotomies (per batch)")
    print(f"{'n':>5} {'tests':>6} {'python':>12} {'compiled':>12} {'speedup':>9}")
    rng = RngStream(2)
    for n in (4, 6, 10, 14):
        r = sample_wishart_correlation(n, rng)
        masks = np.arange(1, 2**n - 1, 2, dtype=np.uint64)
        t_pure = _time(lambda: PURE.mdi_statistic_batch(r, masks, 300))
        t_fast = _time(lambda: FAST.mdi_statistic_batch(r, masks, 300))
        print(f"{n:>5} {len(masks):>6} {t_pure * 1e3:>10.2f}ms "
              f"{t_fast * 1e3:>10.2f}ms {t_pure / t_fast:>8.1f}x")


_CAMPAIGN_SNIPPET = """
import time
from mutindep.simulation import SimulationConfig, run_campaign
config = SimulationConfig(n=6, block_counts=(2, 4), runs_per_k=50,
                          max_samples=300, subset_sizes=(100, 300),
                          master_seed=3)
start = time.perf_counter()
run_campaign(config, threads=1)
print(time.perf_counter() - start)
"""


def bench_campaign():
    # end to end, with the backend chosen the way it is in production:
    # at import time, via MUTINDEP_KERNELS
    import os
    import subprocess
    import sys

    print()
    print("desk simulation (100 runs x 2 sizes, single thread, fresh process)")
    results = {}
    for name, backend in (("python", "python"), ("compiled", "c")):
        env = dict(os.environ, MUTINDEP_KERNELS=backend)
        out = subprocess.run(
            [sys.executable, "-c", _CAMPAIGN_SNIPPET],
            env=env, capture_output=True, text=True, check=True,
        )
        results[name] = float(out.stdout.strip())
        print(f"  {name:>9}: {results[name]:.2f}s")
    print(f"  speedup: {results['python'] / results['compiled']:.1f}x")


if __name__ == "__main__":
    bench_logdet()
    bench_batch()
    bench_campaign()

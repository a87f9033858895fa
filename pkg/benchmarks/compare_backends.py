"""Throughput comparison of the compiled and NumPy protocol samplers.

Runs the same seeded workload through both backends and prints samples per
second plus the (identical up to floating-point reduction order) score means.

    python benchmarks/compare_backends.py [--samples 2000000]
"""

import argparse
import os
import time

from qmatch import _mc
from qmatch.harness.montecarlo import SimulationConfig, simulate_semiclassical, simulate_universal


def _time_run(backend: str, config: SimulationConfig):
    os.environ["QMATCH_MC_BACKEND"] = backend
    runner = simulate_universal if config.strategy_family == "universal" else simulate_semiclassical
    start = time.perf_counter()
    report = runner(config)
    elapsed = time.perf_counter() - start
    return report.score_mc, config.samples / elapsed, elapsed


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--samples", type=int, default=2_000_000)
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()

    configs = [
        SimulationConfig(2, 1, "universal", args.samples, args.seed),
        SimulationConfig(2, 1, "semiclassical:discrete_three", args.samples, args.seed),
        SimulationConfig(5, 1, "universal", args.samples, args.seed),
    ]
    backends = ["numpy"]
    if _mc.compiled_available():
        backends.insert(0, "cython")
    else:
        print("compiled kernel not built; timing the NumPy backend only")

    previous = os.environ.get("QMATCH_MC_BACKEND")
    try:
        print(f"{'config':<38} {'backend':<8} {'samples/s':>12} {'seconds':>9}  score_mc")
        for config in configs:
            for backend in backends:
                mean, rate, elapsed = _time_run(backend, config)
                name = f"N={config.n_inputs} K={config.k_copies} {config.strategy}"
                print(f"{name:<38} {backend:<8} {rate:>12.0f} {elapsed:>9.2f}  {mean:.6f}")
    finally:
        if previous is None:
            os.environ.pop("QMATCH_MC_BACKEND", None)
        else:
            os.environ["QMATCH_MC_BACKEND"] = previous


if __name__ == "__main__":
    main()

"""Benchmark the compiled kernels against the pure-Python fallback.

Usage: python benchmarks/bench_backends.py [--repeat N]

Times the three hot loops on workloads matching real use: a sech-pulse
trajectory (~35k RK4 steps), a dissipative on-off-on run (~2.8k steps) and
the 200-slice objective/gradient evaluation used inside the optimizer.
"""

import argparse
import math
import time

import numpy as np

from qdpulse._backend import load_backend


def _time(fn, repeat):
    best = math.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def workloads(kernels):
    omega0 = 4.0 * math.sqrt(2.0 / 3.0)
    t_p = math.sqrt(3.0) / 2.0
    y3 = np.array([1.0, 0.0, 0.0], dtype=complex)
    y6 = np.array([1.0, 0, 0, 0, 0, 0], dtype=complex)
    vals = np.random.default_rng(7).uniform(0.0, omega0, 200)

    def sech_traj():
        kernels.rk4_schrodinger3(1.0, 1, omega0, t_p, 0.0,
                                 -20.0 * t_p, 1e-3, 34641, y3)

    def density_traj():
        kernels.rk4_density(1.0, 2e-4, 2e-4, 1.4e-3, 1.4e-3, 1.4e-3,
                            0, omega0, 0.0, 0.0, 0.0, 1e-3, 2756, y6)

    def chain():
        for _ in range(100):
            kernels.chain_objective_gradient(1.0, 2.7555 / 200, vals)

    return [
        ("rk4 three-level, sech 34641 steps", sech_traj),
        ("rk4 density, on-off-on 2756 steps", density_traj),
        ("chain objective+gradient x100 (n=200)", chain),
    ]


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3,
                        help="timing repetitions, best is reported (default 3)")
    args = parser.parse_args()

    backends = {}
    for name in ("pure", "compiled"):
        try:
            backends[name] = load_backend(name)
        except ImportError:
            print(f"backend {name!r} unavailable, skipping")
    if not backends:
        raise SystemExit("no kernel backend available")

    results = {}
    for bname, mod in backends.items():
        for wname, fn in workloads(mod):
            results[(bname, wname)] = _time(fn, args.repeat)

    names = [w for w, _ in workloads(next(iter(backends.values())))]
    width = max(len(w) for w in names)
    header = f"{'workload':<{width}}  " + "".join(f"{b:>12}" for b in backends)
    if len(backends) == 2:
        header += f"{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for wname in names:
        row = f"{wname:<{width}}  "
        times = [results[(b, wname)] for b in backends]
        row += "".join(f"{t * 1e3:>10.2f}ms" for t in times)
        if len(times) == 2 and times[1] > 0:
            row += f"{times[0] / times[1]:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()

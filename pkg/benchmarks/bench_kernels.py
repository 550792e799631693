"""Compare the compiled and numpy kernels on the three dataset shapes.

    python benchmarks/bench_kernels.py [--repeat 5] [--train]

Times one average-MSE objective evaluation (the optimizers' inner loop) on
training sets the size of the three public datasets, and optionally a full
10-agent, 50-iteration GWO_MLP run on the smallest.
"""
import argparse
import timeit

import numpy as np

from fdonet import kernels
from fdonet.network import NetworkTopology

SHAPES = [("dataset1", 10, 2503), ("dataset2", 18, 1683), ("dataset3", 13, 103665)]


def time_objective(backend, X, y, p, topo, repeat):
    impl = kernels.load_backend(backend)
    args = (X, y, p, topo.inputs, topo.hidden, topo.cascade)
    number = max(1, int(2e5 // X.shape[0]))
    best = min(timeit.repeat(lambda: impl.average_mse(*args), number=number, repeat=repeat))
    return best / number, impl.average_mse(*args)


def time_training(backend, repeat):
    import os
    import subprocess
    import sys

    code = (
        "import time, numpy as np\n"
        "from fdonet.core import OptimizerConfig\n"
        "from fdonet.network import NetworkTopology\n"
        "from fdonet.training import TrainingProblem, train\n"
        "rng = np.random.default_rng(0)\n"
        "X = rng.integers(0, 2, (2503, 10)).astype(float); y = rng.integers(1, 3, 2503).astype(float)\n"
        "prob = TrainingProblem(NetworkTopology.for_inputs(10), X, y)\n"
        f"ts = []\n"
        f"for _ in range({repeat}):\n"
        "    t = time.perf_counter(); train('GWO_MLP', prob, OptimizerConfig(10, 50, 0)); ts.append(time.perf_counter() - t)\n"
        "print(min(ts))\n"
    )
    env = dict(os.environ, FDONET_PURE_PYTHON="1" if backend == "fallback" else "0")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    return float(out.stdout.strip())


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--train", action="store_true", help="also time a full GWO_MLP training run")
    args = parser.parse_args()

    if not kernels.compiled_available():
        raise SystemExit("compiled kernels are not built; run `pip install -e . --no-build-isolation`")

    rng = np.random.default_rng(0)
    print(f"{'shape':<10} {'net':<5} {'rows':>7} {'compiled':>12} {'numpy':>12} {'speedup':>8} {'|diff|':>9}")
    for name, inputs, rows in SHAPES:
        X = np.ascontiguousarray(rng.integers(0, 2, (rows, inputs)), dtype=float)
        y = rng.integers(1, 3, rows).astype(float)
        for kind in ("MLP", "CMLP"):
            topo = NetworkTopology.for_inputs(inputs, kind)
            p = rng.uniform(-10, 10, topo.parameter_count)
            tc, vc = time_objective("compiled", X, y, p, topo, args.repeat)
            tf, vf = time_objective("fallback", X, y, p, topo, args.repeat)
            print(
                f"{name:<10} {kind:<5} {rows:>7} {tc * 1e3:>10.3f}ms {tf * 1e3:>10.3f}ms "
                f"{tf / tc:>7.1f}x {abs(vc - vf):>9.1e}"
            )
    if args.train:
        tc = time_training("compiled", args.repeat)
        tf = time_training("fallback", args.repeat)
        print(f"\nGWO_MLP 10 agents x 50 iterations, 2503 rows: compiled {tc:.3f}s, numpy {tf:.3f}s ({tf / tc:.1f}x)")


if __name__ == "__main__":
    main()

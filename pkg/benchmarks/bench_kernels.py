#!/usr/bin/env python3
"""Compare the compiled simplex kernel against the pure-numpy fallback.

Two views:
  * microbenchmarks of the three kernel entry points on random data,
  * end-to-end MILP solves in subprocesses, selecting the kernel via the
    CCGKIT_PURE_PYTHON environment variable (the same switch users have).

Run:  python3 benchmarks/bench_kernels.py
"""

import os
import subprocess
import sys
import time
import timeit

import numpy as np

from ccgkit.milp import _kernel_py

try:
    from ccgkit.milp import _kernel as compiled
except ImportError:
    compiled = None

PIVOT_SIZES = (20, 60, 150)
REPEATS = 2000

SOLVE_SNIPPET = r"""
import time
import numpy as np
from ccgkit.milp import KERNEL_COMPILED, BINARY, LinearModel, SolveControls, solve_milp

rng = np.random.default_rng(0)
t0 = time.perf_counter()
total = 0.0
for _ in range(30):
    n = int(rng.integers(8, 14))
    model = LinearModel(sense="max")
    for j in range(n):
        model.add_column(0.0, 1.0, BINARY, obj=float(rng.uniform(1, 10)))
    for _ in range(3):
        model.add_row({j: float(rng.uniform(0.5, 5)) for j in range(n)},
                      "<=", float(rng.uniform(4, 2 * n)))
    out = solve_milp(model, SolveControls(rel_gap=0.0))
    total += out.incumbent_value
print(f"{'compiled' if KERNEL_COMPILED else 'pure':9s} "
      f"{time.perf_counter() - t0:7.3f}s  checksum={total:.6f}")
"""


def bench_micro(impl, m: int) -> dict:
    rng = np.random.default_rng(7)
    d = rng.normal(size=m)
    status = rng.integers(0, 4, size=m).astype(np.int64)
    col = rng.normal(size=m)
    xb = rng.normal(size=m)
    lb, ub = xb - 1.0, xb + 1.0
    M = rng.normal(size=(m, m + 3))
    M[0, 0] = 2.0
    return {
        "choose_entering": timeit.timeit(
            lambda: impl.choose_entering(d, status, 1e-9, False),
            number=REPEATS),
        "ratio_test": timeit.timeit(
            lambda: impl.ratio_test(col, xb, lb, ub, 1.0, 1e-9),
            number=REPEATS),
        "do_pivot": timeit.timeit(
            lambda: impl.do_pivot(M, 0, 0), number=REPEATS),
    }


def main() -> int:
    if compiled is None:
        print("compiled kernel not built; showing the pure fallback only")
    print(f"microbenchmarks ({REPEATS} calls each)")
    for m in PIVOT_SIZES:
        pure = bench_micro(_kernel_py, m)
        fast = bench_micro(compiled, m) if compiled else None
        for name in pure:
            line = f"  m={m:4d} {name:16s} pure {pure[name] * 1e3:8.2f} ms"
            if fast:
                line += (f"   compiled {fast[name] * 1e3:8.2f} ms"
                         f"   speedup x{pure[name] / fast[name]:.2f}")
            print(line)

    print("\nend-to-end: 30 random knapsack-style MILPs per kernel")
    for pure_flag in ("0", "1"):
        env = dict(os.environ, CCGKIT_PURE_PYTHON=pure_flag)
        subprocess.run([sys.executable, "-c", SOLVE_SNIPPET], env=env,
                       check=True)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

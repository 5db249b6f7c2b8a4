"""Compare the compiled RK4 kernel with the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--sweep 20]

Part one times a single integration at several step counts. Part two times
an eigenvalue sweep end to end in a subprocess per backend, since the
backend is fixed at import.
"""

import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from revival import _rk4_numpy

try:
    from revival import _rk4
except ImportError:
    _rk4 = None

SWEEP = """
import time, warnings
from revival import Potential, eigen_sweep, BACKEND
warnings.simplefilter("ignore")
t = time.perf_counter()
eigen_sweep(Potential.mathieu(0.25j), {N}, 4096)
print(BACKEND, time.perf_counter() - t)
"""


def inputs(steps, lam=400.0 + 0.3j):
    x = np.linspace(0, np.pi, 2 * steps + 1)
    w = np.sqrt(complex(lam))
    return 0.5j * np.cos(2 * x) + 0j, complex(lam), np.pi / steps, w, 0.5 / w


def kernel_table(repeat):
    print(f"{'steps':>8} {'compiled ms':>12} {'numpy ms':>10} {'ratio':>7}")
    for steps in (4096, 16384, 65536, 262144):
        args = inputs(steps)
        t_np = min(timeit.repeat(lambda: _rk4_numpy.integrate(*args, 1), number=1, repeat=repeat))
        if _rk4 is None:
            print(f"{steps:>8} {'-':>12} {t_np * 1e3:>10.2f} {'-':>7}")
            continue
        t_c = min(timeit.repeat(lambda: _rk4.integrate(*args, 1), number=1, repeat=repeat))
        print(f"{steps:>8} {t_c * 1e3:>12.2f} {t_np * 1e3:>10.2f} {t_np / t_c:>7.1f}")


def sweep_table(N):
    print(f"\neigen_sweep(mathieu(i/4), N={N}, M=4096)")
    for flag in ("", "1"):
        env = dict(os.environ, REVIVAL_PURE_PYTHON=flag)
        out = subprocess.run(
            [sys.executable, "-c", SWEEP.format(N=N)], env=env, capture_output=True, text=True, check=True
        )
        backend, seconds = out.stdout.split()
        print(f"  {backend:>8}: {float(seconds):.2f} s")


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--sweep", type=int, default=20, help="modes in the end-to-end sweep (0 skips it)")
    args = ap.parse_args()
    kernel_table(args.repeat)
    if args.sweep:
        sweep_table(args.sweep)


if __name__ == "__main__":
    main()

"""Time the numba and numpy builds of the two hot kernels.

    python benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import math
import time

import numpy as np

from kinkfactor import _kernels
from kinkfactor.frame import exact_kink


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def rk4_case(impl):
    alpha = 1 / math.sqrt(2)
    lam = 3 / math.sqrt(2)
    return lambda: impl(alpha, lam, -0.5, 0.25, 1e-3, 20_000, 1e3)


def leapfrog_case(impl):
    alpha, lam, dx, dt = 3 / math.sqrt(17), 2.0, 0.05, 0.02
    x = np.linspace(-40, 80, 2401)
    k = exact_kink(alpha, lam)
    u0, u1 = k(x + alpha * dt), k(x)

    def go():
        impl(u0.copy(), u1.copy(), dt, dx, lam, 1500)
    return go


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if _kernels.rk4_frame_numba is None:
        raise SystemExit("numba not installed; nothing to compare")

    # compile outside the timed region
    rk4_case(_kernels.rk4_frame_numba)()
    leapfrog_case(_kernels.leapfrog_numba)()

    print(f"{'kernel':<34}{'numpy [ms]':>12}{'numba [ms]':>12}{'speedup':>10}")
    for name, case, np_impl, nb_impl in (
        ("rk4 frame ODE, 20k steps", rk4_case, _kernels.rk4_frame_numpy, _kernels.rk4_frame_numba),
        ("leapfrog, 2401 cells x 1500 steps", leapfrog_case, _kernels.leapfrog_numpy, _kernels.leapfrog_numba),
    ):
        t_np = best_of(case(np_impl), args.repeat)
        t_nb = best_of(case(nb_impl), args.repeat)
        print(f"{name:<34}{1e3 * t_np:>12.2f}{1e3 * t_nb:>12.2f}{t_np / t_nb:>10.1f}")


if __name__ == "__main__":
    main()

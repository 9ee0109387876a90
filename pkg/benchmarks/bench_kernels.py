"""Numba loop kernels vs the numpy/scipy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--starts 64]

Both kernel modules are importable side by side, so one process times
both; BELLORBIT_DISABLE_NUMBA only changes which one the library binds.
Numba compilation is triggered (and cached) before timing starts.
"""

import argparse
import timeit

import numpy as np

from bellorbit.kernels import loops, vectorized
from bellorbit.orbit import OrbitConfig, start_points
from bellorbit.states import random_state


def cases(rho, herm, x, starts):
    return {
        "jacobi_hermitian 4x4": lambda m: m.jacobi_hermitian(herm, 1e-15, 60),
        "m_value": lambda m: m.m_value(rho),
        "orbit_m (objective)": lambda m: m.orbit_m(x, rho),
        "nelder_mead 1 start": lambda m: m.nelder_mead_orbit(starts[8], rho, 0.4, 500, 1e-10, 1e-4, 1e-10),
        f"orbit search {len(starts)} starts": lambda m: [
            m.nelder_mead_orbit(s, rho, 0.4, 500, 1e-10, 1e-4, 1e-10) for s in starts
        ],
    }


def best_time(fn, repeat):
    number, t = 1, 0.0
    while t < 0.05:  # grow the loop count until a run is measurable
        t = timeit.timeit(fn, number=number)
        number *= 4
    number //= 4
    return min(timeit.repeat(fn, number=number, repeat=repeat)) / number


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--starts", type=int, default=64)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    rng = np.random.default_rng(args.seed)
    rho = np.ascontiguousarray(random_state(rng).mat)
    g = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    herm = np.ascontiguousarray(g + g.conj().T)
    x = rng.uniform(-np.pi, np.pi, 9)
    starts = start_points(OrbitConfig(starts=args.starts, seed=args.seed))

    table = cases(rho, herm, x, starts)
    for fn in table.values():
        fn(loops)  # compile

    print(f"{'kernel':<26}{'numba':>12}{'numpy':>12}{'speedup':>10}")
    for name, fn in table.items():
        t_nb = best_time(lambda: fn(loops), args.repeat)
        t_np = best_time(lambda: fn(vectorized), max(1, args.repeat // 2) if "search" in name else args.repeat)
        print(f"{name:<26}{_fmt(t_nb):>12}{_fmt(t_np):>12}{t_np / t_nb:>9.1f}x")


def _fmt(t):
    for unit, scale in (("s", 1.0), ("ms", 1e-3), ("us", 1e-6)):
        if t >= scale:
            return f"{t / scale:.3g} {unit}"
    return f"{t / 1e-9:.3g} ns"


if __name__ == "__main__":
    main()

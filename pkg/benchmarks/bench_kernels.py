"""Benchmark the compiled kernels against the NumPy fallback.

Usage:
    python benchmarks/bench_kernels.py [--n 12] [--repeat 3]

Times the four kernels on the trinomial family at the given degree and
prints one row per (kernel, backend) plus the speedup.  Both backends
produce identical outputs; this only measures wall time.
"""

import argparse
import time

import numpy as np

from apnlab import _kernels_py
from apnlab.gf2n import build_field
from apnlab.kernels import available_backends
from apnlab.trinomial import TrinomialParams, build_f


def _time(fn, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=12, help="field degree (even)")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    backends = available_backends()
    if "cython" not in backends:
        print("compiled kernels not built; benchmarking the fallback only")

    ctx = build_field(args.n)
    f = build_f(TrinomialParams(ctx, 1))
    exp2, logt, tr1 = ctx._exp2, ctx.log, ctx.tr1_table()
    target = 1 << (ctx.n // 2)

    jobs = {
        "build_exp_table": lambda impl: impl.build_exp_table(
            ctx.n, ctx.modulus, ctx.generator),
        "delta_max": lambda impl: impl.delta_max(f.lut),
        "walsh_value_counts": lambda impl: impl.walsh_value_counts(
            f.lut, exp2, logt, tr1),
        "bent_component_mask": lambda impl: impl.bent_component_mask(
            f.lut, exp2, logt, tr1, target),
    }

    print(f"n = {args.n}, lookup table size {ctx.order}, best of {args.repeat}")
    print(f"{'kernel':<22} {'python':>10} {'cython':>10} {'speedup':>9}")
    for name, job in jobs.items():
        t_py, r_py = _time(lambda: job(_kernels_py), args.repeat)
        if "cython" in backends:
            t_cy, r_cy = _time(lambda: job(backends["cython"]), args.repeat)
            same = (np.array_equal(r_py, r_cy) if isinstance(r_py, np.ndarray)
                    else r_py == r_cy)
            assert same, f"{name}: backends disagree"
            print(f"{name:<22} {t_py:>9.4f}s {t_cy:>9.4f}s {t_py / t_cy:>8.1f}x")
        else:
            print(f"{name:<22} {t_py:>9.4f}s {'-':>10} {'-':>9}")


if __name__ == "__main__":
    main()

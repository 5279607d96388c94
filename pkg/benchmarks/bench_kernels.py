"""Time the numba kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--p 3] [--n 6] [--batch 20000]

Both backends must agree on every input before timings are printed.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from triflag import _kernels as K


def random_invertible(rng, count, n, p):
    out = []
    while len(out) < count:
        m = rng.integers(0, p, size=(n, n), dtype=np.int64)
        if K.rref_inplace_numpy(m.copy(), p) == n:
            out.append(m)
    return np.stack(out)


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=int, default=3)
    ap.add_argument("--n", type=int, default=6)
    ap.add_argument("--batch", type=int, default=20000)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    rng = np.random.default_rng(args.seed)
    stack = random_invertible(rng, args.batch, args.n, args.p)
    print(f"backend in use: {K.backend_name()}  (p={args.p}, n={args.n}, batch={args.batch})")
    if not K.JIT_ACTIVE:
        print("numba disabled; only the numpy path is timed")

    jit_out = K.batch_flag_canon(stack, args.p)  # also triggers compilation
    np_out = K.batch_flag_canon_numpy(stack, args.p)
    if not np.array_equal(jit_out, np_out):
        raise SystemExit("backends disagree on batch_flag_canon")

    mats = [m.copy() for m in stack[:2000]]
    rows = [("batch_flag_canon", lambda: K.batch_flag_canon(stack, args.p),
             lambda: K.batch_flag_canon_numpy(stack, args.p)),
            ("rref x2000", lambda: [K.rref_inplace(m.copy(), args.p) for m in mats],
             lambda: [K.rref_inplace_numpy(m.copy(), args.p) for m in mats])]
    print(f"{'kernel':<18}{'active (s)':>12}{'numpy (s)':>12}{'speedup':>10}")
    for name, fast, slow in rows:
        tf, ts = best_of(fast, args.repeat), best_of(slow, args.repeat)
        print(f"{name:<18}{tf:>12.4f}{ts:>12.4f}{ts / tf:>9.1f}x")


if __name__ == "__main__":
    main()

"""Compare the numba and numpy kernel backends.

    python benchmarks/bench_kernels.py [--repeat 3]

Times pair-key generation (the co-occurrence projection) and single
layout steps on the exact and grid repulsion paths. Numba compile time is
excluded by a warm-up call.
"""
import argparse
import math
import time

import numpy as np

from wikimap import _kernels


def _incidence(n_rows, n_cols, rng):
    degree = np.minimum(rng.zipf(2.0, n_rows), 40)
    indptr = np.concatenate([[0], np.cumsum(degree)]).astype(np.int64)
    indices = np.concatenate(
        [np.sort(rng.choice(n_cols, d, replace=False)) for d in degree]
    ).astype(np.int64)
    return indptr, indices, n_cols


def _graph(n, rng):
    m = 4 * n
    src = rng.integers(0, n, m)
    dst = rng.integers(0, n, m)
    keep = src != dst
    return rng.random((n, 2)), src[keep], dst[keep], rng.random(keep.sum())


def _best(fn, repeat):
    fn()  # warm-up (and JIT compile)
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    rng = np.random.default_rng(0)

    inc = _incidence(200_000, 20_000, rng)
    cases = [("pair_keys 200k x 20k", lambda b: b.pair_keys(*inc))]
    for n, kind in ((1_000, "exact"), (2_000, "exact"), (20_000, "grid"), (100_000, "grid")):
        pos, src, dst, w = _graph(n, rng)
        k = 1 / math.sqrt(n)
        step = f"fr_step_{kind}"
        cases.append((
            f"{kind} step n={n}",
            lambda b, step=step, a=(pos, src, dst, w, k, 0.05, 1e-4): getattr(b, step)(*a),
        ))

    names = sorted(_kernels.BACKENDS)
    print(f"{'case':<24}" + "".join(f"{n:>12}" for n in names) + ("     speedup" if len(names) > 1 else ""))
    for label, fn in cases:
        row = {n: _best(lambda: fn(_kernels.BACKENDS[n]), args.repeat) for n in names}
        line = f"{label:<24}" + "".join(f"{row[n] * 1e3:>10.1f}ms" for n in names)
        if "numba" in row:
            line += f"{row['numpy'] / row['numba']:>11.1f}x"
        print(line)


if __name__ == "__main__":
    main()

"""Time the compiled kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--json out.json]
"""

import argparse
import json
import timeit

import numpy as np

from crossprod import _kernels_py

try:
    from crossprod import _kernels as compiled
except ImportError:
    compiled = None


def _cplx(rng, *shape):
    return rng.normal(size=shape) + 1j * rng.normal(size=shape)


def cases(rng):
    for K, m in [(9, 3), (33, 5), (129, 8)]:
        a, b = _cplx(rng, K, m), _cplx(rng, K, m)
        idx = np.stack([rng.permutation(m) for _ in range(K)]).astype(np.int64)
        yield f"twisted_conv K={K} m={m}", "twisted_conv", (a, b, idx)
    for n in [16, 256, 2048]:
        yield f"laurent_conv n={n}", "laurent_conv", (_cplx(rng, n), _cplx(rng, n))
    for p, L in [(2, 16), (3, 64), (5, 128)]:
        yield f"matrix_laurent_mul p={p} L={L}", "matrix_laurent_mul", (_cplx(rng, p, p, L), _cplx(rng, p, p, L))


def best_time(fn, args, repeat):
    timer = timeit.Timer(lambda: fn(*args))
    number, _ = timer.autorange()
    return min(timer.repeat(repeat=repeat, number=number)) / number


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json", help="write the timings here")
    args = ap.parse_args()
    rng = np.random.default_rng(0)
    rows = []
    print(f"{'case':36} {'numpy':>12} {'cython':>12} {'speedup':>8}")
    for label, name, inputs in cases(rng):
        t_py = best_time(getattr(_kernels_py, name), inputs, args.repeat)
        t_c = best_time(getattr(compiled, name), inputs, args.repeat) if compiled else float("nan")
        rows.append({"case": label, "python_s": t_py, "cython_s": t_c, "speedup": t_py / t_c})
        print(f"{label:36} {t_py * 1e6:10.1f}us {t_c * 1e6:10.1f}us {t_py / t_c:7.1f}x")
    if compiled is None:
        print("compiled extension not built; only the fallback was timed")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=2)


if __name__ == "__main__":
    main()

"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 3] [--quick]
"""
import argparse
import time

import numpy as np

from syncwin import _pure
from syncwin.generate import cerny, random_game, random_rng_game
from syncwin.streams import _failure

try:
    from syncwin import _kernels
except ImportError:
    _kernels = None


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases(quick):
    rng = np.random.default_rng(0)
    n_cerny = 12 if quick else 16
    c = cerny(n_cerny)
    yield f"powerset_bfs cerny({n_cerny})", lambda k: k.powerset_bfs(c.delta, (1 << c.n) - 1, 0, True)

    g_big = random_game(rng, 20_000 if quick else 200_000, 4)
    yield f"reverse_bfs n={g_big.n} b=4", lambda k: k.reverse_bfs(g_big.delta, g_big.win)

    g = random_game(rng, 1000, 3, reducible=False)
    letters = rng.integers(0, 3, size=100_000 if quick else 1_000_000).astype(np.int32)
    yield f"walk {letters.size} letters", lambda k: k.walk(g.delta, -1, 1, letters)

    stream = rng.integers(0, 2, size=letters.size).astype(np.int32)
    pat = np.array([1] * 24, dtype=np.int32)
    fail = _failure(pat)
    yield f"kmp_scan {stream.size} letters", lambda k: k.kmp_scan(stream, pat, fail, 0)

    rg = random_rng_game(rng, 50, 3, 4)
    rg_delta = np.ascontiguousarray(rg.delta)
    yield f"rng_walk {letters.size} letters", lambda k: k.rng_walk(rg_delta, -1, 1, 12345, letters)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true")
    args = ap.parse_args()
    if _kernels is None:
        print("compiled kernels not built; only the fallback can be timed")
    print(f"{'kernel':36s} {'pure [s]':>10s} {'compiled [s]':>13s} {'speedup':>8s}")
    for name, fn in cases(args.quick):
        t_pure = best_of(lambda: fn(_pure), args.repeat)
        if _kernels is None:
            print(f"{name:36s} {t_pure:10.4f} {'-':>13s} {'-':>8s}")
            continue
        assert _equal(fn(_pure), fn(_kernels)), name
        t_fast = best_of(lambda: fn(_kernels), args.repeat)
        print(f"{name:36s} {t_pure:10.4f} {t_fast:13.5f} {t_pure / t_fast:7.0f}x")


def _equal(a, b):
    if isinstance(a, tuple):
        return len(a) == len(b) and all(_equal(x, y) for x, y in zip(a, b))
    return np.array_equal(np.asarray(a), np.asarray(b))


if __name__ == "__main__":
    main()

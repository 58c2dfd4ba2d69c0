"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import math
import random
import timeit
from functools import reduce

from cardiotriage import _purepy
from cardiotriage.dataset import builtin_table1

try:
    from cardiotriage import _kernels
except ImportError:
    _kernels = None


def random_rows(n, m, seed=0):
    rng = random.Random(seed)
    return [[rng.randint(0, 1) for _ in range(m)] for _ in range(n)]


def cases():
    t1 = builtin_table1().rows()
    big = random_rows(12, 10)
    wide = random_rows(300, 40)
    return [
        ("scan table1 k=3 (9330)", "scan_partitions", (t1, 3, reduce(math.lcm, range(1, 11)))),
        ("scan n=12 k=3 (86526)", "scan_partitions", (big, 3, reduce(math.lcm, range(1, 13)))),
        ("scan n=12 k=4 (611501)", "scan_partitions", (big, 4, reduce(math.lcm, range(1, 13)))),
        ("pairwise 300x40", "pairwise_sq", (wide,)),
    ]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = [("python", _purepy)] + ([("cython", _kernels)] if _kernels else [])
    print(f"{'case':28s} " + " ".join(f"{name:>12s}" for name, _ in backends) + "   speedup")
    for label, fn, fargs in cases():
        times = []
        results = []
        for _, mod in backends:
            f = getattr(mod, fn)
            times.append(min(timeit.repeat(lambda: f(*fargs), number=1, repeat=args.repeat)))
            results.append(f(*fargs))
        if len(results) == 2:
            same = (results[0] == results[1]) if fn == "scan_partitions" else (results[0] == results[1]).all()
            assert same, f"backends disagree on {label}"
        speed = f"{times[0] / times[1]:8.1f}x" if len(times) == 2 else "      n/a"
        print(f"{label:28s} " + " ".join(f"{t * 1e3:10.2f}ms" for t in times) + f"  {speed}")


if __name__ == "__main__":
    main()

"""Compare the numba and numpy normal-form kernels on random words.

    python benchmarks/bench_kernels.py --words 5000 --length 6 --strands 4
"""

import argparse
import time

import numpy as np

from assocforge.kernels import expand_words


def random_words(rng, count, length, strands):
    ncodes = strands * (strands - 1) // 2
    words = rng.integers(0, ncodes, size=(count, length), dtype=np.int64)
    lengths = np.full(count, length, dtype=np.int64)
    return words, lengths


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def canonical(result):
    row, key, coeff = result
    order = np.lexsort((key, row))
    return row[order], key[order], coeff[order]


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--words", type=int, default=5000)
    p.add_argument("--length", type=int, default=6)
    p.add_argument("--strands", type=int, default=4)
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()

    rng = np.random.default_rng(args.seed)
    words, lengths = random_words(rng, args.words, args.length, args.strands)

    # warm-up compiles (or loads) the jitted kernel
    expand_words(words[:2], lengths[:2], backend="numba")

    results = {}
    print(f"{args.words} words of length {args.length} on {args.strands} strands")
    for backend in ("numba", "numpy"):
        secs, out = best_of(lambda b=backend: expand_words(words, lengths, backend=b), args.repeat)
        results[backend] = canonical(out)
        print(f"  {backend:6s} {secs * 1e3:9.2f} ms  ({len(out[0])} output terms)")
    agree = all(np.array_equal(a, b) for a, b in zip(results["numba"], results["numpy"]))
    print(f"  backends agree: {agree}")
    return 0 if agree else 1


if __name__ == "__main__":
    raise SystemExit(main())

"""Compare the compiled solver kernels with the pure-Python fallback.

Run ``python benchmarks/bench_kernels.py``.  Each line reports the best of
several repetitions for one kernel (or for the whole solver) under both
backends, and the speed-up of the compiled one.
"""

from __future__ import annotations

import argparse
import random
import timeit
from types import SimpleNamespace

from autostack import _kernels_py, stacking, zoo

try:
    from autostack import _kernels as _compiled
except ImportError:
    _compiled = None


def _random_words(alphabet, count, length, seed):
    rng = random.Random(seed)
    return [[rng.randrange(len(alphabet)) for _ in range(length)] for _ in range(count)]


def _best(fn, number, repeat=5):
    return min(timeit.repeat(fn, number=number, repeat=repeat)) / number


def bench_kernel(name, make_call, backends, number):
    times = {}
    for label, mod in backends.items():
        times[label] = _best(make_call(mod), number)
    return name, times


def bench_solver(structure_name, words, backends, number):
    s = zoo.get(structure_name).structure
    letters = s.alphabet.letters
    texts = [[letters[i] for i in w] for w in words]
    original = stacking.kernels
    times = {}
    try:
        for label, mod in backends.items():
            stacking.kernels = SimpleNamespace(free_reduce=mod.free_reduce, scan=mod.scan,
                                               splice=mod.splice, run=mod.run)

            def call():
                for w in texts:
                    s.normal_form(w)
            times[label] = _best(call, number)
    finally:
        stacking.kernels = original
    return f"solver {structure_name}", times


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--words", type=int, default=200)
    p.add_argument("--length", type=int, default=40)
    args = p.parse_args(argv)

    backends = {"python": _kernels_py}
    if _compiled is not None:
        backends["cython"] = _compiled
    else:
        print("compiled kernels unavailable; reporting the pure-Python backend only")

    z2 = zoo.get("Z2").structure
    code, inv, table, accepting = z2._encoding()
    words = _random_words(z2.alphabet.letters, args.words, args.length, seed=7)
    reduced = [_kernels_py.free_reduce(w, inv) for w in words]

    rows = [
        bench_kernel("free_reduce", lambda m: lambda: [m.free_reduce(w, inv) for w in words],
                     backends, 20),
        bench_kernel("scan", lambda m: lambda: [m.scan(w, [z2.nf.start], 0, table, accepting)
                                               for w in reduced], backends, 20),
        bench_kernel("splice", lambda m: lambda: [m.splice(w, len(w) // 2, [0, 2, 1], inv)
                                                 for w in reduced if w], backends, 20),
        bench_kernel("run", lambda m: lambda: [m.run(table, z2.nf.start, w) for w in reduced],
                     backends, 20),
        bench_solver("Z2", words, backends, 3),
        bench_solver("Z2*Z3", words, backends, 3),
    ]
    print(f"{'benchmark':<22}" + "".join(f"{b:>14}" for b in backends) + "   speed-up")
    for name, times in rows:
        cells = "".join(f"{times[b] * 1e3:>12.3f}ms" for b in backends)
        speed = f"{times['python'] / times['cython']:>9.2f}x" if "cython" in times else "      n/a"
        print(f"{name:<22}{cells}   {speed}")


if __name__ == "__main__":
    main()

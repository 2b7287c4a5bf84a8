"""Compare the compiled kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N]

Prints one line per kernel with the best time of each backend and the speedup.
"""
import argparse
import random
import timeit

from commcalc import _pykernels
from commcalc._backend import compiled_kernels
from commcalc.magnus import binomial
from commcalc.words import Alphabet, parse_word


def _workloads(rng):
    letters = [rng.choice([1, -1, 2, -2, 3, -3]) for _ in range(4000)]
    # a word full of cancellations
    cancelling = [x for pair in zip(letters, [-v for v in letters]) for x in pair]

    A = Alphabet("x,y,z")
    rels = [parse_word("[x,y]", A), parse_word("[y,z]", A), parse_word("[z,x]", A)]
    insertions = []
    for r in rels:
        for base in (r.letters(), tuple(-v for v in reversed(r.letters()))):
            insertions += [base[k:] + base[:k] for k in range(len(base))]
    word = parse_word("x z x^-1 y x y^-1 z^-1 y x^-1 y^-1", A).letters()

    def random_series(bound, size):
        out = {}
        for _ in range(size):
            d = rng.randint(0, bound)
            out[tuple(rng.randint(1, 3) for _ in range(d))] = rng.randint(-5, 5) or 1
        return out

    a, b = random_series(6, 200), random_series(6, 200)
    coeffs = [binomial(-3, j) for j in range(9)]
    return {
        "free_reduce (8000 letters)": lambda k: k.free_reduce(cancelling + letters),
        "insertion_neighbours (|w|=10, 24 insertions)": lambda k: k.insertion_neighbours(word, insertions, 20),
        "series_mul (200 x 200 terms, degree 6)": lambda k: k.series_mul(a, b, 6),
        "series_mul_power (200 terms, degree 8)": lambda k: k.series_mul_power(a, 2, coeffs, 8),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--number", type=int, default=20)
    args = ap.parse_args()
    if compiled_kernels is None:
        print("compiled kernels are not available; only the fallback can be timed")
    backends = {"python": _pykernels}
    if compiled_kernels is not None:
        backends["compiled"] = compiled_kernels
    for name, fn in _workloads(random.Random(7)).items():
        times = {}
        for label, mod in backends.items():
            times[label] = min(timeit.repeat(lambda: fn(mod), number=args.number, repeat=args.repeat)) / args.number
        if len(times) == 2 and fn(compiled_kernels) != fn(_pykernels):
            raise SystemExit(f"{name}: backends disagree")
        line = "  ".join(f"{k} {v * 1e3:8.3f} ms" for k, v in times.items())
        if len(times) == 2:
            line += f"  speedup {times['python'] / times['compiled']:5.1f}x"
        print(f"{name:48s} {line}")


if __name__ == "__main__":
    main()

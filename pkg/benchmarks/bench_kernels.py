"""Compare the compiled and pure-Python combination kernels.

    python benchmarks/bench_kernels.py [--repeat N]

Each row times one conjunctive combination of two random mass functions with
``k`` focal elements each on a frame of ``n`` elements, plus belief and
plausibility of one target against the first operand.
"""

from __future__ import annotations

import argparse
import random
import timeit

from sotif_dst import _pykernels

try:
    from sotif_dst import _ckernels
except ImportError:  # extension not built
    _ckernels = None

CASES = [(4, 8), (12, 64), (20, 256), (32, 512), (64, 1024)]


def operands(rng: random.Random, n: int, k: int):
    top = (1 << n) - 1
    bits = sorted({rng.randint(1, top) for _ in range(k)})
    weights = [rng.random() for _ in bits]
    total = sum(weights)
    return bits, [w / total for w in weights]


def time_backend(module, b1, v1, b2, v2, repeat: int) -> tuple[float, float]:
    conj = min(timeit.repeat(lambda: module.conjunctive(b1, v1, b2, v2), number=1, repeat=repeat))
    target = b2[0]
    query = min(timeit.repeat(lambda: (module.belief(b1, v1, target), module.plausibility(b1, v1, target)),
                              number=1, repeat=repeat))
    return conj, query


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    if _ckernels is None:
        print("compiled kernels are not built; only the Python backend can be timed")
    rng = random.Random(args.seed)

    print(f"{'n':>3} {'k':>5} {'pairs':>8}  {'python conj':>12} {'cython conj':>12} {'speedup':>8}  {'python query':>12} {'cython query':>12}")
    for n, k in CASES:
        b1, v1 = operands(rng, n, k)
        b2, v2 = operands(rng, n, k)
        py = time_backend(_pykernels, b1, v1, b2, v2, args.repeat)
        if _ckernels is not None:
            cy = time_backend(_ckernels, b1, v1, b2, v2, args.repeat)
            assert _ckernels.conjunctive(b1, v1, b2, v2) == _pykernels.conjunctive(b1, v1, b2, v2)
            cy_cols = f"{cy[0] * 1e3:>10.3f}ms {py[0] / cy[0]:>7.1f}x  {py[1] * 1e6:>10.1f}us {cy[1] * 1e6:>10.1f}us"
        else:
            cy_cols = f"{'-':>12} {'-':>8}  {py[1] * 1e6:>10.1f}us {'-':>12}"
        print(f"{n:>3} {k:>5} {len(b1) * len(b2):>8}  {py[0] * 1e3:>10.3f}ms {cy_cols}")


if __name__ == "__main__":
    main()

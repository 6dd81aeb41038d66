"""Pure-Python evidence kernels.

Reference implementation of the inner loops; ``_ckernels.pyx`` mirrors it
operation for operation. Accumulation order is fixed (outer loop over the
first operand, inner over the second, focal elements in the order given) so
both backends return bit-identical floats.
"""

from __future__ import annotations

from typing import Sequence


def conjunctive(
    bits1: Sequence[int],
    vals1: Sequence[float],
    bits2: Sequence[int],
    vals2: Sequence[float],
) -> tuple[dict[int, float], float]:
    """Unnormalized conjunctive product of two mass functions.

    Returns the mass accumulated on every non-empty intersection, keyed in
    first-seen order, and the conflict (mass of empty intersections).
    """
    out: dict[int, float] = {}
    conflict = 0.0
    for a, ma in zip(bits1, vals1):
        for b, mb in zip(bits2, vals2):
            c = a & b
            p = ma * mb
            if c:
                out[c] = out.get(c, 0.0) + p
            else:
                conflict += p
    return out, conflict


def conflict(
    bits1: Sequence[int],
    vals1: Sequence[float],
    bits2: Sequence[int],
    vals2: Sequence[float],
) -> float:
    k = 0.0
    for a, ma in zip(bits1, vals1):
        for b, mb in zip(bits2, vals2):
            if not a & b:
                k += ma * mb
    return k


def belief(bits: Sequence[int], vals: Sequence[float], target: int) -> float:
    total = 0.0
    for b, m in zip(bits, vals):
        if b & ~target == 0:
            total += m
    return total


def plausibility(bits: Sequence[int], vals: Sequence[float], target: int) -> float:
    total = 0.0
    for b, m in zip(bits, vals):
        if b & target:
            total += m
    return total

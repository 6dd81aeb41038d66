"""Evidence fusion: conflict coefficient, Dempster's rule, Yager's rule."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from . import kernels
from .errors import EmptyList, FrameMismatch, TotalConflict
from .mass import MassFunction, make_bpa

TOTAL_CONFLICT_TOL = 1e-12


class CombinationRule(enum.Enum):
    DEMPSTER = "dempster"
    YAGER = "yager"

    def __str__(self) -> str:
        return self.value

    @classmethod
    def parse(cls, name: str | CombinationRule) -> CombinationRule:
        if isinstance(name, cls):
            return name
        try:
            return cls(name.lower())
        except ValueError:
            raise ValueError(f"unknown combination rule {name!r}") from None


@dataclass(frozen=True)
class ConflictReport:
    k: float


def _same_frame(m1: MassFunction, m2: MassFunction) -> None:
    if m1.frame != m2.frame:
        raise FrameMismatch("mass functions are defined on different frames")


def conflict(m1: MassFunction, m2: MassFunction) -> ConflictReport:
    """Mass the two sources jointly put on disjoint pairs of focal elements."""
    _same_frame(m1, m2)
    return ConflictReport(kernels.conflict(m1.bits, m1.values, m2.bits, m2.values))


def dempster(m1: MassFunction, m2: MassFunction) -> MassFunction:
    _same_frame(m1, m2)
    joint, k = kernels.conjunctive(m1.bits, m1.values, m2.bits, m2.values)
    if abs(1.0 - k) <= TOTAL_CONFLICT_TOL:
        raise TotalConflict(f"sources are in total conflict (K={k!r})")
    scale = 1.0 - k
    return make_bpa(m1.frame, {c: v / scale for c, v in joint.items()})


def yager(m1: MassFunction, m2: MassFunction) -> MassFunction:
    """Conjunctive combination that moves the conflicting mass onto the whole frame."""
    _same_frame(m1, m2)
    joint, k = kernels.conjunctive(m1.bits, m1.values, m2.bits, m2.values)
    full = m1.frame.full_bits
    if k > 0:
        joint[full] = joint.get(full, 0.0) + k
    return make_bpa(m1.frame, joint)


_RULES = {CombinationRule.DEMPSTER: dempster, CombinationRule.YAGER: yager}


def combine(m1: MassFunction, m2: MassFunction, rule: CombinationRule | str) -> MassFunction:
    return _RULES[CombinationRule.parse(rule)](m1, m2)


def combine_many(masses: Sequence[MassFunction], rule: CombinationRule | str) -> MassFunction:
    """Left fold ``((m1 op m2) op m3) ...`` in the order given.

    Yager's rule is not associative, so the order of ``masses`` is part of
    the result. On total conflict the raised error carries the index of the
    mass function that could not be absorbed.
    """
    if not masses:
        raise EmptyList("nothing to combine")
    op = _RULES[CombinationRule.parse(rule)]
    frame = masses[0].frame
    result = masses[0]
    for step, m in enumerate(masses[1:], start=1):
        if m.frame != frame:
            raise FrameMismatch(f"mass function {step} is defined on a different frame")
        try:
            result = op(result, m)
        except TotalConflict as exc:
            raise TotalConflict(f"total conflict at fold step {step}: {exc}", step=step) from exc
    return result

"""Mass functions (basic probability assignments) and belief queries."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Mapping, Union

from . import kernels
from .errors import AllMassOnEmptySet, EmptySetMass, FrameMismatch, MassError, NegativeMass, NotNormalized
from .frame import Frame, SubsetMask

NORMALIZATION_TOL = 1e-9

SubsetKey = Union[SubsetMask, int]


class MassFunction:
    """Normalized mass function storing focal elements only.

    Focal elements are kept in ascending order of their set word. Instances
    are immutable; use :func:`make_bpa` or :func:`normalize` to build one.
    """

    __slots__ = ("frame", "_masses", "bits", "values")

    def __init__(self, frame: Frame, masses: Mapping[int, float]):
        ordered = sorted(masses.items())
        self.frame = frame
        self._masses = dict(ordered)
        self.bits = tuple(b for b, _ in ordered)
        self.values = tuple(v for _, v in ordered)

    def __setattr__(self, name, value):
        if hasattr(self, "values"):
            raise AttributeError("MassFunction is immutable")
        object.__setattr__(self, name, value)

    def __getitem__(self, subset: SubsetKey) -> float:
        return self._masses.get(self.frame._bits(subset), 0.0)

    def __len__(self) -> int:
        return len(self._masses)

    def __iter__(self) -> Iterator[SubsetMask]:
        return (SubsetMask(self.frame, b) for b in self.bits)

    def items(self) -> Iterator[tuple[SubsetMask, float]]:
        return ((SubsetMask(self.frame, b), v) for b, v in self._masses.items())

    def as_bits(self) -> dict[int, float]:
        return dict(self._masses)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MassFunction):
            return NotImplemented
        return self.frame == other.frame and self._masses == other._masses

    def __hash__(self) -> int:
        return hash((self.frame, tuple(self._masses.items())))

    def isclose(self, other: MassFunction, tol: float = NORMALIZATION_TOL) -> bool:
        """True when both assign the same mass to every subset within ``tol``."""
        if self.frame != other.frame:
            return False
        keys = self._masses.keys() | other._masses.keys()
        return all(abs(self._masses.get(k, 0.0) - other._masses.get(k, 0.0)) <= tol for k in keys)

    @property
    def is_vacuous(self) -> bool:
        return self.bits == (self.frame.full_bits,)

    def belief(self, subset: SubsetKey) -> float:
        return belief(self, subset)

    def plausibility(self, subset: SubsetKey) -> float:
        return plausibility(self, subset)

    def interval(self, subset: SubsetKey) -> UncertaintyInterval:
        return uncertainty_interval(self, subset)

    def __repr__(self) -> str:
        parts = ", ".join(
            f"{'+'.join(self.frame.labels_of(b)) or '∅'}: {v:.6g}" for b, v in self._masses.items()
        )
        return f"MassFunction({{{parts}}})"


@dataclass(frozen=True)
class UncertaintyInterval:
    belief: float
    plausibility: float

    @property
    def width(self) -> float:
        return self.plausibility - self.belief


def _collect(frame: Frame, assignments: Mapping[SubsetKey, float]) -> dict[int, float]:
    acc: dict[int, float] = {}
    for subset, value in assignments.items():
        bits = frame._bits(subset)
        value = float(value)
        if math.isnan(value) or math.isinf(value):
            raise MassError(f"mass for {frame.labels_of(bits)} is not finite")
        if value < 0:
            raise NegativeMass(f"negative mass {value} on {frame.labels_of(bits) or '∅'}")
        acc[bits] = acc.get(bits, 0.0) + value
    return acc


def make_bpa(frame: Frame, assignments: Mapping[SubsetKey, float]) -> MassFunction:
    """Validate ``assignments`` as a mass function without repairing it.

    Zero entries are dropped. Mass on the empty set, or a total that differs
    from 1 by more than 1e-9, is rejected.
    """
    acc = _collect(frame, assignments)
    if acc.get(0, 0.0) > 0:
        raise EmptySetMass(f"empty set carries mass {acc[0]}")
    acc.pop(0, None)
    total = math.fsum(acc.values())
    if abs(total - 1.0) > NORMALIZATION_TOL:
        raise NotNormalized(f"masses sum to {total!r}, not 1")
    return MassFunction(frame, {b: v for b, v in acc.items() if v > 0})


def normalize(frame: Frame, assignments: Mapping[SubsetKey, float]) -> MassFunction:
    """Discard mass on the empty set and rescale the rest to sum to 1."""
    acc = _collect(frame, assignments)
    acc.pop(0, None)
    acc = {b: v for b, v in acc.items() if v > 0}
    if not acc:
        raise AllMassOnEmptySet("no mass on any non-empty subset")
    total = math.fsum(acc.values())
    return MassFunction(frame, {b: v / total for b, v in acc.items()})


def vacuous(frame: Frame) -> MassFunction:
    return MassFunction(frame, {frame.full_bits: 1.0})


def _target(m: MassFunction, subset: SubsetKey) -> int:
    if isinstance(subset, SubsetMask) and subset.frame != m.frame:
        raise FrameMismatch("subset belongs to a different frame than the mass function")
    return m.frame._bits(subset)


def belief(m: MassFunction, subset: SubsetKey) -> float:
    """Total mass of focal elements contained in ``subset``."""
    return kernels.belief(m.bits, m.values, _target(m, subset))


def plausibility(m: MassFunction, subset: SubsetKey) -> float:
    """Total mass of focal elements that intersect ``subset``."""
    return kernels.plausibility(m.bits, m.values, _target(m, subset))


def uncertainty_interval(m: MassFunction, subset: SubsetKey) -> UncertaintyInterval:
    target = _target(m, subset)
    return UncertaintyInterval(
        kernels.belief(m.bits, m.values, target),
        kernels.plausibility(m.bits, m.values, target),
    )

"""Frame of discernment and fixed-width subset masks.

A subset of the frame is stored as an integer word where bit ``i`` is set
when element ``i`` belongs to the subset. Masks remember the frame they were
made for so that subsets of different frames are never mixed silently.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import (
    DuplicateLabel,
    EmptyLabel,
    FrameMismatch,
    FrameTooLarge,
    FrameTooLargeForEnumeration,
    UnknownLabel,
)

MAX_FRAME_SIZE = 64
MAX_ENUMERATION_SIZE = 20


@dataclass(frozen=True)
class Frame:
    """Ordered, immutable set of mutually exclusive outcome labels."""

    elements: tuple[str, ...]
    _index: dict[str, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        elements = tuple(self.elements)
        if not 1 <= len(elements) <= MAX_FRAME_SIZE:
            if not elements:
                raise EmptyLabel("a frame needs at least one element")
            raise FrameTooLarge(
                f"frame has {len(elements)} elements; at most {MAX_FRAME_SIZE} are supported"
            )
        index: dict[str, int] = {}
        for i, label in enumerate(elements):
            if not isinstance(label, str) or not label.strip():
                raise EmptyLabel(f"element {i} has an empty label")
            if label in index:
                raise DuplicateLabel(f"duplicate label {label!r}")
            index[label] = i
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "_index", index)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[str]:
        return iter(self.elements)

    @property
    def full_bits(self) -> int:
        return (1 << len(self.elements)) - 1

    @property
    def full(self) -> SubsetMask:
        return SubsetMask(self, self.full_bits)

    @property
    def empty(self) -> SubsetMask:
        return SubsetMask(self, 0)

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownLabel(f"{label!r} is not an element of the frame") from None

    def singleton(self, label: str) -> SubsetMask:
        return SubsetMask(self, 1 << self.index(label))

    def singletons(self) -> list[SubsetMask]:
        return [SubsetMask(self, 1 << i) for i in range(len(self.elements))]

    def mask(self, bits: int) -> SubsetMask:
        return SubsetMask(self, bits)

    def labels_of(self, mask: SubsetMask | int) -> list[str]:
        bits = self._bits(mask)
        return [label for i, label in enumerate(self.elements) if bits >> i & 1]

    def _bits(self, mask: SubsetMask | int) -> int:
        """Raw set word of ``mask`` after checking it belongs to this frame."""
        if isinstance(mask, SubsetMask):
            if mask.frame != self:
                raise FrameMismatch("subset mask belongs to a different frame")
            return mask.bits
        if isinstance(mask, bool) or not isinstance(mask, int):
            raise TypeError(f"expected SubsetMask or int, got {type(mask).__name__}")
        if mask < 0 or mask > self.full_bits:
            raise FrameMismatch(f"set word {mask:#x} does not fit a frame of {len(self)} elements")
        return mask


@dataclass(frozen=True, order=False)
class SubsetMask:
    frame: Frame
    bits: int

    def __post_init__(self) -> None:
        if self.bits < 0 or self.bits > self.frame.full_bits:
            raise FrameMismatch(
                f"set word {self.bits:#x} does not fit a frame of {len(self.frame)} elements"
            )

    @property
    def is_empty(self) -> bool:
        return self.bits == 0

    @property
    def is_full(self) -> bool:
        return self.bits == self.frame.full_bits

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __and__(self, other: SubsetMask) -> SubsetMask:
        return intersect(self, other)

    def __le__(self, other: SubsetMask) -> bool:
        _check_same(self, other)
        return self.bits & ~other.bits == 0

    def complement(self) -> SubsetMask:
        return SubsetMask(self.frame, self.frame.full_bits & ~self.bits)

    def labels(self) -> list[str]:
        return self.frame.labels_of(self)

    def __repr__(self) -> str:
        width = len(self.frame)
        return f"SubsetMask(0b{self.bits:0{width}b}, {'+'.join(self.labels()) or '∅'})"


def _check_same(a: SubsetMask, b: SubsetMask) -> None:
    if a.frame != b.frame:
        raise FrameMismatch("subset masks belong to different frames")


def make_frame(labels: Sequence[str]) -> Frame:
    """Build a frame whose element indices follow the order of ``labels``.

    Labels are trimmed of surrounding whitespace; comparison is case-sensitive.
    """
    labels = list(labels)
    if len(labels) > MAX_FRAME_SIZE:
        raise FrameTooLarge(f"frame has {len(labels)} elements; at most {MAX_FRAME_SIZE} are supported")
    cleaned = []
    for i, label in enumerate(labels):
        if not isinstance(label, str) or not label.strip():
            raise EmptyLabel(f"element {i} has an empty label")
        cleaned.append(label.strip())
    return Frame(tuple(cleaned))


def subset_from_labels(frame: Frame, labels: Iterable[str]) -> SubsetMask:
    bits = 0
    for label in labels:
        bits |= 1 << frame.index(label)
    return SubsetMask(frame, bits)


def enumerate_subsets(frame: Frame) -> list[SubsetMask]:
    """All ``2**n`` subsets in ascending order of their set word."""
    n = len(frame)
    if n > MAX_ENUMERATION_SIZE:
        raise FrameTooLargeForEnumeration(
            f"refusing to enumerate 2**{n} subsets (limit n={MAX_ENUMERATION_SIZE})"
        )
    return [SubsetMask(frame, bits) for bits in range(1 << n)]


def intersect(a: SubsetMask, b: SubsetMask) -> SubsetMask:
    _check_same(a, b)
    return SubsetMask(a.frame, a.bits & b.bits)

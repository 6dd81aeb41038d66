import pytest

from sotif_dst import enumerate_subsets, intersect, make_frame, subset_from_labels
from sotif_dst.errors import (
    DuplicateLabel,
    EmptyLabel,
    FrameMismatch,
    FrameTooLarge,
    FrameTooLargeForEnumeration,
    UnknownLabel,
)

OUTCOMES = ["cyclist", "truck", "false_negative", "false_positive"]


@pytest.fixture
def frame():
    return make_frame(OUTCOMES)


def test_make_frame_keeps_order(frame):
    assert len(frame) == 4
    assert frame.elements == tuple(OUTCOMES)
    assert [frame.index(x) for x in OUTCOMES] == [0, 1, 2, 3]


def test_minimal_frame():
    assert len(make_frame(["a"])) == 1


@pytest.mark.parametrize(
    "labels, error",
    [
        (["a", "a"], DuplicateLabel),
        (["a", " a "], DuplicateLabel),
        (["a", ""], EmptyLabel),
        (["   "], EmptyLabel),
        ([], EmptyLabel),
        ([f"x{i}" for i in range(65)], FrameTooLarge),
    ],
)
def test_make_frame_rejects(labels, error):
    with pytest.raises(error):
        make_frame(labels)


def test_sixty_four_elements_allowed():
    frame = make_frame([f"x{i}" for i in range(64)])
    assert frame.full_bits == 2**64 - 1


def test_labels_are_case_sensitive():
    frame = make_frame(["A", "a"])
    assert frame.index("a") == 1


def test_subset_from_labels(frame):
    assert subset_from_labels(frame, ["cyclist"]).bits == 0b0001
    assert subset_from_labels(frame, OUTCOMES).bits == 0b1111
    assert subset_from_labels(frame, OUTCOMES).is_full
    assert subset_from_labels(frame, []).is_empty


def test_subset_from_unknown_label(frame):
    with pytest.raises(UnknownLabel):
        subset_from_labels(frame, ["pedestrian"])


def test_enumerate_subsets():
    two = make_frame(["a", "b"])
    assert [m.bits for m in enumerate_subsets(two)] == [0b00, 0b01, 0b10, 0b11]
    subsets = enumerate_subsets(make_frame(OUTCOMES))
    assert len(subsets) == 16
    assert len({m.bits for m in subsets}) == 16
    assert subsets[0].is_empty and subsets[-1].is_full


def test_enumerate_guard():
    assert len(enumerate_subsets(make_frame([f"x{i}" for i in range(20)]))) == 2**20
    with pytest.raises(FrameTooLargeForEnumeration):
        enumerate_subsets(make_frame([f"x{i}" for i in range(21)]))


def test_intersect_examples(frame):
    m = frame.mask
    assert intersect(m(0b0011), m(0b0110)).bits == 0b0010
    assert intersect(m(0b0001), m(0b0010)).is_empty
    assert (m(0b0101) & frame.full) == m(0b0101)


def test_intersect_algebra_exhaustive(frame):
    subsets = enumerate_subsets(frame)
    for a in subsets:
        assert intersect(a, frame.full) == a
        assert intersect(a, a) == a
        for b in subsets:
            ab = intersect(a, b)
            assert ab == intersect(b, a)
            for c in subsets[::3]:
                assert intersect(ab, c) == intersect(a, intersect(b, c))


def test_labels_round_trip_exhaustive(frame):
    for mask in enumerate_subsets(frame):
        assert subset_from_labels(frame, mask.labels()) == mask


def test_masks_from_different_frames_do_not_mix(frame):
    other = make_frame(["x", "y", "z", "w"])
    with pytest.raises(FrameMismatch):
        intersect(frame.full, other.full)
    with pytest.raises(FrameMismatch):
        frame.mask(0b10000)


def test_subset_order_and_complement(frame):
    a = subset_from_labels(frame, ["cyclist"])
    b = subset_from_labels(frame, ["cyclist", "truck"])
    assert a <= b and not b <= a
    assert a.complement().bits == 0b1110

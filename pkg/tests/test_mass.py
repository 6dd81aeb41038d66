import pytest
from hypothesis import given, settings

from _corpus import FRAMES, bpas, oracle_belief, oracle_plausibility
from sotif_dst import belief, make_bpa, normalize, plausibility, uncertainty_interval
from sotif_dst.errors import AllMassOnEmptySet, EmptySetMass, FrameMismatch, NegativeMass, NotNormalized
from sotif_dst.frame import enumerate_subsets
from sotif_dst.mass import vacuous

TOL = 1e-9
F4 = FRAMES[4]
T1, T2, T3 = 0b0001, 0b0010, 0b0100


@pytest.fixture
def m():
    return make_bpa(F4, {T1: 0.5, T1 | T2: 0.3, F4.full_bits: 0.2})


def test_make_bpa_valid(m):
    assert len(m) == 3
    assert vacuous(F4).is_vacuous
    assert make_bpa(F4, {F4.full: 1.0}).is_vacuous


def test_zero_entries_dropped():
    m = make_bpa(F4, {T1: 1.0, T2: 0.0})
    assert list(m.bits) == [T1]


@pytest.mark.parametrize(
    "assignments, error",
    [
        ({T1: 0.5}, NotNormalized),
        ({0: 0.1, T1: 0.9}, EmptySetMass),
        ({T1: 1.2, T2: -0.2}, NegativeMass),
    ],
)
def test_make_bpa_rejects(assignments, error):
    with pytest.raises(error):
        make_bpa(F4, assignments)


def test_tolerance_boundary():
    make_bpa(F4, {T1: 0.5, T2: 0.5 + 0.9e-9})
    with pytest.raises(NotNormalized):
        make_bpa(F4, {T1: 0.5, T2: 0.5 + 2e-9})


def test_normalize():
    m = normalize(F4, {T1: 2.0, T2: 2.0})
    assert m[T1] == 0.5 and m[T2] == 0.5
    assert normalize(F4, {0: 0.5, F4.full_bits: 0.5}).is_vacuous
    with pytest.raises(AllMassOnEmptySet):
        normalize(F4, {0: 1.0})


def test_belief_examples(m):
    assert belief(m, F4.mask(T1)) == pytest.approx(0.5, abs=TOL)
    assert belief(m, F4.mask(T1 | T2)) == pytest.approx(0.8, abs=TOL)
    assert belief(m, F4.full) == pytest.approx(1.0, abs=TOL)
    assert belief(m, F4.empty) == 0.0


def test_plausibility_examples(m):
    assert plausibility(m, F4.mask(T1)) == pytest.approx(1.0, abs=TOL)
    assert plausibility(m, F4.mask(T3)) == pytest.approx(0.2, abs=TOL)
    assert plausibility(m, F4.empty) == 0.0


def test_interval_examples(m):
    iv = uncertainty_interval(m, F4.mask(T1))
    assert (iv.belief, iv.plausibility, iv.width) == pytest.approx((0.5, 1.0, 0.5), abs=TOL)
    iv = uncertainty_interval(vacuous(F4), F4.mask(T1))
    assert (iv.belief, iv.plausibility, iv.width) == (0.0, 1.0, 1.0)
    iv = uncertainty_interval(m, F4.full)
    assert iv.belief == pytest.approx(1.0, abs=TOL) and iv.width == 0.0


def test_frame_mismatch(m):
    with pytest.raises(FrameMismatch):
        belief(m, FRAMES[3].full)


@settings(max_examples=200)
@given(bpas())
def test_interval_laws(m):
    subsets = enumerate_subsets(m.frame)
    bel = {a.bits: belief(m, a) for a in subsets}
    pl = {a.bits: plausibility(m, a) for a in subsets}
    full = m.frame.full_bits
    for a in bel:
        assert bel[a] <= pl[a] + TOL
        assert pl[a] == pytest.approx(1 - bel[full & ~a], abs=TOL)
        assert 0 <= bel[a] and pl[a] <= 1 + TOL
        for b in bel:
            if a & ~b == 0:
                assert bel[a] <= bel[b] + TOL
                assert pl[a] <= pl[b] + TOL


@settings(max_examples=200)
@given(bpas())
def test_focal_iteration_matches_powerset_oracle(m):
    for a in enumerate_subsets(m.frame):
        labels = a.labels()
        assert belief(m, a) == pytest.approx(oracle_belief(m, labels), abs=TOL)
        assert plausibility(m, a) == pytest.approx(oracle_plausibility(m, labels), abs=TOL)


def test_mass_function_is_immutable(m):
    with pytest.raises(AttributeError):
        m.frame = FRAMES[3]


def test_width_is_exact_difference(m):
    for a in enumerate_subsets(F4):
        iv = uncertainty_interval(m, a)
        assert iv.width == iv.plausibility - iv.belief

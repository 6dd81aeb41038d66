import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _corpus import FRAMES, YAGER_ASSOC_COUNTEREXAMPLE, as_label_sets, bpas, oracle_combine
from sotif_dst import CombinationRule, combine_many, conflict, dempster, make_bpa, yager
from sotif_dst.errors import EmptyList, FrameMismatch, TotalConflict
from sotif_dst.mass import vacuous

TOL = 1e-9
F4 = FRAMES[4]
T1, T2, T3, T4 = 0b0001, 0b0010, 0b0100, 0b1000
FULL = F4.full_bits


@pytest.fixture
def zadeh():
    return make_bpa(F4, {T1: 0.9, T2: 0.1}), make_bpa(F4, {T3: 0.9, T2: 0.1})


@pytest.fixture
def agreeing():
    return make_bpa(F4, {T1: 0.6, FULL: 0.4}), make_bpa(F4, {T1: 0.5, FULL: 0.5})


def test_conflict_examples(zadeh, agreeing):
    assert conflict(*zadeh).k == pytest.approx(0.99, abs=1e-12)
    assert conflict(*agreeing).k == 0.0
    assert conflict(zadeh[0], vacuous(F4)).k == 0.0


def test_dempster_examples(zadeh, agreeing):
    assert dempster(*zadeh).isclose(make_bpa(F4, {T2: 1.0}))
    fused = dempster(*agreeing)
    assert fused[T1] == pytest.approx(0.8, abs=TOL)
    assert fused[FULL] == pytest.approx(0.2, abs=TOL)
    assert dempster(zadeh[0], vacuous(F4)) == zadeh[0]


def test_yager_examples(zadeh, agreeing):
    fused = yager(*zadeh)
    assert fused[T2] == pytest.approx(0.01, abs=TOL)
    assert fused[FULL] == pytest.approx(0.99, abs=TOL)
    assert len(fused) == 2
    assert yager(*agreeing).isclose(dempster(*agreeing))
    assert yager(zadeh[1], vacuous(F4)) == zadeh[1]


def test_total_conflict():
    a, b = make_bpa(F4, {T1: 1.0}), make_bpa(F4, {T2: 1.0})
    with pytest.raises(TotalConflict):
        dempster(a, b)
    assert yager(a, b).is_vacuous


def test_frame_mismatch():
    with pytest.raises(FrameMismatch):
        yager(vacuous(F4), vacuous(FRAMES[3]))
    with pytest.raises(FrameMismatch):
        combine_many([vacuous(F4), vacuous(FRAMES[3])], "yager")


def test_combine_many(zadeh):
    m = zadeh[0]
    assert combine_many([m], CombinationRule.YAGER) is m
    assert combine_many([vacuous(F4), vacuous(F4), m], "yager") == m
    assert combine_many([vacuous(F4), vacuous(F4), m], "dempster") == m
    folded = combine_many([*zadeh, vacuous(F4)], "yager")
    assert folded[T2] == pytest.approx(0.01, abs=TOL)
    assert folded[FULL] == pytest.approx(0.99, abs=TOL)
    with pytest.raises(EmptyList):
        combine_many([], "yager")


def test_combine_many_reports_failing_step():
    a, b = make_bpa(F4, {T1: 1.0}), make_bpa(F4, {T2: 1.0})
    with pytest.raises(TotalConflict) as info:
        combine_many([vacuous(F4), a, vacuous(F4), b], "dempster")
    assert info.value.step == 3


def test_rule_parse():
    assert CombinationRule.parse("Yager") is CombinationRule.YAGER
    with pytest.raises(ValueError):
        CombinationRule.parse("pcr5")


F3 = FRAMES[3]


def test_yager_associativity_counterexample():
    a, b, c = (make_bpa(F3, x) for x in YAGER_ASSOC_COUNTEREXAMPLE)
    left = yager(yager(a, b), c)
    right = yager(a, yager(b, c))
    assert left.isclose(make_bpa(F3, {0b001: 0.2, 0b100: 0.68, 0b111: 0.12}))
    assert right.isclose(make_bpa(F3, {0b001: 0.03, 0b100: 0.47, 0b101: 0.47, 0b111: 0.03}))
    assert not left.isclose(right)
    # the fold order therefore matters
    assert combine_many([a, b, c], "yager") == left


def _close(x, y):
    return x.isclose(y, TOL)


pairs = st.integers(2, 4).flatmap(lambda n: st.tuples(bpas(n), bpas(n)))
triples = st.integers(2, 4).flatmap(lambda n: st.tuples(bpas(n), bpas(n), bpas(n)))


@settings(max_examples=150)
@given(pairs)
def test_rules_match_powerset_oracle(pair):
    m1, m2 = pair
    expected = oracle_combine(m1, m2, "yager")
    got = as_label_sets(yager(m1, m2))
    assert set(got) <= set(expected)
    for key, value in expected.items():
        assert got.get(key, 0.0) == pytest.approx(value, abs=TOL)
    if conflict(m1, m2).k < 1 - 1e-6:
        expected = oracle_combine(m1, m2, "dempster")
        got = as_label_sets(dempster(m1, m2))
        for key, value in expected.items():
            assert got.get(key, 0.0) == pytest.approx(value, abs=1e-6)


@settings(max_examples=150)
@given(pairs)
def test_commutativity_and_identity(pair):
    m1, m2 = pair
    v = vacuous(m1.frame)
    assert _close(yager(m1, m2), yager(m2, m1))
    assert yager(m1, v) == m1 and yager(v, m1) == m1
    assert dempster(m1, v) == m1 and dempster(v, m1) == m1
    if conflict(m1, m2).k < 1 - 1e-6:
        assert dempster(m1, m2).isclose(dempster(m2, m1), 1e-6)


@settings(max_examples=150)
@given(pairs)
def test_yager_conserves_mass_and_matches_dempster_without_conflict(pair):
    m1, m2 = pair
    fused = yager(m1, m2)
    assert math.fsum(fused.values) == pytest.approx(1.0, abs=TOL)
    assert 0.0 <= conflict(m1, m2).k <= 1.0 + TOL
    if conflict(m1, m2).k == 0.0:
        assert _close(fused, dempster(m1, m2))


@settings(max_examples=100)
@given(triples)
def test_dempster_associative(triple):
    a, b, c = triple
    try:
        left = dempster(dempster(a, b), c)
        right = dempster(a, dempster(b, c))
    except TotalConflict:
        return
    # nearly-total conflict amplifies rounding; compare where the normalizer is sane
    if conflict(a, b).k < 0.999 and conflict(b, c).k < 0.999:
        assert left.isclose(right, 1e-6)

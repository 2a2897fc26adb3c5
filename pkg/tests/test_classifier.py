import random

import pytest
from hypothesis import given

from ladderdet.classgroup import DivisorClass, canonical_class
from ladderdet.classifier import Reason, Status, classify, enumerate_candidates, gorenstein
from ladderdet.errors import OutOfScope
from ladderdet.ladder import Ladder, reflect
from strategies import one_sided_ladders, random_two_connected, two_sided_ladders
from sweeps import candidate_algebra_problems


def anchors(res):
    return [s.anchor for s in res.trace]


def test_L(L):
    res = classify(L, 2)
    assert res.status is Status.EXACT and res.size == 2
    assert [list(c.coeffs) for c in res.classes] == [[0, 0, 0, 0], [-1, 1, 0, 0]]
    assert res.labels == ["R", "omega"]
    assert "thick-ladder-bound" in anchors(res) or "two-sided-induction" in anchors(res)


def test_O(O):
    res = classify(O, 2)
    assert (res.status, res.size) == (Status.EXACT, 2)
    assert [list(c.coeffs) for c in res.classes] == [[0, 0, 0], [0, -1, -1]]
    res3 = classify(O, 3)
    assert (res3.status, res3.bound, res3.size) == (Status.BOUND, 2, None)
    res4 = classify(O, 4)
    assert (res4.status, res4.size) == (Status.EXACT, 1)
    assert "rectangle-base-case" in anchors(res4)


def test_three_by_four_block(Y3):
    res = classify(Y3, 3)
    assert (res.status, res.size) == (Status.EXACT, 2)
    assert anchors(res)[:2] == ["strip-unused-cells", "rectangle-base-case"]


def test_small_cases(L):
    assert classify(L, 1).size == 1
    res = classify(L, 3)
    assert (res.status, res.size) == (Status.EXACT, 1)
    assert anchors(res) == ["no-t-minor"]
    with pytest.raises(ValueError):
        classify(L, 0)


def test_unknown_cases(T, Y2, L):
    res = classify(T, 2)
    assert res.status is Status.UNKNOWN and res.reason is Reason.COINCIDENTAL
    res = classify(Y2, 2)
    assert res.status is Status.UNKNOWN and res.reason is Reason.SEVERAL_COMPONENTS
    big = Ladder(6, 6, (2, 2, 1, 1, 1, 1), (6, 6, 6, 6, 5, 4))
    res = classify(big, 3)
    assert res.reason is Reason.TWO_SIDED_HIGHER_T


def test_single_component_recursion():
    # a lone cell beside a 2 x 3 block: only the block carries 2-minors
    Y = Ladder(3, 4, (4, 1, 1), (4, 3, 3))
    res = classify(Y, 2)
    assert anchors(res)[:2] == ["path-components", "single-component"]
    assert res.status is Status.EXACT and res.size == 2


def test_thin_fixture_with_witness(thin_fixture):
    res = classify(thin_fixture, 2, verify=True)
    assert res.size == 2
    step = [s for s in res.trace if s.anchor == "witness"][0]
    assert [o["verified"] for o in step.data["outcomes"]] == [True]


def test_result_json(L):
    data = classify(L, 2).to_json()
    assert data["status"] == "ExactSet"
    assert data["labels"] == ["R", "omega"]
    assert data["reason"] is None
    assert data["trace"]


def test_candidates_of_L(L):
    cands = enumerate_candidates(L)
    labels = [c.label for c in cands]
    assert labels[:2] == ["M1", "M2"]
    for c in cands:
        assert all(isinstance(ok, bool) for _, ok in c.side_conditions)
        if c.live:
            assert not c.cls.is_zero()


def test_candidates_scope(O, T):
    with pytest.raises(OutOfScope):
        enumerate_candidates(O)
    with pytest.raises(OutOfScope):
        enumerate_candidates(T)


def test_gorenstein():
    assert gorenstein(Ladder.rectangle(3, 3))
    assert not gorenstein(Ladder.rectangle(3, 4))


@given(two_sided_ladders)
def test_candidate_algebra(Y):
    assert candidate_algebra_problems(Y) == []


@given(two_sided_ladders)
def test_reflection_preserves_size(Y):
    assert classify(Y, 2).size == classify(reflect(Y), 2).size


@given(one_sided_ladders)
def test_one_sided_sizes(Y):
    res = classify(Y, 2)
    assert res.status is Status.EXACT
    _, omega = canonical_class(Y)
    assert res.size == (1 if omega.is_zero() else 2)
    assert res.classes[0] == DivisorClass.zero(omega.h, omega.k)


@given(one_sided_ladders)
def test_higher_t_verdicts_are_bounded(Y):
    for t in (3, 4):
        res = classify(Y, t)
        assert res.status in (Status.EXACT, Status.BOUND, Status.UNKNOWN)
        if res.status is Status.EXACT:
            assert res.size in (1, 2)
        if res.status is Status.BOUND:
            assert res.bound == 2


def test_verify_never_changes_verdict():
    rng = random.Random(7)
    for _ in range(20):
        Y = random_two_connected(rng, 7, 7, two_sided=True)
        a, b = classify(Y, 2), classify(Y, 2, verify=True)
        assert (a.status, a.size, a.classes) == (b.status, b.size, b.classes)

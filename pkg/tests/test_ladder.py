import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ladderdet.connectivity import (
    has_t_minor,
    is_path_connected,
    is_t_connected,
    minor_bearing_components,
    path_components,
    strip_unused,
    t_windows,
    window_cells,
)
from ladderdet.errors import (
    ConventionViolation,
    MissingCorner,
    NoTMinor,
    NotALadder,
    NotThin,
    NotTwoSided,
    OutOfScope,
)
from ladderdet.ladder import Ladder, Move, corners, delete_move, eta_kappa, parse_ladder, reflect, satisfies_axiom
from ladderdet.shape import shape, spine
from strategies import ladders, one_sided_ladders, two_connected_ladders


def test_corners_of_L(L):
    cd = corners(L)
    assert cd.lower == ((3, 2),)
    assert cd.upper == ((2, 3), (4, 2))
    assert (cd.h, cd.k) == (1, 2)
    assert cd.coincidental() == []


def test_eta_kappa_fixtures(L, eight):
    assert eta_kappa(L).as_tuple() == (1, 0, 2, 2)
    cd = corners(eight)
    assert (cd.h, cd.k) == (7, 8)
    assert eta_kappa(eight).as_tuple() == (3, 5, 4, 6)


def test_coincidental_fixture(T):
    assert corners(T).coincidental() == [(3, 2)]
    assert shape(T).coincidental_corners


def test_grid_json_roundtrip(L):
    assert Ladder.from_grid(L.to_grid()) == L
    assert Ladder.from_json(L.to_json()) == L
    assert parse_ladder(json.dumps(L.to_json())) == L
    assert parse_ladder(sorted(L.cells)) == L


def test_rectangle():
    R = Ladder.rectangle(3, 4)
    assert R.is_rectangle and len(R) == 12
    assert corners(R).h == corners(R).k == 0


@pytest.mark.parametrize("text", ["#.#\n###", "##.\n.##\n##."])
def test_rejects_non_ladders(text):
    with pytest.raises(NotALadder):
        Ladder.from_grid(text)


def test_rejects_bad_json():
    with pytest.raises(ConventionViolation):
        parse_ladder("{not json")


def test_axiom_on_cells():
    assert satisfies_axiom({(1, 1), (1, 2), (2, 1), (2, 2)})
    assert satisfies_axiom({(1, 2), (2, 1)})
    assert not satisfies_axiom({(1, 1), (1, 2), (2, 2)})


@given(ladders)
def test_reflect_is_an_involution(Y):
    R = reflect(Y)
    assert reflect(R) == Y
    assert len(R) == len(Y)
    cd, cr = corners(Y), corners(R)
    assert (cd.h, cd.k) == (cr.k, cr.h)


@given(ladders)
def test_grid_roundtrip_property(Y):
    assert Ladder.from_grid(Y.to_grid()) == Y


@given(two_connected_ladders)
def test_two_connected_is_path_connected(Y):
    assert is_path_connected(Y)
    assert len(path_components(Y)) == 1


def test_two_components(Y2):
    assert not is_path_connected(Y2)
    assert len(minor_bearing_components(Y2, 2)) == 2


def test_t_connectivity_of_O(O):
    assert is_t_connected(O, 2)
    assert is_t_connected(O, 3)
    assert not has_t_minor(O, 5)


@given(one_sided_ladders, st.integers(2, 4))
def test_strip_is_sound(Y, t):
    if not has_t_minor(Y, t):
        with pytest.raises(NoTMinor):
            strip_unused(Y, t)
        return
    s = strip_unused(Y, t)
    touched = set()
    for r, c in t_windows(Y, t):
        touched |= set(window_cells(r, c, t))
    assert not (touched & s.unused)
    assert s.cells | s.unused == Y.cells
    assert is_t_connected(s.ladder, t)


def test_strip_examples(O, Y3):
    assert len(strip_unused(O, 4).cells) == 16
    # the unused cells are the last column of the two full rows
    s = strip_unused(Y3, 3)
    assert s.unused == {(1, 5), (2, 5)}
    assert s.ladder.is_rectangle


def test_strip_needs_one_sided(L):
    with pytest.raises(OutOfScope):
        strip_unused(L, 2)


def test_delete_moves_on_L(L):
    shapes = {mv: (delete_move(L, mv).ladder.m, delete_move(L, mv).ladder.n) for mv in Move}
    assert shapes[Move.INVERT_A0B1] == (3, 2)
    for mv in Move:
        d = delete_move(L, mv)
        assert d.variable in L.cells
        assert len(d.ladder) < len(L)


def test_delete_needs_corner(O):
    with pytest.raises(MissingCorner):
        delete_move(O, Move.INVERT_A0B1)


def test_spine_fixture(spine_fixture, thin_fixture):
    rep = shape(spine_fixture)
    assert rep.two_sided and rep.thin
    S = spine(spine_fixture)
    assert shape(S).is_spine
    assert shape(spine(thin_fixture)).is_spine


def test_spine_errors(L, O):
    with pytest.raises(NotTwoSided):
        spine(O)
    with pytest.raises(NotThin):
        spine(L)

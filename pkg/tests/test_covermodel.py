import json

import pytest

from magnus import covermodel as cm
from magnus.freegroup import FreeWord, boundary_word, commutator
from magnus.groupring import GroupRingElem


def test_window_counts():
    assert cm.build_window(1, 1).polygon_count == 9
    assert len(list(cm.build_window(1, 1).polygons())) == 9
    assert cm.build_window(2, 1).polygon_count == 81
    w = cm.build_window(1, 1)
    assert w.sides_per_polygon == 4
    assert w.side_order() == ["A1+", "B1-", "A1-", "B1+"]
    # each of the 2 generators gives 3 * 2 interior ribbons in a 3x3 grid
    assert len(list(w.ribbons())) == 12
    assert json.loads(w.to_json())["radius"] == 1


def test_ribbon_gluing_is_involutive():
    for g in (1, 2):
        p = (0,) * (2 * g)
        for s in range(cm.side_count(g)):
            q, t = cm.neighbor(g, p, s)
            assert cm.neighbor(g, q, t) == (p, s)


def test_embedded_arcs_are_consistent():
    w = commutator(FreeWord.A(2, 1), FreeWord.B(2, 2) * FreeWord.B(2, 1))
    for push in (None, "+", "-"):
        arc = cm.embed_word(w, None, push)
        arc.check_consistent()
        assert arc.start_point[0] == arc.end_point[0] == (0, 0, 0, 0)


def test_chord_sign():
    L = 8000
    assert cm.chord_sign(cm.Chord((), 0, 4000), cm.Chord((), 2000, 6000), L) == 1
    assert cm.chord_sign(cm.Chord((), 0, 4000), cm.Chord((), 6000, 2000), L) == -1
    assert cm.chord_sign(cm.Chord((), 0, 2000), cm.Chord((), 4000, 6000), L) == 0
    with pytest.raises(cm.SharedEndpoint):
        cm.chord_sign(cm.Chord((), 0, 2000), cm.Chord((), 2000, 6000), L)


def test_shared_endpoint_rejected():
    x = cm.embed_basis_arc(0, (0, 0), 1)
    with pytest.raises(cm.SharedEndpoint):
        cm.intersection_number(x, x)


def test_genus1_table_values():
    # frozen output of the oracle, clockwise orientation
    a1, b1 = GroupRingElem.gen(1, 0), GroupRingElem.gen(1, 1)
    plus = [[1 - a1, a1 * b1**-1], [1 - a1**-1 - b1, 1 - b1**-1]]
    minus = [[a1**-1 - 1, b1**-1 - 1 + a1], [-(a1**-1) * b1, b1 - 1]]
    for i in range(2):
        for j in range(2):
            assert cm.pairing_oracle(i, j, "+", 2, 1) == plus[i][j]
            assert cm.pairing_oracle(i, j, "-", 2, 1) == minus[i][j]


def test_orientation_fixes_sign_of_symplectic_form():
    assert cm.pairing_oracle(0, 1, "+", 2, 1, cm.CW).augmentation() == 1
    assert cm.pairing_oracle(0, 1, "+", 2, 1, cm.CCW).augmentation() == -1


@pytest.mark.parametrize("genus", [1, 2])
def test_radius_stability(genus):
    n = 2 * genus
    for s in "+-":
        for i in range(n):
            for j in range(n):
                assert cm.pairing_oracle(i, j, s, 2, genus) == cm.pairing_oracle(i, j, s, 3, genus)


def test_small_window_is_detected():
    x = cm.embed_basis_arc(0, (0, 0), 1)
    y = cm.embed_basis_arc(0, (0, 0), 1, "+")
    with pytest.raises((cm.WindowTooSmall, cm.WindowOverflow)):
        cm.pairing_sum(x, y, cm.build_window(1, 1))
    with pytest.raises(ValueError):
        cm.pairing_oracle(0, 0, "+", 1, 1)


def test_lane_independence():
    g = 2
    window = cm.build_window(g, 3)
    u = commutator(FreeWord.A(g, 1), FreeWord.B(g, 2) * FreeWord.B(g, 1))
    v = boundary_word(g, 1)
    for s in "+-":
        ref = cm.pairing_sum(cm.embed_word(u), cm.embed_word(v, None, s), window)
        for lx, ly in ((700, 200), (150, 400), (500, 850)):
            x = cm.embed_word(u, lane_base=lx)
            y = cm.embed_word(v, None, s, lane_base=ly)
            assert cm.pairing_sum(x, y, window) == ref


def test_negative_direction_arc():
    # running A1 backwards from the basepoint is the chain -a1^-1 alpha1
    a1 = GroupRingElem.gen(1, 0)
    back = cm.embed_basis_arc(0, (0, 0), 1, direction=-1)
    window = cm.build_window(1, 3)
    for j in range(2):
        for s in "+-":
            y = cm.embed_basis_arc(j, (0, 0), 1, s)
            expected = -(a1**-1) * cm.pairing_oracle(0, j, s, 2, 1)
            assert cm.pairing_sum(back, y, window) == expected

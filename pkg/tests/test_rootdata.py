import json
from itertools import product

import pytest

from nilhecke.errors import InvalidCartanData, UnknownPreset
from nilhecke.rootdata import (
    PRESETS,
    RootDatum,
    load_datum,
    parse_roots,
    preset_datum,
    reflection_subgroup,
)

ORDERS = {"U2": 2, "U3": 6, "U4": 24, "SU2": 2, "SU3": 6, "SO3": 2, "PSU3": 6, "Sp2": 8}


def g2():
    return RootDatum([[1, 0], [0, 1]], [[2, -1], [-3, 2]], name="G2")


def one_line(word, n):
    # right multiplication by s_i swaps positions i, i+1
    p = list(range(1, n + 1))
    for i in word:
        p[i - 1], p[i] = p[i], p[i - 1]
    return p


def tableau_leq(u, w):
    n = len(u)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if sum(1 for a in u[:i] if a >= j) > sum(1 for a in w[:i] if a >= j):
                return False
    return True


@pytest.mark.parametrize("name", PRESETS)
def test_weyl_group_orders(name):
    assert len(preset_datum(name).weyl) == ORDERS[name]


def test_g2_raw_datum():
    d = g2()
    assert len(d.weyl) == 12
    assert len(d.positive_roots) == 6
    assert d.weyl.longest.length == 6


@pytest.mark.parametrize("name", list(PRESETS) + ["G2"])
def test_length_is_inversion_count(name):
    d = g2() if name == "G2" else preset_datum(name)
    pos = [r.vector for r in d.positive_roots]
    for w in d.weyl:
        inversions = sum(1 for r in pos if d.is_negative_root(w.act_vector(r)))
        assert inversions == w.length == len(w.word)
    assert d.weyl.longest.length == len(pos)


def test_reduced_word_counts():
    assert len(preset_datum("U3").weyl.reduced_words(preset_datum("U3").weyl.longest)) == 2
    assert len(preset_datum("Sp2").weyl.reduced_words(preset_datum("Sp2").weyl.longest)) == 2
    assert len(preset_datum("U4").weyl.reduced_words(preset_datum("U4").weyl.longest)) == 16
    assert len(g2().weyl.reduced_words(g2().weyl.longest)) == 2


@pytest.mark.parametrize("name", ["U3", "Sp2"])
def test_reduced_words_multiply_back(name):
    W = preset_datum(name).weyl
    for w in W:
        for word in W.reduced_words(w):
            assert len(word) == w.length and W.from_word(word) == w


def test_bruhat_order_matches_tableau_criterion():
    W = preset_datum("U4").weyl
    for u, w in product(W.elements, repeat=2):
        assert W.bruhat_leq(u, w) == tableau_leq(one_line(u.word, 4), one_line(w.word, 4))


def test_sp2_roots():
    d = preset_datum("Sp2")
    assert sorted(r.vector for r in d.positive_roots) == sorted([(1, -1), (0, 2), (1, 1), (2, 0)])
    # entry (i, j) is <alpha_i, alpha_j^v>
    assert d.cartan_matrix == [[2, -1], [-2, 2]]
    assert d.discriminant().degree() == 4


def test_invalid_data():
    with pytest.raises(InvalidCartanData):
        RootDatum([[1, 0]], [[1, 0]])
    with pytest.raises(InvalidCartanData):
        RootDatum([[1, 0], [0, 1]], [[2, -2], [-2, 2]])
    with pytest.raises(UnknownPreset):
        preset_datum("E8")


def test_json_round_trip(tmp_path):
    d = preset_datum("Sp2")
    path = tmp_path / "sp2.json"
    path.write_text(json.dumps(d.to_json()))
    e = load_datum(path)
    assert e.to_json() == d.to_json()
    assert len(e.weyl) == 8


def test_reflection_subgroups():
    sp = preset_datum("Sp2")
    sub = reflection_subgroup(sp, parse_roots("2e1,2e2", sp))
    assert len(sub) == 4 and not sub.is_parabolic
    u3 = preset_datum("U3")
    par = reflection_subgroup(u3, parse_roots("e1-e2", u3))
    assert len(par) == 2 and par.is_parabolic
    with pytest.raises(ValueError):
        parse_roots("e1", u3)


def test_weyl_action_is_a_group_action():
    d = preset_datum("U3")
    W = d.weyl
    v = (3, -1, 5)
    for u, w in product(W.elements, repeat=2):
        assert (u * w).act_vector(v) == u.act_vector(w.act_vector(v))
        assert (u * w).length <= u.length + w.length


def test_affine_cycle_is_not_finite():
    from nilhecke.errors import GroupNotFinite
    from nilhecke.rootdata import WeylGroup

    # pairwise products are all 1, so only the closure notices
    d = RootDatum([[1, 0, 0], [0, 1, 0], [0, 0, 1]], [[2, -1, -1], [-1, 2, -1], [-1, -1, 2]])
    with pytest.raises(GroupNotFinite):
        WeylGroup(d, bound=500)

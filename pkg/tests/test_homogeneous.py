from itertools import combinations

import pytest

from nilhecke.errors import RankDeficientSubgroup
from nilhecke.homogeneous import (
    HilbertSeries,
    coinvariant_dims,
    coset_length_series,
    flag_poincare,
    quotient_poincare,
    tensor_square_dims,
    tensor_square_report,
)
from nilhecke.rings import QQ, Ring
from nilhecke.rootdata import PRESETS, parse_roots, preset_datum, reflection_subgroup


def length_counts(datum):
    counts = [0] * (datum.weyl.longest.length + 1)
    for w in datum.weyl:
        counts[w.length] += 1
    return counts


@pytest.mark.parametrize("name", PRESETS)
def test_flag_series_counts_lengths(name):
    d = preset_datum(name)
    s = flag_poincare(d)
    assert s.coeffs[::2] == length_counts(d)
    assert not any(s.coeffs[1::2])
    assert s.total() == len(d.weyl) and s.is_palindromic()
    assert coinvariant_dims(d)[: len(s.coeffs[::2])] == length_counts(d)


def test_flag_series_closed_forms():
    assert flag_poincare(preset_datum("U3")).closed_form == "(1+t^2)(1+t^2+t^4)"
    assert flag_poincare(preset_datum("Sp2")).coeffs == [1, 0, 2, 0, 2, 0, 2, 0, 1]


@pytest.mark.parametrize("name", ["U3", "U4", "Sp2"])
def test_parabolic_quotients(name):
    d = preset_datum(name)
    simple = d.simple_roots
    for k in range(len(simple) + 1):
        for roots in combinations(simple, k):
            sub = reflection_subgroup(d, list(roots))
            assert sub.is_parabolic
            q = quotient_poincare(d, sub, QQ, 2 * d.weyl.longest.length)
            c = coset_length_series(d, sub, 2 * d.weyl.longest.length)
            assert q == c and not c.warnings
            assert q.total() == len(d.weyl) // len(sub)
            assert q.is_palindromic()


def test_maximal_rank_non_parabolic():
    sp = preset_datum("Sp2")
    for text, expected in [("2e1,2e2", [1, 0, 0, 0, 1]), ("2e1", [1, 0, 1, 0, 1, 0, 1])]:
        sub = reflection_subgroup(sp, parse_roots(text, sp))
        q = quotient_poincare(sp, sub, QQ, 12)
        assert q.coeffs[: len(expected)] == expected and not any(q.coeffs[len(expected):])
        assert q.total() == len(sp.weyl) // len(sub)
        c = coset_length_series(sp, sub, 12)
        assert c.warnings and c != q
    # over F3 the count is unchanged
    sub = reflection_subgroup(sp, parse_roots("2e1,2e2", sp))
    assert quotient_poincare(sp, sub, Ring.mod(3), 12).coeffs[:5] == [1, 0, 0, 0, 1]


def test_non_closed_subsystem_is_rejected():
    sp = preset_datum("Sp2")
    sub = reflection_subgroup(sp, parse_roots("e1-e2,e1+e2", sp))
    with pytest.raises(RankDeficientSubgroup):
        quotient_poincare(sp, sub, QQ, 8)


def test_tensor_square_characteristic_two():
    sp = preset_datum("Sp2")
    sub = reflection_subgroup(sp, parse_roots("2e1,2e2", sp))
    rep = tensor_square_report(sp, sub, 12)
    assert rep["expected"] == rep["integral_Q"] == rep["integral_F2"]
    assert rep["char2_excess_degrees"] == [2, 4, 6, 8, 10, 12]
    # in odd characteristic the two routes agree
    F3 = Ring.mod(3)
    assert tensor_square_dims(sp, sub, F3, 8, "integral") == tensor_square_dims(sp, sub, F3, 8, "field")


def test_tensor_square_parabolic():
    u3 = preset_datum("U3")
    sub = reflection_subgroup(u3, parse_roots("e1-e2", u3))
    rep = tensor_square_report(u3, sub, 8)
    assert rep["expected"] == rep["integral_Q"] == rep["integral_F2"] == rep["field_F2"]


def test_series_helpers():
    s = HilbertSeries([1, 0, 2, 0, 1])
    assert s.format() == "1 + 2*t^2 + t^4"
    assert s == HilbertSeries([1, 0, 2, 0, 1, 0, 0])
    assert s.truncated(2).coeffs == [1, 0, 2]
    assert s.to_json() == {"coeffs": [1, 0, 2, 0, 1], "closed_form": None, "warnings": []}

from fractions import Fraction

from hypothesis import given, strategies as st

from nilhecke.linalg import Echelon, gcd_combination, kernel, rank
from nilhecke.rings import QQ, ZZ, Ring

vectors = st.lists(
    st.dictionaries(st.integers(0, 3), st.integers(-4, 4).filter(bool), max_size=4),
    min_size=1, max_size=5,
)


def det3(m):
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


@given(st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=3, max_size=3))
def test_full_rank_iff_nonzero_determinant(m):
    vecs = [{j: x for j, x in enumerate(row) if x} for row in m]
    assert (rank(QQ, vecs) == 3) == (det3(m) != 0)


@given(vectors)
def test_kernel_vectors_annihilate(columns):
    for k in kernel(ZZ, columns):
        combo = {}
        for i, c in k.items():
            for j, x in columns[i].items():
                combo[j] = combo.get(j, 0) + c * x
        assert not any(combo.values())
    assert len(kernel(QQ, columns)) == len(columns) - rank(QQ, columns)


@given(vectors)
def test_express_reconstructs(vecs):
    ech = Echelon(QQ)
    for i, v in enumerate(vecs):
        ech.insert(v, i)
    target = {}
    for v in vecs:
        for j, x in v.items():
            target[j] = target.get(j, 0) + 2 * x
    comb = ech.express(target)
    assert comb is not None
    rebuilt = {}
    for i, c in comb.items():
        for j, x in vecs[i].items():
            rebuilt[j] = rebuilt.get(j, 0) + c * x
    assert {j: Fraction(x) for j, x in rebuilt.items() if x} == {j: Fraction(x) for j, x in target.items() if x}


def test_integer_echelon_respects_saturation():
    ech = Echelon(ZZ)
    ech.insert({0: 2}, "a")
    assert not ech.contains({0: 1})
    assert ech.contains({0: 4})
    assert Echelon(QQ).insert({0: 2}) is True


def test_rank_mod_p_can_drop():
    vecs = [{0: 1, 1: 1}, {0: 1, 1: -1}]
    assert rank(QQ, vecs) == 2
    assert rank(Ring.mod(2), vecs) == 1


@given(st.lists(st.integers(-30, 30), min_size=1, max_size=5))
def test_gcd_combination(values):
    from math import gcd
    g, coeffs = gcd_combination(values)
    expected = 0
    for v in values:
        expected = gcd(expected, v)
    assert g == expected
    assert sum(c * v for c, v in zip(coeffs, values)) == g

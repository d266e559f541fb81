import pytest

from nilhecke.errors import MembershipUndecidable, UnsupportedRing
from nilhecke.invariants import (
    ModuleSpec,
    base_vs_invariants,
    decompose_AW,
    identity_matrix,
    invariants_graded,
    matmul,
    reflection_matrix,
    table_row_check,
    weyl_matrix,
    weyl_matrix_from_word,
    SimpleIdeal,
)
from nilhecke.lowrank import TableEntry
from nilhecke.poly import Polynomial, parse_polynomial
from nilhecke.rings import QQ, ZZ, Ring
from nilhecke.rootdata import PRESETS, preset_datum
from nilhecke.schubert import recombine, schubert_family, sw_basis

DEGREES = {"U2": [1, 2], "U3": [1, 2, 3], "U4": [1, 2, 3, 4], "SU2": [2], "SU3": [2, 3],
           "SO3": [2], "PSU3": [2, 3], "Sp2": [2, 4]}
ZLOC = {"SO3": Ring.localized({2}), "PSU3": Ring.localized({3})}


def weighted_counts(degrees, bound):
    # oracle: number of monomials in generators of the given degrees
    counts = [1] + [0] * bound
    for g in degrees:
        for d in range(g, bound + 1):
            counts[d] += counts[d - g]
    return counts


def setup(name):
    d = preset_datum(name)
    ring = ZLOC.get(name, ZZ)
    return schubert_family(d, ring), sw_basis(d, ring)


@pytest.mark.parametrize("name", PRESETS)
def test_matrices_are_involutions_and_act_correctly(name):
    fam, basis = setup(name)
    d = fam.datum
    order = fam.matrix_order()
    n = len(order)
    for i in range(1, d.nsimple + 1):
        m = reflection_matrix(fam, basis, i)
        assert matmul(m, m) == identity_matrix(basis, n)
        s = d.weyl.simple(i)
        # column c holds the coordinates of s_i(S_{order[c]})
        for c, w in enumerate(order):
            coeffs = {order[r]: m[r][c] for r in range(n)}
            assert recombine(coeffs, fam, basis) == s.act(fam[w])


def test_braid_relations_for_matrices():
    fam, basis = setup("U3")
    m1, m2 = (reflection_matrix(fam, basis, i) for i in (1, 2))
    assert matmul(matmul(m1, m2), m1) == matmul(matmul(m2, m1), m2)
    fam, basis = setup("Sp2")
    m1, m2 = (reflection_matrix(fam, basis, i) for i in (1, 2))
    m12 = matmul(m1, m2)
    m21 = matmul(m2, m1)
    assert matmul(m12, m12) == matmul(m21, m21)


def test_weyl_matrix_from_word():
    fam, basis = setup("Sp2")
    W = fam.datum.weyl
    for w in W:
        assert weyl_matrix(fam, basis, w) == weyl_matrix_from_word(fam, basis, w.word)


@pytest.mark.parametrize("name", PRESETS)
def test_rational_invariants_have_polynomial_hilbert_series(name):
    d = preset_datum(name)
    spec = ModuleSpec(d, QQ, [], 8)
    expected = weighted_counts(DEGREES[name], 8)
    assert invariants_graded(spec, "W").dims(8) == expected
    assert invariants_graded(spec, "ID").dims(8) == expected


def test_su2_mod_2_invariants():
    d = preset_datum("SU2")
    spec = ModuleSpec(d, Ring.mod(2), [], 6)
    assert invariants_graded(spec, "W").dims(6) == [1] * 7
    assert invariants_graded(spec, "ID").dims(6) == [1, 0, 1, 0, 1, 0, 1]
    rep = base_vs_invariants(d, Ring.mod(2), 6)
    assert rep["base"] == [1, 0, 1, 0, 1, 0, 1]


def test_quotient_module_invariants_u2():
    d = preset_datum("U2")
    F2 = Ring.mod(2)
    p1 = sw_basis(d, F2).generators[0]
    spec = ModuleSpec(d, F2, [p1], 4)
    aw = invariants_graded(spec, "W").dims(4)
    aid = invariants_graded(spec, "ID").dims(4)
    assert aw[1] == 1 and aid[1] == 0
    ident, j = decompose_AW(spec, schubert_family(d, F2))
    assert [a + b for a, b in zip(ident.dims(4), j.dims(4))] == aw


def test_module_spec_validation():
    d = preset_datum("U2")
    with pytest.raises(UnsupportedRing):
        ModuleSpec(d, Ring.mod(4), [])
    p1 = sw_basis(d, ZZ).generators[0]
    with pytest.raises(UnsupportedRing):
        ModuleSpec(d, ZZ, [p1])
    with pytest.raises(ValueError):
        ModuleSpec(d, QQ, [Polynomial.variable(QQ, 2, 0)])
    with pytest.raises(ValueError):
        ModuleSpec(d, QQ, [p1 + p1 * p1])


def test_simple_ideal():
    names = ["p1", "p2", "p3"]
    g = parse_polynomial("p1*p2 + p3", names)
    ideal = SimpleIdeal(2, g, names=tuple(names))
    assert ideal.var == 2
    assert ideal.contains(parse_polynomial("2*p1 + p1^2*p2 + p1*p3", names))
    assert not ideal.contains(parse_polynomial("p1", names))
    assert str(ideal) == "(2, p1*p2 + p3)"
    with pytest.raises(MembershipUndecidable):
        SimpleIdeal(0, parse_polynomial("p1^2 + p2^2", names))


def test_table_check_rejects_a_wrong_ideal():
    # (M - Id) S_{s1} = (-2, p1): in (2, p1) but not in (2)
    wrong = [TableEntry({(1,): "1"}, 2)]
    rep = table_row_check("U2", claimed=wrong)
    assert not rep["passed"]
    assert not rep["forward"][0]["passed"] and rep["forward"][0]["witness"] is not None
    assert table_row_check("U2")["passed"]


def test_table_check_rejects_a_missing_generator():
    # dropping the Sp2 generators leaves the mod 2 invariants unexplained
    rep = table_row_check("Sp2", claimed=[])
    assert not rep["passed"]

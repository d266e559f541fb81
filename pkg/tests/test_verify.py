from nilhecke import verify
from nilhecke.rings import ZZ, Ring
from nilhecke.rootdata import preset_datum


def test_corrupted_schubert_list_is_caught(monkeypatch):
    lists = {"U3": dict(verify.SCHUBERT_LISTS["U3"])}
    lists["U3"][(1, 2)] = "e1*e3"
    monkeypatch.setattr(verify, "SCHUBERT_LISTS", lists)
    (result,) = verify.suite_schubert_lists()
    assert not result.passed and "(1, 2)" in result.detail


def test_corrupted_matrix_is_caught(monkeypatch):
    rows = [list(r) for r in verify.MATRICES[("Sp2", 2)]]
    rows[6][1] = "p1"  # the 2*p1 entry
    monkeypatch.setattr(verify, "MATRICES", {("Sp2", 2): rows})
    (result,) = verify.suite_matrices()
    assert not result.passed


def test_wrong_torsion_is_caught(monkeypatch):
    monkeypatch.setattr(verify, "TORSION_INDICES", {"SO3": 1})
    (result,) = verify.suite_torsion()
    assert not result.passed


def test_run_suite_filters_groups():
    results = verify.run_suite("antisymmetrizer", ["SU2"])
    assert [r.criterion for r in results] == ["antisymmetrizer SU2"]


def test_natural_ring():
    assert verify.natural_ring(preset_datum("U3")) == ZZ
    assert verify.natural_ring(preset_datum("PSU3")) == Ring.localized({3})


def test_random_polynomials_are_reproducible():
    import random
    a = verify.random_polynomial(random.Random(3), ZZ, 3, 4)
    b = verify.random_polynomial(random.Random(3), ZZ, 3, 4)
    assert a == b and a.degree() <= 4

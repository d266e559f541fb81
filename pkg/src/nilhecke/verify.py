"""Property suites reproducing the checkable content of the theory.

Every suite is a function ``suite(groups=None) -> list[CheckResult]``.
Random inputs come from a seeded generator, so runs are reproducible.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .demazure import (
    DemazureElement,
    antisymmetrizer_identity_check,
    averaging,
    delta,
    demazure_mul,
    discriminant_identity_check,
    leibniz_rhs,
    partial,
    partial_word,
    psi,
)
from .homogeneous import (
    coinvariant_dims,
    coset_length_series,
    flag_poincare,
    quotient_poincare,
    tensor_square_report,
)
from .invariants import (
    ModuleSpec,
    base_vs_invariants,
    decompose_AW,
    invariants_graded,
    reflection_matrix,
    table_row_check,
)
from .linalg import rank
from .lowrank import MATRICES, SCHUBERT_LISTS, TABLE_ROWS, TORSION_INDICES
from .poly import Polynomial, monomials_of_degree, parse_polynomial
from .rings import QQ, ZZ, Ring
from .rootdata import PRESETS, RootDatum, parse_roots, preset_datum, reflection_subgroup
from .schubert import (
    dual_family,
    expand_in_schubert_basis,
    pairing,
    recombine,
    schubert_family,
    sw_basis,
    torsion_index,
)

SEED = 20240601
G2 = RootDatum([[1, 0], [0, 1]], [[2, -1], [-3, 2]], name="G2")


@dataclass
class CheckResult:
    criterion: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.criterion}: {self.detail}"


def random_polynomial(rng: random.Random, ring: Ring, nvars: int, max_degree: int,
                      density: float = 0.35, coeff: int = 3) -> Polynomial:
    terms = {}
    for d in range(max_degree + 1):
        for m in monomials_of_degree(nvars, d):
            if rng.random() < density:
                terms[m] = rng.randint(-coeff, coeff)
    return Polynomial(ring, nvars, terms)


def natural_ring(datum: RootDatum) -> Ring:
    """Z, or Z[1/t] when the torsion index t is not 1."""
    t = torsion_index(datum)
    return Ring.localized({t} if t > 1 else set())


def _groups(groups, default):
    return list(default) if not groups else list(groups)


def _datum(name: str) -> RootDatum:
    return G2 if name == "G2" else preset_datum(name)


# 1-3 --------------------------------------------------------------------------

def suite_schubert_lists(groups=None):
    out = []
    for g in _groups(groups, SCHUBERT_LISTS):
        if g not in SCHUBERT_LISTS:
            continue
        datum = preset_datum(g)
        fam = schubert_family(datum, ZZ)
        W = datum.weyl
        bad = []
        for word, text in SCHUBERT_LISTS[g].items():
            expected = parse_polynomial(text, datum.var_names)
            if fam[W.from_word(word)] != expected:
                bad.append(word)
        out.append(CheckResult(f"schubert list {g}", not bad and len(fam.members) == len(SCHUBERT_LISTS[g]),
                               f"{len(SCHUBERT_LISTS[g])} polynomials" + (f", mismatches {bad}" if bad else "")))
    return out


def suite_matrices(groups=None):
    out = []
    for (g, i), rows in MATRICES.items():
        if groups and g not in groups:
            continue
        datum = preset_datum(g)
        fam = schubert_family(datum, ZZ)
        basis = sw_basis(datum, ZZ)
        mat = reflection_matrix(fam, basis, i)
        bad = [
            (r, c)
            for r, row in enumerate(rows)
            for c, text in enumerate(row)
            if mat[r][c] != parse_polynomial(text, basis.names)
        ]
        out.append(CheckResult(f"matrix {g} s{i}", not bad, f"{len(rows)}x{len(rows)} entries" +
                               (f", mismatches at {bad[:5]}" if bad else "")))
    return out


def suite_torsion(groups=None):
    out = []
    for g in _groups(groups, TORSION_INDICES):
        t = torsion_index(preset_datum(g))
        expected = TORSION_INDICES.get(g)
        out.append(CheckResult(f"torsion index {g}", expected is None or t == expected, f"t = {t}"))
    return out


# 4-7 --------------------------------------------------------------------------

def suite_antisymmetrizer(groups=None, samples=100):
    rng = random.Random(SEED)
    out = []
    for g in _groups(groups, PRESETS):
        datum = _datum(g)
        ok = all(
            antisymmetrizer_identity_check(datum, random_polynomial(rng, ZZ, datum.rank, 6))
            for _ in range(samples)
        )
        out.append(CheckResult(f"antisymmetrizer {g}", ok, f"{samples} random polynomials, degree <= 6"))
    return out


def suite_braid(groups=None):
    """Reduced-word independence of d_w and the braid relations."""
    out = []
    for g in _groups(groups, ("U3", "Sp2", "G2")):
        datum = _datum(g)
        W = datum.weyl
        checked = 0
        ok = True
        for w in W:
            words = W.reduced_words(w)
            monos = [m for d in range(w.length + 4) for m in monomials_of_degree(datum.rank, d)]
            for m in monos:
                f = Polynomial.monomial(ZZ, m)
                ref = partial_word(datum, words[0], f)
                for word in words[1:]:
                    checked += 1
                    if partial_word(datum, word, f) != ref:
                        ok = False
        # explicit braid relation for each pair of simple indices
        for i in range(1, datum.nsimple + 1):
            for j in range(i + 1, datum.nsimple + 1):
                m = _braid_order(datum, i, j)
                w1 = tuple((i, j)[k % 2] for k in range(m))
                w2 = tuple((j, i)[k % 2] for k in range(m))
                for d in range(7):
                    for mono in monomials_of_degree(datum.rank, d):
                        f = Polynomial.monomial(ZZ, mono)
                        if partial_word(datum, w1, f) != partial_word(datum, w2, f):
                            ok = False
        out.append(CheckResult(f"word independence and braid {g}", ok,
                               f"|W| = {len(W)}, {checked} word comparisons"))
    return out


def _braid_order(datum: RootDatum, i: int, j: int) -> int:
    W = datum.weyl
    st = W.simple(i) * W.simple(j)
    p, m = st, 1
    while not p.is_identity():
        p, m = p * st, m + 1
    return m


def suite_nil_hecke(groups=None, samples=5):
    rng = random.Random(SEED + 6)
    out = []
    for g in _groups(groups, ("U3", "Sp2")):
        datum = _datum(g)
        W = datum.weyl
        ok = True
        for w in W:
            for w2 in W:
                prod = demazure_mul(DemazureElement.basis(datum, ZZ, w), DemazureElement.basis(datum, ZZ, w2))
                ww = w * w2
                adds = ww.length == w.length + w2.length
                expected = {ww: Polynomial.one(ZZ, datum.rank)} if adds else {}
                ok &= prod.support == expected
                for _ in range(samples):
                    f = random_polynomial(rng, ZZ, datum.rank, 6)
                    lhs = partial(datum, w, partial(datum, w2, f))
                    ok &= lhs == (partial(datum, ww, f) if adds else Polynomial.zero(ZZ, datum.rank))
        out.append(CheckResult(f"nil-Hecke relations {g}", ok, f"{len(W) ** 2} pairs"))
    return out


def suite_leibniz(groups=None, samples=100):
    rng = random.Random(SEED + 7)
    out = []
    for g in _groups(groups, ("U3",)):
        datum = _datum(g)
        ok = True
        for w in datum.weyl:
            for _ in range(samples):
                a1 = random_polynomial(rng, ZZ, datum.rank, 3)
                a2 = random_polynomial(rng, ZZ, datum.rank, 3)
                ok &= partial(datum, w, a1 * a2) == leibniz_rhs(w, a1, a2)
        out.append(CheckResult(f"Leibniz rule {g}", ok, f"{samples} pairs for each of {len(datum.weyl)} elements"))
    return out


# 8-10 -------------------------------------------------------------------------

def suite_dual_basis(groups=None, samples=100):
    rng = random.Random(SEED + 8)
    out = []
    for g in _groups(groups, ("U2", "U3", "U4")):
        datum = preset_datum(g)
        fam = schubert_family(datum, ZZ)
        dual = dual_family(fam)
        one, zero = Polynomial.one(ZZ, datum.rank), Polynomial.zero(ZZ, datum.rank)
        ok = all(
            pairing(datum, fam[w], dual[w2]) == (one if w == w2 else zero)
            for w in fam.members
            for w2 in fam.members
        )
        out.append(CheckResult(f"dual basis {g}", ok, f"{len(fam.members) ** 2} pairs"))
    for g in _groups(groups, ("U3",)):
        datum = preset_datum(g)
        W = datum.weyl
        ok = True
        for _ in range(samples):
            w = rng.choice(W.elements)
            f = random_polynomial(rng, ZZ, datum.rank, 4)
            h = random_polynomial(rng, ZZ, datum.rank, 4)
            winv = w.inverse()
            ok &= pairing(datum, partial(datum, w, f), h) == pairing(datum, f, partial(datum, winv, h))
            rhs = pairing(datum, f, winv.act(h))
            ok &= pairing(datum, w.act(f), h) == (rhs if w.det > 0 else -rhs)
        out.append(CheckResult(f"adjointness {g}", ok, f"{samples} random pairs"))
    return out


def suite_psi(groups=None, max_degree=8):
    out = []
    for g in _groups(groups, PRESETS):
        datum = preset_datum(g)
        ring = natural_ring(datum)
        fam = schubert_family(datum, ring)
        ok_idem = ok_image = True
        dims = []
        spec = ModuleSpec(datum, ring, [], max_degree)
        id_dims = invariants_graded(spec, "ID").dims(max_degree)
        for d in range(max_degree + 1):
            images = []
            for m in monomials_of_degree(datum.rank, d):
                p = psi(fam, Polynomial.monomial(ring, m))
                ok_idem &= psi(fam, p) == p
                ok_image &= all(not delta(datum, i, p) for i in range(1, datum.nsimple + 1))
                images.append(dict(p.terms))
            dims.append(rank(ring, images))
        ok_image &= dims == id_dims
        out.append(CheckResult(f"psi idempotent {g}", ok_idem, f"all monomials of degree <= {max_degree}"))
        out.append(CheckResult(f"psi image = kernel of simple d {g}", ok_image, f"image dims {dims}"))
    rng = random.Random(SEED + 9)
    for g in _groups(groups, PRESETS):
        datum = preset_datum(g)
        fam = schubert_family(datum, QQ, "discriminant")
        ok = all(
            psi(fam, f) == averaging(datum, f)
            for f in (random_polynomial(rng, QQ, datum.rank, 5) for _ in range(30))
        )
        out.append(CheckResult(f"psi = averaging over Q {g}", ok, "top class d/|W|, 30 random polynomials"))
    return out


def suite_discriminant(groups=None, samples=100):
    rng = random.Random(SEED + 10)
    out = []
    for g in _groups(groups, PRESETS):
        datum = preset_datum(g)
        ring = natural_ring(datum)
        fam = schubert_family(datum, ring)
        ok = all(
            discriminant_identity_check(fam, random_polynomial(rng, ring, datum.rank, 5))
            for _ in range(samples)
        )
        out.append(CheckResult(f"discriminant identity {g}", ok, f"{samples} random polynomials over {ring}"))
    return out


# 11-14 -------------------------------------------------------------------------

def suite_table(groups=None, bound=8):
    out = []
    for g in _groups(groups, TABLE_ROWS):
        rep = table_row_check(g, bound=bound)
        fails = [f for f in rep["forward"] if not f["passed"]] + [c for c in rep["converse"] if not c["passed"]]
        detail = f"{len(rep['forward'])} generators, {len(rep['converse'])} witness modules"
        if fails:
            detail += f"; first failure {fails[0]}"
        out.append(CheckResult(f"table row {g}", rep["passed"], detail))
    return out


def suite_strictness(groups=None, bound=8):
    out = []
    f2 = Ring.mod(2)
    u2 = preset_datum("U2")
    basis = sw_basis(u2, f2)
    spec = ModuleSpec(u2, f2, [basis.generators[0]], bound)
    aw = invariants_graded(spec, "W").dims(bound)
    aid = invariants_graded(spec, "ID").dims(bound)
    out.append(CheckResult("A^W strictly contains A^ID on F2[e]/(p1), U2", aw[1] > aid[1],
                           f"degree 1: {aw[1]} vs {aid[1]}"))
    rep = base_vs_invariants(preset_datum("SU2"), f2, bound)
    pattern = [1 - d % 2 for d in range(bound + 1)]
    ok = rep["base"] == pattern and rep["weyl_invariants"] == [1] * (bound + 1) and rep["id_invariants"] == pattern
    out.append(CheckResult("SU2 over F2: (S^W) strictly inside (S)^W", ok,
                           f"base {rep['base']}, W {rep['weyl_invariants']}, ID {rep['id_invariants']}"))
    for g in _groups(groups, PRESETS):
        datum = preset_datum(g)
        for ring in (QQ, natural_ring(datum)):
            fam = schubert_family(datum, ring)
            _, j = decompose_AW(ModuleSpec(datum, ring, [], bound), fam)
            dims = j.dims(bound)
            out.append(CheckResult(f"J-part vanishes {g} over {ring}", not any(dims), f"dims {dims}"))
    return out


def suite_homogeneous(groups=None, bound=12):
    out = []
    sp = preset_datum("Sp2")
    sub = reflection_subgroup(sp, parse_roots("2e1,2e2", sp))
    q = quotient_poincare(sp, sub, QQ, bound)
    out.append(CheckResult("Sp2/Sp(1)^2 quotient series", q.coeffs[:9] == [1, 0, 0, 0, 1, 0, 0, 0, 0]
                           and q.total() == 2 == len(sp.weyl) // len(sub), q.format()))
    u3 = preset_datum("U3")
    par = reflection_subgroup(u3, [(1, -1, 0)])
    q3 = quotient_poincare(u3, par, QQ, bound)
    c3 = coset_length_series(u3, par, bound)
    out.append(CheckResult("U3/U(2)xU(1) quotient series", q3.coeffs[:7] == [1, 0, 1, 0, 1, 0, 0]
                           and q3 == c3 and not c3.warnings, f"{q3.format()} (cosets {c3.format()})"))
    c = coset_length_series(sp, sub, bound)
    out.append(CheckResult("non-parabolic coset discrepancy", c.format() == "1 + t^2" and c != q and bool(c.warnings),
                           f"cosets {c.format()} vs quotient {q.format()}; warning: {c.warnings[0] if c.warnings else None}"))
    rep = tensor_square_report(sp, sub, bound)
    ok = (rep["expected"] == rep["integral_Q"] == rep["integral_F2"]
          and bool(rep["char2_excess_degrees"]))
    out.append(CheckResult("quaternionic tensor square in char 2", ok,
                           f"integral {rep['integral_F2']} vs field F2 {rep['field_F2']}"))
    flag_ok = True
    for g in ("U2", "U3", "Sp2", "SU3"):
        datum = preset_datum(g)
        f = flag_poincare(datum)
        flag_ok &= f.coeffs[::2] == coinvariant_dims(datum)[: len(f.coeffs[::2])]
    out.append(CheckResult("flag Poincare series = coinvariant dims", flag_ok, "U2, U3, Sp2, SU3"))
    return out


def suite_expansion(groups=None, samples=100, max_degree=6, freeness_degree=8):
    rng = random.Random(SEED + 14)
    out = []
    for g in _groups(groups, PRESETS):
        datum = preset_datum(g)
        for ring in (QQ, Ring.mod(5)):
            fam = schubert_family(datum, ring)
            basis = sw_basis(datum, ring)
            ok = True
            for _ in range(samples):
                f = random_polynomial(rng, ring, datum.rank, max_degree, density=0.2)
                ok &= recombine(expand_in_schubert_basis(f, fam, basis), fam, basis) == f
            out.append(CheckResult(f"expansion round trip {g} over {ring}", ok, f"{samples} polynomials"))
        spec = ModuleSpec(datum, QQ, [], freeness_degree)
        inv = invariants_graded(spec, "W").dims(freeness_degree)
        lengths = [w.length for w in datum.weyl]
        ok = all(
            len(monomials_of_degree(datum.rank, d)) == sum(inv[d - ell] for ell in lengths if ell <= d)
            for d in range(freeness_degree + 1)
        )
        out.append(CheckResult(f"freeness rank {g}", ok, f"degrees <= {freeness_degree}"))
    return out


SUITES = {
    "schubert-lists": suite_schubert_lists,
    "matrices": suite_matrices,
    "torsion": suite_torsion,
    "antisymmetrizer": suite_antisymmetrizer,
    "braid": suite_braid,
    "nil-hecke": suite_nil_hecke,
    "leibniz": suite_leibniz,
    "dual-basis": suite_dual_basis,
    "psi": suite_psi,
    "discriminant": suite_discriminant,
    "table": suite_table,
    "strictness": suite_strictness,
    "homogeneous": suite_homogeneous,
    "expansion": suite_expansion,
}

# acceptance criterion number -> suite
CRITERIA = {i + 1: name for i, name in enumerate(SUITES)}


def run_suite(name: str, groups=None) -> list[CheckResult]:
    if name == "all":
        results = []
        for n in SUITES:
            results.extend(SUITES[n](groups))
        return results
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from all, {', '.join(SUITES)}")
    return SUITES[name](groups)

"""Weyl invariants of S_k and its quotients, the psi-splitting A^W = A^ID + A^J,
reflection matrices in the Schubert basis, and the low-rank table checks.

Modules are S_k / (relations) with W-invariant homogeneous relations.
Graded pieces are handled by exact linear algebra on monomials: over a
field the relation subspace is put in echelon form and every vector is
replaced by its canonical normal form; over Z only the free module S_Z
is supported, where integer kernels are saturated.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from .demazure import delta, psi
from .errors import (
    MembershipUndecidable,
    TorsionNotInvertible,
    UnsupportedRing,
)
from .linalg import Echelon, kernel
from .lowrank import BASIS_ORDER, TABLE_ROWS, TableEntry
from .poly import Polynomial, monomials_of_degree, parse_polynomial
from .rings import LOCALIZED, MOD, ZZ, Ring, is_prime
from .rootdata import RootDatum, preset_datum
from .schubert import (
    SchubertFamily,
    SWBasis,
    expand_in_schubert_basis,
    schubert_family,
    sw_basis,
    torsion_index,
)

DEFAULT_BOUND = 8


# reflection matrices -------------------------------------------------------

def reflection_matrix(family: SchubertFamily, basis: SWBasis, i: int) -> list[list[Polynomial]]:
    """Column j: expansion of s_i(S_{b_j}) in the ordered Schubert basis b."""
    order = family.matrix_order()
    s = family.datum.weyl.simple(i)
    cols = [expand_in_schubert_basis(s.act(family[w]), family, basis) for w in order]
    return [[cols[j][order[r]] for j in range(len(order))] for r in range(len(order))]


def weyl_matrix(family: SchubertFamily, basis: SWBasis, w) -> list[list[Polynomial]]:
    """Matrix of w as the ordered product of simple reflection matrices along its word."""
    return weyl_matrix_from_word(family, basis, w.word)


def weyl_matrix_from_word(family: SchubertFamily, basis: SWBasis, word) -> list[list[Polynomial]]:
    n = len(family.members)
    result = identity_matrix(basis, n)
    for i in word:
        result = matmul(result, _cached_matrix(family, basis, i))
    return result


def _cached_matrix(family, basis, i):
    key = ("matrix", id(basis), i)
    if key not in family._echelons:
        family._echelons[key] = reflection_matrix(family, basis, i)
    return family._echelons[key]


def identity_matrix(basis: SWBasis, n: int) -> list[list[Polynomial]]:
    one = Polynomial.one(basis.ring, basis.ngens)
    zero = basis.zero()
    return [[one if r == c else zero for c in range(n)] for r in range(n)]


def matmul(a, b):
    n, m, k = len(a), len(b), len(b[0])
    out = []
    for r in range(n):
        row = []
        for c in range(k):
            acc = a[r][0] * b[0][c]
            for j in range(1, m):
                if a[r][j] and b[j][c]:
                    acc = acc + a[r][j] * b[j][c]
            row.append(acc)
        out.append(row)
    return out


def matrix_to_json(family: SchubertFamily, basis: SWBasis, i: int, group: str | None = None) -> dict:
    mat = reflection_matrix(family, basis, i)
    return {
        "group": group or family.datum.name or "raw",
        "generator": i,
        "basis_order": [list(w.word) for w in family.matrix_order()],
        "generators": list(basis.names),
        "entries": [[p.to_json(basis.names) for p in row] for row in mat],
    }


def format_matrix(mat, basis: SWBasis) -> str:
    cells = [[basis.format(p) for p in row] for row in mat]
    width = max(len(c) for row in cells for c in row)
    return "\n".join("  ".join(c.rjust(width) for c in row) for row in cells)


# modules and graded subspaces ---------------------------------------------------

@dataclass
class ModuleSpec:
    datum: RootDatum
    ring: Ring
    relations: list = field(default_factory=list)
    degree_bound: int = DEFAULT_BOUND

    def __post_init__(self):
        rels = []
        for g in self.relations:
            if g.ring != self.ring:
                g = g.change_ring(self.ring)
            if not g:
                continue
            if not g.is_homogeneous():
                raise ValueError(f"relation {g} is not homogeneous")
            for i in range(1, self.datum.nsimple + 1):
                if self.datum.weyl.simple(i).act(g) != g:
                    raise ValueError(f"relation {g} is not W-invariant")
            rels.append(g)
        self.relations = rels
        ring = self.ring
        if ring.kind == MOD and not is_prime(ring.modulus):
            raise UnsupportedRing(f"graded invariants over {ring}")
        if rels and not ring.is_field:
            raise UnsupportedRing(f"quotient modules are only supported over fields, not {ring}")
        self._quotients: dict = {}

    @property
    def work_ring(self) -> Ring:
        """Ring for the linear algebra: Z for Z and its localizations (flat base change)."""
        return ZZ if self.ring.kind in ("Z", LOCALIZED) else self.ring

    def quotient(self, d: int) -> "_GradedPiece":
        piece = self._quotients.get(d)
        if piece is None:
            piece = _GradedPiece(self, d)
            self._quotients[d] = piece
        return piece

    def monomial(self, e) -> Polynomial:
        return Polynomial.monomial(self.work_ring, e)

    def describe(self) -> str:
        rel = ", ".join(str(g) for g in self.relations)
        return f"S/({rel})" if rel else "S"


class _GradedPiece:
    """Degree-d part of S/(relations): normal forms and a monomial basis."""

    def __init__(self, spec: ModuleSpec, d: int):
        self.spec = spec
        self.d = d
        r = spec.datum.rank
        ring = spec.work_ring
        self.echelon = Echelon(ring, track=False)
        for g in spec.relations:
            k = d - g.degree()
            if k < 0:
                continue
            for m in monomials_of_degree(r, k):
                self.echelon.insert(dict((Polynomial.monomial(ring, m) * g).terms))
        self.basis = [m for m in monomials_of_degree(r, d) if m not in self.echelon.rows]

    def nf(self, f: Polynomial) -> dict:
        if not self.spec.relations:
            return dict(f.terms)
        residual, _ = self.echelon.reduce(dict(f.terms))
        return residual

    def nf_poly(self, f: Polynomial) -> Polynomial:
        return Polynomial(f.ring, f.nvars, self.nf(f), _clean=True)


@dataclass
class GradedSubspace:
    ring: Ring
    parts: dict  # degree -> list of Polynomial representatives

    def dims(self, bound: int | None = None) -> list[int]:
        top = max(self.parts) if bound is None else bound
        return [len(self.parts.get(d, [])) for d in range(top + 1)]

    def __getitem__(self, d: int) -> list:
        return self.parts.get(d, [])

    def to_json(self, names) -> dict:
        return {
            "dims": self.dims(),
            "basis": {str(d): [p.to_json(names) for p in ps] for d, ps in sorted(self.parts.items())},
        }


def _finish(spec: ModuleSpec, polys: list[Polynomial]) -> list[Polynomial]:
    if spec.ring != spec.work_ring:
        return [p.change_ring(spec.ring) for p in polys]
    return polys


def invariants_graded(spec: ModuleSpec, which: str = "W") -> GradedSubspace:
    """Per degree, a basis of {a : s_i a = a} (W) or {a : d_i a = 0} (ID)."""
    if which not in ("W", "ID"):
        raise ValueError("which must be 'W' or 'ID'")
    datum = spec.datum
    W = datum.weyl
    ring = spec.work_ring
    parts = {}
    for d in range(spec.degree_bound + 1):
        piece = spec.quotient(d)
        lower = spec.quotient(d - 1) if which == "ID" and d > 0 else None
        columns = []
        for m in piece.basis:
            f = spec.monomial(m)
            col = {}
            for i in range(1, datum.nsimple + 1):
                if which == "W":
                    image = piece.nf(W.simple(i).act(f) - f)
                elif lower is not None:
                    image = lower.nf(delta(datum, i, f))
                else:
                    image = {}
                for e, c in image.items():
                    col[(i, e)] = c
            columns.append(col)
        reps = []
        for vec in kernel(ring, columns):
            reps.append(Polynomial(ring, datum.rank, {piece.basis[j]: c for j, c in vec.items()}))
        parts[d] = _finish(spec, reps)
    return GradedSubspace(spec.ring, parts)


def _integral(vec: dict) -> dict:
    dens = [v.denominator for v in vec.values() if isinstance(v, Fraction)]
    if not dens:
        return vec
    k = lcm(*dens)
    return {key: int(v * k) for key, v in vec.items()}


def decompose_AW(spec: ModuleSpec, family: SchubertFamily) -> tuple[GradedSubspace, GradedSubspace]:
    """Split A^W degreewise into psi(A^W) = A^ID and A^W intersect ker(psi) = A^J."""
    if family.datum is not spec.datum:
        raise ValueError("family and module use different root data")
    if family.ring != spec.ring:
        raise ValueError(f"family over {family.ring}, module over {spec.ring}")
    aw = invariants_graded(spec, "W")
    id_parts, j_parts = {}, {}
    ring = spec.ring
    for d in range(spec.degree_bound + 1):
        piece = spec.quotient(d)
        basis = aw[d]
        images = []
        ech = Echelon(ring)
        for j, b in enumerate(basis):
            image = piece.nf(psi(family, b).change_ring(ring) if b.ring != ring else psi(family, b))
            images.append(image)
            ech.insert(image, tag=j)
        id_parts[d] = [
            Polynomial(ring, spec.datum.rank, _integral(row) if ring.kind == LOCALIZED else row)
            for row in ech.basis()
        ]
        reps = []
        for comb in ech.kernel:
            comb = _integral(comb) if ring.kind == LOCALIZED else comb
            total = Polynomial.zero(ring, spec.datum.rank)
            for j, c in comb.items():
                total = total + basis[j].scale(c)
            reps.append(total)
        j_parts[d] = reps
    return GradedSubspace(ring, id_parts), GradedSubspace(ring, j_parts)


# ideals of the table -----------------------------------------------------------------

@dataclass
class SimpleIdeal:
    """The ideal (m, g) of a polynomial ring in generators, g linear in one variable.

    ``modulus`` 0 means no integer generator; ``poly`` None means no
    polynomial generator.  ``var`` is the designated variable index; it
    is chosen automatically when omitted.
    """

    modulus: int = 0
    poly: Polynomial | None = None
    var: int | None = None
    names: tuple = ()

    def __post_init__(self):
        if self.poly is not None and self.var is None:
            for j in range(self.poly.nvars):
                if self._linear_in(j) is not None:
                    self.var = j
                    break
            else:
                raise MembershipUndecidable(f"{self.poly} is not linear with unit leading coefficient in any variable")
        if self.poly is not None and self._linear_in(self.var) is None:
            raise MembershipUndecidable(f"{self.poly} is not linear in variable {self.var}")

    def _linear_in(self, j: int):
        """(a, b) with poly = a x_j + b, a a unit constant, b free of x_j; else None."""
        a, rest = None, {}
        for e, c in self.poly.terms.items():
            if e[j] > 1:
                return None
            if e[j] == 1:
                if any(k for i, k in enumerate(e) if i != j):
                    return None
                a = c
            else:
                rest[e] = c
        if a is None:
            return None
        ring = self.poly.ring
        unit = abs(a) == 1 if ring.kind == "Z" else True
        if ring.kind == "Z" and self.modulus:
            unit = Ring.mod(self.modulus).is_unit_integer(int(a))
        if not unit:
            return None
        return a, Polynomial(ring, self.poly.nvars, rest, _clean=True)

    def reduce(self, p: Polynomial) -> Polynomial:
        """Normal form of p modulo the ideal; zero iff p is a member."""
        if self.poly is not None:
            a, b = self._linear_in(self.var)
            src = p.ring
            target = Ring.mod(self.modulus) if self.modulus else src
            p = p.change_ring(target)
            a = src.map_to(a, target)
            b = b.change_ring(target)
            images = [Polynomial.variable(target, p.nvars, i) for i in range(p.nvars)]
            images[self.var] = b.scale(-target.inverse(a))
            return p.compose(images)
        if self.modulus:
            return p.change_ring(Ring.mod(self.modulus))
        return p

    def contains(self, p: Polynomial) -> bool:
        return not self.reduce(p)

    def annihilates_quotient_by(self, g: Polynomial | None, prime: int) -> bool:
        """Whether the ideal kills F_p[gens]/(g): true iff it maps into (g) there."""
        if self.modulus and self.modulus % prime:
            # the integer generator is a unit: the ideal is everything
            return g is not None and g.is_constant() and bool(g)
        if self.poly is None:
            return True
        mine = self.poly.change_ring(Ring.mod(prime))
        if not mine:
            return True
        if g is None:
            return False
        return SimpleIdeal(0, g.change_ring(Ring.mod(prime))).contains(mine)

    def __str__(self):
        parts = []
        if self.modulus:
            parts.append(str(self.modulus))
        if self.poly is not None:
            parts.append(self.poly.format(self.names or None))
        return "(" + ", ".join(parts) + ")" if parts else "(0)"


def _vector_polys(entry: TableEntry, family: SchubertFamily, basis: SWBasis) -> dict:
    W = family.datum.weyl
    return {
        W.from_word(word): parse_polynomial(text, basis.names, basis.ring)
        for word, text in entry.vector.items()
    }


def _entry_ideal(entry: TableEntry, basis: SWBasis) -> SimpleIdeal:
    poly = parse_polynomial(entry.ideal_poly, basis.names, basis.ring) if entry.ideal_poly else None
    return SimpleIdeal(entry.modulus, poly, names=tuple(basis.names))


def _ring_for(group: str) -> Ring:
    t = torsion_index(preset_datum(group))
    return Ring.localized({t} if t > 1 else set())


def _bdims(basis: SWBasis, g: Polynomial | None, bound: int) -> list[int]:
    """dim of (F[gens]/(g)) in each polynomial degree <= bound."""
    out = []
    for e in range(bound + 1):
        n = len(basis.gen_monomials(e)) if e >= 0 else 0
        if g is not None and e - _weighted_degree(basis, g) >= 0:
            n -= len(basis.gen_monomials(e - _weighted_degree(basis, g)))
        out.append(n)
    return out


def _weighted_degree(basis: SWBasis, p: Polynomial) -> int:
    return max(sum(k * d for k, d in zip(e, basis.degrees)) for e in p.terms)


def table_row_check(group: str, claimed: list[TableEntry] | None = None, bound: int = DEFAULT_BOUND) -> dict:
    """Check one row of the low-rank table.

    Forward: every entry of (M_i - Id) v lies in the stated ideal, for each
    claimed generator v and simple index i.  Converse: over F_2 and F_3
    (when the torsion index is invertible there), on the witness modules
    S_k and S_k/(g), the dimensions of A^J agree degreewise with the
    direct sum of B^{K_v} shifted by deg v, and each realized v is
    W-invariant with psi(v) = 0 in the witness.
    """
    datum = preset_datum(group)
    claimed = TABLE_ROWS[group] if claimed is None else claimed
    ring = _ring_for(group)
    family = schubert_family(datum, ring)
    basis = sw_basis(datum, ring)
    order = family.matrix_order()
    pos = {w: j for j, w in enumerate(order)}
    report = {"group": group, "forward": [], "converse": [], "passed": True}

    mats = {i: reflection_matrix(family, basis, i) for i in range(1, datum.nsimple + 1)}
    for entry in claimed:
        vec = _vector_polys(entry, family, basis)
        ideal = _entry_ideal(entry, basis)
        witness = None
        for i, mat in mats.items():
            for r, w in enumerate(order):
                val = basis.zero()
                for u, c in vec.items():
                    coeff = mat[r][pos[u]]
                    if r == pos[u]:
                        coeff = coeff - Polynomial.one(basis.ring, basis.ngens)
                    val = val + coeff * c
                if not ideal.contains(val):
                    witness = {"generator": i, "row": list(w.word), "entry": basis.format(val)}
                    break
            if witness:
                break
        report["forward"].append({
            "vector": _format_vector(vec, basis),
            "ideal": str(ideal),
            "passed": witness is None,
            "witness": witness,
        })
        report["passed"] &= witness is None

    t = family.torsion_index
    for p in (2, 3):
        if t % p == 0:
            continue
        report["converse"].extend(_converse(group, datum, claimed, p, bound))
    report["passed"] &= all(c["passed"] for c in report["converse"])
    return report


def _format_vector(vec: dict, basis: SWBasis) -> str:
    parts = []
    for w, c in sorted(vec.items(), key=lambda kv: (-kv[0].length, kv[0].word)):
        coeff = basis.format(c)
        parts.append(f"S[{w.name()}]" if coeff == "1" else f"({coeff})*S[{w.name()}]")
    return " + ".join(parts)


def _converse(group, datum, claimed, p, bound) -> list[dict]:
    ring = Ring.mod(p)
    family = schubert_family(datum, ring)
    basis = sw_basis(datum, ring)
    polys = {None}
    for entry in claimed:
        if entry.ideal_poly:
            polys.add(entry.ideal_poly)
    out = []
    for gtext in sorted(polys, key=lambda x: (x is not None, x or "")):
        g = parse_polynomial(gtext, basis.names, ring) if gtext else None
        rels = [basis.to_polynomial(g)] if g is not None else []
        spec = ModuleSpec(datum, ring, rels, bound)
        _, jpart = decompose_AW(spec, family)
        actual = jpart.dims(bound)
        bd = _bdims(basis, g, bound)
        expected = [0] * (bound + 1)
        spans = [Echelon(ring, track=False) for _ in range(bound + 1)]
        realized_ok = True
        for entry in claimed:
            ideal = _entry_ideal(entry, basis_over(datum, group))
            if not ideal.annihilates_quotient_by(g, p):
                continue
            vec = _vector_polys(entry, family, basis)
            v = Polynomial.zero(ring, datum.rank)
            for w, c in vec.items():
                v = v + basis.to_polynomial(c) * family[w]
            dv = v.degree()
            for dd in range(dv, bound + 1):
                expected[dd] += bd[dd - dv]
                # the J-components (1 - psi)(m v) of the summand B * v
                piece = spec.quotient(dd)
                for e in basis.gen_monomials(dd - dv):
                    mv = basis.product(e) * v
                    spans[dd].insert(piece.nf(mv - psi(family, mv)))
            if dv <= bound:
                piece = spec.quotient(dv)
                realized_ok &= all(
                    not piece.nf(datum.weyl.simple(i).act(v) - v) for i in range(1, datum.nsimple + 1)
                )
        spanned = [e.rank for e in spans]
        out.append({
            "prime": p,
            "module": spec.describe() if g is None else f"S/({gtext})",
            "expected": expected,
            "actual": actual,
            "spanned": spanned,
            "passed": expected == actual == spanned and realized_ok,
        })
    return out


def basis_over(datum: RootDatum, group: str) -> SWBasis:
    return sw_basis(datum, _ring_for(group))


def base_vs_invariants(datum: RootDatum, ring: Ring, bound: int = DEFAULT_BOUND) -> dict:
    """Dimensions of the span of (S^W)_Z, of (S_k)^W and of (S_k)^ID per degree."""
    t = torsion_index(datum)
    if not ring.is_unit_integer(t):
        raise TorsionNotInvertible(f"torsion index {t} is not invertible in {ring}")
    spec = ModuleSpec(datum, ring, [], bound)
    integral = sw_basis(datum, _loc(t) if t > 1 else ZZ)
    base = []
    for d in range(bound + 1):
        vecs = [dict(integral.product(e).change_ring(ring).terms) for e in integral.gen_monomials(d)]
        ech = Echelon(ring, track=False)
        for v in vecs:
            ech.insert(v)
        base.append(ech.rank)
    aw = invariants_graded(spec, "W").dims(bound)
    aid = invariants_graded(spec, "ID").dims(bound)
    return {
        "ring": str(ring),
        "base": base,
        "weyl_invariants": aw,
        "id_invariants": aid,
        "strict_W": [d for d in range(bound + 1) if aw[d] > base[d]],
        "strict_ID": [d for d in range(bound + 1) if aid[d] > base[d]],
    }


def _loc(t: int) -> Ring:
    return Ring.localized({t})

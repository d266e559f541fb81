"""Hilbert series attached to G/T and G/U for reflection subgroups W_U of W.

All series are indexed by cohomological degree (twice the polynomial
degree).  Graded pieces are computed by exact linear algebra on
monomials; invariant lattices come from saturated integer kernels so
that (S^{W_U})_k means S^{W_U} tensored with k, not the invariants of S_k.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import RankDeficientSubgroup, UnknownInvariantGenerators
from .linalg import Echelon, kernel
from .poly import Polynomial, monomials_of_degree
from .rings import QQ, ZZ, Ring
from .rootdata import ReflectionSubgroup, RootDatum, WeylElement, reflection_subgroup
from .schubert import integer_invariants, preset_name, sw_basis

DEFAULT_BOUND = 12
NON_PARABOLIC = "non-parabolic subgroup: coset series is not the Poincare series"


@dataclass
class HilbertSeries:
    coeffs: list
    closed_form: str | None = None
    warnings: list = field(default_factory=list)

    def total(self) -> int:
        return sum(self.coeffs)

    def truncated(self, bound: int) -> "HilbertSeries":
        c = list(self.coeffs[: bound + 1]) + [0] * max(0, bound + 1 - len(self.coeffs))
        return HilbertSeries(c, self.closed_form, list(self.warnings))

    def is_palindromic(self) -> bool:
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        return c == c[::-1]

    def format(self) -> str:
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "1" if k == 0 else ("t" if k == 1 else f"t^{k}")
            if k == 0:
                parts.append(str(c))
            else:
                parts.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(parts) or "0"

    def to_json(self) -> dict:
        out = {"coeffs": list(self.coeffs), "closed_form": self.closed_form, "warnings": list(self.warnings)}
        return out

    def __eq__(self, other):
        if not isinstance(other, HilbertSeries):
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        pad = lambda c: list(c) + [0] * (n - len(c))  # noqa: E731
        return pad(self.coeffs) == pad(other.coeffs)


def _from_poly_dims(dims: list[int], bound: int) -> list[int]:
    """Spread polynomial-degree dimensions over cohomological degrees 0..bound."""
    out = [0] * (bound + 1)
    for d, n in enumerate(dims):
        if 2 * d <= bound:
            out[2 * d] = n
    return out


def _qpoly(d: int) -> str:
    """1 + t^2 + ... + t^(2(d-1))."""
    terms = ["1"] + [("t^2" if k == 1 else f"t^{2 * k}") for k in range(1, d)]
    return "(" + "+".join(terms) + ")"


# flag varieties ----------------------------------------------------------------

def flag_poincare(datum: RootDatum, bound: int | None = None) -> HilbertSeries:
    """sum over W of t^(2 l(w)), the Poincare series of G/T."""
    top = 2 * datum.weyl.longest.length
    bound = top if bound is None else bound
    coeffs = [0] * (bound + 1)
    for w in datum.weyl:
        if 2 * w.length <= bound:
            coeffs[2 * w.length] += 1
    closed = None
    name = preset_name(datum)
    if name is not None and name != "PSU3":
        degs = sw_basis(datum, ZZ).degrees
        factors = [_qpoly(d) for d in degs if d > 1]
        closed = "".join(factors) if factors else "1"
    return HilbertSeries(coeffs, closed)


def coinvariant_dims(datum: RootDatum, ring: Ring = QQ, max_degree: int | None = None) -> list[int]:
    """dim of (S / S^W_+ S)_d for d = 0..max_degree, over a field."""
    max_degree = datum.weyl.longest.length + 1 if max_degree is None else max_degree
    invs = {k: [p.change_ring(ring) for p in integer_invariants(datum, k)] for k in range(1, max_degree + 1)}
    dims = []
    for d in range(max_degree + 1):
        ech = Echelon(ring, track=False)
        for k in range(1, d + 1):
            for m in monomials_of_degree(datum.rank, d - k):
                mono = Polynomial.monomial(ring, m)
                for g in invs[k]:
                    ech.insert(dict((mono * g).terms))
        dims.append(len(monomials_of_degree(datum.rank, d)) - ech.rank)
    return dims


# subgroups --------------------------------------------------------------------

def subgroup_invariants(datum: RootDatum, sub: ReflectionSubgroup, degree: int) -> list[Polynomial]:
    """Z-basis of the W_U-invariant lattice in S^degree."""
    gens = [datum.reflection(r) for r in sub.generators]
    if not gens:
        return [Polynomial.monomial(ZZ, m) for m in monomials_of_degree(datum.rank, degree)]
    monos = monomials_of_degree(datum.rank, degree)
    index = {m: j for j, m in enumerate(monos)}
    n = len(monos)
    columns = []
    for m in monos:
        f = Polynomial.monomial(ZZ, m)
        col = {}
        for i, g in enumerate(gens):
            for e, c in (g.act(f) - f).terms.items():
                col[i * n + index[e]] = c
        columns.append(col)
    return [Polynomial(ZZ, datum.rank, {monos[j]: c for j, c in vec.items()}) for vec in kernel(ZZ, columns)]


def _check_closed(datum: RootDatum, sub: ReflectionSubgroup):
    """A maximal-rank subgroup has a closed root subsystem."""
    roots = set()
    for r in datum.roots:
        if datum.reflection(r.vector) in sub.elements:
            roots.add(r.vector)
    all_roots = {r.vector for r in datum.roots}
    for a in roots:
        for b in roots:
            s = tuple(x + y for x, y in zip(a, b))
            if s in all_roots and s not in roots:
                raise RankDeficientSubgroup(
                    f"roots of the subgroup are not closed ({a} + {b} is a root outside it); "
                    "no maximal-rank subgroup has this Weyl group"
                )


def quotient_poincare(datum: RootDatum, sub: ReflectionSubgroup, ring: Ring = QQ,
                      bound: int = DEFAULT_BOUND) -> HilbertSeries:
    """Hilbert series of (S^{W_U} / S^W_+ S^{W_U}) tensored with a field."""
    _check_closed(datum, sub)
    if not ring.is_field:
        raise ValueError(f"quotient_poincare needs a field, not {ring}")
    top = bound // 2
    wu = {k: [p.change_ring(ring) for p in subgroup_invariants(datum, sub, k)] for k in range(top + 1)}
    w_inv = {k: [p.change_ring(ring) for p in integer_invariants(datum, k)] for k in range(1, top + 1)}
    dims = []
    for d in range(top + 1):
        ech = Echelon(ring, track=False)
        for k in range(1, d + 1):
            for f in w_inv[k]:
                for h in wu[d - k]:
                    ech.insert(dict((f * h).terms))
        dims.append(len(wu[d]) - ech.rank)
    coeffs = _from_poly_dims(dims, bound)
    warnings = []
    if 2 * datum.weyl.longest.length > bound:
        warnings.append(f"bound {bound} is below the top degree; the series may be truncated")
    return HilbertSeries(coeffs, None, warnings)


def coset_length_series(datum: RootDatum, sub: ReflectionSubgroup, bound: int = DEFAULT_BOUND) -> HilbertSeries:
    """sum over cosets w W_U of t^(2 min length)."""
    seen: set = set()
    lengths = []
    for w in datum.weyl:  # enumeration is by increasing length
        if w in seen:
            continue
        coset = {w * u for u in sub.elements}
        seen |= coset
        lengths.append(w.length)
    coeffs = [0] * (bound + 1)
    for ell in lengths:
        if 2 * ell <= bound:
            coeffs[2 * ell] += 1
    warnings = [] if sub.is_parabolic else [NON_PARABOLIC]
    return HilbertSeries(coeffs, None, warnings)


# tensor squares ------------------------------------------------------------------

def field_invariant_generators(datum: RootDatum, ring: Ring, group_gens: list[WeylElement],
                               max_degree: int) -> list[Polynomial]:
    """Algebra generators (up to max_degree) of the invariants of S_k under the given elements."""
    gens: list[Polynomial] = []
    for d in range(1, max_degree + 1):
        space = _field_invariants(datum, ring, group_gens, d)
        ech = Echelon(ring, track=False)
        for e in _products_of_degree(gens, d, datum.rank, ring):
            ech.insert(dict(e.terms))
        for f in space:
            if ech.insert(dict(f.terms)):
                gens.append(f)
    return gens


def _products_of_degree(gens: list[Polynomial], d: int, rank: int, ring: Ring) -> list[Polynomial]:
    out = []

    def rec(i, remaining, acc):
        if remaining == 0:
            out.append(acc)
            return
        if i == len(gens):
            return
        g = gens[i]
        k = 0
        cur = acc
        while k * g.degree() <= remaining:
            rec(i + 1, remaining - k * g.degree(), cur)
            cur = cur * g
            k += 1

    rec(0, d, Polynomial.one(ring, rank))
    return out


def _field_invariants(datum: RootDatum, ring: Ring, group_gens, d: int) -> list[Polynomial]:
    """Basis of the invariants of S_k in degree d (k a field)."""
    monos = monomials_of_degree(datum.rank, d)
    if not group_gens:
        return [Polynomial.monomial(ring, m) for m in monos]
    index = {m: j for j, m in enumerate(monos)}
    n = len(monos)
    columns = []
    for m in monos:
        f = Polynomial.monomial(ring, m)
        col = {}
        for i, g in enumerate(group_gens):
            for e, c in (g.act(f) - f).terms.items():
                col[i * n + index[e]] = c
        columns.append(col)
    return [Polynomial(ring, datum.rank, {monos[j]: c for j, c in vec.items()}) for vec in kernel(ring, columns)]


def _tensor_dims(datum: RootDatum, ring: Ring, pieces: dict, rel_gens: list[Polynomial], top: int) -> list[int]:
    """Graded dims of C (x)_R C where C has degree pieces ``pieces`` and R is
    generated by ``rel_gens``; elements of C (x) C are polynomials in doubled variables."""
    r = datum.rank

    def left(f):
        return Polynomial(ring, 2 * r, {e + (0,) * r: c for e, c in f.terms.items()}, _clean=True)

    def right(f):
        return Polynomial(ring, 2 * r, {(0,) * r + e: c for e, c in f.terms.items()}, _clean=True)

    lefts = {k: [left(f) for f in v] for k, v in pieces.items()}
    rights = {k: [right(f) for f in v] for k, v in pieces.items()}
    dims = []
    for d in range(top + 1):
        size = sum(len(pieces[a]) * len(pieces[d - a]) for a in range(d + 1))
        ech = Echelon(ring, track=False)
        for g in rel_gens:
            k = g.degree()
            if k > d:
                continue
            diff = left(g) - right(g)
            for a in range(d - k + 1):
                for c1 in lefts[a]:
                    for c2 in rights[d - k - a]:
                        ech.insert(dict((diff * c1 * c2).terms))
        dims.append(size - ech.rank)
    return dims


def tensor_square_dims(datum: RootDatum, sub: ReflectionSubgroup, ring: Ring = QQ,
                       bound: int = DEFAULT_BOUND, route: str = "integral") -> HilbertSeries:
    """Hilbert series of C (x)_R C.

    route "integral": C = S^{W_U} and R = S^W taken over Z (preset generators)
    and tensored with the field.  route "field": C and R are the invariant
    rings of S_k itself, with generators computed over k.
    """
    if not ring.is_field:
        raise ValueError(f"tensor_square_dims needs a field, not {ring}")
    top = bound // 2
    if route == "integral":
        if preset_name(datum) is None:
            raise UnknownInvariantGenerators(f"no preset invariant generators for {datum}")
        basis = sw_basis(datum, ZZ)
        rel_gens = [g.change_ring(ring) for g in basis.generators]
        pieces = {k: [p.change_ring(ring) for p in subgroup_invariants(datum, sub, k)] for k in range(top + 1)}
        # reduction mod p of a saturated lattice basis stays independent
    elif route == "field":
        W = datum.weyl
        simple = [W.simple(i) for i in range(1, datum.nsimple + 1)]
        rel_gens = field_invariant_generators(datum, ring, simple, top)
        sub_gens = [datum.reflection(r) for r in sub.generators]
        pieces = {k: _field_invariants(datum, ring, sub_gens, k) for k in range(top + 1)}
    else:
        raise ValueError(f"unknown route {route!r}")
    dims = _tensor_dims(datum, ring, pieces, rel_gens, top)
    return HilbertSeries(_from_poly_dims(dims, bound))


def invariant_series(datum: RootDatum, sub: ReflectionSubgroup, bound: int = DEFAULT_BOUND) -> HilbertSeries:
    """Hilbert series of S^{W_U} (ranks of the invariant lattices)."""
    dims = [len(subgroup_invariants(datum, sub, k)) for k in range(bound // 2 + 1)]
    return HilbertSeries(_from_poly_dims(dims, bound))


def series_product(a: HilbertSeries, b: HilbertSeries, bound: int) -> HilbertSeries:
    out = [0] * (bound + 1)
    for i, x in enumerate(a.coeffs):
        for j, y in enumerate(b.coeffs):
            if i + j <= bound:
                out[i + j] += x * y
    return HilbertSeries(out)


def tensor_square_report(datum: RootDatum, sub: ReflectionSubgroup, bound: int = DEFAULT_BOUND) -> dict:
    """The three tensor-square computations and the freeness prediction."""
    quotient = quotient_poincare(datum, sub, QQ, bound)
    expected = series_product(quotient, invariant_series(datum, sub, bound), bound)
    rational = tensor_square_dims(datum, sub, QQ, bound, "integral")
    mod2 = tensor_square_dims(datum, sub, Ring.mod(2), bound, "integral")
    field2 = tensor_square_dims(datum, sub, Ring.mod(2), bound, "field")
    return {
        "expected": expected.coeffs,
        "integral_Q": rational.coeffs,
        "integral_F2": mod2.coeffs,
        "field_F2": field2.coeffs,
        "char2_excess_degrees": [k for k, (x, y) in enumerate(zip(field2.coeffs, mod2.coeffs)) if x > y],
    }


def subgroup_from_roots(datum: RootDatum, roots) -> ReflectionSubgroup:
    return reflection_subgroup(datum, roots)

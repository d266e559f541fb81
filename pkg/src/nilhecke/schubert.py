"""Torsion index, top classes, Schubert families and expansions over S^W."""

from __future__ import annotations

import itertools
import threading
from fractions import Fraction
from math import gcd

from .demazure import partial
from .errors import ExpansionFailed, NotInRing, NotTypeA, TorsionNotInvertible, UnsupportedRing
from .linalg import Echelon, gcd_combination, kernel
from .poly import Polynomial, monomials_of_degree
from .rings import LOCALIZED, QQ, ZZ, Ring
from .rootdata import PRESETS, RootDatum, WeylElement, preset_datum

_lock = threading.Lock()

STRATEGIES = ("preset", "solve", "discriminant")


def preset_name(datum: RootDatum) -> str | None:
    """Name of the preset this datum coincides with, if any."""
    if datum.name in PRESETS:
        ref = preset_datum(datum.name)
        if ref.simple_roots == datum.simple_roots and ref.simple_coroots == datum.simple_coroots:
            return datum.name
    return None


def torsion_index(datum: RootDatum) -> int:
    """Positive generator of d_{w0}(S^N) in Z, N the number of positive roots.

    In top degree the characteristic map satisfies i*(u) = d_{w0}(u) * theta
    with d_{w0}(theta) = 1, so the cokernel order is the index of this ideal.
    """
    table = datum.cache("torsion")
    if "t" not in table:
        w0 = datum.weyl.longest
        g = 0
        for m in monomials_of_degree(datum.rank, w0.length):
            g = gcd(g, int(partial(datum, w0, Polynomial.monomial(ZZ, m)).constant_term()))
            if g == 1:
                break
        table["t"] = g
    return table["t"]


def _require_unit(ring: Ring, n: int, what: str):
    if not ring.is_unit_integer(n):
        raise TorsionNotInvertible(f"{what} = {n} is not invertible in {ring}")


def _transport_su3_to_psu3(f: Polynomial, ring: Ring) -> Polynomial:
    # e1 = (2 a1 + a2)/3, e2 = (a2 - a1)/3 inside Q(a1, a2)
    images = [
        Polynomial(ring, 2, {(1, 0): Fraction(2, 3), (0, 1): Fraction(1, 3)}),
        Polynomial(ring, 2, {(1, 0): Fraction(-1, 3), (0, 1): Fraction(1, 3)}),
    ]
    return f.change_ring(ring).compose(images)


def _preset_top(datum: RootDatum, name: str, ring: Ring) -> Polynomial | None:
    if name.startswith("U") or name.startswith("SU"):
        n = int(name.lstrip("SU"))
        exp = tuple(n - 1 - i for i in range(datum.rank))
        return Polynomial.monomial(ring, exp)
    if name == "Sp2":
        return Polynomial.monomial(ring, (3, 1))
    if name == "PSU3":
        return _transport_su3_to_psu3(Polynomial.monomial(ZZ, (2, 1)), ring)
    return None


def top_class(datum: RootDatum, ring: Ring, strategy: str = "preset") -> Polynomial:
    """A degree-N polynomial S with d_{w0}(S) = 1 in the ring."""
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    t = torsion_index(datum)
    _require_unit(ring, t, "torsion index")
    w0 = datum.weyl.longest
    top = None
    if strategy == "preset":
        name = preset_name(datum)
        if name is not None:
            top = _preset_top(datum, name, ring)
    elif strategy == "discriminant":
        order = len(datum.weyl)
        _require_unit(ring, order, "|W|")
        top = datum.discriminant(ring).scale(ring.inverse(order))
    if top is None:
        monos = monomials_of_degree(datum.rank, w0.length)
        values = [int(partial(datum, w0, Polynomial.monomial(ZZ, m)).constant_term()) for m in monos]
        g, coeffs = gcd_combination(values)
        combo = Polynomial(ZZ, datum.rank, {m: c for m, c in zip(monos, coeffs) if c})
        top = combo.change_ring(ring).scale(ring.inverse(g))
    check = partial(datum, w0, top)
    if check != Polynomial.one(ring, datum.rank):
        raise AssertionError(f"top class {top} has d_w0 = {check}")
    return top


class SchubertFamily:
    """The family S_w = d_{w^{-1} w0}(S) attached to a top class S."""

    def __init__(self, datum: RootDatum, ring: Ring, top: Polynomial, strategy: str = "custom"):
        self.datum = datum
        self.ring = ring
        self.top = top
        self.strategy = strategy
        self.torsion_index = torsion_index(datum)
        W = datum.weyl
        w0 = W.longest
        self.members: dict[WeylElement, Polynomial] = {}
        for w in W:
            self.members[w] = partial(datum, w.inverse() * w0, top)
        if self.members[W.identity] != Polynomial.one(ring, datum.rank):
            raise AssertionError("S_1 != 1: the top class is not valid")
        self._echelons: dict = {}

    def __getitem__(self, w: WeylElement) -> Polynomial:
        return self.members[w]

    def ordered(self) -> list[tuple[WeylElement, Polynomial]]:
        return sorted(self.members.items(), key=lambda kv: (kv[0].length, kv[0].word))

    def matrix_order(self) -> list[WeylElement]:
        """Descending length; within a length, ordered by w^{-1} w0 in enumeration order."""
        w0 = self.datum.weyl.longest
        return sorted(self.members, key=lambda w: ((w.inverse() * w0).length, (w.inverse() * w0).word))

    def to_json(self, group: str | None = None) -> dict:
        names = self.datum.var_names
        return {
            "group": group or self.datum.name or "raw",
            "ring": str(self.ring),
            "torsion_index": self.torsion_index,
            "members": [{"word": list(w.word), "poly": p.to_json(names)} for w, p in self.ordered()],
        }


def schubert_family(datum: RootDatum, ring: Ring = ZZ, strategy: str = "preset") -> SchubertFamily:
    return SchubertFamily(datum, ring, top_class(datum, ring, strategy), strategy)


# S^W generators ------------------------------------------------------------

def _elementary(n: int, k: int) -> Polynomial:
    terms = {}
    for idx in itertools.combinations(range(n), k):
        terms[tuple(int(i in idx) for i in range(n))] = 1
    return Polynomial(ZZ, n, terms)


def _restrict_su(f: Polynomial) -> Polynomial:
    # e_n -> -(e1 + ... + e_{n-1})
    n = f.nvars
    images = [Polynomial.variable(ZZ, n - 1, i) for i in range(n - 1)]
    images.append(Polynomial.linear(ZZ, [-1] * (n - 1)))
    return f.compose(images)


def _preset_generators(name: str) -> list[tuple[str, Polynomial]] | None:
    if name.startswith("U"):
        n = int(name[1:])
        return [(f"p{k}", _elementary(n, k)) for k in range(1, n + 1)]
    if name.startswith("SU"):
        n = int(name[2:])
        return [(f"q{k}", _restrict_su(_elementary(n, k))) for k in range(2, n + 1)]
    if name == "Sp2":
        return [("p1", Polynomial(ZZ, 2, {(2, 0): 1, (0, 2): 1})), ("p2", Polynomial(ZZ, 2, {(2, 2): 1}))]
    if name == "SO3":
        return [("p1", Polynomial(ZZ, 1, {(2,): 1}))]
    return None


def integer_invariants(datum: RootDatum, degree: int) -> list[Polynomial]:
    """Z-basis of the W-invariant lattice in S^degree (saturated kernel)."""
    monos = monomials_of_degree(datum.rank, degree)
    index = {m: j for j, m in enumerate(monos)}
    n = len(monos)
    columns = []
    for m in monos:
        f = Polynomial.monomial(ZZ, m)
        col = {}
        for i in range(1, datum.nsimple + 1):
            g = datum.weyl.simple(i).act(f) - f
            for e, c in g.terms.items():
                col[(i - 1) * n + index[e]] = c
        columns.append(col)
    out = []
    for vec in kernel(ZZ, columns):
        out.append(Polynomial(ZZ, datum.rank, {monos[j]: c for j, c in vec.items()}))
    return sorted(out, key=lambda p: [(-(e[0] if e else 0), e) for e in sorted(p.terms, reverse=True)])


def _generic_generators(datum: RootDatum, max_degree: int = 12) -> list[tuple[str, Polynomial]]:
    """Algebra generators of S^W over Q found degree by degree (integral representatives)."""
    gens: list[tuple[int, Polynomial]] = []
    for d in range(1, max_degree + 1):
        if len(gens) >= datum.rank:
            break
        monos = monomials_of_degree(datum.rank, d)
        index = {m: j for j, m in enumerate(monos)}
        ech = Echelon(QQ, track=False)
        degs = [g[0] for g in gens]
        for e in _weighted_monomials(degs, d):
            prod = Polynomial.one(ZZ, datum.rank)
            for (gd, gp), k in zip(gens, e):
                prod = prod * gp ** k
            ech.insert({index[m]: c for m, c in prod.terms.items()})
        for inv in integer_invariants(datum, d):
            if ech.insert({index[m]: c for m, c in inv.terms.items()}):
                gens.append((d, inv))
    return [(f"g{i + 1}", p) for i, (_, p) in enumerate(gens)]


def _weighted_monomials(degrees, total: int) -> list[tuple]:
    if not degrees:
        return [()] if total == 0 else []
    out = []
    first, rest = degrees[0], degrees[1:]
    for k in range(total // first, -1, -1):
        for tail in _weighted_monomials(rest, total - k * first):
            out.append((k,) + tail)
    return out


class SWBasis:
    """Named generators of S^W and graded bookkeeping of their monomials."""

    def __init__(self, datum: RootDatum, ring: Ring, generators: list[tuple[str, Polynomial]]):
        self.datum = datum
        self.ring = ring
        self.names = [n for n, _ in generators]
        self.generators = [p.change_ring(ring) if p.ring != ring else p for _, p in generators]
        self.degrees = [p.degree() for p in self.generators]
        self._products: dict = {}
        self._echelons: dict = {}

    @property
    def ngens(self) -> int:
        return len(self.generators)

    def gen_monomials(self, degree: int) -> list[tuple]:
        """Exponent vectors of generator monomials of the given polynomial degree."""
        return _weighted_monomials(self.degrees, degree)

    def product(self, exp: tuple) -> Polynomial:
        res = self._products.get(exp)
        if res is None:
            res = Polynomial.one(self.ring, self.datum.rank)
            for g, k in zip(self.generators, exp):
                if k:
                    res = res * g ** k
            with _lock:
                self._products.setdefault(exp, res)
        return res

    def to_polynomial(self, p: Polynomial) -> Polynomial:
        """Evaluate a polynomial in the generators as an element of S."""
        out = Polynomial.zero(self.ring, self.datum.rank)
        for e, c in p.terms.items():
            out = out + self.product(e).scale(c)
        return out

    def zero(self) -> Polynomial:
        return Polynomial.zero(self.ring, self.ngens)

    def express_invariant(self, f: Polynomial) -> Polynomial:
        """Write a W-invariant polynomial as a polynomial in the generators."""
        out = {}
        for d, part in f.homogeneous_parts().items():
            monos = self.gen_monomials(d)
            ech = self._echelon(d, monos)
            vec = {m: c for m, c in part.terms.items()}
            comb = ech.express(vec)
            if comb is None:
                raise ExpansionFailed(f"{part} is not in the span of generator monomials")
            for tag, c in comb.items():
                out[monos[tag]] = _into_ring(self.ring, c)
        return Polynomial(self.ring, self.ngens, out)

    def _echelon(self, d: int, monos) -> Echelon:
        ech = self._echelons.get(d)
        if ech is None:
            ech = Echelon(self.ring)
            for j, e in enumerate(monos):
                ech.insert(dict(self.product(e).terms), tag=j)
            self._echelons[d] = ech
        return ech

    def format(self, p: Polynomial) -> str:
        return p.format(self.names)

    def is_invariant(self) -> bool:
        return all(self.datum.weyl.simple(i).act(g) == g
                   for g in self.generators for i in range(1, self.datum.nsimple + 1))


def _into_ring(ring: Ring, c):
    try:
        return ring.coerce(c)
    except NotInRing as exc:
        raise ExpansionFailed(f"coefficient {c} does not lie in {ring}") from exc


def sw_basis(datum: RootDatum, ring: Ring = ZZ) -> SWBasis:
    """Preset generators when available, otherwise generators computed over Q."""
    name = preset_name(datum)
    gens = None
    if name == "PSU3":
        _require_unit(ring, 3, "lattice index")
        gens = [(n, _transport_su3_to_psu3(p, ring)) for n, p in _preset_generators("SU3")]
    elif name is not None:
        gens = _preset_generators(name)
    if gens is None:
        gens = _generic_generators(datum)
    return SWBasis(datum, ring, gens)


# expansion -------------------------------------------------------------------

def _expansion_echelon(family: SchubertFamily, basis: SWBasis, d: int):
    key = (id(basis), d)
    cached = family._echelons.get(key)
    if cached is not None:
        return cached
    tags = []
    ech = Echelon(family.ring)
    for w, sw in family.ordered():
        if w.length > d:
            continue
        for e in basis.gen_monomials(d - w.length):
            vec = dict((basis.product(e) * sw).terms)
            ech.insert(vec, tag=len(tags))
            tags.append((w, e))
    with _lock:
        family._echelons.setdefault(key, (ech, tags))
    return family._echelons[key]


def expand_in_schubert_basis(f: Polynomial, family: SchubertFamily, basis: SWBasis) -> dict:
    """Coefficients p_w (polynomials in the generators) with f = sum p_w S_w."""
    if f.ring != family.ring:
        raise ExpansionFailed(f"polynomial over {f.ring}, family over {family.ring}")
    if family.ring.kind not in ("Z", "Q", "Zmod", LOCALIZED):
        raise UnsupportedRing(str(family.ring))
    out: dict = {w: {} for w in family.members}
    for d, part in f.homogeneous_parts().items():
        ech, tags = _expansion_echelon(family, basis, d)
        comb = ech.express(dict(part.terms))
        if comb is None:
            raise ExpansionFailed(f"degree-{d} part is not in the span of the Schubert basis")
        for tag, c in comb.items():
            w, e = tags[tag]
            out[w][e] = _into_ring(family.ring, c)
    return {w: Polynomial(family.ring, basis.ngens, t) for w, t in out.items()}


def recombine(coeffs: dict, family: SchubertFamily, basis: SWBasis) -> Polynomial:
    total = Polynomial.zero(family.ring, family.datum.rank)
    for w, p in coeffs.items():
        if p:
            total = total + basis.to_polynomial(p) * family.members[w]
    return total


def pairing(datum: RootDatum, f: Polynomial, g: Polynomial) -> Polynomial:
    """B(f, g) = d_{w0}(f g)."""
    return partial(datum, datum.weyl.longest, f * g)


def dual_family(family: SchubertFamily) -> dict:
    """S^w = det(w w0) w0(S_{w w0}) for U(l+1) with the preset top class."""
    name = preset_name(family.datum)
    if name is None or not name.startswith("U") or family.strategy != "preset":
        raise NotTypeA("the dual Schubert family is only available for U(n) with the preset top class")
    w0 = family.datum.weyl.longest
    out = {}
    for w in family.members:
        ww0 = w * w0
        g = w0.act(family.members[ww0])
        out[w] = g if ww0.det > 0 else -g
    return out


def duality_defect(family: SchubertFamily) -> dict:
    """Pairings B(S_w, det(v w0) w0(S_{v w0})) that differ from delta_{w,v}.

    For U(n) with the preset top class the result is empty; for other
    groups it shows how far the type-A dual formula is from a dual basis.
    """
    w0 = family.datum.weyl.longest
    one = Polynomial.one(family.ring, family.datum.rank)
    zero = Polynomial.zero(family.ring, family.datum.rank)
    out = {}
    for v in family.members:
        vw0 = v * w0
        g = w0.act(family.members[vw0])
        g = g if vw0.det > 0 else -g
        for w, f in family.members.items():
            b = pairing(family.datum, f, g)
            if b != (one if w == v else zero):
                out[(w.word, v.word)] = b
    return out


def expand_by_duality(f: Polynomial, family: SchubertFamily, basis: SWBasis) -> dict:
    """Type-A expansion through the dual basis: p_w = B(f, S^w)."""
    dual = dual_family(family)
    return {w: basis.express_invariant(pairing(family.datum, f, dual[w])) for w in family.members}

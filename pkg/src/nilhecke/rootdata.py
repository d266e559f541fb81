"""Root data, Weyl groups, reduced words, Bruhat order, reflection subgroups.

A root datum is given by integer simple roots (coordinates in a chosen
basis of the character lattice X(T)) and simple coroots (coordinates in
the dual basis).  Simple reflections act on X(T) by
``s_i(x) = x - <x, coroot_i> root_i``; Weyl group elements are stored as
their integer action matrices (columns are images of basis vectors), so
that the product ``u * v`` acts as ``u(v(x))``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property
from fractions import Fraction

from .errors import GroupNotFinite, InvalidCartanData, UnknownPreset
from .poly import Polynomial, default_names
from .rings import MOD, ZZ, Ring

Matrix = tuple  # tuple of row tuples

SAFETY_BOUND = 10**6


def _identity(r: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(r)) for i in range(r))


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    n = len(b)
    cols = list(zip(*b)) if n else []
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def _apply(a: Matrix, v) -> tuple:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def _pair(x, y) -> int:
    return sum(a * b for a, b in zip(x, y))


def _det(m: Matrix) -> Fraction:
    a = [[Fraction(x) for x in row] for row in m]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return det


def _reflection_matrix(root, coroot) -> Matrix:
    r = len(root)
    return tuple(
        tuple(int(i == j) - root[i] * coroot[j] for j in range(r)) for i in range(r)
    )


class LinearAction:
    """Ring automorphism of the polynomial algebra induced by an integer matrix.

    Variable j is sent to the linear form given by column j.  Powers of
    these linear forms are cached since they are reused heavily.
    """

    def __init__(self, matrix: Matrix):
        self.matrix = matrix
        r = len(matrix)
        self.r = r
        cols = [tuple(matrix[i][j] for i in range(r)) for j in range(r)]
        self.columns = cols
        self.signed_perm = None
        perm, signs = [], []
        for col in cols:
            nz = [(i, c) for i, c in enumerate(col) if c]
            if len(nz) != 1 or abs(nz[0][1]) != 1:
                break
            perm.append(nz[0][0])
            signs.append(nz[0][1])
        else:
            self.signed_perm = (tuple(perm), tuple(signs))
        self._powers: dict = {}

    def _power(self, j: int, k: int) -> dict:
        key = (j, k)
        cached = self._powers.get(key)
        if cached is not None:
            return cached
        if k == 0:
            res = {(0,) * self.r: 1}
        else:
            prev = self._power(j, k - 1)
            lin = [(i, c) for i, c in enumerate(self.columns[j]) if c]
            res: dict = {}
            for e, c in prev.items():
                for i, a in lin:
                    ne = e[:i] + (e[i] + 1,) + e[i + 1:]
                    res[ne] = res.get(ne, 0) + c * a
            res = {e: c for e, c in res.items() if c}
        self._powers[key] = res
        return res

    def act(self, f: Polynomial) -> Polynomial:
        ring = f.ring
        if self.signed_perm is not None:
            perm, signs = self.signed_perm
            out = {}
            for e, c in f.terms.items():
                ne = [0] * self.r
                sign = 1
                for j, k in enumerate(e):
                    if k:
                        ne[perm[j]] = k
                        if signs[j] < 0 and k & 1:
                            sign = -sign
                out[tuple(ne)] = ring.reduce(c * sign)
            return Polynomial(ring, f.nvars, out, _clean=True)
        out: dict = {}
        for e, c in f.terms.items():
            acc = {(0,) * self.r: c}
            for j, k in enumerate(e):
                if not k:
                    continue
                pw = self._power(j, k)
                nxt: dict = {}
                for e1, c1 in acc.items():
                    for e2, c2 in pw.items():
                        ne = tuple(x + y for x, y in zip(e1, e2))
                        nxt[ne] = nxt.get(ne, 0) + c1 * c2
                acc = nxt
            for ne, v in acc.items():
                out[ne] = out.get(ne, 0) + v
        if ring.kind == MOD:
            m = ring.modulus
            return Polynomial(ring, f.nvars, {e: c % m for e, c in out.items() if c % m}, _clean=True)
        return Polynomial(ring, f.nvars, {e: c for e, c in out.items() if c}, _clean=True)


class WeylElement:
    """An element of W: its action matrix, a cached reduced word and length.

    Equality and hashing use the action matrix only.
    """

    __slots__ = ("matrix", "word", "length", "group", "_action", "__weakref__")

    def __init__(self, matrix: Matrix, word: tuple, group: "WeylGroup"):
        self.matrix = matrix
        self.word = tuple(word)
        self.length = len(word)
        self.group = group
        self._action = None

    @property
    def det(self) -> int:
        return -1 if self.length % 2 else 1

    @property
    def action(self) -> LinearAction:
        if self._action is None:
            self._action = LinearAction(self.matrix)
        return self._action

    def act(self, f: Polynomial) -> Polynomial:
        return self.action.act(f)

    def act_vector(self, v) -> tuple:
        return _apply(self.matrix, v)

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        return self.group.multiply(self, other)

    def inverse(self) -> "WeylElement":
        return self.group.inverse(self)

    def is_identity(self) -> bool:
        return self.length == 0

    def __eq__(self, other):
        return isinstance(other, WeylElement) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __lt__(self, other):
        return (self.length, self.word) < (other.length, other.word)

    def name(self) -> str:
        return "".join(f"s{i}" for i in self.word) or "1"

    def __repr__(self):
        return f"<W {self.name()}>"


class WeylGroup:
    def __init__(self, datum: "RootDatum", bound: int = SAFETY_BOUND):
        self.datum = datum
        r = datum.rank
        gens = [_reflection_matrix(a, c) for a, c in zip(datum.simple_roots, datum.simple_coroots)]
        self.generator_matrices = gens
        ident = _identity(r)
        words = {ident: ()}
        level = [ident]
        order = [ident]
        while level:
            nxt = []
            for m in level:
                w = words[m]
                for i, g in enumerate(gens):
                    v = _matmul(m, g)
                    if v not in words:
                        words[v] = w + (i + 1,)
                        nxt.append(v)
                        if len(words) > bound:
                            raise GroupNotFinite(f"Weyl group exceeds {bound} elements")
            nxt.sort(key=lambda m: words[m])
            order.extend(nxt)
            level = nxt
        self.elements = [WeylElement(m, words[m], self) for m in order]
        self._by_matrix = {w.matrix: w for w in self.elements}
        self._mul: dict = {}
        self._reduced_words: dict = {}
        self._below: dict = {}

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @property
    def identity(self) -> WeylElement:
        return self.elements[0]

    @property
    def longest(self) -> WeylElement:
        return self.elements[-1]

    def simple(self, i: int) -> WeylElement:
        """Simple reflection s_i, 1-based."""
        return self._by_matrix[self.generator_matrices[i - 1]]

    def from_matrix(self, m: Matrix) -> WeylElement:
        return self._by_matrix[tuple(tuple(r) for r in m)]

    def from_word(self, word) -> WeylElement:
        m = _identity(self.datum.rank)
        for i in word:
            m = _matmul(m, self.generator_matrices[i - 1])
        return self._by_matrix[m]

    def multiply(self, u: WeylElement, v: WeylElement) -> WeylElement:
        key = (u.matrix, v.matrix)
        res = self._mul.get(key)
        if res is None:
            res = self._by_matrix[_matmul(u.matrix, v.matrix)]
            self._mul[key] = res
        return res

    def inverse(self, w: WeylElement) -> WeylElement:
        return self.from_word(reversed(w.word))

    def reduced_words(self, w: WeylElement) -> list[tuple]:
        cached = self._reduced_words.get(w)
        if cached is not None:
            return cached
        if w.length == 0:
            out = [()]
        else:
            out = []
            for i in range(1, self.datum.nsimple + 1):
                v = w * self.simple(i)
                if v.length < w.length:
                    out.extend(word + (i,) for word in self.reduced_words(v))
            out.sort()
        self._reduced_words[w] = out
        return out

    def bruhat_interval(self, w: WeylElement) -> frozenset:
        """All u <= w, via reduced subwords of the cached word of w."""
        cached = self._below.get(w)
        if cached is not None:
            return cached
        found = set()
        word = w.word
        for mask in itertools.product((0, 1), repeat=len(word)):
            sub = [i for i, keep in zip(word, mask) if keep]
            u = self.from_word(sub)
            if u.length == len(sub):
                found.add(u)
        res = frozenset(found)
        self._below[w] = res
        return res

    def bruhat_leq(self, u: WeylElement, w: WeylElement) -> bool:
        return u in self.bruhat_interval(w)


@dataclass(frozen=True)
class Root:
    vector: tuple
    coroot: tuple
    simple_coords: tuple

    @property
    def height(self) -> int:
        return sum(self.simple_coords)

    @property
    def is_positive(self) -> bool:
        return all(c >= 0 for c in self.simple_coords)


@dataclass(eq=False)
class RootDatum:
    simple_roots: tuple
    simple_coroots: tuple
    var_names: tuple = ()
    name: str | None = None
    bound: int = field(default=SAFETY_BOUND, repr=False)

    def __post_init__(self):
        self.simple_roots = tuple(tuple(int(x) for x in a) for a in self.simple_roots)
        self.simple_coroots = tuple(tuple(int(x) for x in a) for a in self.simple_coroots)
        if not self.simple_roots:
            raise InvalidCartanData("at least one simple root is required")
        r = len(self.simple_roots[0])
        if any(len(a) != r for a in self.simple_roots + self.simple_coroots):
            raise InvalidCartanData("all roots and coroots must have length rank")
        if len(self.simple_coroots) != len(self.simple_roots):
            raise InvalidCartanData("need one coroot per simple root")
        if not self.var_names:
            self.var_names = tuple(default_names(r))
        self.var_names = tuple(self.var_names)
        if len(self.var_names) != r:
            raise InvalidCartanData("need one variable name per lattice coordinate")
        self._validate()
        self._reflections: dict = {}
        self._caches: dict = {}

    def _validate(self):
        a = self.cartan_matrix
        n = len(a)
        for i in range(n):
            if a[i][i] != 2:
                raise InvalidCartanData(f"<alpha_{i+1}, alpha_{i+1}^v> = {a[i][i]}, expected 2")
            for j in range(n):
                if i == j:
                    continue
                if a[i][j] > 0:
                    raise InvalidCartanData("off-diagonal Cartan entries must be <= 0")
                if (a[i][j] == 0) != (a[j][i] == 0):
                    raise InvalidCartanData("Cartan matrix zero pattern is not symmetric")
                if a[i][j] * a[j][i] > 3:
                    raise InvalidCartanData("Cartan matrix is not of finite type")
        gram = [[_pair(x, y) for y in self.simple_roots] for x in self.simple_roots]
        if _det(gram) == 0:
            raise InvalidCartanData("simple roots are linearly dependent")

    @property
    def rank(self) -> int:
        return len(self.simple_roots[0])

    @property
    def nsimple(self) -> int:
        return len(self.simple_roots)

    @cached_property
    def cartan_matrix(self) -> list[list[int]]:
        """Entry (i, j) is <alpha_i, alpha_j^v>."""
        return [[_pair(a, c) for c in self.simple_coroots] for a in self.simple_roots]

    @cached_property
    def weyl(self) -> WeylGroup:
        return WeylGroup(self, self.bound)

    @cached_property
    def roots(self) -> list[Root]:
        n = self.nsimple
        seen = {}
        frontier = []
        for i, (a, c) in enumerate(zip(self.simple_roots, self.simple_coroots)):
            coords = tuple(int(j == i) for j in range(n))
            root = Root(a, c, coords)
            seen[a] = root
            frontier.append(root)
        while frontier:
            nxt = []
            for root in frontier:
                for j, (aj, cj) in enumerate(zip(self.simple_roots, self.simple_coroots)):
                    k = _pair(root.vector, cj)
                    vec = tuple(x - k * y for x, y in zip(root.vector, aj))
                    if vec in seen:
                        continue
                    m = _pair(aj, root.coroot)
                    cor = tuple(x - m * y for x, y in zip(root.coroot, cj))
                    coords = list(root.simple_coords)
                    coords[j] -= k
                    new = Root(vec, cor, tuple(coords))
                    seen[vec] = new
                    nxt.append(new)
                    if len(seen) > 2 * self.bound:
                        raise GroupNotFinite("root system is infinite")
            frontier = nxt
        return sorted(seen.values(), key=lambda r: (not r.is_positive, r.height if r.is_positive else -r.height,
                                                     tuple(-abs(c) for c in r.simple_coords)))

    @cached_property
    def positive_roots(self) -> list[Root]:
        """Positive roots ordered by height, then lexicographically."""
        pos = [r for r in self.roots if r.is_positive]
        return sorted(pos, key=lambda r: (r.height, tuple(-c for c in r.simple_coords)))

    def root(self, vector) -> Root:
        vector = tuple(vector)
        for r in self.roots:
            if r.vector == vector:
                return r
        raise ValueError(f"{vector} is not a root")

    def reflection(self, vector) -> WeylElement:
        vector = tuple(vector)
        w = self._reflections.get(vector)
        if w is None:
            r = self.root(vector)
            w = self.weyl.from_matrix(_reflection_matrix(r.vector, r.coroot))
            self._reflections[vector] = w
        return w

    def root_polynomial(self, vector, ring: Ring = ZZ) -> Polynomial:
        return Polynomial.linear(ring, list(vector))

    def is_negative_root(self, vector) -> bool:
        return tuple(-x for x in vector) in {r.vector for r in self.positive_roots}

    def discriminant(self, ring: Ring = ZZ) -> Polynomial:
        d = Polynomial.one(ring, self.rank)
        for r in self.positive_roots:
            d = d * self.root_polynomial(r.vector, ring)
        return d

    def cache(self, name: str) -> dict:
        """Per-datum memo table used by the operator modules."""
        return self._caches.setdefault(name, {})

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "rank": self.rank,
            "simple_roots": [list(a) for a in self.simple_roots],
            "simple_coroots": [list(c) for c in self.simple_coroots],
            "vars": list(self.var_names),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "RootDatum":
        datum = cls(
            simple_roots=obj["simple_roots"],
            simple_coroots=obj["simple_coroots"],
            var_names=tuple(obj.get("vars") or ()),
            name=obj.get("name"),
        )
        if "rank" in obj and obj["rank"] != datum.rank:
            raise InvalidCartanData(f"rank {obj['rank']} does not match root length {datum.rank}")
        return datum

    def __repr__(self):
        return f"RootDatum({self.name or 'raw'}, rank={self.rank})"


# presets -------------------------------------------------------------------

def _unitary(n: int) -> RootDatum:
    roots, coroots = [], []
    for i in range(n - 1):
        v = [0] * n
        v[i], v[i + 1] = 1, -1
        roots.append(v)
        coroots.append(v)
    return RootDatum(roots, coroots, tuple(default_names(n)), f"U{n}")


def _special_unitary(n: int) -> RootDatum:
    # X(T) = Z^n / (e1 + ... + en), realized with e_n = -(e1 + ... + e_{n-1})
    def restrict(v):
        return [v[i] - v[n - 1] for i in range(n - 1)]

    roots, coroots = [], []
    for i in range(n - 1):
        v = [0] * n
        v[i], v[i + 1] = 1, -1
        roots.append(restrict(v))
        coroots.append(v[: n - 1])
    return RootDatum(roots, coroots, tuple(default_names(n - 1)), f"SU{n}")


def _preset_table() -> dict:
    return {
        "U2": lambda: _unitary(2),
        "U3": lambda: _unitary(3),
        "U4": lambda: _unitary(4),
        "SU2": lambda: _special_unitary(2),
        "SU3": lambda: _special_unitary(3),
        "SO3": lambda: RootDatum([[1]], [[2]], ("a",), "SO3"),
        "PSU3": lambda: RootDatum([[1, 0], [0, 1]], [[2, -1], [-1, 2]], ("a1", "a2"), "PSU3"),
        "Sp2": lambda: RootDatum([[1, -1], [0, 2]], [[1, -1], [0, 1]], ("e1", "e2"), "Sp2"),
    }


PRESETS = tuple(_preset_table())
_preset_cache: dict = {}


def preset_datum(name: str) -> RootDatum:
    """Lattice-exact root datum for one of the named groups in ``PRESETS``."""
    aliases = {"U(2,H)": "Sp2", "USp4": "Sp2", "UH2": "Sp2"}
    key = aliases.get(name, name)
    table = _preset_table()
    if key not in table:
        raise UnknownPreset(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}")
    if key not in _preset_cache:
        _preset_cache[key] = table[key]()
    return _preset_cache[key]


def load_datum(path) -> RootDatum:
    with open(path) as fh:
        return RootDatum.from_json(json.load(fh))


# module-level operations ----------------------------------------------------

def enumerate_weyl(datum: RootDatum) -> list[WeylElement]:
    return list(datum.weyl.elements)


def all_reduced_words(w: WeylElement) -> list[tuple]:
    return w.group.reduced_words(w)


def bruhat_leq(u: WeylElement, w: WeylElement) -> bool:
    return w.group.bruhat_leq(u, w)


def positive_roots(datum: RootDatum) -> list[tuple]:
    return [r.vector for r in datum.positive_roots]


def discriminant(datum: RootDatum, ring: Ring = ZZ) -> Polynomial:
    return datum.discriminant(ring)


@dataclass(eq=False)
class ReflectionSubgroup:
    parent: RootDatum
    generators: tuple
    elements: frozenset
    positive_system: tuple
    is_parabolic: bool

    def __len__(self):
        return len(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)


def reflection_subgroup(datum: RootDatum, roots) -> ReflectionSubgroup:
    """Subgroup of W generated by the reflections in the given roots."""
    W = datum.weyl
    gens = [datum.reflection(tuple(r)) for r in roots]
    elems = {W.identity}
    frontier = [W.identity]
    while frontier:
        nxt = []
        for u in frontier:
            for g in gens:
                v = u * g
                if v not in elems:
                    elems.add(v)
                    nxt.append(v)
        frontier = nxt
    elems = frozenset(elems)
    pos = tuple(r.vector for r in datum.positive_roots if datum.reflection(r.vector) in elems)
    simple_inside = [W.simple(i) for i in range(1, datum.nsimple + 1) if W.simple(i) in elems]
    parabolic = {W.identity}
    frontier = [W.identity]
    while frontier:
        nxt = []
        for u in frontier:
            for g in simple_inside:
                v = u * g
                if v not in parabolic:
                    parabolic.add(v)
                    nxt.append(v)
        frontier = nxt
    return ReflectionSubgroup(
        parent=datum,
        generators=tuple(tuple(r) for r in roots),
        elements=elems,
        positive_system=pos,
        is_parabolic=parabolic == set(elems),
    )


def parse_roots(text: str, datum: RootDatum) -> list[tuple]:
    """Parse ``"2e1,2e2"`` or ``"e1-e2"`` into root vectors of the datum."""
    from .poly import parse_polynomial

    out = []
    for piece in text.split(","):
        piece = piece.strip()
        if not piece:
            continue
        f = parse_polynomial(_insert_mult(piece), datum.var_names)
        if not f.is_homogeneous(1):
            raise ValueError(f"{piece!r} is not a linear form")
        vec = [0] * datum.rank
        for e, c in f.terms.items():
            vec[e.index(1)] = int(c)
        vec = tuple(vec)
        datum.root(vec)
        out.append(vec)
    return out


def _insert_mult(text: str) -> str:
    """Turn ``2e1-3e2`` into ``2*e1-3*e2``."""
    import re

    return re.sub(r"(\d)([A-Za-z_])", r"\1*\2", text)

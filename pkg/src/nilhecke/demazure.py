"""Divided differences, the Demazure algebra and its product.

``delta`` implements u -> (u - s_a(u)) / a.  It is computed over the
integers on monomials (with a per-datum memo table) and extended
linearly, which also defines it over Z/m: the integer operator is
Z-linear, so lifting coefficients, applying it and reducing is
well defined.

A :class:`DemazureElement` is a finite sum ``sum_w u_w d_w`` in the
free left S-module basis {d_w}.  It acts on polynomials by
``f -> sum_w u_w d_w(f)``.
"""

from __future__ import annotations

import itertools
import threading

from .errors import NotBruhatComparable, RingMismatch
from .poly import Polynomial, exact_divide_linear
from .rings import ZZ, Ring
from .rootdata import RootDatum, WeylElement

_lock = threading.Lock()


def weyl_act(w: WeylElement, f: Polynomial) -> Polynomial:
    return w.act(f)


def _root_key(datum: RootDatum, alpha) -> tuple:
    if isinstance(alpha, int):
        return datum.simple_roots[alpha - 1]
    if isinstance(alpha, Polynomial):
        vec = [0] * datum.rank
        for e, c in alpha.terms.items():
            vec[e.index(1)] = int(c)
        return tuple(vec)
    return tuple(alpha)


def _delta_monomial(datum: RootDatum, root: tuple, exp: tuple) -> dict:
    table = datum.cache("delta:" + ",".join(map(str, root)))
    res = table.get(exp)
    if res is None:
        s = datum.reflection(root)
        m = Polynomial.monomial(ZZ, exp)
        q = exact_divide_linear(m - s.act(m), Polynomial.linear(ZZ, root))
        res = q.terms
        with _lock:
            table.setdefault(exp, res)
    return res


def delta(datum: RootDatum, alpha, f: Polynomial) -> Polynomial:
    """delta_alpha(f) for a root alpha (vector, linear polynomial, or simple index)."""
    root = _root_key(datum, alpha)
    ring = f.ring
    out: dict = {}
    for e, c in f.terms.items():
        if sum(e) == 0:
            continue
        for e2, c2 in _delta_monomial(datum, root, e).items():
            out[e2] = out.get(e2, 0) + c * c2
    terms = {}
    for e, c in out.items():
        c = ring.reduce(c)
        if c:
            terms[e] = c
    return Polynomial(ring, f.nvars, terms, _clean=True)


def partial(datum: RootDatum, w: WeylElement, f: Polynomial, word=None) -> Polynomial:
    """d_w(f) along ``word`` (default: the cached reduced word), rightmost first."""
    for i in reversed(w.word if word is None else word):
        if not f:
            break
        f = delta(datum, i, f)
    return f


def partial_word(datum: RootDatum, word, f: Polynomial) -> Polynomial:
    for i in reversed(tuple(word)):
        f = delta(datum, i, f)
    return f


class DemazureElement:
    """Finite sum of u_w * d_w with polynomial coefficients u_w."""

    __slots__ = ("datum", "ring", "support")

    def __init__(self, datum: RootDatum, ring: Ring, support=None):
        self.datum = datum
        self.ring = ring
        self.support = {w: u for w, u in (support or {}).items() if u}

    # construction ------------------------------------------------------

    @classmethod
    def zero(cls, datum: RootDatum, ring: Ring) -> "DemazureElement":
        return cls(datum, ring)

    @classmethod
    def identity(cls, datum: RootDatum, ring: Ring) -> "DemazureElement":
        return cls.basis(datum, ring, datum.weyl.identity)

    @classmethod
    def basis(cls, datum: RootDatum, ring: Ring, w: WeylElement, coeff: Polynomial | None = None):
        if coeff is None:
            coeff = Polynomial.one(ring, datum.rank)
        return cls(datum, ring, {w: coeff})

    @classmethod
    def from_weyl(cls, datum: RootDatum, ring: Ring, w: WeylElement) -> "DemazureElement":
        """The operator f -> w(f), expanded with s_i = 1 - a_i d_i."""
        return cls.identity(datum, ring).left_weyl(w)

    # arithmetic --------------------------------------------------------

    def _check(self, other: "DemazureElement"):
        if self.datum is not other.datum or self.ring != other.ring:
            raise RingMismatch("Demazure elements over different data or rings")

    def __add__(self, other: "DemazureElement") -> "DemazureElement":
        self._check(other)
        out = dict(self.support)
        for w, u in other.support.items():
            out[w] = out[w] + u if w in out else u
        return DemazureElement(self.datum, self.ring, out)

    def __neg__(self):
        return DemazureElement(self.datum, self.ring, {w: -u for w, u in self.support.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, u: Polynomial) -> "DemazureElement":
        """Left multiplication by the polynomial u."""
        return DemazureElement(self.datum, self.ring, {w: u * c for w, c in self.support.items()})

    def __eq__(self, other):
        return (
            isinstance(other, DemazureElement)
            and self.datum is other.datum
            and self.ring == other.ring
            and self.support == other.support
        )

    def __hash__(self):
        return hash(frozenset(self.support.items()))

    def __bool__(self):
        return bool(self.support)

    def coefficient(self, w: WeylElement) -> Polynomial:
        return self.support.get(w, Polynomial.zero(self.ring, self.datum.rank))

    def left_partial(self, i: int) -> "DemazureElement":
        """d_i * self, using d_i(u g) = d_i(u) g + s_i(u) d_i(g)."""
        W = self.datum.weyl
        s = W.simple(i)
        out: dict = {}
        for v, u in self.support.items():
            du = delta(self.datum, i, u)
            if du:
                out[v] = out[v] + du if v in out else du
            sv = s * v
            if sv.length > v.length:
                su = s.act(u)
                out[sv] = out[sv] + su if sv in out else su
        return DemazureElement(self.datum, self.ring, out)

    def left_reflection(self, i: int) -> "DemazureElement":
        """s_i * self, using s_i(u g) = s_i(u) g - a_i s_i(u) d_i(g)."""
        W = self.datum.weyl
        s = W.simple(i)
        alpha = Polynomial.linear(self.ring, self.datum.simple_roots[i - 1])
        out: dict = {}
        for v, u in self.support.items():
            su = s.act(u)
            out[v] = out[v] + su if v in out else su
            sv = s * v
            if sv.length > v.length:
                t = -(alpha * su)
                out[sv] = out[sv] + t if sv in out else t
        return DemazureElement(self.datum, self.ring, out)

    def left_weyl(self, w: WeylElement) -> "DemazureElement":
        res = self
        for i in reversed(w.word):
            res = res.left_reflection(i)
        return res

    def apply(self, f: Polynomial) -> Polynomial:
        total = Polynomial.zero(self.ring, self.datum.rank)
        for w, u in self.support.items():
            g = partial(self.datum, w, f)
            if g:
                total = total + u * g
        return total

    def __call__(self, f: Polynomial) -> Polynomial:
        return self.apply(f)

    def __mul__(self, other: "DemazureElement") -> "DemazureElement":
        return demazure_mul(self, other)

    def sorted_support(self):
        return sorted(self.support.items(), key=lambda kv: (kv[0].length, kv[0].word))

    def to_json(self, names=None) -> dict:
        return {
            "terms": [
                {"word": list(w.word), "coeff": u.to_json(names or self.datum.var_names)}
                for w, u in self.sorted_support()
            ]
        }

    @classmethod
    def from_json(cls, obj: dict, datum: RootDatum, ring: Ring) -> "DemazureElement":
        W = datum.weyl
        support = {}
        for t in obj["terms"]:
            w = W.from_word(t["word"])
            support[w] = Polynomial.from_json(t["coeff"], ring)
        return cls(datum, ring, support)

    def __repr__(self):
        parts = [f"({u})*d[{w.name()}]" for w, u in self.sorted_support()]
        return " + ".join(parts) or "0"


def demazure_apply(D: DemazureElement, f: Polynomial) -> Polynomial:
    return D.apply(f)


def relative_operator(w: WeylElement, w2: WeylElement, ring: Ring = ZZ) -> DemazureElement:
    """The operator d_{w/w2} of the generalized Leibniz rule.

    For the fixed reduced word s = (i_1..i_k) of w it is
    w2^{-1} * sum over reduced subwords t of s with product w2 of
    phi_1 ... phi_k, where phi_j = s_{i_j} if j is in t and d_{i_j} otherwise.
    """
    datum = w.group.datum
    if not w.group.bruhat_leq(w2, w):
        raise NotBruhatComparable(f"{w2.name()} is not below {w.name()} in the Bruhat order")
    table = datum.cache(f"relative:{ring}")
    key = (w, w2)
    res = table.get(key)
    if res is not None:
        return res
    W = w.group
    word = w.word
    total = DemazureElement.zero(datum, ring)
    for mask in itertools.product((0, 1), repeat=len(word)):
        sub = [i for i, keep in zip(word, mask) if keep]
        if len(sub) != w2.length or W.from_word(sub) != w2:
            continue
        term = DemazureElement.identity(datum, ring)
        for i, keep in reversed(list(zip(word, mask))):
            term = term.left_reflection(i) if keep else term.left_partial(i)
        total = total + term
    res = total.left_weyl(w2.inverse())
    with _lock:
        table.setdefault(key, res)
    return table[key]


def demazure_mul(D1: DemazureElement, D2: DemazureElement) -> DemazureElement:
    """Product in the Demazure algebra via the structure-constant formula.

    (u d_w)(u' d_w') = sum over w'' <= w with l(w''w') = l(w'') + l(w') of
    u * w''(d_{w/w''}(u')) d_{w''w'}.
    """
    D1._check(D2)
    datum, ring = D1.datum, D1.ring
    W = datum.weyl
    out: dict = {}
    for w, u in D1.support.items():
        below = sorted(W.bruhat_interval(w))
        for w1, u1 in D2.support.items():
            for w2 in below:
                target = w2 * w1
                if target.length != w2.length + w1.length:
                    continue
                c = relative_operator(w, w2, ring).apply(u1)
                if not c:
                    continue
                c = u * w2.act(c)
                out[target] = out[target] + c if target in out else c
    return DemazureElement(datum, ring, out)


def demazure_mul_by_generators(D1: DemazureElement, D2: DemazureElement) -> DemazureElement:
    """Same product computed by left-multiplying D2 by the generators of D1.

    Independent of the structure constants; used as a cross-check.
    """
    D1._check(D2)
    total = DemazureElement.zero(D1.datum, D1.ring)
    for w, u in D1.support.items():
        term = D2
        for i in reversed(w.word):
            term = term.left_partial(i)
        total = total + term.scale(u)
    return total


def leibniz_rhs(w: WeylElement, a1: Polynomial, a2: Polynomial) -> Polynomial:
    """sum over w' <= w of w'(d_{w/w'}(a1)) * d_{w'}(a2)."""
    datum = w.group.datum
    total = Polynomial.zero(a1.ring, a1.nvars)
    for w2 in sorted(w.group.bruhat_interval(w)):
        d2 = partial(datum, w2, a2)
        if not d2:
            continue
        d1 = relative_operator(w, w2, a1.ring).apply(a1)
        total = total + w2.act(d1) * d2
    return total


def antisymmetrizer_identity_check(datum: RootDatum, f: Polynomial) -> bool:
    """d * d_{w0}(f) == sum_w det(w) w(f)."""
    d = datum.discriminant(f.ring)
    lhs = d * partial(datum, datum.weyl.longest, f)
    rhs = Polynomial.zero(f.ring, f.nvars)
    for w in datum.weyl:
        g = w.act(f)
        rhs = rhs + g if w.det > 0 else rhs - g
    return lhs == rhs


def psi(family, f: Polynomial) -> Polynomial:
    """psi(u) = d_{w0}(S_{w0} u)."""
    datum = family.datum
    return partial(datum, datum.weyl.longest, family.top * f)


def discriminant_identity_check(family, f: Polynomial) -> bool:
    """d (1 - psi)(f) == sum_w det(w) w(S_{w0}) (1 - w)(f)."""
    datum = family.datum
    ring = f.ring
    d = datum.discriminant(ring)
    lhs = d * (f - psi(family, f))
    rhs = Polynomial.zero(ring, f.nvars)
    for w in datum.weyl:
        term = w.act(family.top) * (f - w.act(f))
        rhs = rhs + term if w.det > 0 else rhs - term
    return lhs == rhs


def averaging(datum: RootDatum, f: Polynomial) -> Polynomial:
    """|W|^{-1} sum_w w(f); needs |W| invertible in the ring of f."""
    total = Polynomial.zero(f.ring, f.nvars)
    for w in datum.weyl:
        total = total + w.act(f)
    return total.scale(f.ring.inverse(len(datum.weyl)))

"""Sparse multivariate polynomials over the rings of :mod:`nilhecke.rings`."""

from __future__ import annotations

import ast
from fractions import Fraction
from functools import reduce
from math import gcd
from operator import add

from .errors import NotDivisible, RingMismatch
from .rings import MOD, QQ, ZZ, Ring


def monomials_of_degree(nvars: int, d: int) -> list[tuple[int, ...]]:
    """All exponent tuples of total degree d, lexicographically descending.

    >>> monomials_of_degree(2, 2)
    [(2, 0), (1, 1), (0, 2)]
    """
    if d < 0:
        raise ValueError("degree must be nonnegative")
    if nvars == 0:
        return [()] if d == 0 else []
    if nvars == 1:
        return [(d,)]
    out = []
    for first in range(d, -1, -1):
        for rest in monomials_of_degree(nvars - 1, d - first):
            out.append((first,) + rest)
    return out


def default_names(nvars: int) -> list[str]:
    return [f"e{i + 1}" for i in range(nvars)]


class Polynomial:
    """Immutable sparse polynomial: exponent tuple -> nonzero coefficient."""

    __slots__ = ("ring", "nvars", "terms")

    def __init__(self, ring: Ring, nvars: int, terms=None, *, _clean=False):
        self.ring = ring
        self.nvars = nvars
        if terms is None:
            terms = {}
        elif not _clean:
            clean = {}
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != nvars:
                    raise ValueError(f"exponent {e} has wrong length for {nvars} variables")
                c = ring.coerce(c)
                if c:
                    clean[e] = c
            terms = clean
        self.terms = terms

    # construction ---------------------------------------------------------

    @classmethod
    def zero(cls, ring: Ring, nvars: int) -> "Polynomial":
        return cls(ring, nvars, {}, _clean=True)

    @classmethod
    def constant(cls, ring: Ring, nvars: int, c=1) -> "Polynomial":
        return cls(ring, nvars, {(0,) * nvars: c})

    @classmethod
    def one(cls, ring: Ring, nvars: int) -> "Polynomial":
        return cls.constant(ring, nvars, 1)

    @classmethod
    def variable(cls, ring: Ring, nvars: int, i: int) -> "Polynomial":
        e = [0] * nvars
        e[i] = 1
        return cls(ring, nvars, {tuple(e): 1})

    @classmethod
    def monomial(cls, ring: Ring, exp, coeff=1) -> "Polynomial":
        return cls(ring, len(exp), {tuple(exp): coeff})

    @classmethod
    def linear(cls, ring: Ring, coeffs) -> "Polynomial":
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            e = [0] * n
            e[i] = 1
            terms[tuple(e)] = c
        return cls(ring, n, terms)

    def _new(self, terms) -> "Polynomial":
        return Polynomial(self.ring, self.nvars, terms, _clean=True)

    # basic queries --------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self, d: int | None = None) -> bool:
        degs = {sum(e) for e in self.terms}
        if not degs:
            return True
        if len(degs) > 1:
            return False
        return d is None or degs == {d}

    def homogeneous_part(self, d: int) -> "Polynomial":
        return self._new({e: c for e, c in self.terms.items() if sum(e) == d})

    def homogeneous_parts(self) -> dict[int, "Polynomial"]:
        parts: dict[int, dict] = {}
        for e, c in self.terms.items():
            parts.setdefault(sum(e), {})[e] = c
        return {d: self._new(t) for d, t in sorted(parts.items())}

    def coefficient(self, exp):
        return self.terms.get(tuple(exp), 0)

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, 0)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def sorted_terms(self):
        """Terms in lexicographically descending exponent order."""
        return sorted(self.terms.items(), reverse=True)

    # arithmetic -----------------------------------------------------------

    def _check(self, other: "Polynomial"):
        if self.ring != other.ring or self.nvars != other.nvars:
            raise RingMismatch(
                f"polynomials over {self.ring}[{self.nvars} vars] and "
                f"{other.ring}[{other.nvars} vars]"
            )

    def _lift_scalar(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.ring, self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift_scalar(other)
        if other is NotImplemented:
            return other
        ring = self.ring
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = ring.reduce(terms.get(e, 0) + c)
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return self._new(terms)

    __radd__ = __add__

    def __neg__(self):
        ring = self.ring
        return self._new({e: ring.reduce(-c) for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift_scalar(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Polynomial":
        ring = self.ring
        c = ring.coerce(c)
        if not c:
            return self._new({})
        out = {}
        for e, v in self.terms.items():
            s = ring.reduce(v * c)
            if s:
                out[e] = s
        return self._new(out)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        ring = self.ring
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out: dict = {}
        get = out.get
        for e2, c2 in b.items():
            for e1, c1 in a.items():
                e = tuple(map(add, e1, e2))
                out[e] = get(e, 0) + c1 * c2
        if ring.kind == MOD:
            m = ring.modulus
            return self._new({e: c % m for e, c in out.items() if c % m})
        return self._new({e: c for e, c in out.items() if c})

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = Polynomial.one(self.ring, self.nvars)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            c = self.ring.coerce(other)
            return self.terms == ({(0,) * self.nvars: c} if c else {})
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, self.nvars, frozenset(self.terms.items())))

    # maps -----------------------------------------------------------------

    def map_coefficients(self, fn, ring: Ring | None = None) -> "Polynomial":
        ring = ring or self.ring
        return Polynomial(ring, self.nvars, {e: fn(c) for e, c in self.terms.items()})

    def change_ring(self, target: Ring) -> "Polynomial":
        return change_ring(self, target)

    def lift_to_integers(self) -> "Polynomial":
        """Canonical integer representative of a polynomial over Z/m."""
        return Polynomial(ZZ, self.nvars, dict(self.terms), _clean=True)

    def compose(self, images: list["Polynomial"]) -> "Polynomial":
        """Substitute variable i by images[i] (a polynomial over the same ring)."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        if not images:
            return self
        target_n = images[0].nvars
        ring = images[0].ring
        powers: dict = {}

        def power(i, k):
            key = (i, k)
            if key not in powers:
                powers[key] = images[i] ** k
            return powers[key]

        result = Polynomial.zero(ring, target_n)
        for e, c in self.terms.items():
            term = Polynomial.constant(ring, target_n, c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            result = result + term
        return result

    # formatting -----------------------------------------------------------

    def format(self, names=None) -> str:
        names = names or default_names(self.nvars)
        if not self.terms:
            return "0"
        pieces = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k
            )
            cs = self.ring.format(c)
            if not mono:
                body = cs
            elif cs == "1":
                body = mono
            elif cs == "-1":
                body = "-" + mono
            else:
                body = f"{cs}*{mono}"
            pieces.append(body)
        out = pieces[0]
        for p in pieces[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"Polynomial({self.format()!r} over {self.ring})"

    def to_json(self, names=None) -> dict:
        names = list(names or default_names(self.nvars))
        return {
            "vars": names,
            "terms": [
                {"exp": list(e), "coeff": self.ring.format(c)} for e, c in self.sorted_terms()
            ],
        }

    @classmethod
    def from_json(cls, obj: dict, ring: Ring) -> "Polynomial":
        n = len(obj["vars"])
        return cls(ring, n, {tuple(t["exp"]): ring.coerce(t["coeff"]) for t in obj["terms"]})


def change_ring(f: Polynomial, target: Ring) -> Polynomial:
    """Image of f under the canonical map ring(f) -> target."""
    src = f.ring
    if src == target:
        return f
    return Polynomial(target, f.nvars, {e: src.map_to(c, target) for e, c in f.terms.items()})


def _divide_primitive(terms: dict, ring: Ring, alpha: dict, j: int) -> dict:
    """Divide by alpha using variable j (nonzero coefficient in alpha)."""
    c = alpha[j]
    rest = [(i, a) for i, a in alpha.items() if i != j]
    rem = dict(terms)
    quotient: dict = {}
    top = max((e[j] for e in rem), default=0)
    for level in range(top, 0, -1):
        for e in [e for e in rem if e[j] == level]:
            coeff = rem.pop(e)
            q = ring.div(coeff, c)
            qe = e[:j] + (level - 1,) + e[j + 1:]
            quotient[qe] = q
            for i, a in rest:
                te = list(qe)
                te[i] += 1
                te = tuple(te)
                s = ring.reduce(rem.get(te, 0) - a * q)
                if s:
                    rem[te] = s
                else:
                    rem.pop(te, None)
    if rem:
        raise NotDivisible("nonzero remainder in division by a linear form")
    return quotient


def exact_divide_linear(f: Polynomial, alpha: Polynomial) -> Polynomial:
    """Return q with q * alpha == f, for alpha homogeneous of degree one.

    The primitive part of alpha is divided out first and the integer
    content afterwards; both steps are exact or raise NotDivisible.
    """
    f._check(alpha)
    if not alpha.is_homogeneous(1) or alpha.is_zero():
        raise ValueError("divisor must be a nonzero linear form")
    ring = f.ring
    lin = {e.index(1): c for e, c in alpha.terms.items()}
    content = 1
    if ring.kind != MOD and all(isinstance(c, int) for c in lin.values()):
        content = reduce(gcd, (abs(c) for c in lin.values()))
        lin = {i: c // content for i, c in lin.items()}
    if ring.kind == MOD:
        candidates = [i for i, c in lin.items() if ring.is_unit_integer(int(c))]
        if not candidates:
            raise NotDivisible(f"no unit coefficient in divisor over {ring}")
    else:
        # a unit coefficient keeps intermediate quotients integral
        candidates = sorted(lin, key=lambda i: (abs(lin[i]) != 1, i))
    j = candidates[0]
    q = _divide_primitive(f.terms, ring, lin, j)
    if content != 1:
        q = {e: ring.div(c, content) for e, c in q.items()}
    return Polynomial(ring, f.nvars, q, _clean=True)


# parsing ------------------------------------------------------------------

def parse_polynomial(text: str, names, ring: Ring = ZZ) -> Polynomial:
    """Parse an arithmetic expression such as ``"p1*p2 + p3"`` or ``"e1^2-2*e2"``."""
    names = list(names)
    index = {n: i for i, n in enumerate(names)}
    n = len(names)
    tree = ast.parse(text.replace("^", "**"), mode="eval")

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return Polynomial.constant(ring, n, node.value)
        if isinstance(node, ast.Name):
            if node.id not in index:
                raise ValueError(f"unknown variable {node.id!r}; expected one of {names}")
            return Polynomial.variable(ring, n, index[node.id])
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp) and isinstance(node.op, ast.Pow):
            # exponents are integers, never ring elements (2 = 0 in Z/2)
            k = node.right
            if not (isinstance(k, ast.Constant) and isinstance(k.value, int) and k.value >= 0):
                raise ValueError("exponent must be a nonnegative integer literal")
            return ev(node.left) ** k.value
        if isinstance(node, ast.BinOp):
            left, right = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if isinstance(node.op, ast.Div):
                if not right.is_constant() or not right:
                    raise ValueError("can only divide by a nonzero constant")
                return left.scale(ring.inverse(right.constant_term()))
        raise ValueError(f"unsupported syntax in {text!r}")

    return ev(tree)


def rational_polynomial(f: Polynomial) -> Polynomial:
    return change_ring(f, QQ) if f.ring != QQ else f

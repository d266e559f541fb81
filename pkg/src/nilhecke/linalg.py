"""Sparse exact linear algebra over fields and over the integers.

Vectors are dicts ``{index: scalar}`` with integer indices and no zero
entries.  :class:`Echelon` maintains a row-echelon basis of a growing
subspace (field) or sublattice (integers, Hermite-style gcd pivots) and
records, for every stored row, the combination of inserted vectors that
produced it.  Kernels come out of the same bookkeeping: an inserted
vector that reduces to zero contributes its combination to the kernel.
Over Z every step is unimodular, so kernels are saturated lattices.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import UnsupportedRing
from .rings import LOCALIZED, MOD, QQ, Ring


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def axpy(ring: Ring, y: dict, a, x: dict) -> dict:
    """Return y + a*x as a new sparse vector."""
    out = dict(y)
    for k, v in x.items():
        s = ring.reduce(out.get(k, 0) + a * v)
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def scale(ring: Ring, a, x: dict) -> dict:
    out = {}
    for k, v in x.items():
        s = ring.reduce(a * v)
        if s:
            out[k] = s
    return out


def linear_ring(ring: Ring) -> Ring:
    """The ring in which echelon computations are carried out."""
    if ring.kind == LOCALIZED:
        return QQ
    if ring.kind == MOD and not ring.is_field:
        raise UnsupportedRing(f"linear algebra over {ring} (not a field)")
    return ring


class Echelon:
    """Incremental echelon basis with combination tracking.

    ``track`` enables recording of combinations (needed for kernels and
    for solving); switch it off when only ranks or normal forms matter.
    """

    def __init__(self, ring: Ring, track: bool = True):
        self.ring = linear_ring(ring)
        self.integral = self.ring.kind == "Z"
        self.track = track
        self.rows: dict = {}  # leading index -> (vector, combination)
        self.kernel: list[dict] = []
        self.count = 0

    @property
    def rank(self) -> int:
        return len(self.rows)

    def insert(self, vec: dict, tag=None) -> bool:
        """Insert a vector; return True if it enlarged the span.

        The combination recorded for the vector is ``{tag: 1}`` where tag
        defaults to the insertion counter.
        """
        if tag is None:
            tag = self.count
        self.count += 1
        comb = {tag: 1} if self.track else {}
        ring = self.ring
        v = {k: c for k, c in vec.items() if c}
        while v:
            lead = min(v)
            b = v[lead]
            if lead not in self.rows:
                if not self.integral:
                    inv = ring.inverse(b)
                    v = scale(ring, inv, v)
                    comb = scale(ring, inv, comb)
                elif b < 0:
                    v = scale(ring, -1, v)
                    comb = scale(ring, -1, comb)
                self.rows[lead] = (v, comb)
                return True
            p, pc = self.rows[lead]
            a = p[lead]
            if not self.integral:
                v = axpy(ring, v, -b, p)
                comb = axpy(ring, comb, -b, pc) if self.track else comb
                continue
            if b % a == 0:
                q = b // a
                v = axpy(ring, v, -q, p)
                comb = axpy(ring, comb, -q, pc) if self.track else comb
                continue
            # gcd step: unimodular recombination of pivot row and v
            g, x, y = _egcd(a, b)
            new_p = axpy(ring, scale(ring, x, p), y, v)
            new_pc = axpy(ring, scale(ring, x, pc), y, comb) if self.track else {}
            v = axpy(ring, scale(ring, b // g, p), -(a // g), v)
            comb = axpy(ring, scale(ring, b // g, pc), -(a // g), comb) if self.track else {}
            self.rows[lead] = (new_p, new_pc)
        if self.track:
            self.kernel.append(comb)
        return False

    def reduce(self, vec: dict) -> tuple[dict, dict]:
        """Reduce a vector against the stored rows.

        Returns (residual, used) with ``vec = residual + sum(used[k] * row[k])``.
        Over a field the residual is a canonical normal form (no entries at
        pivot positions).  Over Z the residual is zero exactly when vec lies
        in the lattice spanned by the rows; otherwise reduction stops at the
        first obstruction.
        """
        ring = self.ring
        v = {k: c for k, c in vec.items() if c}
        used: dict = {}
        while v:
            if self.integral:
                lead = min(v)
                if lead not in self.rows:
                    break
                p = self.rows[lead][0]
                q, r = divmod(v[lead], p[lead])
                if r:
                    break
            else:
                keys = [k for k in v if k in self.rows]
                if not keys:
                    break
                lead = min(keys)
                p = self.rows[lead][0]
                q = v[lead]
            v = axpy(ring, v, -q, p)
            used[lead] = ring.reduce(used.get(lead, 0) + q)
        return v, used

    def contains(self, vec: dict) -> bool:
        residual, _ = self.reduce(vec)
        return not residual

    def express(self, vec: dict) -> dict | None:
        """Combination of inserted tags equal to vec, or None if not in span."""
        residual, used = self.reduce(vec)
        if residual:
            return None
        out: dict = {}
        for lead, q in used.items():
            out = axpy(self.ring, out, q, self.rows[lead][1])
        return out

    def basis(self) -> list[dict]:
        return [self.rows[k][0] for k in sorted(self.rows)]


def kernel(ring: Ring, columns: list[dict]) -> list[dict]:
    """Basis of {x : sum x_j columns[j] = 0}, as sparse vectors indexed by j."""
    ech = Echelon(ring)
    for j, col in enumerate(columns):
        ech.insert(col, tag=j)
    return ech.kernel


def rank(ring: Ring, vectors) -> int:
    ech = Echelon(ring, track=False)
    for v in vectors:
        ech.insert(v)
    return ech.rank


def to_rational(vec: dict) -> dict:
    return {k: Fraction(v) for k, v in vec.items()}


def gcd_combination(values: list[int]) -> tuple[int, list[int]]:
    """Return (g, coeffs) with g = gcd(values) >= 0 and sum(c*v) = g."""
    g, coeffs = 0, [0] * len(values)
    for i, v in enumerate(values):
        if v == 0:
            continue
        ng, x, y = _egcd(g, v)
        coeffs = [c * x for c in coeffs]
        coeffs[i] += y
        g = ng
    return g, coeffs


"""Reference data for the low-rank groups: Schubert lists, reflection
matrices and Weyl-invariant table rows, transcribed as strings.

Words are 1-based simple-reflection indices.  Matrix rows follow the
basis order of :meth:`SchubertFamily.matrix_order`; entries are written
in the preset generator names.
"""

from __future__ import annotations

from dataclasses import dataclass

# word -> Schubert polynomial in the lattice variables
SCHUBERT_LISTS = {
    "U2": {(1,): "e1", (): "1"},
    "U3": {
        (1, 2, 1): "e1^2*e2",
        (1, 2): "e1*e2",
        (2, 1): "e1^2",
        (2,): "e1 + e2",
        (1,): "e1",
        (): "1",
    },
    "Sp2": {
        (1, 2, 1, 2): "e1^3*e2",
        (2, 1, 2): "e1^2*e2 + e1*e2^2",
        (1, 2, 1): "e1^3",
        (1, 2): "e1^2 + e1*e2 + e2^2",
        (2, 1): "e1^2",
        (2,): "e1 + e2",
        (1,): "e1",
        (): "1",
    },
}

# basis order of the displayed matrices
BASIS_ORDER = {
    "U2": [(1,), ()],
    "U3": [(1, 2, 1), (1, 2), (2, 1), (2,), (1,), ()],
    "Sp2": [(1, 2, 1, 2), (2, 1, 2), (1, 2, 1), (1, 2), (2, 1), (2,), (1,), ()],
}

MATRICES = {
    ("U2", 1): [
        ["-1", "0"],
        ["p1", "1"],
    ],
    ("U3", 1): [
        ["-1", "0", "0", "0", "0", "0"],
        ["p1", "1", "-1", "0", "0", "0"],
        ["0", "0", "-1", "0", "0", "0"],
        ["0", "0", "p1", "1", "1", "0"],
        ["0", "0", "0", "0", "-1", "0"],
        ["-p3", "0", "-p2", "0", "0", "1"],
    ],
    ("U3", 2): [
        ["-1", "0", "0", "0", "0", "0"],
        ["0", "-1", "0", "0", "0", "0"],
        ["0", "-1", "1", "0", "0", "0"],
        ["0", "0", "0", "-1", "0", "0"],
        ["p2", "p1", "0", "1", "1", "0"],
        ["-p3", "0", "0", "p1", "0", "1"],
    ],
    ("Sp2", 1): [
        ["-1", "0", "0", "0", "0", "0", "0", "0"],
        ["0", "1", "-1", "0", "0", "0", "0", "0"],
        ["0", "0", "-1", "0", "0", "0", "0", "0"],
        ["p1", "0", "0", "1", "0", "0", "0", "0"],
        ["0", "0", "0", "0", "-1", "0", "0", "0"],
        ["0", "0", "p1", "0", "0", "1", "1", "0"],
        ["0", "0", "0", "0", "0", "0", "-1", "0"],
        ["-p1^2", "0", "0", "0", "p1", "0", "0", "1"],
    ],
    ("Sp2", 2): [
        ["-1", "0", "0", "0", "0", "0", "0", "0"],
        ["0", "-1", "0", "0", "0", "0", "0", "0"],
        ["0", "-2", "1", "0", "0", "0", "0", "0"],
        ["0", "0", "0", "-1", "0", "0", "0", "0"],
        ["0", "0", "0", "0", "1", "0", "0", "0"],
        ["0", "0", "0", "0", "0", "-1", "0", "0"],
        ["0", "2*p1", "0", "0", "0", "2", "1", "0"],
        ["0", "0", "0", "2*p1", "0", "0", "0", "1"],
    ],
}

TORSION_INDICES = {"U2": 1, "U3": 1, "SU2": 1, "SU3": 1, "SO3": 2, "PSU3": 3, "Sp2": 1}


@dataclass(frozen=True)
class TableEntry:
    """One summand B^K * v of A^J: v as {word: coefficient}, K = (modulus, poly)."""

    vector: dict
    modulus: int
    ideal_poly: str | None = None


TABLE_ROWS = {
    "U2": [TableEntry({(1,): "1"}, 2, "p1")],
    "U3": [
        TableEntry({(1, 2, 1): "1", (2, 1): "p1", (2,): "p2", (1,): "p1^2"}, 2, "p1*p2 + p3"),
    ],
    "SU2": [TableEntry({(1,): "1"}, 2)],
    "SU3": [TableEntry({(1, 2, 1): "1", (2,): "q2"}, 2, "q3")],
    "SO3": [],
    "PSU3": [TableEntry({(1, 2, 1): "1", (2,): "q2"}, 2, "q3")],
    "Sp2": [
        TableEntry({(1, 2, 1, 2): "1"}, 2, "p1"),
        TableEntry({(2, 1, 2): "1"}, 2),
        TableEntry({(1, 2): "1"}, 2),
        TableEntry({(2, 1): "1"}, 2, "p1"),
        TableEntry({(2,): "1"}, 2),
    ],
}

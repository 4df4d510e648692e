"""Generalized Gau maps: ring elements <-> DNA dinucleotides.

A map is a 4x4 matrix whose rows and columns are labelled A, G, C, T; the
element in cell (i, j) is sent to the dinucleotide ``LABELS[i] + LABELS[j]``.
The fill is driven by six free entries and a lambda in {2, 2w, 2+2w} so that
reversing a dinucleotide multiplies by 3 and complementing adds lambda.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from . import dna
from .errors import ConstraintViolation, LengthMismatch, NotBijective, OddLength, ParseError
from .ring import (
    ELEMENTS,
    LAMBDAS,
    TWO_PLUS_TWO_W,
    ZERO,
    RingElement,
    as_element,
    format_element,
    parse_element,
    scale,
)

LABELS = "AGCT"
PARAM_NAMES = ("a11", "a22", "a14", "a23", "a12", "a13")
DEFAULT_LAMBDA = TWO_PLUS_TWO_W
CANONICAL_PARAMS = tuple(parse_element(s) for s in ("2+2w", "2w", "1+w", "3+w", "1", "w"))

# the published map table, verbatim.  Its GT/TG/CT/TC cells contradict the
# complement identity; kept only so the verifier can demonstrate that.
PUBLISHED_TABLE = {
    parse_element(k): v
    for k, v in {
        "2+2w": "AA", "0": "TT", "2w": "GG", "2": "CC", "1": "AG", "3": "GA",
        "3+2w": "CT", "1+2w": "TC", "w": "AC", "3w": "CA", "2+3w": "GT",
        "2+w": "TG", "1+w": "AT", "3+3w": "TA", "3+w": "GC", "1+3w": "CG",
    }.items()
}


def _three(x):
    return scale(3, x)


def fill_matrix(lam, a11, a22, a14, a23, a12, a13) -> tuple[tuple[RingElement, ...], ...]:
    """The 4x4 layout determined by the six free entries."""
    def L(x):
        return x + lam

    return (
        (a11, a12, a13, a14),
        (_three(a12), a22, a23, L(_three(a13))),
        (_three(a13), _three(a23), L(a22), L(_three(a12))),
        (_three(a14), L(a13), L(a12), L(a11)),
    )


def check_params(lam, a11, a22, a14, a23, a12, a13) -> None:
    """Raise ConstraintViolation unless the six entries satisfy the fill conditions.

    Condition 3 is read as ``2x not in {0, lambda}``; read literally
    (3x = x + lambda) it would force a collision between cells (A,C) and (G,T).
    """
    if lam not in LAMBDAS:
        raise ConstraintViolation(0, f"lambda must be one of 2, 2w, 2+2w, got {format_element(lam)}")
    if scale(2, a11) != ZERO or scale(2, a22) != ZERO:
        raise ConstraintViolation(1, "a11 and a22 must satisfy 2x = 0")
    if a11 in (a22, a22 + lam):
        raise ConstraintViolation(1, "a11 must differ from a22 and a22 + lambda")
    if scale(2, a14) != lam or scale(2, a23) != lam:
        raise ConstraintViolation(2, "a14 and a23 must satisfy 2x = lambda")
    if a14 in (a23, a23 + lam):
        raise ConstraintViolation(2, "a14 must differ from a23 and a23 + lambda")
    for name, x in (("a12", a12), ("a13", a13)):
        if scale(2, x) in (ZERO, lam):
            raise ConstraintViolation(3, f"{name} must satisfy 2x not in {{0, lambda}}")
    if a12 in (a13, a13 + lam, _three(a13), _three(a13) + lam):
        raise ConstraintViolation(3, "a12 must differ from a13, a13+lambda, 3a13, 3a13+lambda")


@dataclass(frozen=True)
class GauMap:
    lam: RingElement
    params: tuple[RingElement, ...]
    matrix: tuple[tuple[RingElement, ...], ...]
    table: Mapping[RingElement, str] = field(repr=False, compare=False)
    inverse: Mapping[str, RingElement] = field(repr=False, compare=False)

    def __call__(self, x) -> str:
        return self.table[as_element(x)]

    def position(self, x) -> tuple[int, int]:
        pair = self.table[as_element(x)]
        return LABELS.index(pair[0]), LABELS.index(pair[1])

    def encode(self, xs: Sequence) -> str:
        return "".join(self.table[as_element(x)] for x in xs)

    def decode(self, word: str) -> list[RingElement]:
        if len(word) % 2:
            raise OddLength(f"DNA word of odd length {len(word)}")
        return [self.inverse[word[i:i + 2]] for i in range(0, len(word), 2)]

    def to_text(self) -> str:
        return "".join(f"{format_element(x)}\t{self.table[x]}\n" for x in ELEMENTS)

    @property
    def index_to_pair(self) -> np.ndarray:
        """(16, 2) array of DNA symbol codes (A=0, C=1, G=2, T=3) per element index."""
        return np.array([[dna.NUCLEOTIDES.index(ch) for ch in self.table[x]] for x in ELEMENTS], dtype=np.uint8)

    def distance_table(self) -> np.ndarray:
        """16x16 table of Gau distances between element indices."""
        pos = np.array([self.position(x) for x in ELEMENTS])
        return ((pos[:, None, 0] != pos[None, :, 0]).astype(np.uint8)
                + (pos[:, None, 1] != pos[None, :, 1]).astype(np.uint8))


def _from_matrix(lam, params, matrix) -> GauMap:
    flat = [x for row in matrix for x in row]
    if len(set(flat)) != 16:
        dupes = sorted(format_element(x) for x in set(flat) if flat.count(x) > 1)
        raise NotBijective(f"matrix repeats elements {dupes}")
    table = {matrix[i][j]: LABELS[i] + LABELS[j] for i in range(4) for j in range(4)}
    inverse = {v: k for k, v in table.items()}
    gmap = GauMap(lam, tuple(params), matrix, table, inverse)
    problems = identity_failures(table, lam)
    assert not problems, problems
    return gmap


def build_gau_map(lam=DEFAULT_LAMBDA, *params) -> GauMap:
    """Fill and validate a map from lambda and (a11, a22, a14, a23, a12, a13)."""
    lam = as_element(lam)
    if not params:
        params = CANONICAL_PARAMS
    if len(params) != 6:
        raise ValueError(f"expected six free entries {PARAM_NAMES}, got {len(params)}")
    params = tuple(as_element(p) for p in params)
    check_params(lam, *params)
    return _from_matrix(lam, params, fill_matrix(lam, *params))


def canonical_map() -> GauMap:
    return build_gau_map(DEFAULT_LAMBDA, *CANONICAL_PARAMS)


def enumerate_gau_maps(lam=DEFAULT_LAMBDA) -> list[GauMap]:
    """Every valid map for ``lam``, deduplicated by table, in parameter order."""
    lam = as_element(lam)
    torsion = [x for x in ELEMENTS if scale(2, x) == ZERO]
    halves = [x for x in ELEMENTS if scale(2, x) == lam]
    rest = [x for x in ELEMENTS if scale(2, x) not in (ZERO, lam)]
    seen = set()
    maps = []
    for (a11, a22), (a14, a23), (a12, a13) in itertools.product(
        itertools.product(torsion, repeat=2),
        itertools.product(halves, repeat=2),
        itertools.product(rest, repeat=2),
    ):
        try:
            gmap = build_gau_map(lam, a11, a22, a14, a23, a12, a13)
        except ConstraintViolation:
            continue
        key = gmap.matrix
        if key not in seen:
            seen.add(key)
            maps.append(gmap)
    return maps


def identity_failures(table: Mapping[RingElement, str], lam) -> list[dict]:
    """Cells of a candidate table violating phi(3x) = phi(x)^r or phi(x+lambda) = phi(x)^c."""
    lam = as_element(lam)
    out = []
    for x in ELEMENTS:
        pair = table[x]
        if table[_three(x)] != dna.reverse(pair):
            out.append({"cell": pair, "element": format_element(x), "identity": "reverse",
                        "expected": dna.reverse(pair), "found": table[_three(x)]})
        if table[x + lam] != dna.complement(pair):
            out.append({"cell": pair, "element": format_element(x), "identity": "complement",
                        "expected": dna.complement(pair), "found": table[x + lam]})
    return out


def verify_table(table: Mapping[RingElement, str], lam=DEFAULT_LAMBDA) -> list[dict]:
    """All problems with a supplied element -> dinucleotide table; empty means valid."""
    problems = []
    missing = [format_element(x) for x in ELEMENTS if x not in table]
    if missing:
        return [{"identity": "total", "missing": missing}]
    images = list(table.values())
    bad = [p for p in images if len(p) != 2 or set(p) - set(dna.NUCLEOTIDES)]
    if bad or len(set(images)) != 16:
        problems.append({"identity": "bijective", "images": sorted(images)})
        return problems
    return identity_failures(table, lam)


def map_from_table(table: Mapping[RingElement, str], lam=DEFAULT_LAMBDA) -> GauMap:
    """Build a GauMap from an explicit table, rejecting invalid ones."""
    lam = as_element(lam)
    problems = verify_table(table, lam)
    if problems:
        raise NotBijective(f"table fails verification: {problems[:4]}")
    matrix = [[None] * 4 for _ in range(4)]
    for x, pair in table.items():
        matrix[LABELS.index(pair[0])][LABELS.index(pair[1])] = x
    matrix = tuple(tuple(row) for row in matrix)
    params = (matrix[0][0], matrix[1][1], matrix[0][3], matrix[1][2], matrix[0][1], matrix[0][2])
    return _from_matrix(lam, params, matrix)


def parse_table_text(text: str) -> dict[RingElement, str]:
    table = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected 'element<TAB>dinucleotide'")
        x = parse_element(parts[0])
        if x in table:
            raise ParseError(f"line {lineno}: element {parts[0]} listed twice")
        table[x] = parts[1].upper()
    return table


def gau_distance(gmap: GauMap, x, y) -> int:
    (i, j), (k, l) = gmap.position(x), gmap.position(y)
    return int(i != k) + int(j != l)


def gau_distance_by_indices(gmap: GauMap, x, y) -> int:
    """Same distance via min{1, i + 3i'} + min{1, j + 3j'} with index sums mod 4."""
    (i, j), (k, l) = gmap.position(x), gmap.position(y)
    return min(1, (i + 3 * k) % 4) + min(1, (j + 3 * l) % 4)


def gau_distance_vec(gmap: GauMap, x: Sequence, y: Sequence) -> int:
    if len(x) != len(y):
        raise LengthMismatch(f"vectors of length {len(x)} and {len(y)}")
    return sum(gau_distance(gmap, a, b) for a, b in zip(x, y))


def nearest_valid_maps(table: Mapping[RingElement, str], lam=DEFAULT_LAMBDA) -> tuple[int, list[tuple[GauMap, list[str]]]]:
    """Valid maps agreeing with ``table`` on the most cells.

    Returns the number of disagreeing cells and, for every map achieving it,
    the sorted list of dinucleotide cells where the table differs.
    """
    best, found = 17, []
    for gmap in enumerate_gau_maps(lam):
        cells = sorted(gmap.table[x] for x in ELEMENTS if table.get(x) != gmap.table[x])
        if len(cells) < best:
            best, found = len(cells), []
        if len(cells) == best:
            found.append((gmap, cells))
    return best, found

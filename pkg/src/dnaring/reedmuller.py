"""Reed-Muller-type codes over R_theta and their DNA images."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

import numpy as np

from . import dna
from .codes import (
    DEFAULT_GUARD,
    GeneratorMatrix,
    LinearCode,
    dna_hamming_table,
    dna_image,
    min_distance_by_differences,
)
from .errors import InvalidOrder, NotZeroDivisor, UnsupportedTheta, UnsupportedZ
from .gaumap import GauMap
from .ring import CLASS_A, CLASS_B, CLASS_C, ONE, RingElement, as_element, format_element, get_ring, parse_element


def _elements(*names):
    return frozenset(parse_element(s) for s in names)


# z-cases of the closed-form parameters: (z set, exponent coefficients, distance shift)
# M = 2^(4b - c*a) with c in {3, 2, 1}, or 4^(2b - a) for class A;
# d_H = 2^(m - r + shift).
_CASES = {
    CLASS_B: (
        (_elements("2w"), 3, 1),
        (_elements("2", "2+2w"), 2, 1),
        (_elements("w", "2+w", "3w", "2+3w"), 1, 0),
    ),
    CLASS_A: (
        (_elements("2", "2w", "2+2w"), 2, 1),
    ),
    CLASS_C: (
        (_elements("2+2w"), 3, 1),
        (_elements("2", "2w"), 2, 1),
        (_elements("1+w", "3+w", "1+3w", "3+3w"), 1, 0),
    ),
}


@dataclass(frozen=True)
class RMSpec:
    theta: RingElement
    z: RingElement
    r: int
    m: int

    def __post_init__(self):
        object.__setattr__(self, "theta", as_element(self.theta))
        object.__setattr__(self, "z", as_element(self.z))
        if not 0 <= self.r <= self.m:
            raise InvalidOrder(f"need 0 <= r <= m, got r={self.r}, m={self.m}")
        ring = get_ring(self.theta)
        if self.z not in ring.zero_divisors or self.z == as_element("0"):
            raise NotZeroDivisor(f"{format_element(self.z)} is not a nonzero zero divisor of R_{format_element(self.theta)}")

    @property
    def a(self) -> int:
        """Rows of G_{r,m} carrying z."""
        return sum(comb(self.m - 1, i) for i in range(self.r)) if self.m else 0

    @property
    def b(self) -> int:
        """Rows of G_{r,m}."""
        return sum(comb(self.m, i) for i in range(self.r + 1))

    def __str__(self):
        return f"theta={format_element(self.theta)} z={format_element(self.z)} r={self.r} m={self.m}"


def rm_matrix(r: int, m: int, z: int) -> np.ndarray:
    """G_{r,m} as an index array, built by the block recursion."""
    return _rm_matrix(r, m, int(z)).copy()


@lru_cache(maxsize=None)
def _rm_matrix(r: int, m: int, z: int) -> np.ndarray:
    if r == 0:
        return np.full((1, 2 ** m), ONE.index, dtype=np.uint8)
    if r == m:
        top = _rm_matrix(m - 1, m, z)
        cap = np.zeros((1, 2 ** m), dtype=np.uint8)
        cap[0, -1] = z
        return np.vstack([top, cap])
    upper = _rm_matrix(r, m - 1, z)
    lower = _rm_matrix(r - 1, m - 1, z)
    return np.vstack([
        np.hstack([upper, upper]),
        np.hstack([np.zeros_like(lower), lower]),
    ])


def rm_generator(spec: RMSpec) -> GeneratorMatrix:
    return GeneratorMatrix(spec.theta, rm_matrix(spec.r, spec.m, spec.z.index))


def z_row_count(G: GeneratorMatrix, z) -> int:
    return int((G.entries == as_element(z).index).any(axis=1).sum())


def rm_dna_params(spec: RMSpec) -> tuple[int, int, int]:
    """(n, M, d_H) of the DNA image in closed form."""
    cls = get_ring(spec.theta).chain_class
    if cls is None:
        raise UnsupportedTheta(f"theta={format_element(spec.theta)} has no Reed-Muller parameter formula")
    a, b = spec.a, spec.b
    for zs, c, shift in _CASES[cls]:
        if spec.z in zs:
            M = 4 ** (2 * b - a) if cls == CLASS_A else 2 ** (4 * b - c * a)
            return 2 ** (spec.m + 1), M, 2 ** (spec.m - spec.r + shift)
    raise UnsupportedZ(f"z={format_element(spec.z)} is not in any case for theta={format_element(spec.theta)}")


def admissible_z(theta) -> list[RingElement]:
    cls = get_ring(theta).chain_class
    if cls is None:
        raise UnsupportedTheta(f"theta={format_element(as_element(theta))} has no Reed-Muller parameter formula")
    return sorted(z for zs, _, _ in _CASES[cls] for z in zs)


def rm_code(spec: RMSpec, guard: int = DEFAULT_GUARD) -> LinearCode:
    return LinearCode(rm_generator(spec), guard=guard)


def rm_dna_code(spec: RMSpec, gmap: GauMap, guard: int = DEFAULT_GUARD) -> dna.DnaCode:
    """phi(span(G_{r,m})); raises AssertionError if a closure claim fails."""
    image = dna_image(rm_code(spec, guard), gmap)
    checks = dna.closure_checks(image)
    assert checks["reversible"] and checks["rc_closed"], (str(spec), checks)
    return image


@dataclass
class RMReport:
    spec: RMSpec
    formula: tuple[int, int, int]
    oracle: tuple[int, int, int]
    reversible: bool
    rc_closed: bool
    ring_hamming: int
    rows: int
    z_rows: int

    @property
    def matches(self) -> bool:
        return self.formula == self.oracle

    @property
    def ok(self) -> bool:
        return self.matches and self.reversible and self.rc_closed

    def as_dict(self) -> dict:
        return {
            "theta": format_element(self.spec.theta), "z": format_element(self.spec.z),
            "r": self.spec.r, "m": self.spec.m,
            "formula": {"n": self.formula[0], "M": self.formula[1], "d_H": self.formula[2]},
            "oracle": {"n": self.oracle[0], "M": self.oracle[1], "d_H": self.oracle[2]},
            "match": self.matches, "reversible": self.reversible, "rc_closed": self.rc_closed,
            "ring_hamming": self.ring_hamming, "rows": self.rows, "z_rows": self.z_rows,
        }


def verify(spec: RMSpec, gmap: GauMap, guard: int = DEFAULT_GUARD) -> RMReport:
    """Formula parameters next to enumerated ones.

    The oracle enumerates the span, takes the exact minimum Hamming distance
    between DNA images (per-coordinate dinucleotide Hamming summed, searched
    over codeword differences) and sweeps the image for closure.
    """
    code = rm_code(spec, guard)
    image = dna_image(code, gmap)
    checks = dna.closure_checks(image)
    if len(code) > 1:
        d_h = min_distance_by_differences(code, dna_hamming_table(gmap))
        ring_ham = min_distance_by_differences(code, (np.arange(16)[:, None] != np.arange(16)[None, :]).astype(np.uint8))
    else:
        d_h = ring_ham = 0
    return RMReport(
        spec=spec,
        formula=rm_dna_params(spec),
        oracle=(2 * code.n, len(code), d_h),
        reversible=checks["reversible"],
        rc_closed=checks["rc_closed"],
        ring_hamming=ring_ham,
        rows=code.generator.k,
        z_rows=z_row_count(code.generator, spec.z),
    )


def verification_grid(max_m: int = 3, max_r: int = 2) -> list[RMSpec]:
    """Every (chain theta, admissible z, r, m) with m <= max_m and r <= min(m, max_r)."""
    from .ring import CHAIN_THETAS

    specs = []
    for theta in sorted(CHAIN_THETAS):
        for z in admissible_z(theta):
            for m in range(max_m + 1):
                for r in range(min(m, max_r) + 1):
                    specs.append(RMSpec(theta, z, r, m))
    return specs

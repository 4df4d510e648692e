"""Arithmetic in the sixteen rings Z4 + wZ4 with w^2 = theta.

An element a + wb is stored as the residue pair (a, b).  Every element also
has a dense index ``4*a + b`` in 0..15, which is the lexicographic order on
(a, b); numpy code paths work with these indices and the per-ring lookup
tables built by :class:`Ring`.
"""

from __future__ import annotations

import re
from functools import lru_cache
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import LengthMismatch, NonChainRing, ParseError


class RingElement(NamedTuple):
    a: int
    b: int

    @property
    def index(self) -> int:
        return 4 * self.a + self.b

    def __str__(self) -> str:
        return format_element(self)

    # Addition does not depend on theta, so + and - are ring operations.
    # Multiplication does; * is disabled to avoid tuple repetition.
    def __add__(self, other):
        return RingElement((self.a + other[0]) % 4, (self.b + other[1]) % 4)

    def __sub__(self, other):
        return RingElement((self.a - other[0]) % 4, (self.b - other[1]) % 4)

    def __neg__(self):
        return RingElement(-self.a % 4, -self.b % 4)

    def __mul__(self, other):
        raise TypeError("ring multiplication depends on theta; use Ring.mul")

    __rmul__ = __mul__


def element(a: int, b: int = 0) -> RingElement:
    return RingElement(a % 4, b % 4)


ELEMENTS: tuple[RingElement, ...] = tuple(RingElement(a, b) for a in range(4) for b in range(4))
ZERO = RingElement(0, 0)
ONE = RingElement(1, 0)
TWO = RingElement(2, 0)
W = RingElement(0, 1)
TWO_W = RingElement(0, 2)
TWO_PLUS_TWO_W = RingElement(2, 2)

# {x : 2x = 0}, the same set in every R_theta.
TWO_TORSION = (ZERO, TWO_W, TWO, TWO_PLUS_TWO_W)
LAMBDAS = (TWO, TWO_W, TWO_PLUS_TWO_W)

def parse_element(text: str) -> RingElement:
    """Parse "a+bw" notation; "2", "w", "3w", "2+2w", "0+0w" are all accepted."""
    s = str(text).replace(" ", "").lower()
    if not s:
        raise ParseError("empty ring element")
    if "+" in s:
        left, _, right = s.partition("+")
        if not re.fullmatch(r"[0-3]", left) or not re.fullmatch(r"[0-3]?w", right):
            raise ParseError(f"malformed ring element {text!r}")
        a = int(left)
        b = int(right[:-1]) if len(right) > 1 else 1
        return RingElement(a, b)
    if re.fullmatch(r"[0-3]", s):
        return RingElement(int(s), 0)
    if re.fullmatch(r"[0-3]?w", s):
        return RingElement(0, int(s[:-1]) if len(s) > 1 else 1)
    raise ParseError(f"malformed ring element {text!r}")


def format_element(x: RingElement) -> str:
    a, b = x
    if b == 0:
        return str(a)
    wpart = "w" if b == 1 else f"{b}w"
    return wpart if a == 0 else f"{a}+{wpart}"


def as_element(x) -> RingElement:
    if isinstance(x, RingElement):
        return x
    if isinstance(x, str):
        return parse_element(x)
    if isinstance(x, (int, np.integer)):
        return ELEMENTS[int(x)]
    a, b = x
    return element(a, b)


def add(x: RingElement, y: RingElement) -> RingElement:
    return RingElement((x.a + y.a) % 4, (x.b + y.b) % 4)


def neg(x: RingElement) -> RingElement:
    return RingElement(-x.a % 4, -x.b % 4)


def scale(k: int, x: RingElement) -> RingElement:
    """Integer multiple k*x (k copies of x added together)."""
    return RingElement(k * x.a % 4, k * x.b % 4)


def mul(theta: RingElement, x: RingElement, y: RingElement) -> RingElement:
    # (a + wb)(c + wd) = ac + w(ad + bc) + bd*w^2, with w^2 = t0 + w*t1
    a, b = x
    c, d = y
    t0, t1 = theta
    return RingElement((a * c + b * d * t0) % 4, (a * d + b * c + b * d * t1) % 4)


CHAIN_THETAS = frozenset(
    parse_element(s) for s in ("2", "3", "1+w", "3+w", "1+2w", "2+2w", "1+3w", "3+3w")
)

# The three families of chain rings, each with its own standard form.
CLASS_A = "A"  # theta in {1+w, 3+w, 1+3w, 3+3w}: ideals 0 < <2> < R
CLASS_B = "B"  # theta in {2, 2+2w}: 0 < <2w> < <2> < <w> < R
CLASS_C = "C"  # theta in {3, 1+2w}: 0 < <2+2w> < <2> < <1+w> < R

_CLASS_OF = {
    **{parse_element(s): CLASS_A for s in ("1+w", "3+w", "1+3w", "3+3w")},
    **{parse_element(s): CLASS_B for s in ("2", "2+2w")},
    **{parse_element(s): CLASS_C for s in ("3", "1+2w")},
}

# Diagonal scalings of the standard-form generator blocks, by class.
BLOCK_SCALARS = {
    CLASS_A: (ONE, TWO),
    CLASS_B: (ONE, W, TWO, TWO_W),
    CLASS_C: (ONE, RingElement(1, 1), TWO, TWO_PLUS_TWO_W),
}


def classify(theta) -> str:
    return "Chain" if as_element(theta) in CHAIN_THETAS else "NonChain"


def chain_class(theta) -> str | None:
    return _CLASS_OF.get(as_element(theta))


def sort_elements(xs: Iterable[RingElement]) -> list[RingElement]:
    return sorted(xs)


class Ring:
    """The ring R_theta with precomputed 16x16 lookup tables.

    Use :func:`get_ring` for a cached instance.
    """

    def __init__(self, theta):
        self.theta = as_element(theta)
        idx = np.arange(16)
        a, b = idx // 4, idx % 4
        self.add_table = (4 * ((a[:, None] + a[None, :]) % 4) + (b[:, None] + b[None, :]) % 4).astype(np.uint8)
        self.mul_table = np.array(
            [[mul(self.theta, x, y).index for y in ELEMENTS] for x in ELEMENTS], dtype=np.uint8
        )
        self.neg_table = np.array([neg(x).index for x in ELEMENTS], dtype=np.uint8)
        self.classification = classify(self.theta)
        self.chain_class = chain_class(self.theta)
        one = ONE.index
        unit_mask = (self.mul_table == one).any(axis=1)
        self.units = frozenset(x for x in ELEMENTS if unit_mask[x.index])
        self.zero_divisors = frozenset(x for x in ELEMENTS if not unit_mask[x.index])
        self.inverse = {
            x: ELEMENTS[int(np.flatnonzero(self.mul_table[x.index] == one)[0])] for x in self.units
        }

    def __repr__(self):
        return f"Ring(theta={format_element(self.theta)})"

    @property
    def is_chain(self) -> bool:
        return self.classification == "Chain"

    def add(self, x, y) -> RingElement:
        return add(as_element(x), as_element(y))

    def mul(self, x, y) -> RingElement:
        return ELEMENTS[self.mul_table[as_element(x).index, as_element(y).index]]

    def sub(self, x, y) -> RingElement:
        return add(as_element(x), neg(as_element(y)))

    def is_unit(self, x) -> bool:
        return as_element(x) in self.units

    def solutions_of_square(self, c) -> list[RingElement]:
        c = as_element(c)
        return [x for x in ELEMENTS if self.mul(x, x) == c]

    def inner_product(self, x: Sequence, y: Sequence) -> RingElement:
        if len(x) != len(y):
            raise LengthMismatch(f"vectors of length {len(x)} and {len(y)}")
        acc = ZERO
        for xi, yi in zip(x, y):
            acc = add(acc, self.mul(xi, yi))
        return acc

    def principal_ideal(self, g) -> frozenset:
        g = as_element(g)
        return frozenset(self.mul(g, r) for r in ELEMENTS)

    def ideals(self) -> list[frozenset]:
        """All ideals, by closing every pair of generators.

        Any ideal is an additive subgroup of Z4 x Z4, so two generators suffice.
        Works for non-chain rings too.
        """
        found = set()
        for g in ELEMENTS:
            for h in ELEMENTS:
                found.add(_close(self, {g, h}))
        return sorted(found, key=lambda s: (len(s), sorted(s)))

    def ideal_chain(self) -> list[frozenset]:
        if not self.is_chain:
            raise NonChainRing(f"theta={format_element(self.theta)} is not a chain ring")
        chain = sorted({self.principal_ideal(g) for g in ELEMENTS}, key=len)
        for small, big in zip(chain, chain[1:]):
            assert small < big, "principal ideals of a chain ring must be nested"
        return chain


def _close(ring: Ring, gens) -> frozenset:
    current = {ZERO} | set(gens)
    while True:
        bigger = {add(x, y) for x in current for y in current}
        bigger |= {ring.mul(r, x) for r in ELEMENTS for x in current}
        if bigger == current:
            return frozenset(current)
        current = bigger


@lru_cache(maxsize=None)
def _get_ring(theta: RingElement) -> Ring:
    return Ring(theta)


def get_ring(theta) -> Ring:
    return _get_ring(as_element(theta))


def units_and_zero_divisors(theta) -> tuple[frozenset, frozenset]:
    r = get_ring(theta)
    return r.units, r.zero_divisors


def ideal_chain(theta) -> list[frozenset]:
    return get_ring(theta).ideal_chain()


def inner_product(theta, x: Sequence, y: Sequence) -> RingElement:
    return get_ring(theta).inner_product(x, y)


_CONVENTIONAL = ("0", "1", "2", "w", "1+w", "2w", "2+2w")


def ideal_generators(ring: Ring, ideal: frozenset) -> list[RingElement]:
    """Elements generating ``ideal`` as a principal ideal.

    Conventional names (0, 1, 2, w, 1+w, 2w, 2+2w) come first, the rest in
    canonical order.
    """
    preferred = [parse_element(s) for s in _CONVENTIONAL]

    def key(g):
        return (preferred.index(g), g) if g in preferred else (len(preferred), g)

    return sorted((g for g in ideal if ring.principal_ideal(g) == ideal), key=key)

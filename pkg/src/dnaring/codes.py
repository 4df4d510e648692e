"""Linear codes over R_theta: spans, Gau distance, duals, self-dual families,
and the reverse/complement constraints on generator matrices.

Vectors and matrices are numpy uint8 arrays of element indices (see
``ring.RingElement.index``).  Codeword sets are materialized as sorted,
deduplicated (M, n) arrays so membership is a binary search on row bytes.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import dna
from .errors import (
    LengthMismatch,
    NonChainRing,
    NotAUnit,
    NotStandardForm,
    SingletonCode,
    TooLarge,
)
from .gaumap import GauMap
from .ring import (
    BLOCK_SCALARS,
    CLASS_A,
    CLASS_B,
    CLASS_C,
    ELEMENTS,
    ONE,
    TWO,
    TWO_PLUS_TWO_W,
    TWO_TORSION,
    TWO_W,
    ZERO,
    Ring,
    RingElement,
    as_element,
    format_element,
    get_ring,
    parse_element,
)

DEFAULT_GUARD = 1 << 30
BRUTE_FORCE_MAX_N = 6


# ---------------------------------------------------------------------------
# matrix arithmetic over R_theta on index arrays

def to_indices(rows) -> np.ndarray:
    """Nested sequences of elements (or "a+bw" strings) -> uint8 index array."""
    arr = np.array([[as_element(x).index for x in row] for row in rows], dtype=np.uint8)
    return arr.reshape(len(rows), -1) if len(rows) else np.zeros((0, 0), dtype=np.uint8)


def to_elements(arr: np.ndarray) -> list:
    if arr.ndim == 1:
        return [ELEMENTS[i] for i in arr]
    return [[ELEMENTS[i] for i in row] for row in arr]


def _split(x: np.ndarray):
    return x >> 2, x & 3


def _join(a, b) -> np.ndarray:
    return ((a % 4) * 4 + (b % 4)).astype(np.uint8)


def madd(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    xa, xb = _split(x.astype(np.int64))
    ya, yb = _split(y.astype(np.int64))
    return _join(xa + ya, xb + yb)


def mneg(x: np.ndarray) -> np.ndarray:
    xa, xb = _split(x.astype(np.int64))
    return _join(-xa, -xb)


def msub(x, y):
    return madd(x, mneg(y))


def mscale(ring: Ring, c, x: np.ndarray) -> np.ndarray:
    return ring.mul_table[as_element(c).index][x]


def mmul(ring: Ring, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Matrix product over R_theta."""
    if x.shape[1] != y.shape[0]:
        raise LengthMismatch(f"cannot multiply {x.shape} by {y.shape}")
    if x.shape[1] == 0:
        return np.zeros((x.shape[0], y.shape[1]), dtype=np.uint8)
    p = ring.mul_table[x[:, :, None], y[None, :, :]].astype(np.int64)
    a, b = _split(p)
    return _join(a.sum(axis=1), b.sum(axis=1))


def identity(ring: Ring, k: int, scalar=ONE) -> np.ndarray:
    out = np.zeros((k, k), dtype=np.uint8)
    np.fill_diagonal(out, as_element(scalar).index)
    return out


def zeros(r: int, c: int) -> np.ndarray:
    return np.zeros((r, c), dtype=np.uint8)


def inner_products(ring: Ring, x: np.ndarray, g: np.ndarray) -> np.ndarray:
    """[x_i, g] for every row x_i of ``x``."""
    p = ring.mul_table[x, g[None, :]]
    a, b = _split(p)
    # uint8 wrap-around is harmless: 256 is a multiple of 4
    return _join(a.sum(axis=1, dtype=np.uint8), b.sum(axis=1, dtype=np.uint8))


PACKED_MAX_N = 16
_LOW = np.uint64(0x5555555555555555)
_HIGH = np.uint64(0xAAAAAAAAAAAAAAAA)


def row_keys(words: np.ndarray) -> np.ndarray:
    """Sort keys for an (M, n) index array.

    For n <= 16 each element takes one nibble of a uint64, first coordinate
    most significant, so key order is lexicographic row order.  Longer rows
    fall back to raw row bytes.
    """
    words = np.ascontiguousarray(words, dtype=np.uint8)
    n = words.shape[1]
    if n > PACKED_MAX_N:
        return words.view(f"V{n}").ravel()
    keys = np.zeros(len(words), dtype=np.uint64)
    for j in range(n):
        keys <<= np.uint64(4)
        keys |= words[:, j].astype(np.uint64)
    return keys


def keys_to_rows(keys: np.ndarray, n: int) -> np.ndarray:
    if keys.dtype != np.uint64:
        return np.frombuffer(keys.tobytes(), dtype=np.uint8).reshape(len(keys), n).copy()
    out = np.empty((len(keys), n), dtype=np.uint8)
    for j in range(n):
        out[:, j] = (keys >> np.uint64(4 * (n - 1 - j))) & np.uint64(15)
    return out


def add_keys(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Ring addition on packed keys.

    Every element nibble is two 2-bit lanes (a and b), and addition is mod 4
    per lane: add the low bits, then fold both high bits in with xor so no
    carry crosses a lane.
    """
    return ((x & _LOW) + (y & _LOW)) ^ (x & _HIGH) ^ (y & _HIGH)


def unique_rows(words: np.ndarray) -> np.ndarray:
    _, first = np.unique(row_keys(words), return_index=True)
    return np.ascontiguousarray(words[np.sort(first)])


def sorted_unique_rows(words: np.ndarray) -> np.ndarray:
    keys, first = np.unique(row_keys(words), return_index=True)
    return np.ascontiguousarray(words[first])


def constant_word(x, n: int) -> np.ndarray:
    return np.full(n, as_element(x).index, dtype=np.uint8)


# ---------------------------------------------------------------------------
# generator matrices

@dataclass(frozen=True, eq=False)
class GeneratorMatrix:
    theta: RingElement
    entries: np.ndarray
    profile: tuple[int, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "theta", as_element(self.theta))
        ent = np.asarray(self.entries, dtype=np.uint8)
        if ent.ndim != 2:
            raise ValueError("generator entries must be a k x n matrix")
        ent.setflags(write=False)
        object.__setattr__(self, "entries", ent)
        if self.profile is not None:
            object.__setattr__(self, "profile", tuple(int(k) for k in self.profile))
            self.blocks()  # validates the layout

    @classmethod
    def from_rows(cls, theta, rows, profile=None) -> "GeneratorMatrix":
        return cls(theta, to_indices(rows), profile)

    @property
    def ring(self) -> Ring:
        return get_ring(self.theta)

    @property
    def k(self) -> int:
        return self.entries.shape[0]

    @property
    def n(self) -> int:
        return self.entries.shape[1]

    def rows(self) -> list[list[RingElement]]:
        return to_elements(self.entries)

    def column_blocks(self) -> list[int]:
        ks = list(self.profile)
        return ks + [self.n - sum(ks)]

    def blocks(self) -> dict[tuple[int, int], np.ndarray]:
        """The A_{i,j} blocks of a standard-form generator.

        Off-diagonal blocks are stored scaled by the row scalar s_i; the A
        returned is one solution of s_i * A = block (the smallest index per
        entry), which is all the dual formulas need.
        """
        if self.profile is None:
            raise NotStandardForm("generator carries no type profile")
        cls = self.ring.chain_class
        if cls is None:
            raise NonChainRing(f"theta={format_element(self.theta)} has no standard form")
        scalars = BLOCK_SCALARS[cls]
        if len(self.profile) != len(scalars):
            raise NotStandardForm(f"class {cls} needs a profile of length {len(scalars)}")
        widths = self.column_blocks()
        if widths[-1] < 0 or sum(self.profile) != self.k:
            raise NotStandardForm(f"profile {self.profile} does not fit a {self.k}x{self.n} matrix")
        rstart = np.cumsum([0] + list(self.profile))
        cstart = np.cumsum([0] + widths)
        ring = self.ring
        out = {}
        for i, s in enumerate(scalars):
            rs = slice(rstart[i], rstart[i + 1])
            for j in range(len(widths)):
                blk = self.entries[rs, cstart[j]:cstart[j + 1]]
                if j < i and blk.any():
                    raise NotStandardForm(f"block ({i},{j}) must be zero")
                if j == i and not np.array_equal(blk, identity(ring, self.profile[i], s)):
                    raise NotStandardForm(f"block ({i},{i}) must be {format_element(s)}*I")
                if j > i:
                    out[(i, j)] = _divide(ring, s, blk, (i, j))
        return out

    def to_json(self, lam=TWO_PLUS_TWO_W) -> str:
        return json.dumps({
            "theta": format_element(self.theta),
            "lambda": format_element(as_element(lam)),
            "rows": [[format_element(x) for x in row] for row in self.rows()],
            "profile": list(self.profile) if self.profile is not None else None,
        }, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "GeneratorMatrix":
        data = json.loads(text)
        rows = [[parse_element(x) for x in row] for row in data["rows"]]
        return cls.from_rows(parse_element(data["theta"]), rows, data.get("profile"))


def _divide(ring: Ring, s: RingElement, blk: np.ndarray, where) -> np.ndarray:
    # smallest-index a with s*a = target, for each target element
    table = ring.mul_table[s.index]
    solve = np.full(16, 255, dtype=np.int64)
    for a in range(15, -1, -1):
        solve[table[a]] = a
    out = solve[blk]
    if (out == 255).any():
        raise NotStandardForm(f"block {where} is not a multiple of {format_element(s)}")
    return out.astype(np.uint8)


def standard_generator(theta, profile: Sequence[int], n: int, a_blocks: dict) -> GeneratorMatrix:
    """Assemble the standard-form generator from a profile and A_{i,j} blocks.

    Missing A blocks are taken as zero.
    """
    ring = get_ring(theta)
    cls = ring.chain_class
    if cls is None:
        raise NonChainRing(f"theta={format_element(ring.theta)} has no standard form")
    scalars = BLOCK_SCALARS[cls]
    profile = tuple(profile)
    widths = list(profile) + [n - sum(profile)]
    if widths[-1] < 0:
        raise NotStandardForm(f"profile {profile} exceeds length {n}")
    block_rows = []
    for i, s in enumerate(scalars):
        row = []
        for j, wj in enumerate(widths):
            if j < i:
                row.append(zeros(profile[i], wj))
            elif j == i:
                row.append(identity(ring, profile[i], s))
            else:
                a = np.asarray(a_blocks.get((i, j), zeros(profile[i], wj)), dtype=np.uint8).reshape(profile[i], wj)
                row.append(mscale(ring, s, a))
        block_rows.append(np.hstack(row) if row else zeros(profile[i], 0))
    entries = np.vstack(block_rows) if block_rows else zeros(0, n)
    return GeneratorMatrix(ring.theta, entries, profile)


def random_standard_generator(theta, profile: Sequence[int], n: int, rng: np.random.Generator) -> GeneratorMatrix:
    widths = list(profile) + [n - sum(profile)]
    a = {(i, j): rng.integers(0, 16, size=(profile[i], widths[j]), dtype=np.uint8)
         for i in range(len(profile)) for j in range(i + 1, len(widths))}
    return standard_generator(theta, profile, n, a)


def type_cardinality(theta, profile: Sequence[int]) -> int:
    """Codeword count implied by a type profile."""
    cls = get_ring(theta).chain_class
    if cls == CLASS_A:
        k0, k1 = profile
        return 16 ** k0 * 4 ** k1
    if cls in (CLASS_B, CLASS_C):
        k0, k1, k2, k3 = profile
        return 16 ** k0 * 8 ** k1 * 4 ** k2 * 2 ** k3
    raise NonChainRing(f"theta={format_element(as_element(theta))} has no type profile")


# ---------------------------------------------------------------------------
# spans

def row_multiples(ring: Ring, row: np.ndarray) -> np.ndarray:
    """Distinct multiples c*row over all 16 scalars c.

    Scalars agreeing modulo the row's annihilator give the same multiple, so
    this is the per-row coefficient reduction: one representative per coset.
    """
    return unique_rows(ring.mul_table[:, row])


def span_estimate(ring: Ring, entries: np.ndarray) -> int:
    return math.prod(len(row_multiples(ring, row)) for row in entries)


def span_keys(G: GeneratorMatrix, guard: int = DEFAULT_GUARD, reduce: bool = True) -> np.ndarray:
    """Sorted keys (see :func:`row_keys`) of every sum_i c_i * row_i.

    With ``reduce=False`` every row takes all 16 coefficients (the unreduced
    enumeration the reduction is tested against).
    """
    ring = G.ring
    n = G.n
    mults = [row_multiples(ring, row) if reduce else ring.mul_table[:, row] for row in G.entries]
    estimate = math.prod(len(m) for m in mults)
    if estimate > guard:
        raise TooLarge(estimate, guard)
    if n > PACKED_MAX_N:
        words = np.zeros((1, n), dtype=np.uint8)
        for m in sorted(mults, key=len):
            combined = ring.add_table[words[:, None, :], m[None, :, :]].reshape(-1, n)
            words = sorted_unique_rows(combined)
        return row_keys(words)
    keys = np.zeros(1, dtype=np.uint64)
    for m in sorted(mults, key=len):
        mk = np.unique(row_keys(m))
        keys = np.unique(add_keys(keys[:, None], mk[None, :]).ravel())
    return keys


def span(G: GeneratorMatrix, guard: int = DEFAULT_GUARD, reduce: bool = True) -> np.ndarray:
    """All codewords as a sorted (M, n) index array."""
    return keys_to_rows(span_keys(G, guard, reduce), G.n)


class _KeyedWords:
    """Shared membership logic for codeword sets held as sorted keys."""

    theta: RingElement
    n: int

    @property
    def keys(self) -> np.ndarray:
        raise NotImplementedError

    @property
    def words(self) -> np.ndarray:
        if self._words is None:
            self._words = keys_to_rows(self.keys, self.n)
            self._words.setflags(write=False)
        return self._words

    def __len__(self):
        return len(self.keys)

    def contains(self, vectors: np.ndarray) -> np.ndarray:
        vectors = np.atleast_2d(np.asarray(vectors, dtype=np.uint8))
        if vectors.shape[1] != self.n:
            raise LengthMismatch(f"vectors of length {vectors.shape[1]} in a code of length {self.n}")
        keys = row_keys(vectors)
        pos = np.minimum(np.searchsorted(self.keys, keys), len(self.keys) - 1)
        return self.keys[pos] == keys

    def __contains__(self, vector) -> bool:
        v = np.array([as_element(x).index for x in vector], dtype=np.uint8)
        return bool(self.contains(v[None, :])[0])

    def to_csv(self) -> str:
        return "".join(",".join(format_element(ELEMENTS[i]) for i in row) + "\n" for row in self.words)


class LinearCode(_KeyedWords):
    """A row span over R_theta, with its codewords materialized on demand."""

    def __init__(self, generator: GeneratorMatrix, guard: int = DEFAULT_GUARD):
        self.generator = generator
        self.guard = guard
        self._keys = None
        self._words = None

    @classmethod
    def from_rows(cls, theta, rows, profile=None, **kw) -> "LinearCode":
        return cls(GeneratorMatrix.from_rows(theta, rows, profile), **kw)

    @property
    def theta(self) -> RingElement:
        return self.generator.theta

    @property
    def ring(self) -> Ring:
        return self.generator.ring

    @property
    def n(self) -> int:
        return self.generator.n

    @property
    def keys(self) -> np.ndarray:
        if self._keys is None:
            self._keys = span_keys(self.generator, self.guard)
        return self._keys

    def params(self, gmap: GauMap) -> tuple[int, int, int]:
        return self.n, len(self), min_gau_distance(self, gmap)


class WordSet(_KeyedWords):
    """An explicit codeword set (not necessarily a row span)."""

    def __init__(self, theta, words: np.ndarray):
        self.theta = as_element(theta)
        words = np.asarray(words, dtype=np.uint8)
        self.n = words.shape[1]
        self._keys = np.unique(row_keys(words))
        self._words = None

    @property
    def ring(self) -> Ring:
        return get_ring(self.theta)

    @property
    def keys(self) -> np.ndarray:
        return self._keys


def code_from_words(theta, words: np.ndarray) -> WordSet:
    return WordSet(theta, words)


# ---------------------------------------------------------------------------
# Gau distance on codes

PAIRWISE_LIMIT = 4096


def min_distance_pairwise(words: np.ndarray, dist: np.ndarray, chunk: int = 1 << 22) -> int:
    """Minimum of sum_i dist[x_i, y_i] over unordered pairs of distinct rows."""
    m, n = words.shape
    if m < 2:
        raise SingletonCode("minimum distance needs at least two codewords")
    best = 2 * n + 1
    rows = max(1, chunk // max(1, m * max(n, 1)))
    for start in range(0, m - 1, rows):
        block = words[start:start + rows]
        d = dist[block[:, None, :], words[None, :, :]].sum(axis=2, dtype=np.int64)
        i = np.arange(start, start + len(block))[:, None]
        d = np.where(np.arange(m)[None, :] > i, d, best)
        best = min(best, int(d.min()))
    return best


def _support_masks(words: np.ndarray) -> np.ndarray:
    masks = np.zeros(len(words), dtype=np.int64)
    for j in range(words.shape[1]):
        masks |= (words[:, j] != 0).astype(np.int64) << j
    return masks


def min_distance_by_differences(code: LinearCode, dist: np.ndarray) -> int:
    """Exact minimum distance of a linear code without translation invariance.

    Any pair is (x, x + e) with e a nonzero codeword.  Only coordinates in
    supp(e) contribute, each at least 1, so d(x, x + e) = sum over supp(e) of
    dist[x_j, x_j + e_j] with x_S ranging over the projection of the code onto
    S = supp(e).  Supports are visited by increasing size and the search stops
    once |S| reaches the best distance found.
    """
    ring = code.ring
    words = code.words
    if len(words) < 2:
        raise SingletonCode("minimum distance needs at least two codewords")
    # shifted[s, e] = dist[s, s + e]
    shifted = dist[np.arange(16)[:, None], ring.add_table]
    masks = _support_masks(words)
    weights = np.array([bin(m).count("1") for m in range(1 << words.shape[1])]) if words.shape[1] <= 20 else None
    pop = weights[masks] if weights is not None else np.array([bin(int(m)).count("1") for m in masks])
    best = 2 * code.n + 1
    for size in range(1, code.n + 1):
        if size >= best:
            break
        sel = np.flatnonzero(pop == size)
        if not len(sel):
            continue
        for mask in np.unique(masks[sel]):
            cols = [j for j in range(code.n) if (int(mask) >> j) & 1]
            diffs = words[sel[masks[sel] == mask]][:, cols]
            proj = span(GeneratorMatrix(code.theta, code.generator.entries[:, cols]))
            for start in range(0, len(proj), 1024):
                p = proj[start:start + 1024]
                vals = shifted[p[:, None, :], diffs[None, :, :]].sum(axis=2, dtype=np.int64)
                best = min(best, int(vals.min()))
    return best


def min_gau_distance(code: LinearCode, gmap: GauMap, method: str = "auto") -> int:
    """Minimum Gau distance over distinct codeword pairs."""
    dist = gmap.distance_table()
    if method == "pairwise" or (method == "auto" and len(code) <= PAIRWISE_LIMIT):
        return min_distance_pairwise(code.words, dist)
    return min_distance_by_differences(code, dist)


def encode_words(words: np.ndarray, gmap: GauMap) -> np.ndarray:
    """(M, n) element indices -> (M, 2n) DNA symbol codes."""
    pairs = gmap.index_to_pair[words]
    return pairs.reshape(len(words), -1)


def map_keys(keys: np.ndarray, n: int, lut: np.ndarray) -> np.ndarray:
    """Apply a 16-entry lookup to every nibble of packed keys."""
    lut = lut.astype(np.uint64)
    out = np.zeros_like(keys)
    for j in range(n):
        shift = np.uint64(4 * j)
        out |= lut[((keys >> shift) & np.uint64(15)).astype(np.intp)] << shift
    return out


def dna_image(code, gmap: GauMap) -> dna.DnaCode:
    """phi applied to every codeword, as a DNA code of length 2n."""
    if code.n <= PACKED_MAX_N:
        # a dinucleotide packs into one nibble, so phi acts nibble by nibble
        pairs = gmap.index_to_pair
        lut = pairs[:, 0] * 4 + pairs[:, 1]
        return dna.DnaCode.from_keys(map_keys(code.keys, code.n, lut), 2 * code.n)
    return dna.DnaCode(encode_words(code.words, gmap))


def dna_hamming_table(gmap: GauMap) -> np.ndarray:
    """16x16 Hamming distances between the dinucleotide images of elements."""
    return np.array([[dna.hamming(gmap(x), gmap(y)) for y in ELEMENTS] for x in ELEMENTS], dtype=np.uint8)


# ---------------------------------------------------------------------------
# duals

def _neg_t(x):
    return mneg(x).T


def dual_blocks_class_a(ring: Ring, A: dict, k0: int, k1: int, g: int) -> np.ndarray:
    A01, A02, A12 = A[(0, 1)], A[(0, 2)], A[(1, 2)]
    C01 = msub(mmul(ring, A01, A12), A02)
    C02 = mneg(A12)
    C11 = A01
    top = np.hstack([C01.T, C02.T, identity(ring, g)])
    bottom = np.hstack([mscale(ring, TWO, _neg_t(C11)), identity(ring, k1, TWO), zeros(k1, g)])
    return np.vstack([top, bottom])


def dual_blocks_class_bc(ring: Ring, A: dict, ks: Sequence[int], g: int, printed_c11: bool = False) -> np.ndarray:
    k0, k1, k2, k3 = ks
    _, s1, s2, s3 = BLOCK_SCALARS[ring.chain_class]
    mm = lambda x, y: mmul(ring, x, y)  # noqa: E731
    A01, A02, A03, A04 = A[(0, 1)], A[(0, 2)], A[(0, 3)], A[(0, 4)]
    A12, A13, A14 = A[(1, 2)], A[(1, 3)], A[(1, 4)]
    A23, A24, A34 = A[(2, 3)], A[(2, 4)], A[(3, 4)]
    t = msub(mm(A23, A34), A24)
    C04 = mneg(A34)
    C03 = t
    C02 = madd(msub(mm(A13, A34), A14), mneg(mm(A12, t)))
    C01 = madd(madd(mm(A01, mneg(C02)), mneg(mm(A02, t))), msub(mm(A03, A34), A04))
    C12 = msub(mm(A12, A23), A13)
    if printed_c11:
        C11 = msub(madd(mm(A01, C12), mm(A02, A23)), A03)
    else:
        # the printed "+A02 A23 - A03" leaves 2*s1*(A03 - A02 A23) in the
        # product with the first block row; the signs must be flipped
        C11 = madd(msub(mm(A01, C12), mm(A02, A23)), A03)
    C13 = A23
    C21 = msub(mm(A01, A12), A02)
    C22 = A12
    C31 = A01
    sc = lambda s, x: mscale(ring, s, x)  # noqa: E731
    h0 = np.hstack([C01.T, C02.T, C03.T, C04.T, identity(ring, g)])
    h1 = np.hstack([sc(s1, _neg_t(C11)), sc(s1, C12.T), sc(s1, _neg_t(C13)), identity(ring, k3, s1), zeros(k3, g)])
    h2 = np.hstack([sc(s2, C21.T), sc(s2, _neg_t(C22)), identity(ring, k2, s2), zeros(k2, k3), zeros(k2, g)])
    h3 = np.hstack([sc(s3, _neg_t(C31)), identity(ring, k1, s3), zeros(k1, k2), zeros(k1, k3), zeros(k1, g)])
    return np.vstack([h0, h1, h2, h3])


def dual_profile(theta, profile: Sequence[int], n: int) -> tuple[int, ...]:
    cls = get_ring(theta).chain_class
    if cls == CLASS_A:
        k0, k1 = profile
        return (n - k0 - k1, k1)
    k0, k1, k2, k3 = profile
    return (n - k0 - k1 - k2 - k3, k3, k2, k1)


def dual_generator(G: GeneratorMatrix, printed_c11: bool = False) -> GeneratorMatrix:
    """Closed-form generator of the dual of a standard-form code.

    The result is not itself in standard form (its pivots sit in reversed
    column blocks), so it carries no profile; see :func:`dual_profile`.
    """
    ring = G.ring
    if ring.chain_class is None:
        raise NonChainRing(f"theta={format_element(G.theta)} has no standard form")
    A = G.blocks()
    widths = G.column_blocks()
    g = widths[-1]
    if ring.chain_class == CLASS_A:
        H = dual_blocks_class_a(ring, A, G.profile[0], G.profile[1], g)
    else:
        H = dual_blocks_class_bc(ring, A, G.profile, g, printed_c11=printed_c11)
    return GeneratorMatrix(G.theta, H.reshape(-1, G.n))


def all_vectors(n: int) -> np.ndarray:
    if n > BRUTE_FORCE_MAX_N:
        raise TooLarge(16 ** n, 16 ** BRUTE_FORCE_MAX_N)
    grid = np.indices((16,) * n, dtype=np.uint8).reshape(n, -1).T
    return np.ascontiguousarray(grid)


def dual_brute_force(code) -> np.ndarray:
    """{x in R^n : [x, c] = 0 for every codeword c}, by scanning all 16^n vectors.

    Testing against the generator rows alone is equivalent (the inner product
    is bilinear); explicit word sets are tested word by word.
    """
    ring = get_ring(code.theta)
    cands = all_vectors(code.n)
    tests = code.generator.entries if isinstance(code, LinearCode) else code.words
    for g in tests:
        cands = cands[inner_products(ring, cands, g) == 0]
    return sorted_unique_rows(cands)


def is_self_orthogonal(code) -> bool:
    ring = get_ring(code.theta)
    rows = code.generator.entries if isinstance(code, LinearCode) else code.words
    return all((inner_products(ring, rows, g) == 0).all() for g in rows)


def is_self_dual(code) -> bool:
    dual = dual_brute_force(code)
    return len(dual) == len(code) and bool(code.contains(dual).all())


def trivial_self_dual_candidate(theta, n: int) -> tuple[WordSet, bool]:
    """The constant-word code {(x, ..., x) : x in A} and the oracle's verdict on it.

    A is R_theta when 4 | n, the zero divisors when n is 2 mod 4, and
    {0, 2, 2w, 2+2w} otherwise.
    """
    ring = get_ring(theta)
    if n % 4 == 0:
        A = ELEMENTS
    elif n % 2 == 0:
        A = sorted(ring.zero_divisors)
    else:
        A = TWO_TORSION
    words = np.array([constant_word(x, n) for x in A], dtype=np.uint8)
    code = code_from_words(ring.theta, words)
    return code, is_self_dual(code)


TORSION_WORDS = {CLASS_A: (TWO, TWO_W, TWO_PLUS_TWO_W), CLASS_B: (TWO_W,), CLASS_C: (TWO_PLUS_TWO_W,)}


def torsion_word_presence(code) -> RingElement | None:
    """Which all-2 / all-2w / all-(2+2w) word the code contains, per the ring's class."""
    cls = get_ring(code.theta).chain_class
    for x in TORSION_WORDS.get(cls, (TWO, TWO_W, TWO_PLUS_TWO_W)):
        if code.contains(constant_word(x, code.n)[None, :])[0]:
            return x
    return None


# ---------------------------------------------------------------------------
# reverse / complement constraints

def reverse_images(rows: np.ndarray, gmap: GauMap) -> np.ndarray:
    """phi^{-1}(phi(x)^r) for each row, computed through the DNA map."""
    out = []
    for row in rows:
        word = gmap.encode(ELEMENTS[i] for i in row)
        out.append([x.index for x in gmap.decode(dna.reverse(word))])
    return np.array(out, dtype=np.uint8).reshape(len(rows), -1)


def check_reverse_constraint(G: GeneratorMatrix, gmap: GauMap, code: LinearCode | None = None) -> bool:
    code = code or LinearCode(G)
    if G.k == 0:
        return True
    return bool(code.contains(reverse_images(G.entries, gmap)).all())


def check_complement_constraint(G: GeneratorMatrix, lam=TWO_PLUS_TWO_W, code: LinearCode | None = None) -> bool:
    code = code or LinearCode(G)
    return bool(code.contains(constant_word(lam, G.n)[None, :])[0])


def rc_closed_ring_level(code, gmap: GauMap) -> bool:
    """Whether 3 c^r + lambda is a codeword for every codeword c."""
    ring = get_ring(code.theta)
    w = code.words
    three = ring.mul_table[parse_element("3").index]
    image = ring.add_table[three[w[:, ::-1]], as_element(gmap.lam).index]
    return bool(code.contains(image).all())


# ---------------------------------------------------------------------------
# circulant family

def circulant(a: Sequence) -> np.ndarray:
    """Rows (a1 .. an), (an a1 .. a_{n-1}), ... : each row shifts right by one."""
    a = np.array([as_element(x).index for x in a], dtype=np.uint8)
    return np.array([np.roll(a, i) for i in range(len(a))], dtype=np.uint8).reshape(len(a), len(a))


@dataclass
class CirculantResult:
    generator: GeneratorMatrix
    self_dual: bool | None
    reverse_closed: bool
    rc_closed: bool
    all_units: bool


def circulant_selfdual_generator(theta, u, a: Sequence, gmap: GauMap, oracle_max_n: int = 3) -> CirculantResult:
    """G = (u I_n | circ(a)) with its self-duality and DNA-constraint verdicts.

    ``self_dual`` is None when 2n exceeds the brute-force range.
    """
    ring = get_ring(theta)
    u = as_element(u)
    if u not in ring.units:
        raise NotAUnit(f"{format_element(u)} is not a unit for theta={format_element(ring.theta)}")
    n = len(a)
    entries = np.hstack([identity(ring, n, u), circulant(a)])
    G = GeneratorMatrix(ring.theta, entries)
    code = LinearCode(G)
    self_dual = is_self_dual(code) if n <= oracle_max_n else None
    image = dna_image(code, gmap)
    checks = dna.closure_checks(image)
    return CirculantResult(
        generator=G,
        self_dual=self_dual,
        reverse_closed=check_reverse_constraint(G, gmap, code),
        rc_closed=checks["rc_closed"],
        all_units=all(as_element(x) in ring.units for x in a),
    )


def circulant_search(theta, n: int, gmap: GauMap) -> list[CirculantResult]:
    """Every (u, a) with u a unit and a a unit tuple whose circulant code is self-dual."""
    ring = get_ring(theta)
    units = sorted(ring.units)
    found = []
    for u in units:
        for a in itertools.product(units, repeat=n):
            rows = np.hstack([identity(ring, n, u), circulant(a)])
            if not all((inner_products(ring, rows, g) == 0).all() for g in rows):
                continue
            found.append(circulant_selfdual_generator(theta, u, a, gmap))
    return found

"""DNA words and codes: reverse/complement algebra, Hamming metric, closure checks."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, TextIO

import numpy as np

from .errors import LengthMismatch

NUCLEOTIDES = "ACGT"
_CODE = {ch: i for i, ch in enumerate(NUCLEOTIDES)}
_COMPLEMENT = str.maketrans("ACGT", "TGCA")


def check_word(w: str) -> str:
    bad = set(w) - set(NUCLEOTIDES)
    if bad:
        raise ValueError(f"not a DNA word: {w!r} (bad symbols {sorted(bad)})")
    return w


def reverse(w: str) -> str:
    return w[::-1]


def complement(w: str) -> str:
    return w.translate(_COMPLEMENT)


def reverse_complement(w: str) -> str:
    return complement(w)[::-1]


def hamming(x: str, y: str) -> int:
    if len(x) != len(y):
        raise LengthMismatch(f"words of length {len(x)} and {len(y)}")
    return sum(a != b for a, b in zip(x, y))


def gc_content(w: str) -> Fraction:
    if not w:
        return Fraction(0)
    return Fraction(sum(ch in "GC" for ch in w), len(w))


def words_to_array(words: Iterable[str]) -> np.ndarray:
    words = list(words)
    if not words:
        return np.zeros((0, 0), dtype=np.uint8)
    length = len(words[0])
    buf = "".join(words)
    if len(buf) != length * len(words):
        raise LengthMismatch("DNA code words must all have the same length")
    arr = np.frombuffer(buf.encode("ascii"), dtype=np.uint8).reshape(len(words), length)
    lut = np.full(256, 255, dtype=np.uint8)
    for ch, i in _CODE.items():
        lut[ord(ch)] = i
    out = lut[arr]
    if (out == 255).any():
        raise ValueError("DNA words may only contain A, C, G, T")
    return out


def array_to_words(arr: np.ndarray) -> list[str]:
    letters = np.frombuffer(NUCLEOTIDES.encode("ascii"), dtype=np.uint8)[arr]
    return [row.tobytes().decode("ascii") for row in letters]


PACKED_MAX_LENGTH = 32


def pack_words(arr: np.ndarray) -> np.ndarray:
    """Sort keys for an (M, L) symbol array.

    Words of length <= 32 pack two bits per symbol into a uint64 (first
    symbol most significant, so key order is lexicographic word order);
    longer words fall back to raw row bytes.
    """
    arr = np.ascontiguousarray(arr, dtype=np.uint8)
    length = arr.shape[1]
    if length > PACKED_MAX_LENGTH:
        return arr.view(f"V{length}").ravel()
    keys = np.zeros(len(arr), dtype=np.uint64)
    for j in range(length):
        keys <<= np.uint64(2)
        keys |= arr[:, j].astype(np.uint64)
    return keys


def unpack_words(keys: np.ndarray, length: int) -> np.ndarray:
    if keys.dtype != np.uint64:
        return np.frombuffer(keys.tobytes(), dtype=np.uint8).reshape(len(keys), length).copy()
    out = np.empty((len(keys), length), dtype=np.uint8)
    for j in range(length):
        out[:, j] = (keys >> np.uint64(2 * (length - 1 - j))) & np.uint64(3)
    return out


def reverse_keys(keys: np.ndarray, length: int) -> np.ndarray:
    out = np.zeros_like(keys)
    for j in range(length):
        out |= ((keys >> np.uint64(2 * j)) & np.uint64(3)) << np.uint64(2 * (length - 1 - j))
    return out


def complement_keys(keys: np.ndarray, length: int) -> np.ndarray:
    # complement is s -> 3 - s on every 2-bit lane
    return keys ^ np.uint64((1 << (2 * length)) - 1)


class DnaCode:
    """A set of equal-length DNA words.

    Words are held as sorted, deduplicated packed keys (see
    :func:`pack_words`), so membership is a binary search and closure sweeps
    stay vectorized for codes with tens of millions of words.  The symbol
    array (A=0, C=1, G=2, T=3) is decoded on demand.
    """

    def __init__(self, words: Iterable[str] | np.ndarray, length: int | None = None):
        if isinstance(words, np.ndarray):
            arr = words.astype(np.uint8, copy=False)
            if arr.ndim != 2:
                raise ValueError("expected an (M, L) symbol array")
        else:
            arr = words_to_array(words)
            if length is not None and arr.size == 0:
                arr = np.zeros((0, length), dtype=np.uint8)
        if arr.size and arr.max() > 3:
            raise ValueError("symbol codes must lie in 0..3")
        self.length = arr.shape[1]
        self.keys = np.unique(pack_words(arr))
        self._symbols = None
        self._min_distance = None

    @classmethod
    def from_keys(cls, keys: np.ndarray, length: int, presorted: bool = False) -> "DnaCode":
        code = cls.__new__(cls)
        code.length = length
        code.keys = keys if presorted else np.unique(keys)
        code._symbols = None
        code._min_distance = None
        return code

    @property
    def packed(self) -> bool:
        return self.keys.dtype == np.uint64

    @property
    def symbols(self) -> np.ndarray:
        if self._symbols is None:
            self._symbols = unpack_words(self.keys, self.length)
        return self._symbols

    def __len__(self):
        return len(self.keys)

    def __iter__(self):
        return iter(self.words())

    def __contains__(self, word: str) -> bool:
        if len(word) != self.length:
            return False
        return bool(self.contains_array(words_to_array([word]))[0])

    def contains_keys(self, keys: np.ndarray) -> np.ndarray:
        if not len(self.keys):
            return np.zeros(len(keys), dtype=bool)
        pos = np.minimum(np.searchsorted(self.keys, keys), len(self.keys) - 1)
        return self.keys[pos] == keys

    def contains_array(self, arr: np.ndarray) -> np.ndarray:
        """Vectorized membership of each row of an (K, L) symbol array."""
        return self.contains_keys(pack_words(arr))

    def words(self) -> list[str]:
        return array_to_words(self.symbols)

    def min_hamming_distance(self, chunk: int = 1 << 22) -> int:
        """Minimum Hamming distance over all unordered pairs (O(M^2))."""
        if self._min_distance is None:
            m = len(self)
            if m < 2:
                raise ValueError("minimum distance needs at least two words")
            best = self.length
            s = self.symbols
            rows = max(1, chunk // max(1, m * self.length))
            for start in range(0, m - 1, rows):
                block = s[start:start + rows]
                d = (block[:, None, :] != s[None, :, :]).sum(axis=2)
                # mask i >= j so each pair counts once and i == j never counts
                i = np.arange(start, start + len(block))[:, None]
                j = np.arange(m)[None, :]
                d = np.where(j > i, d, self.length + 1)
                best = min(best, int(d.min()))
                if best <= 1:
                    break
            self._min_distance = best
        return self._min_distance

    def set_min_distance(self, d: int) -> None:
        """Record a distance computed elsewhere (e.g. a structured search)."""
        self._min_distance = int(d)


def reverse_array(arr: np.ndarray) -> np.ndarray:
    return arr[:, ::-1]


def complement_array(arr: np.ndarray) -> np.ndarray:
    return 3 - arr


def closure_checks(code: DnaCode) -> dict:
    """Reverse, complement and reverse-complement closure of ``code``.

    Each operation is a bijection on words, so the code is closed under it
    exactly when the image of the code, sorted, equals the code.  Also
    asserts that reversible and complement-closed together imply
    reverse-complement closed.
    """
    n = code.length
    if code.packed:
        r = reverse_keys(code.keys, n)
        images = (r, complement_keys(code.keys, n), complement_keys(r, n))
    else:
        s = code.symbols
        r = reverse_array(s)
        images = tuple(pack_words(x) for x in (r, complement_array(s), complement_array(r)))
    reversible, complement_closed, rc_closed = (
        bool(np.array_equal(np.sort(img), code.keys)) for img in images
    )
    if reversible and complement_closed:
        assert rc_closed, "reverse + complement closure must imply reverse-complement closure"
    return {"reversible": reversible, "complement_closed": complement_closed, "rc_closed": rc_closed}


def gc_histogram(code: DnaCode) -> dict[int, int]:
    """Number of words with each G/C count."""
    counts = np.isin(code.symbols, (1, 2)).sum(axis=1)
    values, freq = np.unique(counts, return_counts=True)
    return {int(k): int(v) for k, v in zip(values, freq)}


def export_fasta(code: DnaCode | Iterable[str], sink: TextIO, prefix: str = "word", width: int = 80) -> None:
    words = code.words() if isinstance(code, DnaCode) else sorted(code)
    for i, w in enumerate(words):
        sink.write(f">{prefix}_{i}\n")
        for start in range(0, len(w), width):
            sink.write(w[start:start + width] + "\n")


def export_csv(code: DnaCode, sink: TextIO) -> None:
    for w in code.words():
        sink.write(w + "\n")


def summary(code: DnaCode) -> dict:
    checks = closure_checks(code)
    return {
        "n": code.length,
        "M": len(code),
        "d_H": code.min_hamming_distance() if len(code) > 1 else None,
        "reversible": checks["reversible"],
        "rc_closed": checks["rc_closed"],
        "gc_histogram": {str(k): v for k, v in gc_histogram(code).items()},
    }


def summary_json(code: DnaCode) -> str:
    return json.dumps(summary(code), sort_keys=True)

"""Codes over the rings Z4 + wZ4 (w^2 = theta) and their DNA images."""

from .errors import DnaRingError
from .gaumap import GauMap, build_gau_map, canonical_map, enumerate_gau_maps
from .ring import Ring, RingElement, get_ring, parse_element

__all__ = [
    "DnaRingError",
    "GauMap",
    "Ring",
    "RingElement",
    "build_gau_map",
    "canonical_map",
    "enumerate_gau_maps",
    "get_ring",
    "parse_element",
]

__version__ = "0.1.0"

"""Sphere counts under the Gau metric and the four code-size bounds.

Everything is exact integer (or Fraction) arithmetic.  Rational powers of 16
are compared by raising both sides to the 4th power, since every type-profile
exponent is a multiple of 1/4.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction
from math import factorial

from .errors import RadiusOutOfRange
from .ring import CLASS_A, get_ring

SPHERE_PACKING = "SpherePacking"
GILBERT_VARSHAMOV = "GilbertVarshamov"
SINGLETON = "Singleton"
PLOTKIN = "Plotkin"

SATISFIED = "Satisfied"
MET_WITH_EQUALITY = "MetWithEquality"
VIOLATED = "Violated"
INAPPLICABLE = "Inapplicable"


def circle_count(n: int, r: int) -> int:
    """Number of vectors at Gau distance exactly r from any fixed vector of length n.

    Choose i coordinates at distance 2 (9 options each) and r - 2i at
    distance 1 (6 options each).
    """
    if not 0 <= r <= 2 * n:
        raise RadiusOutOfRange(f"radius {r} outside 0..{2 * n}")
    total = 0
    for i in range(max(0, r - n), r // 2 + 1):
        total += factorial(n) // (factorial(i) * factorial(r - 2 * i) * factorial(n - r + i)) * 9 ** i * 6 ** (r - 2 * i)
    return total


def sphere_size(n: int, r: int) -> int:
    if not 0 <= r <= 2 * n:
        raise RadiusOutOfRange(f"radius {r} outside 0..{2 * n}")
    return sum(circle_count(n, i) for i in range(r + 1))


@dataclass(frozen=True)
class BoundReport:
    kind: str
    n: int
    M: int
    d: int
    lhs: int | Fraction | None
    rhs: int | Fraction | None
    verdict: str

    def as_dict(self) -> dict:
        out = asdict(self)
        for key in ("lhs", "rhs"):
            if isinstance(out[key], Fraction):
                out[key] = str(out[key])
        return out


def _verdict(lhs, rhs) -> str:
    if lhs == rhs:
        return MET_WITH_EQUALITY
    return SATISFIED if lhs < rhs else VIOLATED


def _radius(d: int) -> int:
    if d < 1:
        raise ValueError(f"minimum distance must be positive, got {d}")
    return (d - 1) // 2


def sphere_packing(n: int, M: int, d: int) -> BoundReport:
    """M * |S_t| <= 16^n with t = floor((d-1)/2)."""
    t = _radius(d)
    if t > 2 * n:
        # the sphere is the whole space already
        t = 2 * n
    lhs = M * sphere_size(n, t)
    rhs = 16 ** n
    return BoundReport(SPHERE_PACKING, n, M, d, lhs, rhs, _verdict(lhs, rhs))


def gv_lower_bound(n: int, d: int) -> int:
    """Guaranteed lower bound ceil(16^n / |S_{d-1}|) on A_16(n, d)."""
    if not 1 <= d <= 2 * n + 1:
        raise RadiusOutOfRange(f"distance {d} outside 1..{2 * n + 1}")
    s = sphere_size(n, d - 1)
    return -(-16 ** n // s)


def gilbert_varshamov(n: int, M: int, d: int) -> BoundReport:
    """16^n <= A * |S_{d-1}| evaluated at A = the guaranteed lower bound.

    The GV statement bounds the best possible code, not a given one, so a
    code never violates it; the report carries the guaranteed size as
    ``rhs // sphere_size(n, d - 1)``.
    """
    if d > 2 * n + 1:
        return BoundReport(GILBERT_VARSHAMOV, n, M, d, None, None, INAPPLICABLE)
    a = gv_lower_bound(n, d)
    lhs = 16 ** n
    rhs = a * sphere_size(n, d - 1)
    return BoundReport(GILBERT_VARSHAMOV, n, M, d, lhs, rhs, _verdict(lhs, rhs))


def singleton(n: int, M: int, d: int) -> BoundReport:
    """M <= 16^(n - floor((d-1)/2))."""
    t = _radius(d)
    rhs = 16 ** (n - t) if t <= n else Fraction(1, 16 ** (t - n))
    return BoundReport(SINGLETON, n, M, d, M, rhs, _verdict(M, rhs))


def is_mgds(n: int, M: int, d: int) -> bool:
    """Maximum Gau distance separable: the Singleton-like bound holds with equality."""
    return singleton(n, M, d).verdict == MET_WITH_EQUALITY


def plotkin(n: int, M: int, d: int) -> BoundReport:
    """M <= floor(2d / (2d - 3n)), only when 2d > 3n."""
    if 2 * d <= 3 * n:
        return BoundReport(PLOTKIN, n, M, d, M, None, INAPPLICABLE)
    rhs = (2 * d) // (2 * d - 3 * n)
    return BoundReport(PLOTKIN, n, M, d, M, rhs, _verdict(M, rhs))


def all_bounds(n: int, M: int, d: int) -> list[BoundReport]:
    return [sphere_packing(n, M, d), gilbert_varshamov(n, M, d), singleton(n, M, d), plotkin(n, M, d)]


# ---------------------------------------------------------------------------
# corollaries in k-space

def type_exponent(profile, theta=None) -> Fraction:
    """log_16 of the codeword count implied by a type profile.

    Two-part profiles are read as {k0, k1} (M = 16^k0 4^k1); four-part ones
    as {k0, k1, k2, k3} (M = 16^k0 8^k1 4^k2 2^k3).  When theta is given its
    class must match the profile length.
    """
    profile = tuple(profile)
    if theta is not None:
        two_part = get_ring(theta).chain_class == CLASS_A
        if two_part != (len(profile) == 2):
            raise ValueError(f"profile {profile} does not match the class of theta")
    if len(profile) == 2:
        k0, k1 = profile
        return k0 + Fraction(k1, 2)
    if len(profile) == 4:
        k0, k1, k2, k3 = profile
        return k0 + Fraction(3 * k1, 4) + Fraction(k2, 2) + Fraction(k3, 4)
    raise ValueError(f"type profiles have 2 or 4 parts, got {profile}")


def type_corollaries(profile, n: int, d: int, theta=None) -> list[BoundReport]:
    """The sphere-packing, Singleton and Plotkin corollaries for a profiled linear code.

    With E the type exponent:
      sphere packing:  |S_t| <= 16^(n - E), compared as |S_t| * 2^(4E) vs 2^(4n)
      Singleton:       floor((d-1)/2) <= n - E, as Fractions
      Plotkin:         E <= log_16(2d / (2d - 3n)), compared as 2^(4E) (2d - 3n) vs 2d
    """
    E = type_exponent(profile, theta)
    four_e = int(4 * E)
    M = 2 ** four_e
    t = min(_radius(d), 2 * n)
    reports = []
    lhs, rhs = sphere_size(n, t) * 2 ** four_e, 2 ** (4 * n)
    reports.append(BoundReport(SPHERE_PACKING, n, M, d, lhs, rhs, _verdict(lhs, rhs)))
    lhs, rhs = Fraction(_radius(d)), n - E
    reports.append(BoundReport(SINGLETON, n, M, d, lhs, rhs, _verdict(lhs, rhs)))
    if 2 * d <= 3 * n:
        reports.append(BoundReport(PLOTKIN, n, M, d, None, None, INAPPLICABLE))
    else:
        lhs, rhs = 2 ** four_e * (2 * d - 3 * n), 2 * d
        reports.append(BoundReport(PLOTKIN, n, M, d, lhs, rhs, _verdict(lhs, rhs)))
    return reports


def format_table(reports) -> str:
    rows = [("bound", "n", "M", "d", "lhs", "rhs", "verdict")]
    for r in reports:
        rows.append((r.kind, str(r.n), str(r.M), str(r.d), str(r.lhs) if r.lhs is not None else "-",
                     str(r.rhs) if r.rhs is not None else "-", r.verdict))
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    return "".join("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() + "\n" for row in rows)

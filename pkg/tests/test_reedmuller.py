from math import comb

import numpy as np
import pytest

from dnaring import dna
from dnaring.errors import InvalidOrder, NotZeroDivisor, UnsupportedTheta
from dnaring.reedmuller import (
    RMSpec,
    admissible_z,
    rm_dna_code,
    rm_dna_params,
    rm_generator,
    rm_matrix,
    verification_grid,
    verify,
    z_row_count,
)
from dnaring.ring import CHAIN_THETAS, get_ring

from conftest import E


def test_small_generators():
    z = E("2w").index
    assert rm_matrix(0, 2, z).tolist() == [[E("1").index] * 4]
    assert rm_matrix(1, 1, z).tolist() == [[E("1").index] * 2, [0, z]]
    assert rm_matrix(1, 2, z).shape == (3, 4)


@pytest.mark.parametrize("m", range(7))
def test_row_counts(m):
    for r in range(m + 1):
        spec = RMSpec(E("2"), E("2w"), r, m)
        G = rm_generator(spec)
        assert G.k == spec.b == sum(comb(m, i) for i in range(r + 1))
        assert G.n == 2 ** m
        if m:
            assert z_row_count(G, spec.z) == spec.a == sum(comb(m - 1, i) for i in range(r))


def test_recursion_shape():
    z = E("2").index
    g = rm_matrix(1, 3, z)
    top, bottom = rm_matrix(1, 2, z), rm_matrix(0, 2, z)
    assert np.array_equal(g[:3], np.hstack([top, top]))
    assert np.array_equal(g[3:], np.hstack([np.zeros_like(bottom), bottom]))


@pytest.mark.parametrize("theta,z,r,m,expected", [
    ("2", "2w", 1, 2, (8, 512, 4)),
    ("1+w", "2", 1, 2, (8, 1024, 4)),
    ("3", "2+2w", 1, 1, (4, 32, 2)),
    ("2", "w", 1, 2, (8, 2 ** 11, 2)),
    ("3", "1+w", 2, 2, (8, 2 ** 14, 1)),
])
def test_formula_values(theta, z, r, m, expected):
    assert rm_dna_params(RMSpec(E(theta), E(z), r, m)) == expected


def test_errors():
    with pytest.raises(InvalidOrder):
        RMSpec(E("2"), E("2w"), 3, 2)
    with pytest.raises(InvalidOrder):
        RMSpec(E("2"), E("2w"), -1, 2)
    with pytest.raises(NotZeroDivisor):
        RMSpec(E("2"), E("1"), 0, 1)
    with pytest.raises(NotZeroDivisor):
        RMSpec(E("2"), E("0"), 0, 1)
    with pytest.raises(UnsupportedTheta):
        rm_dna_params(RMSpec(E("0"), E("2"), 0, 1))


def test_admissible_z_are_all_nonzero_zero_divisors():
    for theta in CHAIN_THETAS:
        assert set(admissible_z(theta)) == get_ring(theta).zero_divisors - {E("0")}


def test_constant_pair_code(gmap):
    image = rm_dna_code(RMSpec(E("2"), E("2w"), 0, 1), gmap)
    assert len(image) == 16 and image.length == 4
    assert dna.closure_checks(image)["reversible"]


def test_grid_size():
    grid = verification_grid()
    assert len(grid) == 40 * 9
    assert len({(s.theta, s.z) for s in grid}) == 40


@pytest.mark.parametrize("theta,z,r,m", [
    ("2", "w", 1, 2), ("3", "1+w", 1, 2), ("2+2w", "2+w", 0, 2), ("1+2w", "2", 1, 1), ("1+3w", "2+2w", 2, 2),
])
def test_verify_matches(gmap, theta, z, r, m):
    report = verify(RMSpec(E(theta), E(z), r, m), gmap)
    assert report.ok and report.rows == report.spec.b and report.z_rows == report.spec.a
    assert report.ring_hamming >= 2 ** (m - r)


def test_verify_reports_torsion_distance_finding(gmap):
    # 2-torsion z with r < m: enumeration gives half the closed-form d_H
    report = verify(RMSpec(E("2"), E("2w"), 1, 2), gmap)
    assert report.formula == (8, 512, 4)
    assert report.oracle == (8, 512, 2)
    assert not report.matches and report.reversible and report.rc_closed
    assert report.as_dict()["match"] is False

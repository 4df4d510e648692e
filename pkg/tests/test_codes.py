import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dnaring import dna
from dnaring.codes import (
    GeneratorMatrix,
    LinearCode,
    WordSet,
    all_vectors,
    check_complement_constraint,
    check_reverse_constraint,
    circulant,
    circulant_search,
    circulant_selfdual_generator,
    constant_word,
    dna_image,
    dual_brute_force,
    dual_generator,
    dual_profile,
    identity,
    inner_products,
    is_self_dual,
    is_self_orthogonal,
    min_distance_by_differences,
    min_distance_pairwise,
    min_gau_distance,
    random_standard_generator,
    rc_closed_ring_level,
    reverse_images,
    span,
    span_keys,
    standard_generator,
    to_indices,
    torsion_word_presence,
    trivial_self_dual_candidate,
    type_cardinality,
)
from dnaring.errors import NotAUnit, NotStandardForm, SingletonCode, TooLarge
from dnaring.ring import CHAIN_THETAS, ELEMENTS, format_element, get_ring, scale

from conftest import E, V

CLASS_A_THETAS = V("1+w", "3+w", "1+3w", "3+3w")


def as_set(rows):
    return {tuple(int(v) for v in r) for r in rows}


def idx(*texts):
    return [E(t).index for t in texts]


# --- spans ------------------------------------------------------------------

def test_span_examples():
    assert len(LinearCode.from_rows(E("2"), [V("1")])) == 16
    code = LinearCode.from_rows(E("2"), [V("2", "2")])
    assert as_set(code.words) == as_set([idx(x, x) for x in ("0", "2", "2w", "2+2w")])
    assert len(LinearCode.from_rows(E("2"), [V("1", "0"), V("0", "2")])) == 64


@pytest.mark.parametrize("theta", sorted(CHAIN_THETAS)[:4], ids=format_element)
def test_reduced_span_equals_full(theta, rng):
    for _ in range(10):
        k, n = rng.integers(1, 4), rng.integers(1, 5)
        G = GeneratorMatrix(theta, rng.integers(0, 16, size=(k, n)))
        assert np.array_equal(span_keys(G), span_keys(G, reduce=False))


def test_span_is_closed(rng):
    ring = get_ring(E("3"))
    G = GeneratorMatrix(ring.theta, rng.integers(0, 16, size=(2, 3)))
    code = LinearCode(G)
    w = code.words
    for c in range(16):
        assert code.contains(ring.mul_table[c][w]).all()
    sums = ring.add_table[w[:40, None, :], w[None, :40, :]].reshape(-1, 3)
    assert code.contains(sums).all()


def test_span_guard():
    G = GeneratorMatrix.from_rows(E("2"), [V("1", "0", "0"), V("0", "1", "0"), V("0", "0", "1")])
    with pytest.raises(TooLarge) as exc:
        LinearCode(G, guard=1000).keys
    assert exc.value.estimate == 4096


def test_long_codes_use_row_fallback():
    row = [E("1")] * 18
    code = LinearCode.from_rows(E("2"), [row])
    assert len(code) == 16 and code.words.shape == (16, 18)


@pytest.mark.parametrize("theta,profile", [
    ("1+w", (1, 1)), ("3+3w", (0, 2)), ("2", (1, 1, 1, 0)), ("2+2w", (0, 1, 0, 2)),
    ("3", (1, 0, 1, 1)), ("1+2w", (0, 1, 1, 1)),
])
def test_type_cardinality(theta, profile, rng):
    n = sum(profile) + 1
    for _ in range(5):
        G = random_standard_generator(E(theta), profile, n, rng)
        assert len(LinearCode(G)) == type_cardinality(E(theta), profile)


def test_standard_form_validation():
    with pytest.raises(NotStandardForm):
        GeneratorMatrix.from_rows(E("2"), [V("1", "1")], profile=(1, 0))
    with pytest.raises(NotStandardForm):
        GeneratorMatrix.from_rows(E("2"), [V("2", "1")], profile=(1, 0, 0, 0))
    G = GeneratorMatrix.from_rows(E("2"), [V("1", "3")], profile=(1, 0, 0, 0))
    assert G.blocks()[(0, 4)].tolist() == [idx("3")]


def test_json_roundtrip(rng):
    G = random_standard_generator(E("3"), (1, 1, 0, 1), 4, rng)
    back = GeneratorMatrix.from_json(G.to_json())
    assert back.theta == G.theta and back.profile == G.profile
    assert np.array_equal(back.entries, G.entries)


def test_csv_export():
    code = LinearCode.from_rows(E("2"), [V("2", "2")])
    assert code.to_csv().splitlines() == ["0,0", "2w,2w", "2,2", "2+2w,2+2w"]


# --- minimum Gau distance ----------------------------------------------------

def test_min_distance_examples(gmap):
    assert min_gau_distance(LinearCode.from_rows(E("2"), [V("1")]), gmap) == 1
    assert LinearCode.from_rows(E("2"), [V("2", "2")]).params(gmap) == (2, 4, 4)
    with pytest.raises(SingletonCode):
        min_gau_distance(LinearCode.from_rows(E("2"), [V("0", "0")]), gmap)


def test_difference_search_matches_pairwise(gmap, rng):
    dist = gmap.distance_table()
    for theta in CHAIN_THETAS:
        for _ in range(6):
            k, n = rng.integers(1, 3), rng.integers(1, 5)
            code = LinearCode(GeneratorMatrix(theta, rng.integers(0, 16, size=(k, n))))
            if len(code) < 2:
                continue
            assert min_distance_by_differences(code, dist) == min_distance_pairwise(code.words, dist)


def test_gau_distance_is_not_translation_invariant(gmap):
    # the minimum nonzero weight can differ from the minimum distance
    dist = gmap.distance_table()
    zero = E("0").index
    found = False
    for x, y in itertools.product(range(16), repeat=2):
        e = get_ring(E("2")).sub(ELEMENTS[y], ELEMENTS[x]).index
        if dist[x, y] != dist[zero, e]:
            found = True
            break
    assert found


# --- duals ------------------------------------------------------------------

def test_dual_of_zero_code_is_identity():
    G = standard_generator(E("1+w"), (0, 0), 3, {})
    H = dual_generator(G)
    assert np.array_equal(H.entries, identity(get_ring(E("1+w")), 3))


def test_dual_class_a_example(rng):
    G = random_standard_generator(E("1+w"), (1, 1), 3, rng)
    H = dual_generator(G)
    ring = G.ring
    for h in H.entries:
        assert (inner_products(ring, G.entries, h) == 0).all()
    assert len(LinearCode(G)) * len(LinearCode(H)) == 16 ** 3


def test_dual_brute_force_examples():
    zero = LinearCode.from_rows(E("2"), [V("0", "0")])
    assert len(dual_brute_force(zero)) == 256
    full = LinearCode.from_rows(E("2"), [V("1", "0"), V("0", "1")])
    assert as_set(dual_brute_force(full)) == {(0, 0)}
    code = LinearCode.from_rows(E("1+w"), [V("2")])
    assert as_set(dual_brute_force(code)) == {(i,) for i in idx("0", "2", "2w", "2+2w")}


@pytest.mark.parametrize("theta,profile,n", [
    ("1+w", (1, 1), 4), ("3+w", (1, 0), 3), ("2", (1, 1, 1, 1), 5), ("3", (1, 1, 1, 1), 5), ("1+2w", (0, 1, 1, 1), 4),
])
def test_closed_form_dual_equals_oracle(theta, profile, n, rng):
    for _ in range(4):
        G = random_standard_generator(E(theta), profile, n, rng)
        code = LinearCode(G)
        dual = LinearCode(dual_generator(G))
        oracle = dual_brute_force(code)
        assert np.array_equal(dual.words, oracle)
        assert len(dual) == type_cardinality(E(theta), dual_profile(E(theta), profile, n))


def test_double_dual(rng):
    G = random_standard_generator(E("2+2w"), (1, 0, 1, 0), 3, rng)
    code = LinearCode(G)
    dual = WordSet(G.theta, dual_brute_force(code))
    assert np.array_equal(dual_brute_force(dual), code.words)


def test_printed_c11_is_caught(rng):
    # the printed sign pattern leaves 2 s1 (A03 - A02 A23) in G H^T
    fails = 0
    for theta in ("2", "3", "2+2w", "1+2w"):
        ring = get_ring(E(theta))
        for _ in range(25):
            G = random_standard_generator(E(theta), (1, 1, 1, 1), 4, rng)
            good = dual_generator(G).entries
            printed = dual_generator(G, printed_c11=True).entries
            assert all((inner_products(ring, good, g) == 0).all() for g in G.entries)
            fails += not all((inner_products(ring, printed, g) == 0).all() for g in G.entries)
    assert fails > 0
    G = random_standard_generator(E("2"), (1, 1, 1, 1), 4, np.random.default_rng(3))
    assert np.array_equal(LinearCode(dual_generator(G)).words, dual_brute_force(LinearCode(G)))


def test_dual_profiles():
    assert dual_profile(E("1+w"), (1, 1), 4) == (2, 1)
    assert dual_profile(E("2"), (1, 2, 0, 1), 5) == (1, 1, 0, 2)


# --- self-duality -----------------------------------------------------------

def test_self_dual_examples():
    assert is_self_dual(LinearCode.from_rows(E("1+w"), [V("2")]))
    assert not is_self_dual(LinearCode.from_rows(E("2"), [V("1", "0"), V("0", "1")]))


@pytest.mark.parametrize("theta", CLASS_A_THETAS, ids=format_element)
def test_self_dual_class_a_profile_identity(theta, rng):
    seen = 0
    for profile in [(0, 2), (1, 0), (0, 1), (1, 1)]:
        for _ in range(40):
            G = random_standard_generator(theta, profile, 2, rng)
            if is_self_dual(LinearCode(G)):
                seen += 1
                assert 2 * profile[0] + profile[1] == 2
    assert seen


@pytest.mark.parametrize("theta", sorted(CHAIN_THETAS), ids=format_element)
def test_trivial_construction_at_length_one(theta):
    code, verdict = trivial_self_dual_candidate(theta, 1)
    assert len(code) == 4 and verdict
    assert is_self_orthogonal(code)


def test_trivial_construction_sizes():
    code, verdict = trivial_self_dual_candidate(E("2"), 4)
    assert len(code) == 16 and not verdict
    code, verdict = trivial_self_dual_candidate(E("2"), 3)
    assert len(code) == 4 and not verdict


def test_constant_words_self_orthogonal_when_n_xy_vanishes():
    for theta in CHAIN_THETAS:
        ring = get_ring(theta)
        for n in (1, 2, 3, 4):
            code, _ = trivial_self_dual_candidate(theta, n)
            vals = {v for v in code.words[:, 0].tolist()}
            expect = all(scale(n, ring.mul(ELEMENTS[x], ELEMENTS[y])) == E("0") for x in vals for y in vals)
            assert is_self_orthogonal(code) == expect


def test_torsion_presence():
    assert torsion_word_presence(LinearCode.from_rows(E("1+w"), [V("2")])) == E("2")
    assert torsion_word_presence(LinearCode.from_rows(E("2"), [V("0", "0")])) is None
    assert torsion_word_presence(LinearCode.from_rows(E("3"), [V("1+w", "1+w")])) == E("2+2w")


# --- constraints --------------------------------------------------------------

def test_reverse_images_are_three_times_reversal(gmap, rng):
    rows = rng.integers(0, 16, size=(20, 4)).astype(np.uint8)
    three = get_ring(E("2")).mul_table[E("3").index]
    assert np.array_equal(reverse_images(rows, gmap), three[rows[:, ::-1]])


def test_reverse_constraint_examples(gmap):
    lam = gmap.lam
    assert check_reverse_constraint(GeneratorMatrix.from_rows(E("2"), [[lam] * 3]), gmap)
    assert check_reverse_constraint(GeneratorMatrix.from_rows(E("2"), [V("1", "3")]), gmap)
    assert not check_reverse_constraint(GeneratorMatrix.from_rows(E("2"), [V("1", "0")]), gmap)


def test_complement_constraint_examples(gmap):
    lam = gmap.lam
    assert check_complement_constraint(GeneratorMatrix.from_rows(E("2"), [[lam, lam]]), lam)
    assert check_complement_constraint(GeneratorMatrix.from_rows(E("2"), [V("1", "1")]), lam)
    assert not check_complement_constraint(GeneratorMatrix.from_rows(E("2"), [V("1", "0")]), lam)


def test_rc_closure_needs_lambda_word(gmap):
    # a linear code contains 0, whose rc-image is the all-lambda word
    code = LinearCode.from_rows(E("2"), [V("1", "2")])
    assert not check_complement_constraint(code.generator, gmap.lam)
    assert not dna.closure_checks(dna_image(code, gmap))["rc_closed"]
    assert not rc_closed_ring_level(code, gmap)


# --- circulant family ---------------------------------------------------------

def test_circulant_layout():
    assert circulant(V("1", "2", "3")).tolist() == [idx("1", "2", "3"), idx("3", "1", "2"), idx("2", "3", "1")]


def test_circulant_example(gmap):
    res = circulant_selfdual_generator(E("2+2w"), E("1"), V("1"), gmap)
    assert res.self_dual is False and res.all_units
    with pytest.raises(NotAUnit):
        circulant_selfdual_generator(E("2+2w"), E("2"), V("1"), gmap)


def test_square_roots_of_one():
    for theta in CHAIN_THETAS:
        assert set(get_ring(theta).solutions_of_square(E("1"))) == set(V("1", "3", "1+2w", "3+2w"))
    assert get_ring(E("2+2w")).units >= set(V("1", "3"))
    assert {get_ring(E("2+2w")).mul(E("3"), u) for u in get_ring(E("2+2w")).units} == get_ring(E("2+2w")).units


def _self_dual_circulants(theta, n):
    ring = get_ring(theta)
    for u in sorted(ring.units):
        for a in itertools.product(ELEMENTS, repeat=n):
            rows = np.hstack([identity(ring, n, u), circulant(a)])
            # u I_n makes the code free of rank n, so self-orthogonal means self-dual
            if all((inner_products(ring, rows, g) == 0).all() for g in rows):
                yield u, a


# exhaustive over u in U and a in R^n, canonical map
CIRCULANT_COUNTS = {"2+2w": {1: 32, 2: 256}, "3": {1: 32, 2: 256}}


@pytest.mark.parametrize("theta", sorted(CHAIN_THETAS), ids=format_element)
def test_self_dual_circulants_exhaustive(theta, gmap):
    ring = get_ring(theta)
    for n in (1, 2):
        found = list(_self_dual_circulants(theta, n))
        assert len(found) == CIRCULANT_COUNTS.get(format_element(theta), {}).get(n, 0)
        for u, a in found:
            # exactly one a_i is a unit; at n >= 2 the others are not
            assert sum(x in ring.units for x in a) == 1
            G = GeneratorMatrix(theta, np.hstack([identity(ring, n, u), circulant(a)]))
            code = LinearCode(G)
            checks = dna.closure_checks(dna_image(code, gmap))
            assert not check_reverse_constraint(G, gmap, code) and not checks["reversible"]
            assert not checks["rc_closed"]


def test_circulant_search_over_unit_tuples(gmap):
    for theta in CHAIN_THETAS:
        results = circulant_search(theta, 1, gmap) + circulant_search(theta, 2, gmap)
        expected = 32 if format_element(theta) in CIRCULANT_COUNTS else 0
        assert len(results) == expected
        assert all(r.self_dual and r.all_units and not r.reverse_closed and not r.rc_closed for r in results)


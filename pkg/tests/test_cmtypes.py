import pytest

from psl2colmez.cmtypes.cmtypes import (
    CMType,
    CMTypeError,
    act,
    canonical_form,
    census,
    count_orbits_burnside,
    cycle_type,
    equivalent,
    exhaustive_orbit_counts,
    orbit,
    stabilizer,
)
from psl2colmez.groups.psl2 import make_group
from psl2colmez.references.references import REFERENCE_CENSUS


def test_bitstring_round_trip():
    phi = CMType.from_bitstring("10110000")
    assert phi.q == 7
    assert phi.signature == 3
    assert phi.bitstring() == "10110000"
    assert phi.support() == [0, 2, 3]
    assert phi.complement().bitstring() == "01001111"


@pytest.mark.parametrize("text", ["", "012", "101", "1x10"])
def test_bad_bitstrings(text):
    with pytest.raises(CMTypeError):
        CMType.from_bitstring(text)


def test_with_signature():
    assert CMType.with_signature(5, 2).bits == (1, 1, 0, 0, 0, 0)
    with pytest.raises(CMTypeError):
        CMType.with_signature(5, 7)


def test_length_must_match_q(group5):
    with pytest.raises(CMTypeError):
        orbit(group5, CMType.with_signature(7, 2))


def test_from_cosets(group7):
    F = group7.field
    phi = CMType.from_cosets(group7, [group7.identity, group7.w, group7.n_minus(F(1))])
    points = [group7.point(), group7.point(0), group7.point(1)]
    assert phi == CMType.from_points(group7, points)


def test_action_transports_bits(group7, rng):
    phi = CMType.from_bitstring("11010000")
    for _ in range(20):
        g = group7.random_element(rng)
        moved = act(group7, g, phi)
        perm = group7.permutation(g)
        assert all(moved.bits[perm[x]] == phi.bits[x] for x in range(8))
        assert moved.signature == phi.signature


def test_orbit_stabilizer(group7):
    for bits in ("11000000", "11100000", "11010000", "11110000"):
        phi = CMType.from_bitstring(bits)
        assert len(orbit(group7, phi)) * len(stabilizer(group7, phi)) == group7.order


def test_transitive_on_pairs(group7):
    a, b = CMType.from_bitstring("11000000"), CMType.from_bitstring("00000011")
    assert equivalent(group7, a, b)
    assert canonical_form(group7, a) == canonical_form(group7, b)


def test_equivalence_needs_equal_signature(group7):
    a, b = CMType.from_bitstring("11000000"), CMType.from_bitstring("11100000")
    assert not equivalent(group7, a, b)
    assert not equivalent(group7, a, b, include_rho=True)


def test_complement_equivalence_at_middle_signature(group7):
    phi = CMType.from_bitstring("11110000")
    assert equivalent(group7, phi, phi.complement(), include_rho=True)


def test_three_canonical_forms_at_signature_four(group7):
    forms = {
        canonical_form(group7, CMType(tuple((mask >> i) & 1 for i in range(8))))
        for mask in range(256)
        if bin(mask).count("1") == 4
    }
    assert len(forms) == 3


@pytest.mark.parametrize("q, expected", [(5, 6), (13, 6), (17, 6), (7, 3), (11, 3)])
def test_stabilizer_of_zero_infinity_one(q, expected):
    group = make_group(q)
    F = group.field
    phi = CMType.from_points(group, [group.point(F(0)), group.point(), group.point(F(1))])
    assert len(stabilizer(group, phi)) == expected


def test_cycle_type():
    assert cycle_type((1, 2, 0, 4, 3, 5)) == [1, 2, 3]


@pytest.mark.parametrize("q", [5, 7, 9, 11])
def test_burnside_matches_exhaustive(q):
    group = make_group(q)
    brute = exhaustive_orbit_counts(group)
    assert brute == [count_orbits_burnside(group, e) for e in range(q + 2)]


@pytest.mark.parametrize("q", [5, 7, 9, 11])
def test_burnside_with_complementation_matches_exhaustive(q):
    group = make_group(q)
    middle = (q + 1) // 2
    brute = exhaustive_orbit_counts(group, include_rho=True)
    assert brute[middle] == count_orbits_burnside(group, middle, include_rho=True)


@pytest.mark.parametrize("q", sorted(REFERENCE_CENSUS))
def test_published_census(q):
    row = census(make_group(q), max_epsilon=7, exhaustive=False)
    assert row.row(1, 7) == REFERENCE_CENSUS[q]


@pytest.mark.parametrize("q, epsilon, expected", [(7, 4, 3), (13, 7, 10), (25, 5, 16), (31, 7, 233)])
def test_census_anchors(q, epsilon, expected):
    assert count_orbits_burnside(make_group(q), epsilon) == expected


def test_census_is_symmetric_and_cross_checked(small_q):
    row = census(make_group(small_q))
    n = small_q + 1
    assert row.exhaustive_checked
    assert row.counts[0] == row.counts[n] == 1
    assert all(row.counts[e] == row.counts[n - e] for e in range(n + 1))


def test_census_signature_three():
    for q in (7, 11, 19):
        assert count_orbits_burnside(make_group(q), 3) == 1
    for q in (9, 13, 17):
        assert count_orbits_burnside(make_group(q), 3) == 2


def test_middle_count_with_complementation():
    row = census(make_group(7))
    assert row.counts[4] == 3
    assert row.middle_with_rho <= row.counts[4]

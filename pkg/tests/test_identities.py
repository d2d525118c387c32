from collections import Counter

import pytest

from psl2colmez.colmez.identities import (
    IdentityFailure,
    class_multiset_of_borel,
    class_multiset_of_product,
    expected_borel_multiset,
    expected_product_multiset,
    lemma_identities,
    multiset_checks,
)
from psl2colmez.groups.psl2 import (
    IDENTITY,
    TRACE_ZERO,
    UNIPOTENT_NONSQUARE,
    UNIPOTENT_SQUARE,
    ClassKind,
    make_group,
)


def test_borel_multiset_q5(group5):
    found = class_multiset_of_borel(group5)
    assert found[IDENTITY] == 1
    assert found[UNIPOTENT_SQUARE] == 2
    assert found[UNIPOTENT_NONSQUARE] == 2
    assert found[TRACE_ZERO] == 5
    assert sum(found.values()) == 10
    assert found == expected_borel_multiset(group5)


def test_product_multiset_q7(group7):
    F = group7.field
    found = class_multiset_of_product(group7, F(1), F(2))
    assert sum(found.values()) == 21
    assert IDENTITY not in found
    assert found[UNIPOTENT_SQUARE] == found[UNIPOTENT_NONSQUARE] == found[TRACE_ZERO] == 3
    assert found == expected_product_multiset(group7)


def test_product_multiset_does_not_depend_on_the_pair():
    group = make_group(9)
    F = group.field
    first = class_multiset_of_product(group, F.element(1), F.element(0))
    second = class_multiset_of_product(group, F.element(5), F.element(7))
    assert first == second


def test_product_needs_distinct_points(group7):
    with pytest.raises(ValueError):
        class_multiset_of_product(group7, 3, 3)


def test_fiber_grouping(group7):
    F = group7.field
    by_fiber = class_multiset_of_product(group7, F(0), F(1), by="fiber")
    assert sum(by_fiber.values()) == 21
    assert ("Identity", 0) not in by_fiber
    assert by_fiber[("TraceZero", 0)] == 3
    with pytest.raises(ValueError):
        class_multiset_of_product(group7, F(0), F(1), by="size")


@pytest.mark.parametrize("q", [3, 5, 7, 9, 11, 13])
def test_multisets(q):
    assert multiset_checks(make_group(q)) == {"double_coset_multiset": True, "borel_multiset": True}


@pytest.mark.parametrize("q", [5, 7, 9, 11, 13, 17])
def test_lemma_identities(q):
    results = lemma_identities(make_group(q))
    assert all(results.values())
    split_part = "split_sum_with_trace_zero" if q % 4 == 1 else "split_sum"
    assert split_part in results
    assert "borel_is_chi0_plus_chi1" in results
    assert "rho_twist_of_borel" in results


def test_lemma_identities_without_table():
    results = lemma_identities(make_group(3))
    assert "borel_is_chi0_plus_chi1" not in results
    assert results["unipotent_sum"]


def test_wrong_expectation_is_reported(group7):
    F = group7.field
    bad = Counter(expected_product_multiset(group7))
    bad[TRACE_ZERO] += 1
    found = class_multiset_of_product(group7, F(1), F(3))
    assert found != bad
    error = IdentityFailure(7, "double_coset_multiset", [TRACE_ZERO])
    assert "q=7" in str(error)


def test_split_classes_in_borel(group7):
    found = class_multiset_of_borel(group7)
    for label, count in found.items():
        if label.kind == ClassKind.SPLIT:
            assert count == 2 * 7

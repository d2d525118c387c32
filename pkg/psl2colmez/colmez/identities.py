"""
Exact checks of the class counts and class-function identities that feed
the closed form of A_Phi^0.
"""

import logging
from collections import Counter
from fractions import Fraction

from ..characters.chartable import (
    STEINBERG,
    TRIVIAL,
    CharacterTable,
    ClassFunction,
    fixed_point_character,
    induce_from_subgroup,
)
from ..groups.psl2 import (
    IDENTITY,
    PSL2,
    TRACE_ZERO,
    UNIPOTENT_NONSQUARE,
    UNIPOTENT_SQUARE,
    ClassKind,
    ConjClassLabel,
)
from .group_ring import ExtClassFunction, ExtendedGroup, GalElement


######### -------------------- Custom Errors ######### --------------------
class IdentityFailure(Exception):
    def __init__(self, q: int, part: str, labels) -> None:
        self.q = q
        self.part = part
        self.labels = labels
        super().__init__(f"q={q}: identity {part} fails at {', '.join(map(str, labels))}")


######### -------------------- Class multisets ######### --------------------
def _classify_all(group: PSL2, elements, by: str) -> Counter:
    if by == "label":
        return Counter(group.classify(g) for g in elements)
    if by == "fiber":
        return Counter(group.trace_fiber(g) for g in elements)
    raise ValueError(f"Unknown grouping {by!r}. Choose between: label, fiber")


def class_multiset_of_product(group: PSL2, i, j, by: str = "label") -> Counter:
    """
    Classes of the elements of n_-(i) B n_-(-j), i != j.
    """
    F = group.field
    i, j = F(i), F(j)
    if i == j:
        raise ValueError("The double coset form needs i != j")
    left, right = group.n_minus(i), group.n_minus(-j)
    elements = (group.multiply(group.multiply(left, b), right) for b in group.borel_elements())
    return _classify_all(group, elements, by)


def class_multiset_of_borel(group: PSL2, by: str = "label") -> Counter:
    return _classify_all(group, group.borel_elements(), by)


def expected_product_multiset(group: PSL2) -> Counter:
    """
    (q-1)/2 in each unipotent class and in the trace zero class, q-1 in every
    other non-identity class.
    """
    half = (group.q - 1) // 2
    expected = Counter()
    for cls in group.classes:
        if cls.label == IDENTITY:
            continue
        if cls.label in (UNIPOTENT_SQUARE, UNIPOTENT_NONSQUARE, TRACE_ZERO):
            expected[cls.label] = half
        else:
            expected[cls.label] = group.q - 1
    return expected


def expected_borel_multiset(group: PSL2) -> Counter:
    """
    The identity once, (q-1)/2 in each unipotent class, 2q in every split
    class, and q in the trace zero class when -1 is a square.
    """
    q = group.q
    expected = Counter({IDENTITY: 1, UNIPOTENT_SQUARE: (q - 1) // 2, UNIPOTENT_NONSQUARE: (q - 1) // 2})
    for cls in group.classes:
        if cls.label.kind == ClassKind.SPLIT:
            expected[cls.label] = 2 * q
    if q % 4 == 1:
        expected[TRACE_ZERO] = q
    return expected


######### -------------------- Identities ######### --------------------
def _trace_class(group: PSL2, x: int) -> ConjClassLabel:
    """
    Class of diag(x, 1/x), i.e. the elements of trace +-(x + 1/x).
    """
    return group.classify(group.diagonal(group.field.element(x)))


def _indicators(group: PSL2, labels) -> ClassFunction:
    total = Counter(labels)
    return ClassFunction(group, {label: Fraction(n) for label, n in total.items()})


def _require(q: int, part: str, lhs: ClassFunction, rhs: ClassFunction, results: dict) -> None:
    if lhs != rhs:
        raise IdentityFailure(q, part, lhs.differences(rhs))
    results[part] = True


def lemma_identities(group: PSL2, table: CharacterTable | None = None) -> dict[str, bool]:
    """
    Checks, as exact equalities of class functions:

    - the sum of split class indicators over A (plus twice the trace zero
      class when q = 1 mod 4) equals Ind_B(1) - (2/(q-1)) Ind_U(1)
    - U_sq + U_nsq + (q+1) Id = (2/(q-1)) Ind_U(1)
    - on G: T = 1/2 Ind_{PSL2 x 0}(1), (1 - rho) T = chi_k and
      (1 - rho) Ind_B(1) = Ind_{B x Z/2}(chi_{E/F})
    - Ind_B(1) = chi0 + chi1, when q >= 5

    Returns the parts that were checked; raises IdentityFailure on the first
    part that does not hold.
    """
    q = group.q
    F = group.field
    results: dict[str, bool] = {}

    ind_b = induce_from_subgroup(group, group.borel_elements())
    ind_u = induce_from_subgroup(group, group.unipotent_elements())
    if ind_b != fixed_point_character(group):
        raise IdentityFailure(q, "borel_permutation_character", ind_b.differences(fixed_point_character(group)))
    scaled_u = ind_u * Fraction(2, q - 1)

    # split classes over A \ {1}, and A \ {1, sqrt(-1)} when q = 1 mod 4
    sqrt_minus_one = F.sqrt_minus_one
    excluded = {1}
    if sqrt_minus_one is not None:
        excluded |= {sqrt_minus_one.value, F.neg(sqrt_minus_one.value)}
    split_sum = _indicators(group, [_trace_class(group, a) for a in group.rep_set.values - excluded])
    if q % 4 == 1:
        split_sum = split_sum + ClassFunction.indicator(group, TRACE_ZERO) * 2
        part = "split_sum_with_trace_zero"
    else:
        part = "split_sum"
    _require(q, part, split_sum, ind_b - scaled_u, results)

    unipotent = _indicators(group, [UNIPOTENT_SQUARE, UNIPOTENT_NONSQUARE]) + ClassFunction.indicator(
        group, IDENTITY
    ) * (q + 1)
    _require(q, "unipotent_sum", unipotent, scaled_u, results)

    ext = ExtendedGroup(group)
    trace = ExtClassFunction.trace_to_k(ext)
    ind_even = induce_from_subgroup(ext, [GalElement(g, 0) for g in group.elements], check_closure=False)
    _require(q, "trace_to_k", trace, ExtClassFunction(ext, ind_even.values) * Fraction(1, 2), results)

    _require(q, "rho_twist_of_trace", trace.rho_twist(), ExtClassFunction.chi_k(ext), results)

    ind_borel_sign = induce_from_subgroup(
        ext,
        [GalElement(b, r) for b in group.borel_elements() for r in (0, 1)],
        psi=lambda x: Fraction((-1) ** x.r),
    )
    _require(
        q,
        "rho_twist_of_borel",
        ExtClassFunction.lift(ext, ind_b).rho_twist(),
        ExtClassFunction(ext, ind_borel_sign.values),
        results,
    )

    if q >= 5:
        table = table or CharacterTable(group)
        _require(
            q,
            "borel_is_chi0_plus_chi1",
            ind_b,
            table.character(TRIVIAL) + table.character(STEINBERG),
            results,
        )

    logging.info(f"q={q}: {len(results)} class-function identities hold")
    return results


def multiset_checks(group: PSL2, pairs=None) -> dict[str, bool]:
    """
    The double coset multiset is the same for every ordered pair i != j (or
    the given pairs) and matches expected_product_multiset; the Borel
    multiset matches expected_borel_multiset.
    """
    q = group.q
    elements = group.field.elements()
    if pairs is None:
        pairs = [(i, j) for i in elements for j in elements if i != j]

    expected = expected_product_multiset(group)
    for i, j in pairs:
        found = class_multiset_of_product(group, i, j)
        if found != expected:
            bad = [label for label in set(found) | set(expected) if found[label] != expected[label]]
            raise IdentityFailure(q, f"double_coset_multiset(i={i}, j={j})", bad)

    borel = class_multiset_of_borel(group)
    expected_borel = expected_borel_multiset(group)
    if borel != expected_borel:
        bad = [label for label in set(borel) | set(expected_borel) if borel[label] != expected_borel[label]]
        raise IdentityFailure(q, "borel_multiset", bad)

    logging.info(f"q={q}: class multisets of {len(pairs)} double cosets and of B verified")
    return {"double_coset_multiset": True, "borel_multiset": True}

from fractions import Fraction

import pytest

from psl2colmez.characters.chartable import (
    OSCILLATOR_MINUS,
    OSCILLATOR_PLUS,
    STEINBERG,
    TRIVIAL,
    CharacterTable,
    ClassFunction,
    NotSubgroupError,
    UnsupportedQError,
    build_table,
    fixed_point_character,
    induce_from_subgroup,
    inner_product,
)
from psl2colmez.groups.psl2 import IDENTITY, make_group


@pytest.mark.parametrize("q", [5, 7, 9, 11, 13])
def test_table_is_square_and_orthonormal(q):
    table = build_table(q)
    assert len(table.rows) == len(table.classes) == (q + 5) // 2
    assert sum(d * d for d in table.degrees) == table.group.order
    assert table.orthonormality_defects() == []
    assert table.column_defects() == []


def test_a5_degrees():
    assert sorted(build_table(5).degrees) == [1, 3, 3, 4, 5]


def test_psl2_7_degrees():
    assert sorted(build_table(7).degrees) == [1, 3, 3, 6, 7, 8]


@pytest.mark.parametrize("q", [5, 7, 9])
def test_degree_is_value_at_identity(q):
    table = build_table(q)
    for row in table.rows:
        assert row.character[IDENTITY] == row.degree


@pytest.mark.parametrize("q", [5, 7, 11])
def test_permutation_character_is_trivial_plus_steinberg(q):
    table = build_table(q)
    ind_b = fixed_point_character(table.group)
    assert ind_b == table.character(TRIVIAL) + table.character(STEINBERG)
    coefficients = dict(table.decompose(ind_b))
    assert coefficients[TRIVIAL] == 1
    assert coefficients[STEINBERG] == 1
    assert all(a == 0 for label, a in coefficients.items() if label not in (TRIVIAL, STEINBERG))


def test_decompose_then_reconstruct(group7):
    table = build_table(7)
    f = ClassFunction.from_rule(group7, lambda c: Fraction(c.size % 5))
    assert table.reconstruct(table.decompose(f)) == f


def test_oscillator_halves_are_complex_conjugate_for_q_3_mod_4():
    table = build_table(7)
    plus, minus = table.character(OSCILLATOR_PLUS), table.character(OSCILLATOR_MINUS)
    assert plus != minus
    assert inner_product(plus, minus) == 0


@pytest.mark.parametrize("q", [5, 7, 9, 11, 13])
def test_flipped_table_has_the_same_characters(q):
    flipped = CharacterTable(make_group(q), flip_characters=True)
    assert flipped.orthonormality_defects() == []
    rows = [row.character for row in build_table(q).rows]
    unmatched = list(range(len(rows)))
    for row in flipped.rows:
        match = next(i for i in unmatched if rows[i] == row.character)
        unmatched.remove(match)
    assert unmatched == []


def test_small_q_is_unsupported():
    with pytest.raises(UnsupportedQError):
        build_table(3)


def test_induction_checks_closure(group7):
    with pytest.raises(NotSubgroupError):
        induce_from_subgroup(group7, [group7.identity, group7.w, group7.n_plus(1)])


def test_induced_borel_is_fixed_point_count(group7):
    assert induce_from_subgroup(group7, group7.borel_elements()) == fixed_point_character(group7)


def test_dataframe_and_metadata():
    table = build_table(9)
    df = table.as_dataframe()
    assert list(df.columns[:2]) == ["character", "degree"]
    assert df.shape == (7, 2 + 7)
    numeric = table.as_dataframe(numeric=True)
    assert numeric.iloc[0, 2] == 1
    metadata = table.metadata()
    assert metadata["q"] == 9
    assert metadata["modulus"] == "x^2+1"
    assert metadata["gauss_sum"] == "sqrt(9)"
    assert sum(metadata["class_sizes"].values()) == 360


@pytest.mark.parametrize("q", [5, 9, 13])
def test_quadratic_borel_character_induces_the_oscillator_pair(q):
    table = build_table(q)
    group = table.group
    F = group.field

    def alpha0(b):
        return Fraction(1) if F.is_square(b.a) else Fraction(-1)

    induced = induce_from_subgroup(group, group.borel_elements(), alpha0)
    assert induced == table.character(OSCILLATOR_PLUS) + table.character(OSCILLATOR_MINUS)


def test_induced_unipotent_character_is_rebuilt_from_the_table(group7):
    table = build_table(7)
    induced = induce_from_subgroup(group7, group7.unipotent_elements())
    assert induced[IDENTITY] == 24
    coefficients = table.decompose(induced)
    assert table.reconstruct(coefficients) == induced
    assert sum(table.row(label).degree * a for label, a in coefficients) == 24

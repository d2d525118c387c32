import pytest

from psl2colmez.cyclotomic.cyclotomic import gauss_sum
from psl2colmez.fields.finite_field import (
    BoundExceededError,
    EvenCharacteristicError,
    FieldConfig,
    FieldMismatchError,
    NotPrimeError,
    RepSetA,
    RepresentativeSetError,
    ZeroInputError,
    field_of_order,
    first_irreducible_modulus,
    split_prime_power,
)


@pytest.mark.parametrize("q, expected", [(7, (0, 1)), (9, (1, 0, 1)), (25, (2, 0, 1))])
def test_modulus_is_first_irreducible(q, expected):
    assert field_of_order(q).modulus == expected


def test_first_irreducible_cubic_over_f3():
    # x^3 + 2x + 1 is the first monic irreducible cubic in lexicographic order
    assert first_irreducible_modulus(3, 3) == (1, 2, 0, 1)


@pytest.mark.parametrize(
    "q, error",
    [(8, EvenCharacteristicError), (15, NotPrimeError), (1, NotPrimeError), (2187, BoundExceededError)],
)
def test_bad_orders(q, error):
    with pytest.raises(error):
        field_of_order(q)


def test_split_prime_power():
    assert split_prime_power(27) == (3, 3)
    assert split_prime_power(13) == (13, 1)


def test_constructor_rejects_composite_characteristic():
    with pytest.raises(NotPrimeError):
        FieldConfig(9)


@pytest.mark.parametrize("q", [5, 9, 25, 27])
def test_multiplicative_inverses(q):
    F = field_of_order(q)
    for a in range(1, q):
        assert F.mul(a, F.inv(a)) == 1


@pytest.mark.parametrize("q", [9, 25])
def test_distributivity(q, rng):
    F = field_of_order(q)
    for a, b, c in rng.integers(0, q, size=(200, 3)).tolist():
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))


def test_zero_has_no_inverse():
    F = field_of_order(7)
    with pytest.raises(ZeroDivisionError):
        F.inv(0)
    with pytest.raises(ZeroInputError):
        F.is_square_value(0)
    with pytest.raises(ZeroInputError):
        F.log_value(0)


@pytest.mark.parametrize("q", [7, 9, 13, 25])
def test_half_the_units_are_squares(q):
    F = field_of_order(q)
    squares = F.squares()
    assert len(squares) == (q - 1) // 2
    for x in squares:
        root = F.sqrt(x)
        assert root * root == x


@pytest.mark.parametrize("q", [7, 9, 25])
def test_generator_has_full_order(q):
    F = field_of_order(q)
    g = F.generator()
    powers = {(g**e).value for e in range(q - 1)}
    assert powers == set(range(1, q))


def test_element_arithmetic():
    F = field_of_order(7)
    assert F(3) * F(5) == 1
    assert F(3) + 4 == 0
    assert F(2) / F(4) == F(4)
    assert -F(1) == 6
    assert F(-1) == F(6)


def test_element_checks_range():
    F = field_of_order(9)
    assert F.element(8).value == 8
    with pytest.raises(ValueError):
        F.element(9)


def test_elements_of_different_fields_do_not_mix():
    with pytest.raises(FieldMismatchError):
        field_of_order(5)(1) + field_of_order(7)(1)


def test_sqrt_minus_one():
    assert field_of_order(7).sqrt_minus_one is None
    for q in (5, 9, 13):
        F = field_of_order(q)
        i = F.sqrt_minus_one
        assert i * i == F(-1)


def test_delta_is_the_first_nonsquare():
    assert field_of_order(7).fixed_nonsquare() == 3
    assert field_of_order(13).fixed_nonsquare() == 2


@pytest.mark.parametrize("q", [5, 7, 9, 11, 13, 25, 27])
def test_representative_set(q):
    F = field_of_order(q)
    A = F.representative_set_A()
    assert len(A) == (q - 1) // 2
    assert 1 in A
    covered = {x.value for x in A} | {(-x).value for x in A}
    assert covered == set(range(1, q))
    if q % 4 == 3:
        assert all(x.is_square() for x in A)


def test_representative_set_validation():
    F = field_of_order(7)
    with pytest.raises(RepresentativeSetError):
        RepSetA.from_values(F, [1, 6, 2])
    with pytest.raises(RepresentativeSetError):
        RepSetA.from_values(F, [2, 3, 4])


@pytest.mark.parametrize("q", [5, 7, 9, 11])
def test_norm_one_torus(q):
    F = field_of_order(q)
    torus = F.norm_one_elements
    assert len(torus) == q + 1
    assert all(z.norm() == 1 for z in torus)
    logs = {F.torus_log(z) for z in torus}
    assert logs == set(range(q + 1))


@pytest.mark.parametrize("q", [5, 7, 9, 11, 13, 25])
def test_norm_one_subgroup_modulo_sign(q):
    F = field_of_order(q)
    reps = F.norm_one_subgroup()
    assert len(reps) == (q + 1) // 2
    keys = {z.sort_key() for z in reps}
    assert len(keys) == len(reps)
    for z in reps:
        assert z.norm() == 1
        assert z.canonical_pm() == z
        for w in reps:
            assert (z * w).canonical_pm().sort_key() in keys


@pytest.mark.parametrize("q", [5, 9, 13, 25])
def test_norm_is_multiplicative(q, rng):
    F = field_of_order(q)
    for _ in range(50):
        x1, y1, x2, y2 = (int(v) for v in rng.integers(0, q, size=4))
        z = F.quad(F.element(x1), F.element(y1))
        w = F.quad(F.element(x2), F.element(y2))
        assert (z * w).norm() == z.norm() * w.norm()


@pytest.mark.parametrize("q", [5, 7, 9, 11, 13, 27])
def test_trace_and_gauss_sum(q):
    F = field_of_order(q)
    sign = 1 if q % 4 == 1 else -1
    assert gauss_sum(F) ** 2 == sign * q
    assert all(0 <= F.trace_value(x) < F.p for x in range(q))

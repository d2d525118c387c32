from fractions import Fraction

import numpy as np
import pytest

from psl2colmez.cmtypes.cmtypes import CMType, CMTypeError, act
from psl2colmez.colmez.a_phi import (
    VerificationFailure,
    a_phi,
    a_phi0,
    a_phi0_dataframe,
    decompose_a_phi0,
    expected_decomposition,
    induced_form,
    make_extended,
    odd_counts,
    signature_constants,
    star_term_check,
    theorem61_rhs,
    verify_theorem61,
)
from psl2colmez.colmez.group_ring import (
    ExtClassFunction,
    ExtClassLabel,
    ExtendedGroup,
    GalElement,
    GroupRingElement,
    extend_cm_type,
)
from psl2colmez.fields.finite_field import RepSetA, field_of_order
from psl2colmez.groups.psl2 import IDENTITY, PSL2, make_group

PHI7 = CMType.from_bitstring("10110000")


def test_signature_constants():
    c, c_prime = signature_constants(7, 3)
    assert c == Fraction(15, 56)
    assert c_prime == Fraction(15, 448)
    assert signature_constants(7, 0) == (0, 0)
    with pytest.raises(ValueError):
        signature_constants(7, 9)


def test_extended_group(ext5):
    assert ext5.order == 120
    assert len(ext5.classes) == 2 * len(ext5.base.classes)
    x = GalElement(ext5.base.w, 1)
    assert ext5.multiply(x, x) == ext5.identity
    assert ext5.multiply(ext5.rho, ext5.rho) == ext5.identity


def test_group_ring_arithmetic(ext5):
    base = ext5.base
    x, y = GalElement(base.w, 1), GalElement(base.n_plus(1), 0)
    a = GroupRingElement.delta(ext5, x) + GroupRingElement.delta(ext5, y) * 2
    assert len(a) == 2
    assert a[y] == 2
    product = a * GroupRingElement.delta(ext5, ext5.rho)
    assert product[GalElement(base.w, 0)] == 1
    assert a.reflex()[GalElement(base.n_plus(-1), 0)] == 2
    assert (a + a * -1) == GroupRingElement(ext5)


def test_extended_cm_type_covers_every_coset(ext7):
    extended = extend_cm_type(ext7, PHI7)
    assert len(extended) == ext7.base.order
    ones = sum(1 for x in extended.coefficients if x.r == 1)
    assert ones == PHI7.signature * len(ext7.base.borel_elements())


def test_a_phi_total_mass(ext5):
    phi = CMType.from_bitstring("110000")
    element = a_phi(ext5, phi)
    # (1/|G|) |Phi^c|^2 = (|G|/2)^2 / |G|
    assert sum(element.coefficients.values()) == Fraction(ext5.order, 4)


@pytest.mark.parametrize("bits", ["110000", "101100", "111000", "011111"])
def test_cosets_equal_convolution_q5(ext5, bits):
    phi = CMType.from_bitstring(bits)
    assert a_phi0(ext5, phi, "cosets") == a_phi0(ext5, phi, "convolution")


def test_cosets_equal_convolution_q7(ext7):
    assert a_phi0(ext7, PHI7, "cosets") == a_phi0(ext7, PHI7, "convolution")


def test_unknown_method(ext5):
    with pytest.raises(ValueError):
        a_phi0(ext5, CMType.from_bitstring("110000"), "fourier")


def test_length_mismatch(ext5):
    with pytest.raises(CMTypeError):
        a_phi0(ext5, PHI7)


def test_value_at_identity_is_one_half(ext7):
    values = a_phi0(ext7, PHI7)
    assert values[ExtClassLabel(IDENTITY, 0)] == Fraction(1, 2)
    assert values[ExtClassLabel(IDENTITY, 1)] == 0


@pytest.mark.parametrize("q", [5, 7, 9])
def test_a_phi0_matches_closed_form(q, rng):
    ext = make_extended(q)
    for _ in range(10):
        phi = CMType(tuple(int(b) for b in rng.integers(0, 2, size=q + 1)))
        assert a_phi0(ext, phi) == theorem61_rhs(ext, phi.signature)


def test_a_phi0_is_invariant_under_the_action(ext7, rng):
    base = ext7.base
    for _ in range(5):
        moved = act(base, base.random_element(rng), PHI7)
        assert a_phi0(ext7, moved) == a_phi0(ext7, PHI7)


def test_complement_has_the_same_a_phi0(ext7):
    assert a_phi0(ext7, PHI7.complement()) == a_phi0(ext7, PHI7)


@pytest.mark.parametrize("q", [5, 7, 9, 11])
def test_induced_form_equals_closed_form(q):
    ext = make_extended(q)
    for epsilon in range(q + 2):
        assert induced_form(ext, epsilon) == theorem61_rhs(ext, epsilon)


def test_star_term(ext7):
    for bits in ("10110000", "11111110", "10000000"):
        assert star_term_check(ext7, CMType.from_bitstring(bits))


@pytest.mark.parametrize("q, bits", [(5, "110100"), (7, "10110000"), (9, "1101000000")])
def test_decomposition(q, bits):
    ext = make_extended(q)
    phi = CMType.from_bitstring(bits)
    coefficients = {name: a for name, a in decompose_a_phi0(ext, phi)}
    expected = expected_decomposition(q, phi.signature)
    for name, a in coefficients.items():
        assert a == expected.get(name, 0), name


def test_decomposition_anchor_q7_signature_3(ext7):
    coefficients = dict(decompose_a_phi0(ext7, PHI7))
    assert coefficients["chi0(x)triv"] == Fraction(1, 4)
    assert coefficients["chi1(x)sgn"] == Fraction(15, 448)
    assert coefficients["chi0(x)sgn"] == Fraction(1, 4) - Fraction(15, 56) + Fraction(15, 448)


def test_decomposition_needs_the_table():
    ext = make_extended(3)
    with pytest.raises(ValueError):
        decompose_a_phi0(ext, CMType.from_bitstring("1100"))


@pytest.mark.parametrize("q, count", [(3, 16), (5, 64), (7, 256)])
def test_exhaustive_verification(q, count):
    report = verify_theorem61(make_group(q), exhaustive=True)
    assert report.ok
    assert report.checked == count
    assert report.summary() == f"{count}/{count} CM types pass"
    assert sum(report.signatures.values()) == count


def test_sampled_verification_is_seeded():
    first = verify_theorem61(make_group(13), exhaustive=False, samples=64, seed=3)
    second = verify_theorem61(make_group(13), exhaustive=False, samples=64, seed=3)
    assert first.mode == "sampled(seed=3)"
    assert first.signatures == second.signatures


def test_odd_counts_batch(group7):
    bits = np.array([[1, 0, 1, 1, 0, 0, 0, 0], [0] * 8])
    counts = odd_counts(group7, bits)
    assert counts.shape == (2, group7.order)
    assert counts[1].sum() == 0
    assert counts[0][group7.index_of(group7.identity)] == 0


def test_trace_and_twist(ext5):
    trace = ExtClassFunction.trace_to_k(ext5)
    assert trace.rho_twist() == ExtClassFunction.chi_k(ext5)
    assert trace.restrict(1) == {c.label: 0 for c in ext5.base.classes}


def test_verification_failure_message():
    error = VerificationFailure(7, "10110000", "U", "differs")
    assert "q=7" in str(error) and "10110000" in str(error)


def test_dataframe(ext7):
    df = a_phi0_dataframe(ext7, PHI7)
    assert list(df.columns) == ["class", "rho", "value", "class_size"]
    assert len(df) == len(ext7.classes)
    assert df.iloc[0]["value"] == "1/2"


@pytest.mark.parametrize("q", [7, 9, 13])
def test_a_phi0_does_not_depend_on_representative_set(q, rng):
    F = field_of_order(q)
    default = F.representative_set_A()
    flipped = RepSetA.from_values(F, [1] + [F.neg(v) for v in default.values if v != 1])
    ext = ExtendedGroup(PSL2(F))
    other = ExtendedGroup(PSL2(F, flipped))
    for _ in range(4):
        phi = CMType(tuple(int(b) for b in rng.integers(0, 2, size=q + 1)))
        expected = a_phi0(ext, phi)
        assert a_phi0(other, phi) == expected
        assert a_phi0(other, phi) == theorem61_rhs(other, phi.signature)
    if q == 7:
        assert a_phi0(other, PHI7, method="convolution") == a_phi0(ext, PHI7)

"""Finite polylogarithms and field arithmetic against naive oracles."""

import pytest

from polylogp.finite_poly import (
    FiniteField,
    check_inversion_identity,
    check_inversion_identity_frobenius,
    is_irreducible,
    li_finite,
    li_finite_coeff_vector,
    lowest_irreducible,
    sigma,
)

PRIMES_TO_31 = (3, 5, 7, 11, 13, 17, 19, 23, 29, 31)


# -- modulus choice -----------------------------------------------------------


def test_lowest_irreducible_deg2_over_f5():
    # brute force: a monic quadratic is irreducible iff it has no root
    assert lowest_irreducible(5, 2) == (1, 1, 1)
    earlier = [(0, c1) for c1 in range(5)] + [(1, 0)]
    for c0, c1 in earlier:
        assert any((x * x + c1 * x + c0) % 5 == 0 for x in range(5))
    assert all((x * x + x + 1) % 5 != 0 for x in range(5))


@pytest.mark.parametrize("p,k", [(3, 2), (5, 2), (7, 2), (3, 3), (5, 3)])
def test_irreducibility_test_matches_root_search(p, k):
    # degree 2 and 3: irreducible iff no roots in F_p
    import itertools

    for low in itertools.product(range(p), repeat=k):
        def value(x):
            return (sum(c * x**i for i, c in enumerate(low)) + x**k) % p

        has_root = any(value(x) == 0 for x in range(p))
        if is_irreducible(tuple(low), p):
            assert not has_root


# -- the finite polylogarithm -------------------------------------------------


@pytest.mark.parametrize("p", PRIMES_TO_31)
def test_li_matches_naive_oracle_exhaustively(p):
    # oracle: plain integer arithmetic, pow for the modular inverses
    field = FiniteField(p, 1)
    for n in range(0, 7):
        for x in range(p):
            expected = (
                sum(pow(x, j, p) * pow(pow(j, n, p), p - 2, p) for j in range(1, p)) % p
            )
            got = li_finite(n, field.element(x)).coeffs[0]
            assert got == expected, (p, n, x)


def test_li_frozen_values_p5():
    field = FiniteField(5, 1)
    assert [li_finite(1, field.element(a)).coeffs[0] for a in (2, 3, 4)] == [4, 3, 4]


def test_li_at_zero_and_one():
    for p in PRIMES_TO_31:
        field = FiniteField(p, 1)
        for n in range(0, 5):
            assert li_finite(n, field.zero()).is_zero()
        # harmonic-type pairing j <-> p-j
        assert li_finite(1, field.one()).is_zero()


def test_li_even_weight_at_minus_one_vanishes():
    for p in (5, 7, 11, 13):
        field = FiniteField(p, 1)
        for n in (2, 4, 6):
            assert li_finite(n, -field.one()).is_zero()


def test_li_evaluate_vs_expanded_polynomial():
    # the coefficient vector, Horner-evaluated, matches pointwise evaluation
    for p, k in ((5, 1), (5, 2), (7, 1)):
        field = FiniteField(p, k)
        for n in (1, 2, 3):
            coeffs = li_finite_coeff_vector(p, n)
            for z in field.elements():
                acc = field.zero()
                for c in reversed(coeffs):
                    acc = acc * z + field.element(c)
                acc = acc * z  # the polynomial has no constant term
                assert acc == li_finite(n, z)


# -- inverse Frobenius ----------------------------------------------------------


@pytest.mark.parametrize("p,k", [(3, 1), (3, 2), (3, 3), (3, 4), (5, 1), (5, 2),
                                 (7, 1), (7, 2), (11, 1), (11, 2), (13, 1)])
def test_sigma_is_field_automorphism_and_frobenius_inverse(p, k):
    field = FiniteField(p, k)
    for x in field.elements():
        assert sigma(x) ** p == x
        if k == 1:
            assert sigma(x) == x
    elems = list(field.elements())
    step = max(1, len(elems) // 12)
    probe = elems[::step]
    for x in probe:
        for y in probe:
            assert sigma(x + y) == sigma(x) + sigma(y)
            assert sigma(x * y) == sigma(x) * sigma(y)


def test_sigma_fixes_zero_and_one():
    field = FiniteField(7, 2)
    assert sigma(field.zero()).is_zero()
    assert sigma(field.one()).is_one()


# -- inversion identities ----------------------------------------------------------


def test_inversion_identity_spec_examples():
    field = FiniteField(5, 1)
    two, three, four = (field.element(a) for a in (2, 3, 4))
    assert (two * li_finite(1, three) + li_finite(1, two)).is_zero()
    assert (four * li_finite(1, four) + li_finite(1, four)).is_zero()


def test_inversion_identity_on_prime_fields():
    for p in (5, 7, 11, 13):
        field = FiniteField(p, 1)
        for n in range(2, 7):
            assert check_inversion_identity(n, field).passed


def test_inversion_identity_fails_on_extension_as_stated():
    # the plain form is not an identity on F_25: z a cube root of unity breaks it
    field = FiniteField(5, 2)
    report = check_inversion_identity(2, field)
    assert not report.passed
    assert any(ce["z"] == [0, 1] for ce in report.counterexamples)


def test_frobenius_corrected_inversion_identity_everywhere():
    for p in (5, 7, 11, 13):
        for k in (1, 2):
            field = FiniteField(p, k)
            for n in range(2, 7):
                assert check_inversion_identity_frobenius(n, field).passed, (p, k, n)


# -- field sanity ------------------------------------------------------------------


def test_field_axioms_small():
    field = FiniteField(5, 2)
    elems = list(field.elements())
    for x in elems:
        if not x.is_zero():
            assert (x * x.inverse()).is_one()
    a, b, c = elems[7], elems[13], elems[21]
    assert (a + b) * c == a * c + b * c
    assert a * (b * c) == (a * b) * c


def test_element_int_encoding_round_trip():
    field = FiniteField(7, 2)
    for t in range(49):
        assert field.from_int(t).to_int() == t

"""Tests for formal polynomials and the G recursion."""

import pytest
import sympy as sp

from src.lasota_yorke import (
    CORRECTED,
    PRINTED,
    FormalPolynomial,
    evaluate,
    formal_derivative,
    g_polynomials,
    indeterminates,
    majorant,
    pretty,
)

x1, x2, x3, x4 = indeterminates(4)


def test_worked_derivative_example():
    p = FormalPolynomial(-(x2**2) + x1 * x3)
    derived = formal_derivative(p)
    assert derived == FormalPolynomial(-x2 * x3 + x1 * x4)
    assert pretty(derived) == "x1*x4 - x2*x3"


def test_derivative_of_constant_is_zero():
    assert formal_derivative(FormalPolynomial(7)).is_zero()


def test_chain_rule_on_powers():
    assert formal_derivative(FormalPolynomial(x1**3)) == FormalPolynomial(3 * x1**2 * x2)


def test_first_order_polynomials():
    assert g_polynomials(1, CORRECTED) == (FormalPolynomial(-x2), FormalPolynomial(x1))
    assert g_polynomials(1, PRINTED) == (FormalPolynomial(x2), FormalPolynomial(x1))


def test_second_order_corrected_polynomials():
    g = g_polynomials(2, CORRECTED)
    assert g[0] == FormalPolynomial(3 * x2**2 - x1 * x3)
    assert g[1] == FormalPolynomial(-3 * x1 * x2)
    assert g[2] == FormalPolynomial(x1**2)


@pytest.mark.parametrize("ell", [0, 1, 2, 3, 4])
@pytest.mark.parametrize("variant", [PRINTED, CORRECTED])
def test_top_polynomial_is_power_of_slope(ell, variant):
    g = g_polynomials(ell, variant)
    assert len(g) == ell + 1
    assert g[ell] == FormalPolynomial(x1**ell)


def test_smoothness_and_variant_checks():
    with pytest.raises(ValueError, match="smoothness"):
        g_polynomials(3, CORRECTED, max_order=3)
    with pytest.raises(ValueError, match="unknown recursion variant"):
        g_polynomials(1, "verbatim")
    with pytest.raises(ValueError):
        g_polynomials(-1)


def test_majorant_and_evaluate():
    p = g_polynomials(2, CORRECTED)[0]
    assert float(evaluate(p, [1.0, 2.0, 3.0])) == pytest.approx(9.0)
    assert majorant(p) == FormalPolynomial(3 * x2**2 + x1 * x3)
    assert float(evaluate(majorant(p), [-1.0, -2.0, -3.0])) <= float(evaluate(majorant(p), [1.0, 2.0, 3.0]))


def test_evaluate_needs_every_variable():
    with pytest.raises(ValueError):
        evaluate(FormalPolynomial(x1 * x3), [1.0, 2.0])


def test_integer_coefficients_only():
    with pytest.raises(ValueError, match="non-integer"):
        FormalPolynomial(sp.Rational(1, 2) * x1)


def test_terms_and_pretty_are_canonical():
    p = FormalPolynomial.from_terms({(2, 0): -1, (0, 1): 4})
    assert p.terms == {(2, 0): -1, (0, 1): 4}
    assert pretty(p) == "-x1^2 + 4*x2"
    assert pretty(FormalPolynomial(0)) == "0"

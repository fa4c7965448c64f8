"""
Testes da aritmética exata: corpos finitos, polinômios esparsos e frações
"""

from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from src.errors import BadPrime, DegenerateComposition, DenominatorVanishes, DomainMismatch, NotPrime
from src.exactalg import (
    QQ,
    GFElement,
    Polynomial,
    RationalFunction,
    build_field,
    enumerate_field,
    frac_compose,
    frac_div,
    frac_eq,
    frac_neg,
    frac_sub,
    is_irreducible,
    poly_compose,
    rational_text,
    reduce_fraction,
    reduce_mod,
    reduce_scalar,
)

GF7 = build_field(7)
GF25 = build_field(5, 2)


def polys(field, nvars=2, max_degree=2, coefficients=None):
    """Polinômios pequenos com coeficientes no corpo dado"""
    coefficients = coefficients or st.integers(min_value=-3, max_value=3)
    exponents = st.tuples(*[st.integers(min_value=0, max_value=max_degree)] * nvars)
    return st.dictionaries(exponents, coefficients, max_size=4).map(lambda terms: Polynomial(nvars, field, terms))


def nonzero(strategy):
    return strategy.filter(lambda P: not P.is_zero())


def fractions(field, nvars=2):
    return st.builds(RationalFunction, polys(field, nvars), nonzero(polys(field, nvars)))


def points(field, nvars=2):
    return st.tuples(*[st.integers(min_value=0, max_value=field.q - 1).map(lambda c: GFElement(field, c))] * nvars)


# Corpos

def test_build_field_prime():
    field = build_field(5)
    assert field.q == 5
    assert field.tag == "GF(5)"
    assert [e.code for e in enumerate_field(field)] == [0, 1, 2, 3, 4]


def test_build_field_rejects_composite():
    with pytest.raises(NotPrime):
        build_field(4)


def test_extension_modulus_is_irreducible():
    assert GF25.q == 25
    assert GF25.tag == "GF(5^2)"
    assert is_irreducible(GF25.modulus, 5)
    assert GF25.modulus[-1] == 1


def test_extension_multiplicative_group():
    one = GF25.one()
    for element in enumerate_field(GF25)[1:]:
        assert element * element.inverse() == one
        assert element ** (GF25.q - 1) == one


def test_prime_field_embeds_in_extension():
    two = build_field(5).element(2)
    lifted = GF25.element(two)
    assert lifted.code == 2
    assert lifted + 3 == 0


def test_division_by_zero_in_field():
    with pytest.raises(ZeroDivisionError):
        GF25.one() / GF25.zero()


@settings(max_examples=500)
@given(st.integers(0, 24), st.integers(0, 24), st.integers(0, 24))
def test_extension_field_axioms(a, b, c):
    x, y, z = (GFElement(GF25, v) for v in (a, b, c))
    assert x * (y + z) == x * y + x * z
    assert (x * y) * z == x * (y * z)
    assert x + y - y == x


def test_rational_text():
    assert rational_text(Fraction(-1, 4)) == "-1/4"
    assert rational_text(3) == "3/1"
    assert rational_text(Fraction(13, 25)) == "13/25"


# Polinômios

def test_zero_coefficients_are_dropped():
    P = Polynomial(2, QQ, {(1, 0): 0, (0, 1): Fraction(1, 2)})
    assert len(P) == 1
    assert P.coefficients() == [Fraction(1, 2)]


def test_terms_in_grlex_order():
    P = Polynomial(2, QQ, {(0, 0): 1, (1, 0): 2, (0, 2): 3, (1, 1): 4})
    assert [e for e, _ in P.terms()] == [(1, 1), (0, 2), (1, 0), (0, 0)]
    assert P.degree() == 2
    assert P.degree_in(1) == 2


def test_mixed_domains_rejected():
    with pytest.raises(DomainMismatch):
        Polynomial.one(2, QQ) + Polynomial.one(2, GF7)
    with pytest.raises(DomainMismatch):
        Polynomial.one(2, QQ) * Polynomial.one(3, QQ)


@settings(max_examples=500)
@given(polys(GF7), polys(GF7), polys(GF7))
def test_polynomial_ring_laws(P, Q, R):
    assert (P + Q) * R == P * R + Q * R
    assert P * Q == Q * P
    assert (P + Q) - Q == P


@settings(max_examples=500)
@given(polys(GF7), polys(GF7), points(GF7))
def test_evaluation_is_a_ring_map(P, Q, point):
    assert (P * Q).evaluate(point) == P.evaluate(point) * Q.evaluate(point)
    assert (P + Q).evaluate(point) == P.evaluate(point) + Q.evaluate(point)


def test_evaluate_over_extension_point():
    x = Polynomial.variable(1, GF7, 0)
    P = x * x + Polynomial.one(1, GF7)
    point = (GFElement(build_field(7, 2), 7),)
    value = P.evaluate(point)
    assert value.field.m == 2


# Frações

def test_denominator_normalized():
    x = Polynomial.variable(1, QQ, 0)
    F = RationalFunction(x, x.scale(3) + Polynomial.one(1, QQ))
    assert F.denominator.leading_coefficient() == 1
    assert F.numerator.leading_coefficient() == Fraction(1, 3)


def test_zero_denominator_rejected():
    with pytest.raises(DenominatorVanishes):
        RationalFunction(Polynomial.one(1, QQ), Polynomial.zero(1, QQ))


def test_equality_without_gcd():
    x = RationalFunction.variable(1, QQ, 0)
    one = RationalFunction.constant(1, QQ, 1)
    F = (x * x - one) / (x - one)
    assert F.equals(x + one)
    assert F != x + one  # representações diferentes


@settings(max_examples=500)
@given(fractions(GF7), fractions(GF7), fractions(GF7))
def test_fraction_field_laws(F, G, H):
    assert ((F + G) * H).equals(F * H + G * H)
    assert ((F - G) + G).equals(F)
    assume(not G.is_zero())
    assert ((F / G) * G).equals(F)


@settings(max_examples=500)
@given(fractions(GF7), fractions(GF7), fractions(GF7), points(GF7))
def test_composition_agrees_with_evaluation(F, s1, s2, point):
    try:
        composed = frac_compose(F, [s1, s2])
    except DegenerateComposition:
        assume(False)
    assume(s1.denominator.evaluate(point) != 0 and s2.denominator.evaluate(point) != 0)
    inner = (s1.evaluate(point), s2.evaluate(point))
    assume(F.denominator.evaluate(inner) != 0)
    assert composed.evaluate(point) == F.evaluate(inner)


def test_poly_compose_matches_frac_compose():
    x = RationalFunction.variable(2, QQ, 0)
    y = RationalFunction.variable(2, QQ, 1)
    P = (x * x + y).numerator
    subs = [RationalFunction.constant(2, QQ, 1) / x, y]
    assert poly_compose(P, subs).equals(frac_compose(RationalFunction(P), subs))


def test_degenerate_composition():
    x = RationalFunction.variable(2, QQ, 0)
    y = RationalFunction.variable(2, QQ, 1)
    F = RationalFunction.constant(2, QQ, 1) / (x - y)
    with pytest.raises(DegenerateComposition):
        frac_compose(F, [x, x])


# Redução módulo p

def test_reduce_scalar():
    assert reduce_scalar(Fraction(1, 2), build_field(3)) == 2
    with pytest.raises(BadPrime):
        reduce_scalar(Fraction(1, 2), build_field(2))


def test_reduce_mod_polynomial():
    x = Polynomial.variable(1, QQ, 0)
    P = x + Polynomial.constant(1, QQ, Fraction(1, 2))
    reduced = reduce_mod(P, 3)
    assert reduced.field == build_field(3)
    assert reduced.constant_value() == 2


def test_reduce_fraction():
    x = Polynomial.variable(1, QQ, 0)
    assert reduce_fraction(RationalFunction(x), 5).numerator == reduce_mod(x, 5)
    G = RationalFunction(Polynomial.one(1, QQ), Polynomial.constant(1, QQ, 3))
    assert reduce_fraction(G, 5).numerator.constant_value() == 2


@settings(max_examples=500)
@given(polys(GF7), polys(GF7), polys(GF7))
def test_polynomial_multiplication_is_associative(P, Q, R):
    assert (P * Q) * R == P * (Q * R)


@settings(max_examples=500)
@given(fractions(GF7), fractions(GF7), fractions(GF7))
def test_fraction_multiplication_is_associative(F, G, H):
    assert ((F * G) * H).equals(F * (G * H))


@settings(max_examples=500)
@given(fractions(GF7), nonzero(polys(GF7)), nonzero(polys(GF7)), fractions(GF7))
def test_frac_eq_is_an_equivalence(F, P, Q, K):
    # G e H representam F com fatores comuns diferentes
    G = RationalFunction(F.numerator * P, F.denominator * P)
    H = RationalFunction(G.numerator * Q, G.denominator * Q)
    assert frac_eq(F, F)
    assert frac_eq(F, G) and frac_eq(G, F)
    assert frac_eq(G, H) and frac_eq(F, H)
    assert frac_eq(F, K) == frac_eq(K, F)
    assert frac_eq(F, K) == frac_eq(H, K)


def test_frac_helpers():
    x = RationalFunction.variable(1, QQ, 0)
    one = RationalFunction.constant(1, QQ, 1)
    assert frac_eq(frac_sub(x, x), RationalFunction.constant(1, QQ, 0))
    assert frac_eq(frac_neg(frac_neg(x)), x)
    assert frac_eq(frac_div(x * x - one, x - one), x + one)
    assert frac_eq(frac_sub(one / x, one / (x + one)), one / (x * x + x))

"""
Testes do parser de expressões, palavras e arquivos de geradores, e da impressão canônica
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.errors import (
    ArityError,
    CoefficientDomainError,
    CremonaError,
    ExprSyntaxError,
    NotInverse,
    NotPrime,
    UnknownGenerator,
)
from src.exactalg import QQ, GFElement, Polynomial, RationalFunction, build_field
from src.frontend import (
    certify_generators,
    parse_expression,
    parse_field,
    parse_generator_file,
    parse_map_expr,
    parse_polynomial,
    parse_positive_word,
    parse_word,
    render,
    render_fraction,
    render_polynomial,
    render_tuple,
    render_word,
    tokenize,
    variable_names,
)
from src.wordlang import GroupWord

GF25 = build_field(5, 2)


def polys(field, coefficients):
    exponents = st.tuples(st.integers(0, 3), st.integers(0, 3))
    return st.dictionaries(exponents, coefficients, max_size=4).map(lambda terms: Polynomial(2, field, terms))


rational_coefficients = st.fractions(min_value=-5, max_value=5, max_denominator=4)
extension_coefficients = st.integers(0, 24).map(lambda code: GFElement(GF25, code))


def fractions_over(field, coefficients):
    return st.builds(
        RationalFunction,
        polys(field, coefficients),
        polys(field, coefficients).filter(lambda P: not P.is_zero()),
    )


# Campos e variáveis

def test_parse_field():
    assert parse_field("QQ") == QQ
    assert parse_field("GF(7)") == build_field(7)
    assert parse_field(" GF(5^2) ") == GF25
    with pytest.raises(ExprSyntaxError):
        parse_field("ZZ")
    with pytest.raises(NotPrime):
        parse_field("GF(6)")


def test_variable_names():
    assert variable_names(2) == ["x", "y"]
    assert variable_names(4) == ["t1", "t2", "t3", "t4"]


def test_tokenize_spans():
    tokens = tokenize("x^2 + 10*y")
    assert [t.text for t in tokens] == ["x", "^", "2", "+", "10", "*", "y"]
    assert (tokens[4].start, tokens[4].end) == (6, 8)


# Expressões

def test_parse_expression_precedence():
    x = RationalFunction.variable(1, QQ, 0)
    assert parse_expression("-x^2", 1).equals(-(x * x))
    assert parse_expression("2*x + 3", 1).equals(x + x + RationalFunction.constant(1, QQ, 3))
    assert parse_expression("1/2/x", 1).equals(RationalFunction.constant(1, QQ, Fraction(1, 2)) / x)


def test_parse_polynomial():
    P = parse_polynomial("x^2 - 2*x*y + 1/2", 2)
    assert P.coefficients() == [1, -2, Fraction(1, 2)]
    with pytest.raises(ExprSyntaxError):
        parse_polynomial("1/x", 2)


def test_extension_generator_symbol():
    value = parse_expression("a*x", 1, GF25)
    assert value.numerator.leading_coefficient() == GFElement(GF25, 5)
    with pytest.raises(ExprSyntaxError):
        parse_expression("a*x", 1, QQ)


def test_syntax_error_span():
    with pytest.raises(ExprSyntaxError) as info:
        parse_expression("x + * y", 2)
    assert info.value.span == (4, 5)
    assert "^" in info.value.pretty()


def test_unexpected_character():
    with pytest.raises(ExprSyntaxError) as info:
        parse_expression("x $ y", 2)
    assert info.value.span == (2, 3)


def test_arity_error():
    with pytest.raises(ArityError):
        parse_expression("x + z", 2)


def test_division_by_zero_in_field():
    with pytest.raises(CoefficientDomainError):
        parse_expression("x/5", 1, build_field(5))
    with pytest.raises(CoefficientDomainError):
        parse_expression("1/(x - x)", 1)


def test_parse_map_expr():
    f = parse_map_expr("[1/x, y/(x + y)] over GF(7)")
    assert f.dimension == 2
    assert f.field == build_field(7)
    with pytest.raises(ExprSyntaxError):
        parse_map_expr("[x, y]")
    with pytest.raises(ExprSyntaxError):
        parse_map_expr("[x, ] over QQ")
    with pytest.raises(ExprSyntaxError):
        parse_map_expr("[x, y over QQ")


# Palavras

def test_parse_word():
    names = ["a", "b"]
    assert parse_word("ab", names).letters == ((0, 1), (1, 1))
    assert parse_word("a^-2", names).letters == ((0, -1), (0, -1))
    assert parse_word("aB", names).letters == ((0, 1), (1, -1))
    assert parse_word("a*b*B", names).letters == ((0, 1),)
    assert parse_word("[a,b]", names).letters == ((0, 1), (1, 1), (0, -1), (1, -1))
    assert len(parse_word("[a,b]^2", names)) == 8
    assert len(parse_word("1", names)) == 0


def test_parse_word_longest_name():
    names = ["s", "st"]
    assert parse_word("sts", names).letters == ((1, 1), (0, 1))


def test_unknown_generator():
    with pytest.raises(UnknownGenerator) as info:
        parse_word("aq", ["a", "b"])
    assert info.value.span == (1, 2)


def test_parse_positive_word_rejects_inverses():
    assert parse_positive_word("aab", ["a", "b"]) == [0, 0, 1]
    with pytest.raises(ExprSyntaxError):
        parse_positive_word("aB", ["a", "b"])


# Arquivo de geradores

def test_parse_generator_file():
    text = """
    # comentário
    a: [x + 1] over QQ ; inverse: [x - 1] over QQ
    b: [2*x] over QQ ; inverse: [x/2] over QQ
    """
    specs = parse_generator_file(text)
    assert [s.name for s in specs] == ["a", "b"]
    elements = certify_generators(specs)
    assert [e.name for e in elements] == ["a", "b"]


def test_generator_file_errors():
    with pytest.raises(ExprSyntaxError):
        parse_generator_file("a: [x] over QQ\na: [x] over QQ")
    with pytest.raises(ExprSyntaxError):
        parse_generator_file("[x] over QQ")
    with pytest.raises(ExprSyntaxError):
        certify_generators(parse_generator_file("a: [x + 1] over QQ"))
    with pytest.raises(NotInverse):
        certify_generators(parse_generator_file("a: [x + 1] over QQ ; inverse: [x + 1] over QQ"))


def test_generator_file_from_data(data_dir):
    with open(f"{data_dir}/klein.txt", encoding='utf-8') as f:
        specs = parse_generator_file(f.read())
    assert [s.name for s in specs] == ["id", "s", "t", "u"]
    assert len(certify_generators(specs)) == 4


# Impressão canônica

def test_render_polynomial():
    assert render_polynomial(parse_polynomial("1/2 + x^2 - 2*x*y", 2)) == "x^2 - 2*x*y + 1/2"
    assert render_polynomial(Polynomial.zero(2, QQ)) == "0"
    assert render_polynomial(parse_polynomial("(a + 1)*x + a", 1, GF25)) == "(a + 1)*x + a"


def test_render_fraction_and_tuple():
    s = parse_map_expr("[1/x, 1/y] over GF(5)")
    assert render_tuple(s) == "[1/x, 1/y] over GF(5)"
    assert render_fraction(parse_expression("(x + 1)/(x*y)", 2)) == "(x + 1)/(x*y)"
    assert render_fraction(parse_expression("y/(3*x)", 2)) == "1/3*y/x"


def test_render_word():
    names = ["a", "b"]
    assert render_word(parse_word("aB", names), names) == "a*b^-1"
    assert render_word(GroupWord(), names) == "1"
    assert render(GroupWord([(1, 1)])) == "g1"
    assert render(QQ) == "QQ"


@settings(max_examples=1000)
@given(fractions_over(QQ, rational_coefficients))
def test_render_parse_round_trip_rationals(F):
    assert parse_expression(render_fraction(F), 2, QQ) == F


@settings(max_examples=1000)
@given(fractions_over(GF25, extension_coefficients))
def test_render_parse_round_trip_extension(F):
    assert parse_expression(render_fraction(F), 2, GF25) == F


def test_errors_are_value_errors():
    assert issubclass(ExprSyntaxError, CremonaError)
    assert issubclass(CremonaError, ValueError)


@pytest.mark.parametrize("text, span", [("[a,b", (3, 4)), ("a^", (1, 2)), ("[a,", (2, 3))])
def test_word_error_span_points_inside_text(text, span):
    with pytest.raises(ExprSyntaxError) as info:
        parse_word(text, ["a", "b"])
    assert info.value.span == span
    start, end = info.value.span
    assert 0 <= start < end <= len(text)
    marker = info.value.pretty().splitlines()[-1]
    assert marker.strip() == "^" * (end - start)

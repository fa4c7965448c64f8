# Aritmética exata: corpos, polinômios esparsos e frações racionais
from .fields import FieldSpec, GFElement, QQ, build_field, enumerate_field, is_irreducible, rational_text
from .polynomial import Polynomial, collect_coefficients, grlex_key, poly_arith, poly_eval, substitute
from .rational_function import (
    RationalFunction,
    frac_arith,
    frac_compose,
    frac_div,
    frac_eq,
    frac_eval,
    frac_neg,
    frac_sub,
    poly_compose,
    reduce_fraction,
    reduce_mod,
    reduce_scalar,
)


def coefficients(P: Polynomial):
    """Coeficientes não nulos em ordem grlex decrescente"""
    return P.coefficients()


__all__ = [
    'FieldSpec', 'GFElement', 'QQ', 'build_field', 'enumerate_field', 'is_irreducible', 'rational_text',
    'Polynomial', 'collect_coefficients', 'grlex_key', 'poly_arith', 'poly_eval', 'substitute',
    'RationalFunction', 'frac_arith', 'frac_compose', 'frac_div', 'frac_eq', 'frac_eval',
    'frac_neg', 'frac_sub', 'poly_compose', 'reduce_fraction', 'reduce_mod', 'reduce_scalar',
    'coefficients',
]

from fractions import Fraction
from typing import Sequence

from ..errors import BadPrime, DegenerateComposition, DenominatorVanishes, DomainMismatch
from .fields import FieldSpec, GFElement, build_field
from .polynomial import Polynomial, substitute


class RationalFunction:
    """Fração P/Q de polinômios, guardada sem mdc

    Normalização: o coeficiente líder (ordem grlex) do denominador vale 1.
    Não há cancelamento de fatores comuns; a igualdade semântica usa produto cruzado.
    """

    __slots__ = ('numerator', 'denominator')

    def __init__(self, numerator: Polynomial, denominator: Polynomial = None):
        if denominator is None:
            denominator = Polynomial.one(numerator.nvars, numerator.field)
        numerator._check(denominator)
        if denominator.is_zero():
            raise DenominatorVanishes("Denominador identicamente nulo")
        lead = denominator.leading_coefficient()
        if lead != 1:
            inverse = 1 / lead
            numerator = numerator.scale(inverse)
            denominator = denominator.scale(inverse)
        self.numerator = numerator
        self.denominator = denominator

    def __reduce__(self):
        return (RationalFunction, (self.numerator, self.denominator))

    @classmethod
    def from_polynomial(cls, poly: Polynomial) -> "RationalFunction":
        return cls(poly)

    @classmethod
    def constant(cls, nvars: int, field: FieldSpec, value) -> "RationalFunction":
        return cls(Polynomial.constant(nvars, field, value))

    @classmethod
    def variable(cls, nvars: int, field: FieldSpec, index: int) -> "RationalFunction":
        return cls(Polynomial.variable(nvars, field, index))

    @property
    def nvars(self) -> int:
        return self.numerator.nvars

    @property
    def field(self) -> FieldSpec:
        return self.numerator.field

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def is_polynomial(self) -> bool:
        return self.denominator.is_constant()

    def _check(self, other: "RationalFunction"):
        if not isinstance(other, RationalFunction):
            raise DomainMismatch(f"Operando não é fração: {other!r}")
        self.numerator._check(other.numerator)

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        self._check(other)
        numerator = self.numerator * other.denominator + other.numerator * self.denominator
        return RationalFunction(numerator, self.denominator * other.denominator)

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.numerator, self.denominator)

    def __sub__(self, other: "RationalFunction") -> "RationalFunction":
        return self + (-other)

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        self._check(other)
        return RationalFunction(self.numerator * other.numerator, self.denominator * other.denominator)

    def __truediv__(self, other: "RationalFunction") -> "RationalFunction":
        self._check(other)
        if other.numerator.is_zero():
            raise DenominatorVanishes("Divisão pela fração nula")
        return RationalFunction(self.numerator * other.denominator, self.denominator * other.numerator)

    def __pow__(self, k: int) -> "RationalFunction":
        if k < 0:
            raise DomainMismatch("Expoente negativo em fração")
        return RationalFunction(self.numerator ** k, self.denominator ** k)

    def cross_difference(self, other: "RationalFunction") -> Polynomial:
        """P1*Q2 - P2*Q1; é zero exatamente quando as frações são iguais"""
        self._check(other)
        return self.numerator * other.denominator - other.numerator * self.denominator

    def equals(self, other: "RationalFunction") -> bool:
        return self.cross_difference(other).is_zero()

    def evaluate(self, point: Sequence):
        denominator = self.denominator.evaluate(point)
        if denominator == 0:
            raise DenominatorVanishes(f"Denominador se anula no ponto {tuple(str(v) for v in point)}")
        return self.numerator.evaluate(point) / denominator

    def __eq__(self, other) -> bool:
        # Igualdade estrutural (mesma representação guardada)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.numerator == other.numerator and self.denominator == other.denominator

    def __hash__(self) -> int:
        return hash((self.numerator, self.denominator))

    def __repr__(self) -> str:
        from ..frontend import render_fraction
        return f"RationalFunction({render_fraction(self)!r} over {self.field.tag})"


def frac_arith(op: str, F: RationalFunction, G: RationalFunction) -> RationalFunction:
    """Soma ou produto de frações: 'add' ou 'mul'"""
    if op == 'add':
        return F + G
    if op == 'mul':
        return F * G
    raise DomainMismatch(f"Operação desconhecida: {op}")


def frac_eq(F: RationalFunction, G: RationalFunction) -> bool:
    return F.equals(G)


def frac_eval(F: RationalFunction, point: Sequence):
    return F.evaluate(point)


def frac_neg(F: RationalFunction) -> RationalFunction:
    return -F


def frac_sub(F: RationalFunction, G: RationalFunction) -> RationalFunction:
    return F - G


def frac_div(F: RationalFunction, G: RationalFunction) -> RationalFunction:
    return F / G


def _substitution_parts(subs: Sequence[RationalFunction]):
    numerators = [s.numerator for s in subs]
    denominators = [s.denominator for s in subs]
    return numerators, denominators


def poly_compose(P: Polynomial, subs: Sequence[RationalFunction]) -> RationalFunction:
    """P(s_1, ..., s_d) reduzido a uma única fração"""
    if len(subs) != P.nvars:
        raise DomainMismatch(f"{len(subs)} substituições para {P.nvars} variáveis")
    numerators, denominators = _substitution_parts(subs)
    degrees = [P.degree_in(j) for j in range(P.nvars)]
    numerator = substitute(P, numerators, denominators, degrees)
    target = subs[0]
    denominator = Polynomial.one(target.nvars, target.field)
    for j, delta in enumerate(degrees):
        if delta:
            denominator = denominator * denominators[j] ** delta
    return RationalFunction(numerator, denominator)


def frac_compose(F: RationalFunction, subs: Sequence[RationalFunction]) -> RationalFunction:
    """F(s_1, ..., s_d) com o fator comum prod Q_j^delta_j cancelado entre numerador e denominador

    delta_j = max(grau em t_j do numerador, grau em t_j do denominador).
    Lança DegenerateComposition se o novo denominador for identicamente nulo.
    """
    if len(subs) != F.nvars:
        raise DomainMismatch(f"{len(subs)} substituições para {F.nvars} variáveis")
    numerators, denominators = _substitution_parts(subs)
    degrees = [max(F.numerator.degree_in(j), F.denominator.degree_in(j)) for j in range(F.nvars)]
    numerator = substitute(F.numerator, numerators, denominators, degrees)
    denominator = substitute(F.denominator, numerators, denominators, degrees)
    if denominator.is_zero():
        raise DegenerateComposition("A substituição anulou o denominador (imagem contida no lugar de indeterminação)")
    return RationalFunction(numerator, denominator)


def reduce_scalar(value: Fraction, target: FieldSpec):
    """Imagem de um racional p-inteiro em F_p"""
    p = target.p
    if value.denominator % p == 0:
        raise BadPrime(f"O coeficiente {value} não é {p}-inteiro")
    return GFElement(target, value.numerator * pow(value.denominator, -1, p) % p)


def reduce_mod(P: Polynomial, p: int) -> Polynomial:
    """Redução coeficiente a coeficiente QQ -> F_p"""
    target = build_field(p)
    if not P.field.is_rational:
        if P.field.p != p or P.field.m != 1:
            raise DomainMismatch(f"Não é possível reduzir {P.field.tag} módulo {p}")
        return P
    return P.map_coefficients(target, lambda c: reduce_scalar(c, target))


def reduce_fraction(F: RationalFunction, p: int) -> RationalFunction:
    denominator = reduce_mod(F.denominator, p)
    if denominator.is_zero():
        raise BadPrime(f"O denominador se anula módulo {p}")
    return RationalFunction(reduce_mod(F.numerator, p), denominator)

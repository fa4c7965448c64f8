from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from ..errors import DomainMismatch
from .fields import FieldSpec, GFElement

Exponent = Tuple[int, ...]


def grlex_key(exponent: Exponent) -> Tuple[int, Exponent]:
    """Chave da ordem lexicográfica graduada (maior grau total primeiro)"""
    return (sum(exponent), exponent)


class Polynomial:
    """Polinômio esparso em `nvars` variáveis sobre um corpo exato

    Os termos são guardados como {expoentes: coeficiente}, nunca com coeficiente zero.
    Os valores são imutáveis depois de construídos.
    """

    __slots__ = ('nvars', 'field', '_terms', '_hash')

    def __init__(self, nvars: int, field: FieldSpec, terms: Mapping[Exponent, object] = None):
        if nvars < 1:
            raise DomainMismatch(f"Número de variáveis inválido: {nvars}")
        self.nvars = nvars
        self.field = field
        self._hash = None
        clean: Dict[Exponent, object] = {}
        for exponent, coeff in (terms or {}).items():
            exponent = tuple(exponent)
            if len(exponent) != nvars or any(e < 0 for e in exponent):
                raise DomainMismatch(f"Expoente {exponent} incompatível com {nvars} variáveis")
            value = field.element(coeff)
            if value != 0:
                clean[exponent] = value
        self._terms = clean

    @classmethod
    def _raw(cls, nvars: int, field: FieldSpec, terms: Dict[Exponent, object]) -> "Polynomial":
        # Construção interna: termos já validados e sem zeros
        poly = cls.__new__(cls)
        poly.nvars = nvars
        poly.field = field
        poly._terms = terms
        poly._hash = None
        return poly

    def __reduce__(self):
        return (Polynomial, (self.nvars, self.field, dict(self._terms)))

    # Construtores

    @classmethod
    def zero(cls, nvars: int, field: FieldSpec) -> "Polynomial":
        return cls._raw(nvars, field, {})

    @classmethod
    def constant(cls, nvars: int, field: FieldSpec, value) -> "Polynomial":
        return cls(nvars, field, {(0,) * nvars: value})

    @classmethod
    def one(cls, nvars: int, field: FieldSpec) -> "Polynomial":
        return cls.constant(nvars, field, 1)

    @classmethod
    def variable(cls, nvars: int, field: FieldSpec, index: int) -> "Polynomial":
        if not 0 <= index < nvars:
            raise DomainMismatch(f"Variável {index} fora do intervalo [0, {nvars})")
        exponent = tuple(1 if i == index else 0 for i in range(nvars))
        return cls(nvars, field, {exponent: 1})

    # Consultas

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self._terms)

    def constant_value(self):
        return self._terms.get((0,) * self.nvars, self.field.zero())

    def terms(self) -> List[Tuple[Exponent, object]]:
        """Termos em ordem lexicográfica graduada decrescente"""
        return sorted(self._terms.items(), key=lambda item: grlex_key(item[0]), reverse=True)

    def coefficients(self) -> List[object]:
        return [coeff for _, coeff in self.terms()]

    def leading_term(self) -> Tuple[Exponent, object]:
        if not self._terms:
            raise DomainMismatch("O polinômio nulo não tem termo líder")
        exponent = max(self._terms, key=grlex_key)
        return exponent, self._terms[exponent]

    def leading_coefficient(self):
        return self.leading_term()[1]

    def degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def degree_in(self, index: int) -> int:
        return max((e[index] for e in self._terms), default=0)

    def __len__(self) -> int:
        return len(self._terms)

    # Aritmética

    def _check(self, other: "Polynomial"):
        if not isinstance(other, Polynomial):
            raise DomainMismatch(f"Operando não é polinômio: {other!r}")
        if other.nvars != self.nvars:
            raise DomainMismatch(f"Número de variáveis diferente: {self.nvars} e {other.nvars}")
        if other.field != self.field:
            raise DomainMismatch(f"Domínios diferentes: {self.field.tag} e {other.field.tag}")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        terms = dict(self._terms)
        for exponent, coeff in other._terms.items():
            value = terms.get(exponent)
            value = coeff if value is None else value + coeff
            if value == 0:
                terms.pop(exponent, None)
            else:
                terms[exponent] = value
        return Polynomial._raw(self.nvars, self.field, terms)

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw(self.nvars, self.field, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        terms: Dict[Exponent, object] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                exponent = tuple(a + b for a, b in zip(e1, e2))
                value = c1 * c2
                if exponent in terms:
                    value = terms[exponent] + value
                terms[exponent] = value
        return Polynomial._raw(self.nvars, self.field, {e: c for e, c in terms.items() if c != 0})

    def scale(self, factor) -> "Polynomial":
        factor = self.field.element(factor)
        if factor == 0:
            return Polynomial.zero(self.nvars, self.field)
        return Polynomial._raw(self.nvars, self.field, {e: c * factor for e, c in self._terms.items()})

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise DomainMismatch("Expoente negativo em polinômio")
        result = Polynomial.one(self.nvars, self.field)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def map_coefficients(self, field: FieldSpec, function) -> "Polynomial":
        """Aplica `function` a cada coeficiente e muda o domínio para `field`"""
        return Polynomial(self.nvars, field, {e: function(c) for e, c in self._terms.items()})

    # Avaliação

    def evaluate(self, point: Sequence) -> object:
        if len(point) != self.nvars:
            raise DomainMismatch(f"Ponto com {len(point)} coordenadas para {self.nvars} variáveis")
        values = [_check_scalar(self.field, v) for v in point]
        result = values[0] * 0 if values else self.field.zero()
        powers: Dict[Tuple[int, int], object] = {}
        for exponent, coeff in self._terms.items():
            term = coeff
            for i, e in enumerate(exponent):
                if e:
                    key = (i, e)
                    if key not in powers:
                        powers[key] = values[i] ** e
                    term = term * powers[key]
            result = result + term
        return result

    # Igualdade estrutural

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.field == other.field and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, self.field, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        from ..frontend import render_polynomial
        return f"Polynomial({render_polynomial(self)!r} over {self.field.tag})"


def _check_scalar(field: FieldSpec, value):
    """Aceita apenas escalares do domínio (ou de uma extensão, para F_p)"""
    if field.is_rational:
        if isinstance(value, GFElement):
            raise DomainMismatch(f"Ponto em {value.field.tag} para polinômio sobre QQ")
        return Fraction(value)
    if isinstance(value, GFElement):
        if value.field.p != field.p:
            raise DomainMismatch(f"Ponto em {value.field.tag} para polinômio sobre {field.tag}")
        if value.field != field and field.m != 1 and not field.embeds(value.field):
            raise DomainMismatch(f"Ponto em {value.field.tag} para polinômio sobre {field.tag}")
        return value
    return field.element(value)


def poly_arith(op: str, P: Polynomial, Q: Polynomial = None) -> Polynomial:
    """Operação aritmética exata: 'add', 'mul' ou 'neg'"""
    if op == 'neg':
        return -P
    if op == 'add':
        return P + Q
    if op == 'mul':
        return P * Q
    raise DomainMismatch(f"Operação desconhecida: {op}")


def poly_eval(P: Polynomial, point: Sequence) -> object:
    return P.evaluate(point)


def substitute(P: Polynomial, numerators: Sequence[Polynomial], denominators: Sequence[Polynomial],
               degrees: Sequence[int]) -> Polynomial:
    """Numerador de P(N_1/D_1, ..., N_d/D_d) multiplicado por prod D_j^{degrees[j]}

    Cada termo c * t^e vira c * prod N_j^{e_j} * D_j^{degrees[j] - e_j}; exige e_j <= degrees[j].
    """
    if len(numerators) != P.nvars:
        raise DomainMismatch(f"{len(numerators)} substituições para {P.nvars} variáveis")
    target = numerators[0]
    result = Polynomial.zero(target.nvars, target.field)
    cache: Dict[Tuple[str, int, int], Polynomial] = {}

    def power(kind: str, j: int, k: int) -> Polynomial:
        key = (kind, j, k)
        if key not in cache:
            base = numerators[j] if kind == 'n' else denominators[j]
            cache[key] = base ** k
        return cache[key]

    for exponent, coeff in P._terms.items():
        term = Polynomial.constant(target.nvars, target.field, coeff)
        for j, e in enumerate(exponent):
            if e:
                term = term * power('n', j, e)
            if degrees[j] - e:
                term = term * power('d', j, degrees[j] - e)
        result = result + term
    return result


def collect_coefficients(polys: Iterable[Polynomial]) -> List[object]:
    out = []
    for poly in polys:
        out.extend(poly.coefficients())
    return out

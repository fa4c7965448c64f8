import re
from fractions import Fraction
from typing import List, NamedTuple, Optional, Sequence, Tuple

from .biratmap import BirationalTuple, CremonaElement, certify_inverse
from .errors import ArityError, CoefficientDomainError, ExprSyntaxError, UnknownGenerator
from .exactalg import FieldSpec, GFElement, Polynomial, QQ, RationalFunction, build_field, frac_div, frac_neg
from .wordlang import GroupWord

TOKEN_PATTERN = re.compile(r"\s*(?:(?P<number>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()\[\],;:]))")
FIELD_PATTERN = re.compile(r"^\s*(?:QQ|GF\(\s*(\d+)\s*(?:\^\s*(\d+)\s*)?\))\s*$")
SHORT_NAMES = ('x', 'y', 'z')


class Token(NamedTuple):
    kind: str
    text: str
    start: int
    end: int


def tokenize(text: str) -> List[Token]:
    tokens = []
    position = 0
    while position < len(text):
        if text[position:].strip() == "":
            break
        match = TOKEN_PATTERN.match(text, position)
        if not match:
            start = position + (len(text[position:]) - len(text[position:].lstrip()))
            raise ExprSyntaxError(f"Caractere inesperado {text[start]!r}", (start, start + 1), text)
        kind = match.lastgroup
        tokens.append(Token(kind, match.group(kind), match.start(kind), match.end(kind)))
        position = match.end()
    return tokens


def variable_names(d: int) -> List[str]:
    """x, y, z até d = 3; t1..td acima disso"""
    if d <= len(SHORT_NAMES):
        return list(SHORT_NAMES[:d])
    return [f"t{i + 1}" for i in range(d)]


def parse_field(text: str) -> FieldSpec:
    match = FIELD_PATTERN.match(text)
    if not match:
        raise ExprSyntaxError(f"Corpo desconhecido: {text.strip()!r}", (0, max(1, len(text))), text)
    if match.group(1) is None:
        return QQ
    return build_field(int(match.group(1)), int(match.group(2) or 1))


class _ExpressionParser:
    """Descida recursiva sobre uma fatia de tokens, produzindo frações exatas"""

    def __init__(self, tokens: Sequence[Token], text: str, nvars: int, field: FieldSpec):
        self.tokens = list(tokens)
        self.text = text
        self.nvars = nvars
        self.field = field
        self.position = 0

    def _peek(self) -> Optional[Token]:
        return self.tokens[self.position] if self.position < len(self.tokens) else None

    def _advance(self) -> Token:
        token = self._peek()
        self.position += 1
        return token

    def _error(self, message: str, token: Optional[Token], kind=ExprSyntaxError):
        if token is None:
            end = len(self.text)
            return kind(message, (max(0, end - 1), end), self.text)
        return kind(message, (token.start, token.end), self.text)

    def _expect(self, text: str) -> Token:
        token = self._peek()
        if token is None or token.text != text:
            raise self._error(f"Esperado {text!r}", token)
        return self._advance()

    def parse(self) -> RationalFunction:
        if not self.tokens:
            raise self._error("Expressão vazia", None)
        value = self.expression()
        leftover = self._peek()
        if leftover is not None:
            raise self._error(f"Símbolo inesperado {leftover.text!r}", leftover)
        return value

    def expression(self) -> RationalFunction:
        value = self.term()
        while self._peek() is not None and self._peek().text in ('+', '-'):
            op = self._advance().text
            right = self.term()
            value = value + right if op == '+' else value - right
        return value

    def term(self) -> RationalFunction:
        value = self.unary()
        while self._peek() is not None and self._peek().text in ('*', '/'):
            op = self._advance().text
            start = self._peek()
            right = self.unary()
            if op == '*':
                value = value * right
            else:
                if right.is_zero():
                    raise self._error("Divisão por zero no corpo declarado", start, CoefficientDomainError)
                value = frac_div(value, right)
        return value

    def unary(self) -> RationalFunction:
        token = self._peek()
        if token is not None and token.text == '-':
            self._advance()
            return frac_neg(self.unary())
        return self.power()

    def power(self) -> RationalFunction:
        base = self.atom()
        token = self._peek()
        if token is not None and token.text == '^':
            self._advance()
            exponent = self._peek()
            if exponent is None or exponent.kind != 'number':
                raise self._error("Expoente deve ser um inteiro não negativo", exponent)
            self._advance()
            return base ** int(exponent.text)
        return base

    def atom(self) -> RationalFunction:
        token = self._advance()
        if token is None:
            raise self._error("Expressão incompleta", None)
        if token.kind == 'number':
            return RationalFunction.constant(self.nvars, self.field, int(token.text))
        if token.kind == 'name':
            return self._name(token)
        if token.text == '(':
            value = self.expression()
            self._expect(')')
            return value
        raise self._error(f"Símbolo inesperado {token.text!r}", token)

    def _name(self, token: Token) -> RationalFunction:
        name = token.text
        if name in SHORT_NAMES:
            index = SHORT_NAMES.index(name)
        elif re.fullmatch(r"t[1-9]\d*", name):
            index = int(name[1:]) - 1
        elif name == 'a' and not self.field.is_rational and self.field.m > 1:
            generator = GFElement(self.field, self.field.p)
            return RationalFunction.constant(self.nvars, self.field, generator)
        else:
            raise self._error(f"Variável desconhecida {name!r}", token)
        if index >= self.nvars:
            raise self._error(f"A variável {name!r} excede a dimensão {self.nvars}", token, ArityError)
        return RationalFunction.variable(self.nvars, self.field, index)


def parse_expression(text: str, nvars: int, field: FieldSpec = QQ) -> RationalFunction:
    return _ExpressionParser(tokenize(text), text, nvars, field).parse()


def parse_polynomial(text: str, nvars: int, field: FieldSpec = QQ) -> Polynomial:
    value = parse_expression(text, nvars, field)
    if not value.is_polynomial():
        raise ExprSyntaxError("A expressão não é um polinômio", (0, max(1, len(text))), text)
    return value.numerator


def _split_tuple(tokens: List[Token], text: str) -> Tuple[List[List[Token]], int]:
    """Separa as coordenadas entre colchetes; devolve também o índice do ']' final"""
    if not tokens or tokens[0].text != '[':
        start = tokens[0] if tokens else None
        span = (start.start, start.end) if start else (0, 1)
        raise ExprSyntaxError("Uma tupla começa com '['", span, text)
    coords: List[List[Token]] = [[]]
    depth = 0
    for i, token in enumerate(tokens[1:], start=1):
        if token.text == '(':
            depth += 1
        elif token.text == ')':
            depth -= 1
            if depth < 0:
                raise ExprSyntaxError("Parêntese sem par", (token.start, token.end), text)
        elif token.text in ('[', ']') and depth > 0:
            raise ExprSyntaxError("Colchete dentro de parênteses", (token.start, token.end), text)
        if depth == 0 and token.text == ']':
            return coords, i
        if depth == 0 and token.text == ',':
            coords.append([])
        else:
            coords[-1].append(token)
    last = tokens[-1]
    raise ExprSyntaxError("Falta o ']' final da tupla", (last.start, last.end), text)


def parse_map_expr(text: str) -> BirationalTuple:
    """`[expr_1, ..., expr_d] over CORPO` -> tupla birracional"""
    tokens = tokenize(text)
    coords, closing = _split_tuple(tokens, text)
    rest = tokens[closing + 1:]
    if not rest or rest[0].text != 'over':
        token = rest[0] if rest else tokens[closing]
        raise ExprSyntaxError("Esperado 'over' seguido do corpo", (token.start, token.end), text)
    if len(rest) == 1:
        raise ExprSyntaxError("Corpo ausente depois de 'over'", (rest[0].start, rest[0].end), text)
    field_text = text[rest[1].start:]
    try:
        field = parse_field(field_text)
    except ExprSyntaxError:
        raise ExprSyntaxError(f"Corpo desconhecido: {field_text.strip()!r}", (rest[1].start, len(text)), text)
    d = len(coords)
    values = []
    for coord_tokens in coords:
        if not coord_tokens:
            bracket = tokens[closing]
            raise ExprSyntaxError("Coordenada vazia", (bracket.start, bracket.end), text)
        values.append(_ExpressionParser(coord_tokens, text, d, field).parse())
    return BirationalTuple(values, field)


# Palavras de grupo

class _WordParser:

    def __init__(self, text: str, names: Sequence[str]):
        self.text = text
        self.names = list(names)
        self.by_length = sorted(range(len(self.names)), key=lambda i: -len(self.names[i]))
        self.position = 0

    def _skip(self):
        while self.position < len(self.text) and self.text[self.position].isspace():
            self.position += 1

    def _peek(self) -> str:
        self._skip()
        return self.text[self.position] if self.position < len(self.text) else ''

    def _error(self, message: str, start: int, end: int = None, kind=ExprSyntaxError):
        if start >= len(self.text):
            # Fim da entrada: marca o último caractere
            start, end = max(0, len(self.text) - 1), len(self.text)
        end = start + 1 if end is None else min(max(end, start + 1), len(self.text))
        return kind(message, (start, end), self.text)

    def parse(self) -> List[Tuple[int, int]]:
        letters = self.word(closing='')
        if self._peek():
            raise self._error(f"Símbolo inesperado {self._peek()!r}", self.position)
        return letters

    def word(self, closing: str) -> List[Tuple[int, int]]:
        letters: List[Tuple[int, int]] = []
        while True:
            char = self._peek()
            if char == '' or char in closing:
                return letters
            if char == '*':
                self.position += 1
                continue
            letters.extend(self.factor())

    def factor(self) -> List[Tuple[int, int]]:
        char = self._peek()
        if char == "[":
            self.position += 1
            left = self.word(closing=',')
            if self._peek() != ',':
                raise self._error("Esperado ',' no comutador", self.position)
            self.position += 1
            right = self.word(closing=']')
            if self._peek() != ']':
                raise self._error("Esperado ']' no comutador", self.position)
            self.position += 1
            base = left + right + _invert(left) + _invert(right)
        elif char == '1':
            self.position += 1
            base = []
        else:
            base = [self._letter()]
        exponent = self._exponent()
        if exponent is None:
            return base
        if exponent < 0:
            return _invert(base) * (-exponent)
        return base * exponent

    def _letter(self) -> Tuple[int, int]:
        start = self.position
        for index in self.by_length:
            name = self.names[index]
            if self.text.startswith(name, start):
                self.position += len(name)
                return (index, 1)
        for index in self.by_length:
            name = self.names[index]
            upper = name.upper()
            if upper != name and upper not in self.names and self.text.startswith(upper, start):
                self.position += len(name)
                return (index, -1)
        match = re.compile(r"[A-Za-z_][A-Za-z_0-9]*").match(self.text, start)
        end = match.end() if match else start + 1
        raise self._error(f"Gerador desconhecido {self.text[start:end]!r}", start, end, UnknownGenerator)

    def _exponent(self) -> Optional[int]:
        if self._peek() != '^':
            return None
        self.position += 1
        match = re.compile(r"\s*(-?\d+)").match(self.text, self.position)
        if not match:
            raise self._error("Expoente inteiro esperado depois de '^'", self.position)
        self.position = match.end()
        return int(match.group(1))


def _invert(letters: List[Tuple[int, int]]) -> List[Tuple[int, int]]:
    return [(index, -exponent) for index, exponent in reversed(letters)]


def parse_word(text: str, names: Sequence[str]) -> GroupWord:
    """Palavra com nomes de geradores, `^k`, maiúsculas como inversos e `[u,v]`"""
    return GroupWord(_WordParser(text, names).parse())


def parse_positive_word(text: str, names: Sequence[str]) -> List[int]:
    """Palavra sem inversos para o semigrupo (sem redução livre)"""
    letters = _WordParser(text, names).parse()
    for index, exponent in letters:
        if exponent < 0:
            raise ExprSyntaxError(f"Inverso de {names[index]!r} não é permitido em palavras de semigrupo",
                                  (0, max(1, len(text))), text)
    return [index for index, _ in letters]


# Arquivo de geradores: `nome: TUPLA ; inverse: TUPLA`

class GeneratorSpec(NamedTuple):
    name: str
    forward: BirationalTuple
    inverse: Optional[BirationalTuple]
    line: int


def parse_generator_file(text: str) -> List[GeneratorSpec]:
    specs: List[GeneratorSpec] = []
    seen = set()
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        head, sep, body = line.partition(':')
        name = head.strip()
        if not sep or not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", name):
            raise ExprSyntaxError(f"Linha {number}: esperado 'nome: TUPLA'", (0, max(1, len(line))), line)
        if name in seen:
            raise ExprSyntaxError(f"Linha {number}: gerador {name!r} repetido", (0, len(name)), line)
        seen.add(name)
        forward_text, _, inverse_part = body.partition(';')
        inverse = None
        if inverse_part.strip():
            label, sep, inverse_text = inverse_part.partition(':')
            if not sep or label.strip() != 'inverse':
                raise ExprSyntaxError(f"Linha {number}: esperado 'inverse: TUPLA'", (0, max(1, len(line))), line)
            inverse = parse_map_expr(inverse_text.strip())
        specs.append(GeneratorSpec(name, parse_map_expr(forward_text.strip()), inverse, number))
    return specs


# Impressão canônica

def _render_coefficient(coeff, field: FieldSpec) -> str:
    if field.is_rational:
        return str(Fraction(coeff))
    return str(coeff)


def _render_monomial(exponent: Sequence[int], names: Sequence[str]) -> str:
    parts = []
    for name, e in zip(names, exponent):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def render_polynomial(P: Polynomial) -> str:
    """Termos em ordem grlex decrescente; coeficiente 1 omitido"""
    if P.is_zero():
        return "0"
    names = variable_names(P.nvars)
    pieces = []
    for exponent, coeff in P.terms():
        negative = P.field.is_rational and coeff < 0
        magnitude = -coeff if negative else coeff
        monomial = _render_monomial(exponent, names)
        coeff_text = _render_coefficient(magnitude, P.field)
        if not monomial:
            text = coeff_text
        elif magnitude == 1:
            text = monomial
        else:
            if ' ' in coeff_text:
                coeff_text = f"({coeff_text})"
            text = f"{coeff_text}*{monomial}"
        if not pieces:
            pieces.append(f"-{text}" if negative else text)
        else:
            pieces.append(f" - {text}" if negative else f" + {text}")
    return "".join(pieces)


def render_fraction(F: RationalFunction) -> str:
    numerator = render_polynomial(F.numerator)
    if F.denominator.is_constant() and F.denominator.constant_value() == 1:
        return numerator
    denominator = render_polynomial(F.denominator)
    if ' ' in numerator:
        numerator = f"({numerator})"
    if ' ' in denominator or '*' in denominator or '/' in denominator:
        denominator = f"({denominator})"
    return f"{numerator}/{denominator}"


def render_tuple(f: BirationalTuple) -> str:
    return f"[{', '.join(render_fraction(c) for c in f.coords)}] over {f.field.tag}"


def render_word(word: GroupWord, names: Sequence[str]) -> str:
    if not word.letters:
        return "1"
    return "*".join(names[i] if e == 1 else f"{names[i]}^-1" for i, e in word.letters)


def render_element(e: CremonaElement) -> str:
    label = e.name or "_"
    return f"{label}: {render_tuple(e.forward)} ; inverse: {render_tuple(e.inverse)}"


def render(value, names: Sequence[str] = None) -> str:
    """Forma canônica de qualquer valor do laboratório"""
    if isinstance(value, Polynomial):
        return render_polynomial(value)
    if isinstance(value, RationalFunction):
        return render_fraction(value)
    if isinstance(value, BirationalTuple):
        return render_tuple(value)
    if isinstance(value, CremonaElement):
        return render_element(value)
    if isinstance(value, GroupWord):
        if names is None:
            names = [f"g{i}" for i in range(max((i for i, _ in value.letters), default=-1) + 1)]
        return render_word(value, names)
    if isinstance(value, FieldSpec):
        return value.tag
    return str(value)


def certify_generators(specs: Sequence[GeneratorSpec]) -> List[CremonaElement]:
    """Certifica cada gerador com a inversa declarada no arquivo"""
    elements = []
    for spec in specs:
        if spec.inverse is None:
            raise ExprSyntaxError(f"Linha {spec.line}: o gerador {spec.name!r} não declara 'inverse:'",
                                  (0, max(1, len(spec.name))), spec.name)
        elements.append(certify_inverse(spec.forward, spec.inverse, spec.name))
    return elements

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import List, Optional, Sequence, Tuple

from sympy import isprime

from ..errors import CremonaError, DomainMismatch, InfiniteField, NotPrime

# Acima deste tamanho não montamos tabelas de log/exp (multiplicação direta)
TABLE_LIMIT = 1 << 20


@dataclass(frozen=True)
class FieldSpec:
    """Corpo de coeficientes: QQ (p = 0), F_p (m = 1) ou F_{p^m} com módulo fixo"""

    p: int
    m: int = 1
    modulus: Optional[Tuple[int, ...]] = None  # coeficientes do grau 0 ao grau m (mônico)

    @property
    def is_rational(self) -> bool:
        return self.p == 0

    @property
    def q(self) -> int:
        if self.p == 0:
            raise InfiniteField("QQ não tem número finito de elementos")
        return self.p ** self.m

    @property
    def tag(self) -> str:
        if self.p == 0:
            return "QQ"
        if self.m == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.m})"

    def __str__(self) -> str:
        return self.tag

    def base_field(self) -> "FieldSpec":
        """Corpo primo contido neste corpo"""
        if self.p == 0 or self.m == 1:
            return self
        return FieldSpec(self.p)

    def embeds(self, other: "FieldSpec") -> bool:
        """Verifica se escalares de `other` podem ser lidos neste corpo (mergulho canônico)"""
        if other == self:
            return True
        return self.p > 0 and other.p == self.p and other.m == 1

    def zero(self):
        return self.element(0)

    def one(self):
        return self.element(1)

    def element(self, value):
        """Converte um inteiro (ou escalar compatível) em elemento deste corpo"""
        if self.p == 0:
            if isinstance(value, GFElement):
                raise DomainMismatch(f"Elemento de {value.field.tag} não pertence a QQ")
            return Fraction(value)
        if isinstance(value, GFElement):
            if value.field == self:
                return value
            if self.embeds(value.field):
                return GFElement(self, value.code)
            raise DomainMismatch(f"Elemento de {value.field.tag} não pertence a {self.tag}")
        if isinstance(value, Fraction):
            if value.denominator != 1:
                raise DomainMismatch(f"Racional {value} não é elemento de {self.tag}")
            value = value.numerator
        if not isinstance(value, int):
            raise DomainMismatch(f"Valor {value!r} não é escalar de {self.tag}")
        return GFElement(self, value % self.p)

    def from_code(self, code: int) -> "GFElement":
        return GFElement(self, code)

    # Aritmética sobre códigos inteiros (código = soma c_i p^i)

    def digits(self, code: int) -> List[int]:
        out = []
        for _ in range(self.m):
            code, r = divmod(code, self.p)
            out.append(r)
        return out

    def from_digits(self, digits: Sequence[int]) -> int:
        code = 0
        for c in reversed(digits):
            code = code * self.p + (c % self.p)
        return code

    def add_codes(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        return self.from_digits([x + y for x, y in zip(self.digits(a), self.digits(b))])

    def neg_code(self, a: int) -> int:
        if self.m == 1:
            return (-a) % self.p
        return self.from_digits([-x for x in self.digits(a)])

    def mul_codes(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.m == 1:
            return (a * b) % self.p
        tables = _log_tables(self)
        if tables is None:
            return self.from_digits(_poly_mulmod(self.digits(a), self.digits(b), self.modulus, self.p))
        exp, log = tables
        return exp[(log[a] + log[b]) % (self.q - 1)]

    def inv_code(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError(f"Zero não é invertível em {self.tag}")
        if self.m == 1:
            return pow(a, -1, self.p)
        tables = _log_tables(self)
        if tables is None:
            return self._pow_code(a, self.q - 2)
        exp, log = tables
        return exp[(-log[a]) % (self.q - 1)]

    def _pow_code(self, a: int, k: int) -> int:
        result, base = 1, a
        while k:
            if k & 1:
                result = self.from_digits(_poly_mulmod(self.digits(result), self.digits(base), self.modulus, self.p))
            base = self.from_digits(_poly_mulmod(self.digits(base), self.digits(base), self.modulus, self.p))
            k >>= 1
        return result


class GFElement:
    """Elemento de F_{p^m}, guardado como código inteiro do representante"""

    __slots__ = ('field', 'code')

    def __init__(self, field: FieldSpec, code: int):
        self.field = field
        self.code = code

    def __reduce__(self):
        return (GFElement, (self.field, self.code))

    def _coerce(self, other) -> Tuple[FieldSpec, int, int]:
        if isinstance(other, GFElement):
            if other.field == self.field:
                return self.field, self.code, other.code
            if self.field.embeds(other.field):
                return self.field, self.code, other.code
            if other.field.embeds(self.field):
                return other.field, self.code, other.code
            raise DomainMismatch(f"Escalares de {self.field.tag} e {other.field.tag} são incompatíveis")
        if isinstance(other, int) and not isinstance(other, bool):
            return self.field, self.code, other % self.field.p
        if isinstance(other, Fraction) and other.denominator == 1:
            return self.field, self.code, other.numerator % self.field.p
        raise DomainMismatch(f"Não é possível operar {self.field.tag} com {other!r}")

    def __add__(self, other):
        field, a, b = self._coerce(other)
        return GFElement(field, field.add_codes(a, b))

    __radd__ = __add__

    def __neg__(self):
        return GFElement(self.field, self.field.neg_code(self.code))

    def __sub__(self, other):
        field, a, b = self._coerce(other)
        return GFElement(field, field.add_codes(a, field.neg_code(b)))

    def __rsub__(self, other):
        field, a, b = self._coerce(other)
        return GFElement(field, field.add_codes(b, field.neg_code(a)))

    def __mul__(self, other):
        field, a, b = self._coerce(other)
        return GFElement(field, field.mul_codes(a, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        field, a, b = self._coerce(other)
        return GFElement(field, field.mul_codes(a, field.inv_code(b)))

    def __rtruediv__(self, other):
        field, a, b = self._coerce(other)
        return GFElement(field, field.mul_codes(b, field.inv_code(a)))

    def __pow__(self, k: int):
        if k < 0:
            return GFElement(self.field, self.field.inv_code(self.code)) ** (-k)
        result = GFElement(self.field, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> "GFElement":
        return GFElement(self.field, self.field.inv_code(self.code))

    def __eq__(self, other) -> bool:
        if isinstance(other, GFElement):
            if other.field.p != self.field.p:
                return False
            if other.field == self.field or self.field.embeds(other.field) or other.field.embeds(self.field):
                return self.code == other.code
            return False
        if isinstance(other, int) and not isinstance(other, bool):
            return self.code == other % self.field.p
        return NotImplemented

    def __hash__(self) -> int:
        # Elementos do corpo primo têm o mesmo hash em qualquer extensão
        return hash((self.field.p, self.code))

    def __bool__(self) -> bool:
        return self.code != 0

    def __lt__(self, other: "GFElement") -> bool:
        return self.code < other.code

    def in_prime_field(self) -> bool:
        return self.code < self.field.p

    def __str__(self) -> str:
        if self.in_prime_field():
            return str(self.code)
        digits = self.field.digits(self.code)
        parts = []
        for k in range(len(digits) - 1, -1, -1):
            c = digits[k]
            if c == 0:
                continue
            if k == 0:
                parts.append(str(c))
            else:
                mono = "a" if k == 1 else f"a^{k}"
                parts.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"{self.field.tag}<{self}>"


def _poly_trim(a: List[int]) -> List[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: Sequence[int], b: Sequence[int], p: int) -> List[int]:
    """Resto da divisão de a por b em F_p[x] (listas do grau 0 ao maior grau)"""
    a = _poly_trim([c % p for c in a])
    b = _poly_trim([c % p for c in b])
    inv_lead = pow(b[-1], -1, p)
    while len(a) >= len(b):
        factor = (a[-1] * inv_lead) % p
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] = (a[shift + i] - factor * c) % p
        _poly_trim(a)
    return a


def _poly_mulmod(a: Sequence[int], b: Sequence[int], modulus: Sequence[int], p: int) -> List[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    reduced = _poly_mod(out, modulus, p)
    m = len(modulus) - 1
    return reduced + [0] * (m - len(reduced))


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Irredutibilidade por divisão exaustiva por todos os mônicos de grau <= m/2"""
    m = len(modulus) - 1
    if m <= 0:
        return False
    if m == 1:
        return True
    for degree in range(1, m // 2 + 1):
        for low in product(range(p), repeat=degree):
            divisor = list(low) + [1]
            if not _poly_mod(modulus, divisor, p):
                return False
    return True


@lru_cache(maxsize=64)
def _log_tables(field: FieldSpec) -> Optional[Tuple[List[int], List[int]]]:
    """Tabelas exp/log a partir de um elemento primitivo (None para corpos grandes)"""
    q = field.q
    if q > TABLE_LIMIT:
        return None
    for generator in range(2, q):
        exp = [1]
        current = [1] + [0] * (field.m - 1)
        g_digits = field.digits(generator)
        for _ in range(q - 2):
            current = _poly_mulmod(current, g_digits, field.modulus, field.p)
            code = field.from_digits(current)
            if code == 1:
                break
            exp.append(code)
        if len(exp) == q - 1:
            log = [0] * q
            for k, code in enumerate(exp):
                log[code] = k
            return exp, log
    raise CremonaError(f"Nenhum elemento primitivo encontrado em {field.tag}")


def build_field(p: int, m: int = 1) -> FieldSpec:
    """Monta F_{p^m} com o menor módulo mônico irredutível na ordem lexicográfica"""
    if not isprime(p):
        raise NotPrime(f"{p} não é primo")
    if m < 1:
        raise CremonaError(f"Grau de extensão inválido: {m}")
    if m == 1:
        return FieldSpec(p, 1)
    for code in range(p ** m):
        low = [0] * m
        rest = code
        for i in range(m):
            rest, low[i] = divmod(rest, p)
        modulus = tuple(low) + (1,)
        if is_irreducible(modulus, p):
            return FieldSpec(p, m, modulus)
    raise CremonaError(f"Nenhum polinômio irredutível de grau {m} sobre F_{p}")


def enumerate_field(spec: FieldSpec) -> List[GFElement]:
    """Todos os q elementos, em ordem lexicográfica dos coeficientes"""
    if spec.p == 0:
        raise InfiniteField("Não é possível enumerar QQ")
    return [GFElement(spec, code) for code in range(spec.q)]


QQ = FieldSpec(0)


def rational_text(value) -> str:
    """Racional exato serializado como "num/den" """
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"

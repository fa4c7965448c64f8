from typing import List, Optional, Sequence, Tuple

from .errors import DomainMismatch, NotInverse, SingularPoint
from .exactalg import FieldSpec, Polynomial, RationalFunction, frac_compose

Point = Tuple


class BirationalTuple:
    """Tupla (f_1, ..., f_d) de frações em d variáveis sobre um corpo fixo"""

    __slots__ = ('dimension', 'coords', 'field')

    def __init__(self, coords: Sequence[RationalFunction], field: FieldSpec = None):
        coords = tuple(coords)
        if not coords:
            raise DomainMismatch("Uma tupla birracional precisa de pelo menos uma coordenada")
        d = len(coords)
        field = field or coords[0].field
        for i, coord in enumerate(coords):
            if not isinstance(coord, RationalFunction):
                raise DomainMismatch(f"Coordenada {i} não é fração racional")
            if coord.nvars != d:
                raise DomainMismatch(f"Coordenada {i} usa {coord.nvars} variáveis, esperado {d}")
            if coord.field != field:
                raise DomainMismatch(f"Coordenada {i} está sobre {coord.field.tag}, esperado {field.tag}")
        self.dimension = d
        self.coords = coords
        self.field = field

    def __reduce__(self):
        return (BirationalTuple, (self.coords, self.field))

    def __len__(self) -> int:
        return self.dimension

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, index: int) -> RationalFunction:
        return self.coords[index]

    def _check(self, other: "BirationalTuple"):
        if not isinstance(other, BirationalTuple):
            raise DomainMismatch(f"Operando não é tupla birracional: {other!r}")
        if other.dimension != self.dimension:
            raise DomainMismatch(f"Dimensões diferentes: {self.dimension} e {other.dimension}")
        if other.field != self.field:
            raise DomainMismatch(f"Corpos diferentes: {self.field.tag} e {other.field.tag}")

    def evaluate(self, point: Sequence) -> Point:
        """Avaliação coordenada a coordenada; DenominatorVanishes em X_f"""
        return tuple(coord.evaluate(point) for coord in self.coords)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BirationalTuple):
            return NotImplemented
        return self.field == other.field and self.coords == other.coords

    def __hash__(self) -> int:
        return hash(self.coords)

    def __repr__(self) -> str:
        from .frontend import render_tuple
        return f"BirationalTuple({render_tuple(self)})"


def identity(d: int, field: FieldSpec) -> BirationalTuple:
    if d < 1:
        raise DomainMismatch(f"Dimensão inválida: {d}")
    return BirationalTuple([RationalFunction.variable(d, field, i) for i in range(d)], field)


def compose(g: BirationalTuple, f: BirationalTuple) -> BirationalTuple:
    """g o f: substitui as coordenadas de f nas de g"""
    g._check(f)
    return BirationalTuple([frac_compose(coord, f.coords) for coord in g.coords], g.field)


def first_mismatch(f: BirationalTuple, g: BirationalTuple) -> Optional[Tuple[int, Polynomial]]:
    """Primeira coordenada onde P1*Q2 - P2*Q1 não é nulo, com esse polinômio"""
    f._check(g)
    for i, (a, b) in enumerate(zip(f.coords, g.coords)):
        difference = a.cross_difference(b)
        if not difference.is_zero():
            return i, difference
    return None


def tuple_eq(f: BirationalTuple, g: BirationalTuple) -> bool:
    return first_mismatch(f, g) is None


def indeterminacy_polys(f: BirationalTuple) -> List[Polynomial]:
    """Denominadores não constantes; X_f é a união dos seus zeros"""
    return [coord.denominator for coord in f.coords if not coord.denominator.is_constant()]


def formula_size(f: BirationalTuple) -> int:
    """Tamanho da forma canônica impressa (comprimento das fórmulas)"""
    from .frontend import render_tuple
    return len(render_tuple(f))


class CremonaElement:
    """Elemento certificado: tupla direta e tupla inversa verificadas simbolicamente"""

    __slots__ = ('forward', 'inverse', 'name', '_forward_dens', '_inverse_dens')

    def __init__(self, forward: BirationalTuple, inverse: BirationalTuple, name: Optional[str] = None):
        # Uso interno: quem chama já garante que as tuplas são inversas
        self.forward = forward
        self.inverse = inverse
        self.name = name
        self._forward_dens = indeterminacy_polys(forward)
        self._inverse_dens = indeterminacy_polys(inverse)

    def __reduce__(self):
        return (CremonaElement, (self.forward, self.inverse, self.name))

    @property
    def dimension(self) -> int:
        return self.forward.dimension

    @property
    def field(self) -> FieldSpec:
        return self.forward.field

    def inverted(self, name: Optional[str] = None) -> "CremonaElement":
        """O inverso no grupo (troca as duas tuplas já certificadas)"""
        if name is None and self.name is not None:
            name = self.name + "^-1"
        return CremonaElement(self.inverse, self.forward, name)

    def renamed(self, name: Optional[str]) -> "CremonaElement":
        return CremonaElement(self.forward, self.inverse, name)

    def same_as(self, other: "CremonaElement") -> bool:
        return tuple_eq(self.forward, other.forward)

    def __repr__(self) -> str:
        from .frontend import render_tuple
        label = f"{self.name}: " if self.name else ""
        return f"CremonaElement({label}{render_tuple(self.forward)})"


def certify_inverse(f: BirationalTuple, g: BirationalTuple, name: Optional[str] = None) -> CremonaElement:
    """Admite f no grupo se f o g e g o f são a identidade (igualdade por produto cruzado)"""
    f._check(g)
    unit = identity(f.dimension, f.field)
    for label, composite in (("f o g", compose(f, g)), ("g o f", compose(g, f))):
        mismatch = first_mismatch(composite, unit)
        if mismatch is not None:
            index, witness = mismatch
            raise NotInverse(f"{label} difere da identidade na coordenada {index}", index, witness)
    return CremonaElement(f, g, name)


def identity_element(d: int, field: FieldSpec) -> CremonaElement:
    unit = identity(d, field)
    return CremonaElement(unit, unit, "id")


def multiply(g: CremonaElement, f: CremonaElement) -> CremonaElement:
    """Produto g*f = g o f, com inversa f^-1 o g^-1"""
    return CremonaElement(compose(g.forward, f.forward), compose(f.inverse, g.inverse))


def _vanishes(polys: Sequence[Polynomial], point: Sequence) -> bool:
    return any(poly.evaluate(point) == 0 for poly in polys)


def regular_image(e: CremonaElement, x: Sequence) -> Optional[Point]:
    """f(x) quando x está fora de Z_f; None exatamente quando x pertence a Z_f"""
    if _vanishes(e._forward_dens, x):
        return None
    image = e.forward.evaluate(x)
    if _vanishes(e._inverse_dens, image):
        return None
    return image


def in_singular_set(e: CremonaElement, x: Sequence) -> bool:
    """x em Z_f = X_f U f^-1(X_f'), teste ponto a ponto"""
    return regular_image(e, x) is None


def eval_point(e: CremonaElement, x: Sequence) -> Point:
    image = regular_image(e, x)
    if image is None:
        raise SingularPoint(f"O ponto {tuple(str(v) for v in x)} está no conjunto singular")
    return image


__all__ = [
    'BirationalTuple', 'CremonaElement', 'identity', 'identity_element', 'compose', 'tuple_eq',
    'first_mismatch', 'certify_inverse', 'indeterminacy_polys', 'eval_point', 'in_singular_set',
    'regular_image', 'multiply', 'formula_size',
]

from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from sympy import nextprime, primefactors

from .biratmap import (
    BirationalTuple,
    CremonaElement,
    certify_inverse,
    compose,
    identity,
    tuple_eq,
)
from .errors import (
    BadPrime,
    DegenerateComposition,
    DomainMismatch,
    MissingIdentity,
    NotInverse,
    NotSymmetric,
    ReductionFailure,
)
from .exactalg import build_field, collect_coefficients, frac_sub, rational_text, reduce_fraction
from .notification_manager import NotificationManager


@dataclass
class SpecializationPlan:
    """Constantes c1, c2, primos ruins e o primo escolhido para reduzir W"""

    source: List[CremonaElement]
    c1: Fraction
    c2: Fraction
    bad_primes: FrozenSet[int]
    chosen_prime: int
    p0: int = 2
    ww_size: int = 0
    pairs: int = 0

    def to_record(self) -> Dict[str, object]:
        return {
            'c1': rational_text(self.c1),
            'c2': rational_text(self.c2),
            'badPrimes': sorted(self.bad_primes),
            'chosenPrime': self.chosen_prime,
            'p0': self.p0,
        }


@dataclass
class SpecializationCheck:
    injective: bool
    products_preserved: bool
    identity_preserved: bool
    triples_checked: int
    failures: List[Tuple[int, int, int]] = dataclass_field(default_factory=list)

    def to_record(self) -> Dict[str, object]:
        return {
            'injective': self.injective,
            'productsPreserved': self.products_preserved,
            'identityPreserved': self.identity_preserved,
            'triplesChecked': self.triples_checked,
        }


def _product(values) -> Fraction:
    result = Fraction(1)
    for value in values:
        if value != 0:
            result *= Fraction(value)
    return result


def _coefficient_denominators(tuples: Sequence[BirationalTuple]) -> set:
    primes = set()
    for f in tuples:
        for coord in f.coords:
            for coeff in coord.numerator.coefficients() + coord.denominator.coefficients():
                primes.update(primefactors(Fraction(coeff).denominator))
    return primes


def check_symmetric(W: Sequence[CremonaElement]):
    """W contém a identidade e é fechado por inversos"""
    if not W:
        raise MissingIdentity("Conjunto vazio não contém a identidade")
    unit = identity(W[0].dimension, W[0].field)
    if not any(tuple_eq(u.forward, unit) for u in W):
        raise MissingIdentity("O conjunto não contém a identidade")
    for u in W:
        if not any(tuple_eq(v.forward, u.inverse) for v in W):
            label = u.name or "?"
            raise NotSymmetric(f"O inverso de {label} não está no conjunto")


def distinct_elements(W: Sequence[CremonaElement]) -> List[CremonaElement]:
    """Remove repetições (igualdade por produto cruzado), preservando a ordem"""
    out: List[CremonaElement] = []
    for u in W:
        if not any(tuple_eq(u.forward, v.forward) for v in out):
            out.append(u)
    return out


def compute_bad_primes(W: Sequence[CremonaElement]) -> Tuple[Fraction, Fraction, FrozenSet[int]]:
    """(c1, c2, primos ruins) a partir de W e dos produtos WW"""
    if W and not W[0].field.is_rational:
        raise DomainMismatch(f"compute_bad_primes exige coeficientes em QQ, recebido {W[0].field.tag}")
    check_symmetric(W)
    W = distinct_elements(W)
    products = [compose(u.forward, v.forward) for u in W for v in W]
    c1 = _product(collect_coefficients(coord.denominator for f in products for coord in f.coords))
    differences = []
    for i, u in enumerate(W):
        for v in W[i + 1:]:
            for a, b in zip(u.forward.coords, v.forward.coords):
                differences.append(frac_sub(a, b))
    c2 = _product(collect_coefficients(diff.numerator for diff in differences))
    c = c1 * c2
    bad = set(primefactors(c.numerator)) | set(primefactors(c.denominator))
    bad |= _coefficient_denominators([u.forward for u in W] + products)
    return c1, c2, frozenset(bad)


def choose_prime(bad_primes, p0: int = 2) -> int:
    """Menor primo >= p0 fora dos primos ruins"""
    if p0 < 2:
        raise DomainMismatch(f"p0 deve ser >= 2, recebido {p0}")
    p = nextprime(p0 - 1)
    while p in bad_primes:
        p = nextprime(p)
    return int(p)


def plan_specialization(W: Sequence[CremonaElement], p0: int = 2, debug_mode: bool = False) -> SpecializationPlan:
    notifier = NotificationManager(debug_mode)
    field = W[0].field if W else None
    if field is not None and not field.is_rational:
        if field.m != 1:
            raise DomainMismatch(f"Especialização definida só para QQ e F_p, recebido {field.tag}")
        # Sobre F_p a especialização é a identidade
        check_symmetric(W)
        return SpecializationPlan(list(W), Fraction(1), Fraction(1), frozenset(), field.p, p0)
    c1, c2, bad = compute_bad_primes(W)
    prime = choose_prime(bad, p0)
    distinct = distinct_elements(W)
    notifier.debug(f"c1 = {c1}, c2 = {c2}, primos ruins = {sorted(bad)}, primo escolhido = {prime}")
    return SpecializationPlan(list(W), c1, c2, bad, prime, p0,
                              ww_size=len(distinct) ** 2, pairs=len(distinct) * (len(distinct) - 1) // 2)


def reduce_tuple(f: BirationalTuple, p: int) -> BirationalTuple:
    """Redução coeficiente a coeficiente de uma tupla sobre QQ"""
    return BirationalTuple([reduce_fraction(coord, p) for coord in f.coords], build_field(p))


def specialize_element(u: CremonaElement, p: int) -> CremonaElement:
    if not u.field.is_rational:
        if u.field.p == p and u.field.m == 1:
            return u
        raise DomainMismatch(f"Não é possível especializar {u.field.tag} em F_{p}")
    forward = reduce_tuple(u.forward, p)
    inverse = reduce_tuple(u.inverse, p)
    try:
        return certify_inverse(forward, inverse, u.name)
    except (NotInverse, DegenerateComposition) as e:
        raise ReductionFailure(f"A redução de {u.name or '?'} módulo {p} não é invertível: {e}")


def specialize_chunk(W: Sequence[CremonaElement], p: int, plan: Optional[SpecializationPlan] = None) -> List[CremonaElement]:
    """Reduz cada elemento de W módulo p e recertifica sobre F_p"""
    if W and W[0].field.is_rational:
        bad = plan.bad_primes if plan is not None else compute_bad_primes(W)[2]
        if p in bad:
            raise BadPrime(f"{p} é um primo ruim para este conjunto: {sorted(bad)}")
    return [specialize_element(u, p) for u in W]


def verify_specialization(W: Sequence[CremonaElement], reduced: Sequence[CremonaElement]) -> SpecializationCheck:
    """Verifica injetividade, identidade e todos os produtos uv = w dentro de W"""
    n = len(W)
    injective = all(
        tuple_eq(W[i].forward, W[j].forward) or not tuple_eq(reduced[i].forward, reduced[j].forward)
        for i in range(n) for j in range(i + 1, n)
    )
    unit = identity(W[0].dimension, W[0].field)
    reduced_unit = identity(reduced[0].dimension, reduced[0].field)
    identity_preserved = all(
        tuple_eq(reduced[i].forward, reduced_unit) for i in range(n) if tuple_eq(W[i].forward, unit)
    )
    failures = []
    checked = 0
    for i in range(n):
        for j in range(n):
            product = compose(W[i].forward, W[j].forward)
            reduced_product = compose(reduced[i].forward, reduced[j].forward)
            for k in range(n):
                if tuple_eq(product, W[k].forward):
                    checked += 1
                    if not tuple_eq(reduced_product, reduced[k].forward):
                        failures.append((i, j, k))
    return SpecializationCheck(injective, not failures, identity_preserved, checked, failures)

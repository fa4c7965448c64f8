"""
Testes da especialização de conjuntos simétricos sobre QQ módulo primos bons
"""

from fractions import Fraction

import pytest

from src.biratmap import certify_inverse, compose, identity_element, multiply, tuple_eq
from src.errors import BadPrime, DomainMismatch, MissingIdentity, NotSymmetric, ReductionFailure
from src.exactalg import QQ
from src.frontend import render_tuple
from src.specialize import (
    check_symmetric,
    choose_prime,
    compute_bad_primes,
    distinct_elements,
    plan_specialization,
    specialize_chunk,
    specialize_element,
    verify_specialization,
)


def test_bad_primes_of_half_translations(whalf):
    c1, c2, bad = compute_bad_primes(whalf.elements)
    assert c1 == 1
    assert c2 == Fraction(-1, 4)
    assert bad == {2}


def test_plan_chooses_smallest_good_prime(whalf):
    plan = plan_specialization(whalf.elements, p0=2)
    assert plan.chosen_prime == 3
    assert plan.to_record() == {'c1': "1/1", 'c2': "-1/4", 'badPrimes': [2], 'chosenPrime': 3, 'p0': 2}
    assert plan.ww_size == 9
    assert plan.pairs == 3


def test_specialized_half_translations(whalf):
    plan = plan_specialization(whalf.elements)
    reduced = specialize_chunk(whalf.elements, plan.chosen_prime, plan)
    assert [render_tuple(e.forward) for e in reduced] == [
        "[x] over GF(3)", "[x + 2] over GF(3)", "[x + 1] over GF(3)",
    ]
    check = verify_specialization(whalf.elements, reduced)
    assert check.injective
    assert check.products_preserved
    assert check.identity_preserved
    assert check.failures == []


def test_specializing_at_bad_prime_fails(whalf):
    with pytest.raises(BadPrime):
        specialize_chunk(whalf.elements, 2)


def test_choose_prime():
    assert choose_prime({2, 3, 5}, 2) == 7
    assert choose_prime(set(), 10) == 11
    assert choose_prime(set(), 11) == 11
    with pytest.raises(DomainMismatch):
        choose_prime(set(), 1)


def test_symmetry_checks(tup):
    a = certify_inverse(tup("[x + 1] over QQ"), tup("[x - 1] over QQ"), "a")
    unit = identity_element(1, QQ)
    with pytest.raises(MissingIdentity):
        check_symmetric([a, a.inverted()])
    with pytest.raises(NotSymmetric):
        check_symmetric([unit, a])
    check_symmetric([unit, a, a.inverted()])


def test_distinct_elements(tup):
    unit = identity_element(1, QQ)
    same = certify_inverse(tup("[(x^2 + x)/(x + 1)] over QQ"), tup("[x] over QQ"))
    assert len(distinct_elements([unit, same])) == 1


def test_bad_primes_from_collisions(tup):
    # x + 3 e x - 2 coincidem módulo 5
    a = certify_inverse(tup("[x + 3] over QQ"), tup("[x - 3] over QQ"), "a")
    b = certify_inverse(tup("[x - 2] over QQ"), tup("[x + 2] over QQ"), "b")
    W = [identity_element(1, QQ), a, a.inverted(), b, b.inverted()]
    _, _, bad = compute_bad_primes(W)
    assert 5 in bad
    prime = plan_specialization(W).chosen_prime
    assert prime not in bad
    reduced = specialize_chunk(W, prime)
    assert verify_specialization(W, reduced).injective


def test_reduction_of_moebius_map(tup):
    b = certify_inverse(tup("[x/(2*x + 1)] over QQ"), tup("[x/(1 - 2*x)] over QQ"), "b")
    assert render_tuple(specialize_element(b, 3).forward) == "[2*x/(x + 2)] over GF(3)"
    with pytest.raises(BadPrime):
        specialize_element(certify_inverse(tup("[2*x] over QQ"), tup("[x/2] over QQ")), 2)


def test_reduction_failure(tup):
    # (x + 3)/x vira a constante 1 módulo 3
    f = certify_inverse(tup("[(x + 3)/x] over QQ"), tup("[3/(x - 1)] over QQ"), "f")
    with pytest.raises(ReductionFailure):
        specialize_element(f, 3)


def test_prime_field_input_is_already_specialized(klein):
    plan = plan_specialization(klein.elements)
    assert plan.chosen_prime == 5
    assert plan.bad_primes == frozenset()
    assert specialize_element(klein.elements[1], 5) is klein.elements[1]
    with pytest.raises(DomainMismatch):
        specialize_element(klein.elements[1], 7)


def test_extension_field_input_rejected(tup):
    f = tup("[x + a] over GF(5^2)")
    element = certify_inverse(f, tup("[x - a] over GF(5^2)"))
    with pytest.raises(DomainMismatch):
        plan_specialization([element])


def symmetric_free_pair(free_pair):
    a, b = free_pair.elements
    return [identity_element(1, QQ), a, a.inverted(), b, b.inverted()]


@pytest.mark.parametrize("system", ["whalf", "free_pair"])
def test_reduction_commutes_with_composition(request, system):
    elements = request.getfixturevalue(system).elements
    W = elements if system == "whalf" else symmetric_free_pair(request.getfixturevalue(system))
    p = plan_specialization(W).chosen_prime
    for u in W:
        for v in W:
            reduced_product = specialize_element(multiply(u, v), p).forward
            product_of_reduced = compose(specialize_element(u, p).forward, specialize_element(v, p).forward)
            assert tuple_eq(reduced_product, product_of_reduced)

"""
Testes dos chunks, da busca de sigma e da construção de Følner
"""

import os
from fractions import Fraction

import numpy as np
import pytest

from src.chunkcore import (
    FiniteMap,
    alpha_upper,
    box_witness,
    chunk_of_oracle,
    dichotomy_check,
    folner_to_sofic,
    format_chunk,
    injective_rep_search,
    is_eps_morphism,
    is_expansive,
    is_injective,
    is_representation,
    parse_chunk_text,
    product_defects,
    read_chunk_file,
    sigma_search,
    sigma_upper,
    validate_chunk,
    write_chunk_file,
)
from src.config import LabConfig
from src.errors import (
    InvalidChunk,
    MissingBasepoint,
    NotFunctional,
    OracleError,
    SearchSpaceExceeded,
    WitnessTooSmall,
)
from src.oracles import CyclicGroupOracle, GroupOracleFactory, IntegerLatticeOracle


@pytest.fixture
def z3():
    return chunk_of_oracle(CyclicGroupOracle(3))


def cyclic_map():
    """Representação regular de Z/3 em Sym_3"""
    return FiniteMap(3, {
        0: np.array([0, 1, 2]),
        1: np.array([1, 2, 0]),
        2: np.array([2, 0, 1]),
    })


# Chunks

def test_validate_chunk():
    chunk = validate_chunk(['e', 'a'], 'e', [('e', 'a', 'a'), ('e', 'a', 'a')])
    assert len(chunk) == 2
    assert chunk.product('e', 'a') == 'a'
    assert chunk.product('a', 'a') is None


def test_validate_chunk_errors():
    with pytest.raises(MissingBasepoint):
        validate_chunk([0, 1], 2, [])
    with pytest.raises(InvalidChunk):
        validate_chunk([0, 1], 0, [(0, 1, 5)])
    with pytest.raises(NotFunctional) as info:
        validate_chunk([0, 1], 0, [(0, 0, 0), (0, 0, 1)])
    assert info.value.first == (0, 0, 0)
    assert info.value.second == (0, 0, 1)


def test_chunk_of_oracle(z3):
    assert z3.elements == (0, 1, 2)
    assert z3.basepoint == 0
    assert len(z3.triples()) == 9
    assert z3.product(2, 2) == 1


def test_chunk_of_infinite_oracle_needs_subset():
    lattice = IntegerLatticeOracle(1)
    with pytest.raises(InvalidChunk):
        chunk_of_oracle(lattice)
    chunk = chunk_of_oracle(lattice, lattice.cross_generators())
    assert chunk.basepoint == (0,)
    assert chunk.product((1,), (-1,)) == (0,)
    assert chunk.product((1,), (1,)) is None


# Morfismos finitos

def test_regular_representation(z3):
    f = cyclic_map()
    assert is_representation(f, z3)
    assert is_injective(f, z3)
    assert is_expansive(f, z3, 1)
    assert all(defect == 0 for _, defect in product_defects(f, z3))


def test_eps_morphism_requires_identity_at_basepoint(z3):
    f = cyclic_map()
    f.images[0] = np.array([1, 0, 2])
    assert not is_eps_morphism(f, z3, 1)


def test_trivial_map_is_not_expansive(z3):
    trivial = FiniteMap(3, {e: np.arange(3) for e in z3.elements})
    assert is_representation(trivial, z3)
    assert not is_injective(trivial, z3)


# Busca de sigma

def test_sigma_of_cyclic_group(z3):
    assert sigma_upper(z3, 3, 5) == 3
    found = sigma_search(z3, 3, 5)
    assert is_eps_morphism(found, z3, Fraction(1, 3))
    assert is_expansive(found, z3, Fraction(2, 3))


def test_sigma_requires_r_above_one(z3):
    with pytest.raises(InvalidChunk):
        sigma_upper(z3, 1, 5)


def test_sigma_none_below_n_max(z3):
    assert sigma_upper(z3, 3, 2) is None


def test_injective_representation(z3):
    found = injective_rep_search(z3, 5)
    assert found.n == 3
    assert is_representation(found, z3)
    assert is_injective(found, z3)


def test_dichotomy(z3):
    record = dichotomy_check(z3, 3, 5)
    assert record['sigma'] == 3
    assert not record['below_r']
    assert record['holds']
    record = dichotomy_check(z3, 4, 5)
    assert record['sigma'] == 3
    assert record['below_r']
    assert record['exact']
    assert record['holds']


def test_search_space_cap(z3):
    with pytest.raises(SearchSpaceExceeded):
        sigma_upper(z3, 3, 5, LabConfig(search_cap=10))


# Arquivos de chunk

def test_read_chunk_file(data_dir):
    chunk = read_chunk_file(os.path.join(data_dir, "z3_chunk.txt"))
    assert chunk.elements == ('0', '1', '2')
    assert chunk.basepoint == '0'
    assert chunk.product('2', '2') == '1'
    assert sigma_upper(chunk, 3, 5) == 3


def test_chunk_file_round_trip(tmp_path, data_dir):
    chunk = read_chunk_file(os.path.join(data_dir, "z3_chunk.txt"))
    path = tmp_path / "copia.txt"
    write_chunk_file(chunk, str(path))
    assert read_chunk_file(str(path)) == chunk
    assert parse_chunk_text(format_chunk(chunk)) == chunk


def test_chunk_file_errors():
    with pytest.raises(InvalidChunk):
        parse_chunk_text("basepoint: 0\n0 0 0\n")
    with pytest.raises(MissingBasepoint):
        parse_chunk_text("elements: 0 1\n")
    with pytest.raises(InvalidChunk):
        parse_chunk_text("elements: 0 1\nbasepoint: 0\n0 1\n")


# Følner

def test_folner_interval():
    witness = box_witness(1, 64)
    assert witness.boundary == {(-1,), (64,)}
    assert witness.ratio == Fraction(1, 32)
    f, verification = folner_to_sofic(witness, 21)
    assert f.n == 64
    assert verification.boundary_size == 2
    assert verification.agreements[(1,)] == Fraction(63, 64)
    assert verification.holds
    # A extensão ordenada fecha o deslocamento em um ciclo
    assert f[(1,)][63] == 0
    assert sorted(f[(1,)].tolist()) == list(range(64))


def test_folner_square():
    witness = box_witness(2, 16)
    assert len(witness.boundary) == 64
    f, verification = folner_to_sofic(witness, Fraction(7, 2))
    assert f.n == 256
    assert verification.boundary_size == 64
    assert verification.agreements[(1, 0)] == Fraction(15, 16)
    assert all(s == 1 for *_, s in verification.separations)
    assert verification.holds


def test_folner_witness_too_small():
    with pytest.raises(WitnessTooSmall):
        folner_to_sofic(box_witness(1, 10), 21)


def test_alpha_upper():
    lattice = IntegerLatticeOracle(1)
    S = lattice.cross_generators()
    boxes = [lattice.box(k) for k in (10, 40, 43, 64)]
    assert alpha_upper(lattice, S, 21, boxes) == 43
    assert alpha_upper(lattice, S, 21, boxes[:2]) is None


# Oráculos

def test_oracle_factory():
    assert isinstance(GroupOracleFactory.create_oracle("cyclic:4"), CyclicGroupOracle)
    lattice = GroupOracleFactory.create_oracle("lattice:2")
    assert lattice.describe() == "Z^2"
    assert GroupOracleFactory.is_oracle_supported('cyclic')
    assert set(GroupOracleFactory.get_available_oracles()) == {'lattice', 'cyclic'}
    with pytest.raises(OracleError):
        GroupOracleFactory.create_oracle("dihedral:4")
    with pytest.raises(OracleError):
        GroupOracleFactory.create_oracle("cyclic:x")


def test_oracle_arithmetic():
    z5 = CyclicGroupOracle(5)
    assert z5.multiply(3, 4) == 2
    assert z5.inverse(2) == 3
    assert z5.check_associativity(z5.elements())
    with pytest.raises(OracleError):
        z5.multiply(5, 0)
    lattice = IntegerLatticeOracle(2)
    assert lattice.multiply((1, 2), (3, -2)) == (4, 0)
    assert lattice.left_translate((1, 0), [(0, 0), (2, 3)]) == [(1, 0), (3, 3)]
    assert len(lattice.cross_generators()) == 5
    with pytest.raises(OracleError):
        lattice.box(0)

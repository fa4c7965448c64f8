import os

import pytest
from hypothesis import HealthCheck, settings

from src.exactalg import QQ, build_field
from src.frontend import certify_generators, parse_generator_file, parse_map_expr
from src.wordlang import GeneratorSystem

DATA_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "data")

settings.register_profile(
    "laboratorio", deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture]
)
settings.load_profile("laboratorio")


def load_system(filename):
    with open(os.path.join(DATA_DIR, filename), encoding='utf-8') as f:
        specs = parse_generator_file(f.read())
    return GeneratorSystem(certify_generators(specs), [s.name for s in specs])


@pytest.fixture
def data_dir():
    return DATA_DIR


@pytest.fixture
def gf5():
    return build_field(5)


@pytest.fixture
def qq():
    return QQ


@pytest.fixture
def klein():
    """Grupo de Klein {id, s, t, u} sobre F_5"""
    return load_system("klein.txt")


@pytest.fixture
def free_pair():
    return load_system("free_pair.txt")


@pytest.fixture
def whalf():
    return load_system("whalf.txt")


@pytest.fixture
def translations():
    return load_system("translations.txt")


@pytest.fixture
def tup():
    """Atalho para montar tuplas a partir do texto"""
    return parse_map_expr

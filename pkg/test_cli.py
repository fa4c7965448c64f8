"""
Testes da linha de comando (códigos de saída e formatos de saída)
"""

import argparse
import json
import os

import pytest

from src.cli import RunConfig, main, parse_m_range


@pytest.fixture
def gens(data_dir):
    return lambda name: os.path.join(data_dir, name)


def run_json(capsys, argv):
    code = main(argv + ['--format', 'json'])
    return code, json.loads(capsys.readouterr().out)


def test_check(capsys, gens):
    code, record = run_json(capsys, ['check', '--gens', gens("klein.txt")])
    assert code == 0
    assert record['dimension'] == 2
    assert record['certified'] is True
    assert len(record['generators']) == 4


def test_word_not_identity_exits_one(capsys, gens):
    code = main(['word', '--gens', gens("free_pair.txt"), '--word', "[a,b]"])
    assert code == 1
    assert "identity: false" in capsys.readouterr().out


def test_word_identity(capsys, gens):
    code, record = run_json(capsys, ['word', '--gens', gens("klein.txt"), '--word', "stU"])
    assert code == 0
    assert record['identity'] is True


def test_compose(capsys, gens):
    code, record = run_json(capsys, ['compose', '--gens', gens("translations.txt"), '--word', "ab"])
    assert code == 0
    assert record['value'] == "[x + 1, y + 1] over QQ"


def test_semigroup_eq(capsys, gens):
    path = gens("translations.txt")
    assert main(['semigroup-eq', '--gens', path, '--word', "ab", '--word2', "ba"]) == 0
    assert main(['semigroup-eq', '--gens', path, '--word', "ah", '--word2', "ha"]) == 1
    capsys.readouterr()


def test_specialize(capsys, gens):
    code, record = run_json(capsys, ['specialize', '--gens', gens("whalf.txt")])
    assert code == 0
    assert record['chosenPrime'] == 3
    assert record['badPrimes'] == [2]


def test_sofic_json(capsys, gens):
    code, record = run_json(capsys, ['sofic', '--gens', gens("klein.txt"), '--p', "5", '--m', "1"])
    assert code == 0
    assert record['reports'][0]['epsilon'] == "13/25"
    assert record['certificates'] == [{'r': "25/13", 'n': 25}]


def test_sofic_csv(capsys, gens):
    code = main(['sofic', '--gens', gens("klein.txt"), '--p', "5", '--m', "1..2", '--format', 'csv'])
    assert code == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 3


def test_chunk_sigma_from_oracle(capsys):
    code, record = run_json(capsys, ['chunk-sigma', '--oracle', "cyclic:3", '--r', "3"])
    assert code == 0
    assert record['sigma_upper'] == 3
    assert record['injective_rep_n'] == 3
    assert record['dichotomy_holds'] is True


def test_chunk_sigma_from_file(capsys, gens):
    code, record = run_json(capsys, ['chunk-sigma', '--chunk', gens("z3_chunk.txt"), '--r', "3"])
    assert code == 0
    assert record['elements'] == 3
    assert record['sigma_upper'] == 3


def test_folner(capsys):
    code, record = run_json(capsys, ['folner', '--d', "1", '--side', "64", '--r', "21"])
    assert code == 0
    assert record['boundary'] == 2
    assert record['holds'] is True


def test_errors_exit_two(capsys, gens):
    assert main(['word', '--gens', gens("free_pair.txt"), '--word', "a$"]) == 2
    assert main(['check', '--gens', gens("nao_existe.txt")]) == 2
    assert main(['folner', '--side', "10"]) == 2
    assert main(['sofic', '--gens', gens("klein.txt"), '--p', "7"]) == 2


def test_parse_m_range():
    assert parse_m_range("1..3") == (1, 2, 3)
    assert parse_m_range("2") == (2,)
    with pytest.raises(argparse.ArgumentTypeError):
        parse_m_range("3..1")
    with pytest.raises(argparse.ArgumentTypeError):
        parse_m_range("a..b")


def test_run_config_validation():
    with pytest.raises(ValueError):
        RunConfig('desconhecido')
    with pytest.raises(ValueError):
        RunConfig('sofic', output_format='xml')
    with pytest.raises(ValueError):
        RunConfig('sofic', cap=0)


def test_sofic_adds_identity(capsys, gens):
    code, record = run_json(capsys, ['sofic', '--gens', gens("translations.txt"), '--p', "5", '--m', "1"])
    assert code == 0
    assert record['reports'][0]['epsilon'] == "2/5"
    assert record['reports'][0]['singularCounts']['id'] == 0

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Sequence, TextIO, Tuple

from .chunkcore import (
    box_witness,
    chunk_of_oracle,
    dichotomy_check,
    folner_to_sofic,
    injective_rep_search,
    read_chunk_file,
)
from .config import LabConfig
from .data_analyzer import ReportAnalyzer
from .errors import CremonaError, ExprSyntaxError
from .exactalg import rational_text
from .frontend import (
    certify_generators,
    parse_generator_file,
    parse_positive_word,
    parse_word,
    render_element,
    render_tuple,
)
from .notification_manager import NotificationManager
from .oracles import GroupOracleFactory
from .soficlab import prepare_elements, profile_points
from .specialize import plan_specialization, specialize_chunk, verify_specialization
from .wordlang import GeneratorSystem, evaluate_word, is_identity_word, semigroup_evaluate, semigroup_words_equal

SUBCOMMANDS = ('check', 'compose', 'word', 'semigroup-eq', 'specialize', 'sofic', 'chunk-sigma', 'folner')
FORMATS = ('json', 'csv', 'text')


@dataclass
class RunConfig:
    """Parâmetros de uma execução da linha de comando"""

    subcommand: str
    gens: Optional[str] = None
    word: Optional[str] = None
    word2: Optional[str] = None
    p: Optional[int] = None
    m_range: Tuple[int, ...] = (1,)
    p0: int = 2
    cap: Optional[int] = None
    output_format: str = 'text'
    seed: Optional[int] = None
    workers: Optional[int] = None
    chunk: Optional[str] = None
    oracle: Optional[str] = None
    r: Fraction = Fraction(3)
    n_max: int = 5
    d: int = 1
    side: int = 64
    debug_mode: bool = False

    def __post_init__(self):
        if self.subcommand not in SUBCOMMANDS:
            raise ValueError(f"Subcomando '{self.subcommand}' desconhecido")
        if self.output_format not in FORMATS:
            raise ValueError(f"Formato '{self.output_format}' inválido. Formatos: {', '.join(FORMATS)}")
        if self.cap is not None and self.cap < 1:
            raise ValueError("--cap deve ser >= 1")
        if list(self.m_range) != sorted(set(self.m_range)):
            raise ValueError("O intervalo de m deve ser crescente")

    def lab_config(self) -> LabConfig:
        return LabConfig.from_env(
            point_cap=self.cap,
            workers=self.workers,
            seed=self.seed,
            extension_mode='random' if self.seed is not None else None,
            debug_mode=self.debug_mode or None,
        )


def parse_m_range(text: str) -> Tuple[int, ...]:
    """'1..3' -> (1, 2, 3); '2' -> (2,)"""
    start, sep, stop = text.partition('..')
    try:
        a = int(start)
        b = int(stop) if sep else a
    except ValueError:
        raise argparse.ArgumentTypeError(f"Intervalo de m inválido: {text!r} (use A..B)")
    if a < 1 or b < a:
        raise argparse.ArgumentTypeError(f"Intervalo de m inválido: {text!r}")
    return tuple(range(a, b + 1))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cremona-lab",
        description="Laboratório de transformações de Cremona: problema da palavra, especialização e aproximações sóficas",
    )
    parser.add_argument('--debug', action='store_true', help="mostra mensagens de depuração em stderr")
    sub = parser.add_subparsers(dest='subcommand', required=True)

    def add_format(p):
        p.add_argument('--format', dest='output_format', choices=FORMATS, default='text')

    p = sub.add_parser('check', help="analisa e certifica os geradores")
    p.add_argument('--gens', required=True)
    add_format(p)

    p = sub.add_parser('compose', help="compõe uma palavra positiva nas tuplas")
    p.add_argument('--gens', required=True)
    p.add_argument('--word', required=True)
    add_format(p)

    p = sub.add_parser('word', help="decide se a palavra é a identidade")
    p.add_argument('--gens', required=True)
    p.add_argument('--word', required=True)
    add_format(p)

    p = sub.add_parser('semigroup-eq', help="compara duas palavras positivas no semigrupo")
    p.add_argument('--gens', required=True)
    p.add_argument('--word', required=True)
    p.add_argument('--word2', required=True)
    add_format(p)

    p = sub.add_parser('specialize', help="escolhe um primo bom e reduz os geradores")
    p.add_argument('--gens', required=True)
    p.add_argument('--p0', type=int, default=2)
    add_format(p)

    p = sub.add_parser('sofic', help="relatórios de defeito sobre F_{p^m}^d")
    p.add_argument('--gens', required=True)
    p.add_argument('--p', type=int, required=True)
    p.add_argument('--m', dest='m_range', type=parse_m_range, default=(1,))
    p.add_argument('--cap', type=int)
    p.add_argument('--seed', type=int)
    p.add_argument('--workers', type=int)
    add_format(p)

    p = sub.add_parser('chunk-sigma', help="busca exaustiva de sigma_E(r) em chunks pequenos")
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument('--chunk')
    source.add_argument('--oracle', help="por exemplo cyclic:3")
    p.add_argument('--r', type=Fraction, default=Fraction(3))
    p.add_argument('--n-max', dest='n_max', type=int, default=5)
    add_format(p)

    p = sub.add_parser('folner', help="aplicações sóficas a partir de uma caixa de Følner em Z^d")
    p.add_argument('--d', type=int, default=1)
    p.add_argument('--side', type=int, default=64)
    p.add_argument('--r', type=Fraction, default=Fraction(21))
    add_format(p)
    return parser


def config_from_args(argv: Sequence[str] = None) -> RunConfig:
    args = vars(build_parser().parse_args(argv))
    args['debug_mode'] = args.pop('debug')
    return RunConfig(**args)


def _read(path: str) -> str:
    with open(path, encoding='utf-8') as f:
        return f.read()


def _emit(record: Dict[str, object], fmt: str, out: TextIO):
    if fmt == 'json':
        out.write(json.dumps(record, sort_keys=True, indent=2, ensure_ascii=False) + "\n")
        return
    for key in sorted(record):
        value = record[key]
        if isinstance(value, (dict, list)):
            value = json.dumps(value, sort_keys=True, ensure_ascii=False)
        elif isinstance(value, bool):
            value = "true" if value else "false"
        out.write(f"{key}: {value}\n")


def _load_system(path: str) -> GeneratorSystem:
    specs = parse_generator_file(_read(path))
    elements = certify_generators(specs)
    return GeneratorSystem(elements, [s.name for s in specs])


def run_check(config: RunConfig, out: TextIO) -> int:
    system = _load_system(config.gens)
    record = {
        'dimension': system.dimension,
        'field': system.field.tag,
        'generators': [render_element(e) for e in system.elements],
        'certified': True,
    }
    _emit(record, config.output_format, out)
    return 0


def run_compose(config: RunConfig, out: TextIO) -> int:
    specs = parse_generator_file(_read(config.gens))
    names = [s.name for s in specs]
    word = parse_positive_word(config.word, names)
    result = semigroup_evaluate([s.forward for s in specs], word)
    _emit({'word': config.word, 'value': render_tuple(result)}, config.output_format, out)
    return 0


def run_word(config: RunConfig, out: TextIO) -> int:
    system = _load_system(config.gens)
    word = parse_word(config.word, system.names)
    answer = is_identity_word(system, word)
    record = {'word': config.word, 'identity': answer, 'length': len(word)}
    if config.output_format == 'json':
        record['value'] = render_tuple(evaluate_word(system, word).forward)
    _emit(record, config.output_format, out)
    return 0 if answer else 1


def run_semigroup_eq(config: RunConfig, out: TextIO) -> int:
    specs = parse_generator_file(_read(config.gens))
    names = [s.name for s in specs]
    tuples = [s.forward for s in specs]
    answer = semigroup_words_equal(tuples, parse_positive_word(config.word, names),
                                   parse_positive_word(config.word2, names))
    _emit({'word': config.word, 'word2': config.word2, 'equal': answer}, config.output_format, out)
    return 0 if answer else 1


def run_specialize(config: RunConfig, out: TextIO) -> int:
    system = _load_system(config.gens)
    W = system.elements
    plan = plan_specialization(W, config.p0, config.debug_mode)
    reduced = specialize_chunk(W, plan.chosen_prime, plan)
    check = verify_specialization(W, reduced)
    record = plan.to_record()
    record['specialized'] = [render_element(e) for e in reduced]
    record['verification'] = check.to_record()
    _emit(record, config.output_format, out)
    return 0 if check.injective and check.products_preserved else 1


def run_sofic(config: RunConfig, out: TextIO) -> int:
    notifier = NotificationManager(config.debug_mode)
    lab = config.lab_config()
    system = _load_system(config.gens)
    W = prepare_elements(system.elements, config.p)
    notifier.debug(f"{len(W)} elementos sobre F_{config.p}, m em {list(config.m_range)}")
    result = profile_points(W, config.p, config.m_range, lab)
    if config.output_format == 'csv':
        out.write(ReportAnalyzer(result.reports).to_csv())
        return 0
    if config.output_format == 'json':
        record = {'reports': [r.to_record() for r in result.reports]}
        record.update(result.to_record())
        _emit(record, 'json', out)
        return 0
    for report in result.reports:
        out.write(f"# p = {report.p}, m = {report.m}, n = {report.n}\n")
        _emit(report.to_record(), 'text', out)
    _emit(result.to_record(), 'text', out)
    return 0


def run_chunk_sigma(config: RunConfig, out: TextIO) -> int:
    lab = config.lab_config()
    if config.chunk:
        chunk = read_chunk_file(config.chunk)
    else:
        chunk = chunk_of_oracle(GroupOracleFactory.create_oracle(config.oracle, config.debug_mode))
    record = dichotomy_check(chunk, config.r, config.n_max, lab)
    injective = injective_rep_search(chunk, config.n_max, lab)
    _emit({
        'elements': len(chunk),
        'r': rational_text(config.r),
        'sigma_upper': record['sigma'],
        'injective_rep_n': injective.n if injective else None,
        'dichotomy_holds': record['holds'],
    }, config.output_format, out)
    return 0 if record['holds'] else 1


def run_folner(config: RunConfig, out: TextIO) -> int:
    witness = box_witness(config.d, config.side)
    _, verification = folner_to_sofic(witness, config.r)
    _emit({
        'd': config.d,
        'side': config.side,
        'n': len(witness.E),
        'r': rational_text(config.r),
        'boundary': verification.boundary_size,
        'min_agreement': rational_text(min(verification.agreements.values())),
        'min_separation': rational_text(min((s for *_, s in verification.separations), default=Fraction(1))),
        'max_defect': rational_text(max((v for _, v in verification.defects), default=Fraction(0))),
        'holds': verification.holds,
    }, config.output_format, out)
    return 0 if verification.holds else 1


HANDLERS = {
    'check': run_check,
    'compose': run_compose,
    'word': run_word,
    'semigroup-eq': run_semigroup_eq,
    'specialize': run_specialize,
    'sofic': run_sofic,
    'chunk-sigma': run_chunk_sigma,
    'folner': run_folner,
}


def dispatch(config: RunConfig, out: TextIO = None) -> int:
    """Executa um subcomando: 0 sucesso, 1 resposta negativa, 2 erro de entrada"""
    out = out or sys.stdout
    notifier = NotificationManager(config.debug_mode)
    try:
        return HANDLERS[config.subcommand](config, out)
    except ExprSyntaxError as e:
        notifier.error(e.pretty())
        return 2
    except (CremonaError, OSError) as e:
        notifier.error(f"{type(e).__name__}: {e}")
        return 2


def main(argv: Sequence[str] = None) -> int:
    try:
        config = config_from_args(argv)
    except ValueError as e:
        NotificationManager().error(str(e))
        return 2
    return dispatch(config)


if __name__ == "__main__":
    sys.exit(main())

from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from itertools import permutations
from math import factorial
from typing import Callable, Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .config import DEFAULT_CONFIG, LabConfig
from .errors import (
    InvalidChunk,
    MissingBasepoint,
    MissingIdentity,
    NotFunctional,
    SearchSpaceExceeded,
    WitnessTooSmall,
)
from .notification_manager import NotificationManager
from .oracles import BaseGroupOracle, IntegerLatticeOracle

Triple = Tuple[Hashable, Hashable, Hashable]


@dataclass(frozen=True)
class Chunk:
    """Conjunto finito com ponto base e lei ternária parcial funcional"""

    elements: Tuple[Hashable, ...]
    basepoint: Hashable
    law: Dict[Tuple[Hashable, Hashable], Hashable] = dataclass_field(hash=False, compare=False)

    def __len__(self) -> int:
        return len(self.elements)

    def triples(self) -> List[Triple]:
        order = {e: i for i, e in enumerate(self.elements)}
        return sorted(((x, y, z) for (x, y), z in self.law.items()), key=lambda t: (order[t[0]], order[t[1]]))

    def product(self, x: Hashable, y: Hashable) -> Optional[Hashable]:
        return self.law.get((x, y))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Chunk):
            return NotImplemented
        return (self.elements == other.elements and self.basepoint == other.basepoint
                and self.law == other.law)


def validate_chunk(E: Iterable[Hashable], basepoint: Hashable, D: Iterable[Triple]) -> Chunk:
    elements = tuple(dict.fromkeys(E))
    if basepoint not in elements:
        raise MissingBasepoint(f"O ponto base {basepoint!r} não pertence a E")
    members = set(elements)
    law: Dict[Tuple[Hashable, Hashable], Hashable] = {}
    for triple in D:
        x, y, z = triple
        for item in triple:
            if item not in members:
                raise InvalidChunk(f"A tripla {triple} usa {item!r}, que não pertence a E")
        if (x, y) in law and law[(x, y)] != z:
            raise NotFunctional(f"Dois valores para ({x!r}, {y!r}): {law[(x, y)]!r} e {z!r}",
                                (x, y, law[(x, y)]), (x, y, z))
        law[(x, y)] = z
    return Chunk(elements, basepoint, law)


def chunk_of_elements(elems: Sequence, product: Callable, identity,
                      eq: Callable = None, labels: Sequence[Hashable] = None) -> Tuple[Chunk, List]:
    """Chunk de um subconjunto de grupo: (x, y, z) em D quando xy = z dentro do conjunto

    `product` pode devolver None para produtos indefinidos. Devolve o chunk e os
    elementos distintos, na ordem em que aparecem.
    """
    eq = eq or (lambda a, b: a == b)
    distinct, names = [], []
    for i, e in enumerate(elems):
        if not any(eq(e, other) for other in distinct):
            distinct.append(e)
            names.append(labels[i] if labels is not None else e)
    base = next((names[i] for i, e in enumerate(distinct) if eq(e, identity)), None)
    if base is None:
        raise MissingIdentity("O conjunto não contém a identidade")
    triples = []
    for i, a in enumerate(distinct):
        for j, b in enumerate(distinct):
            value = product(a, b)
            if value is None:
                continue
            for k, c in enumerate(distinct):
                if eq(value, c):
                    triples.append((names[i], names[j], names[k]))
                    break
    return validate_chunk(names, base, triples), distinct


def chunk_of_oracle(oracle: BaseGroupOracle, subset: Sequence[Hashable] = None) -> Chunk:
    """Chunk de um grupo finito (tabela completa) ou de um subconjunto dele"""
    subset = list(subset) if subset is not None else oracle.elements()
    if subset is None:
        raise InvalidChunk(f"{oracle.describe()} é infinito: informe o subconjunto")
    chunk, _ = chunk_of_elements(subset, oracle.multiply, oracle.identity)
    return chunk


def chunk_of_cremona(W: Sequence) -> Tuple[Chunk, List]:
    """Chunk de elementos certificados (igualdade por tuple_eq, produto por compose)"""
    from .biratmap import compose, identity, tuple_eq

    if not W:
        raise MissingIdentity("Conjunto vazio")
    labels = []
    for i, e in enumerate(W):
        label = e.name or f"w{i}"
        labels.append(label if label not in labels else f"{label}_{i}")
    unit = identity(W[0].dimension, W[0].field)
    return chunk_of_elements(
        [e.forward for e in W], compose, unit, eq=tuple_eq, labels=labels,
    )[0], _distinct_cremona(W, tuple_eq)


def _distinct_cremona(W: Sequence, tuple_eq) -> List:
    out = []
    for e in W:
        if not any(tuple_eq(e.forward, other.forward) for other in out):
            out.append(e)
    return out


# Aplicações finitas E -> Sym_n

@dataclass
class FiniteMap:
    """Atribuição elemento -> permutação de [0, n)"""

    n: int
    images: Dict[Hashable, np.ndarray]

    def __getitem__(self, key: Hashable) -> np.ndarray:
        return self.images[key]

    def to_record(self) -> Dict[str, List[int]]:
        return {str(k): [int(v) for v in perm] for k, perm in self.images.items()}


def hamming_count(u: np.ndarray, v: np.ndarray) -> int:
    return int(np.count_nonzero(np.asarray(u) != np.asarray(v)))


def _distance(u: np.ndarray, v: np.ndarray, n: int) -> Fraction:
    return Fraction(hamming_count(u, v), n)


def product_defects(f: FiniteMap, E: Chunk) -> List[Tuple[Triple, Fraction]]:
    """d(f(z), f(x)f(y)) para cada (x, y, z) em D; f(x)f(y) aplica f(y) primeiro"""
    return [((x, y, z), _distance(f[z], f[x][f[y]], f.n)) for x, y, z in E.triples()]


def is_eps_morphism(f: FiniteMap, E: Chunk, eps) -> bool:
    eps = Fraction(eps)
    if not np.array_equal(f[E.basepoint], np.arange(f.n)):
        return False
    return all(defect <= eps for _, defect in product_defects(f, E))


def is_expansive(f: FiniteMap, E: Chunk, level) -> bool:
    level = Fraction(level)
    elements = E.elements
    for i, x in enumerate(elements):
        for y in elements[i + 1:]:
            if _distance(f[x], f[y], f.n) < level:
                return False
    return True


def is_representation(f: FiniteMap, E: Chunk) -> bool:
    """0-morfismo: ponto base na identidade e todos os produtos exatos"""
    return is_eps_morphism(f, E, 0)


def is_injective(f: FiniteMap, E: Chunk) -> bool:
    return is_expansive(f, E, Fraction(1, f.n))


# Busca exaustiva em Sym_n

def _search_order(E: Chunk) -> List[Hashable]:
    """Ponto base primeiro; os demais por grau de restrição decrescente"""
    degree = {e: 0 for e in E.elements}
    for x, y, z in E.triples():
        for item in {x, y, z}:
            degree[item] += 1
    rest = [e for e in E.elements if e != E.basepoint]
    rest.sort(key=lambda e: -degree[e])
    return [E.basepoint] + rest


def _check_search_space(E: Chunk, n: int, cap: int):
    size = factorial(n) ** (len(E) - 1)
    if size > cap:
        raise SearchSpaceExceeded(
            f"Espaço de busca (n!)^(|E|-1) = {size:,} para n = {n} excede o limite de {cap:,}"
        )


def _backtrack(E: Chunk, n: int, max_defect: int, min_separation: int) -> Optional[FiniteMap]:
    """Procura f com contagem de defeitos <= max_defect e separações >= min_separation"""
    order = _search_order(E)
    position = {e: i for i, e in enumerate(order)}
    triples = E.triples()
    # Triplas verificadas quando o último dos seus elementos é atribuído
    checks: Dict[int, List[Triple]] = {}
    for triple in triples:
        checks.setdefault(max(position[item] for item in triple), []).append(triple)
    candidates = [tuple(p) for p in permutations(range(n))]
    identity_perm = tuple(range(n))
    assignment: Dict[Hashable, Tuple[int, ...]] = {E.basepoint: identity_perm}

    def count(u, v) -> int:
        return sum(1 for a, b in zip(u, v) if a != b)

    def consistent(level: int) -> bool:
        current = order[level]
        for other in order[:level]:
            if count(assignment[current], assignment[other]) < min_separation:
                return False
        for x, y, z in checks.get(level, []):
            fx, fy, fz = assignment[x], assignment[y], assignment[z]
            composed = tuple(fx[fy[i]] for i in range(n))
            if count(fz, composed) > max_defect:
                return False
        return True

    def extend(level: int) -> bool:
        if level == len(order):
            return True
        for perm in candidates:
            assignment[order[level]] = perm
            if consistent(level) and extend(level + 1):
                return True
        del assignment[order[level]]
        return False

    if not consistent(0) or not extend(1):
        return None
    return FiniteMap(n, {e: np.array(assignment[e], dtype=np.int64) for e in E.elements})


def sigma_search(E: Chunk, r, n_max: int, config: LabConfig = DEFAULT_CONFIG) -> Optional[FiniteMap]:
    """Menor n <= n_max com um r^-1-morfismo (1 - r^-1)-expansivo, e a aplicação encontrada"""
    r = Fraction(r)
    if r <= 1:
        raise InvalidChunk(f"r deve ser > 1, recebido {r}")
    notifier = NotificationManager(config.debug_mode)
    for n in range(1, n_max + 1):
        _check_search_space(E, n, config.search_cap)
        # defeito <= 1/r  <=>  contagem <= n/r ; separação >= 1 - 1/r  <=>  contagem >= n - n/r
        max_defect = int(n / r)
        min_separation = -(-(n * (r - 1)) // r)
        found = _backtrack(E, n, max_defect, int(min_separation))
        notifier.debug(f"sigma: n = {n} {'encontrado' if found else 'sem solução'}")
        if found is not None:
            return found
    return None


def sigma_upper(E: Chunk, r, n_max: int, config: LabConfig = DEFAULT_CONFIG) -> Optional[int]:
    found = sigma_search(E, r, n_max, config)
    return found.n if found is not None else None


def injective_rep_search(E: Chunk, n_max: int, config: LabConfig = DEFAULT_CONFIG) -> Optional[FiniteMap]:
    """Representação exata e injetiva em algum Sym_n com n <= n_max"""
    for n in range(1, n_max + 1):
        if n < len(E) and factorial(n) < len(E):
            continue
        _check_search_space(E, n, config.search_cap)
        found = _backtrack(E, n, max_defect=0, min_separation=1)
        if found is not None:
            return found
    return None


def dichotomy_check(E: Chunk, r, n_max: int, config: LabConfig = DEFAULT_CONFIG) -> Dict[str, object]:
    """Se sigma devolve n < r, a aplicação encontrada é uma representação exata e injetiva"""
    r = Fraction(r)
    found = sigma_search(E, r, n_max, config)
    record = {'r': r, 'sigma': found.n if found else None, 'below_r': False, 'exact': None}
    if found is not None and found.n < r:
        record['below_r'] = True
        record['exact'] = is_representation(found, E) and is_injective(found, E)
    record['holds'] = not record['below_r'] or bool(record['exact'])
    return record


# Construção de Følner

@dataclass
class FolnerWitness:
    oracle: BaseGroupOracle
    E: List[Hashable]
    S: List[Hashable]

    @property
    def boundary(self) -> set:
        return boundary(self.oracle, self.S, self.E)

    @property
    def ratio(self) -> Fraction:
        return isoperimetric_ratio(self.oracle, self.S, self.E)


@dataclass
class FolnerVerification:
    r: Fraction
    boundary_size: int
    agreements: Dict[Hashable, Fraction]
    separations: List[Tuple[Hashable, Hashable, Fraction]]
    defects: List[Tuple[Triple, Fraction]]
    agreement_ok: bool
    separation_ok: bool
    defect_ok: bool

    @property
    def holds(self) -> bool:
        return self.agreement_ok and self.separation_ok and self.defect_ok


def boundary(oracle: BaseGroupOracle, S: Sequence[Hashable], E: Sequence[Hashable]) -> set:
    """SE - E calculado exatamente pelo oráculo"""
    members = set(E)
    return {oracle.multiply(s, x) for s in S for x in E} - members


def isoperimetric_ratio(oracle: BaseGroupOracle, S: Sequence[Hashable], E: Sequence[Hashable]) -> Fraction:
    return Fraction(len(boundary(oracle, S, E)), len(E))


def alpha_upper(oracle: BaseGroupOracle, S: Sequence[Hashable], r, candidates: Iterable[Sequence[Hashable]]) -> Optional[int]:
    """Menor |E| entre os candidatos com |dE|/|E| < 1/r (None se nenhum serve)"""
    r = Fraction(r)
    best = None
    for E in candidates:
        if isoperimetric_ratio(oracle, S, E) < 1 / r and (best is None or len(E) < best):
            best = len(E)
    return best


def box_witness(d: int, side: int) -> FolnerWitness:
    """Caixa [0, side)^d em Z^d com a cruz como conjunto gerador"""
    oracle = IntegerLatticeOracle(d)
    return FolnerWitness(oracle, oracle.box(side), oracle.cross_generators())


def folner_to_sofic(w: FolnerWitness, r) -> Tuple[FiniteMap, FolnerVerification]:
    """phi(s): x -> sx quando sx fica em E, completado em ordem crescente"""
    r = Fraction(r)
    ratio = w.ratio
    if not ratio < 1 / r:
        raise WitnessTooSmall(f"|dE|/|E| = {ratio} não é menor que 1/r = {1 / r}")
    index = {x: i for i, x in enumerate(w.E)}
    n = len(w.E)
    images: Dict[Hashable, np.ndarray] = {}
    agreements: Dict[Hashable, Fraction] = {}
    for s in w.S:
        perm = np.full(n, -1, dtype=np.int64)
        for i, x in enumerate(w.E):
            target = index.get(w.oracle.multiply(s, x))
            if target is not None:
                perm[i] = target
        agreements[s] = Fraction(int(np.count_nonzero(perm >= 0)), n)
        free_domain = np.flatnonzero(perm < 0)
        used = np.zeros(n, dtype=bool)
        used[perm[perm >= 0]] = True
        perm[free_domain] = np.flatnonzero(~used)
        images[s] = perm
    f = FiniteMap(n, images)
    chunk, _ = chunk_of_elements(w.S, w.oracle.multiply, w.oracle.identity)
    separations = [(s, t, _distance(f[s], f[t], n)) for i, s in enumerate(chunk.elements)
                   for t in chunk.elements[i + 1:]]
    defects = product_defects(f, chunk)
    return f, FolnerVerification(
        r=r,
        boundary_size=len(w.boundary),
        agreements=agreements,
        separations=separations,
        defects=defects,
        agreement_ok=all(a > 1 - 1 / r for a in agreements.values()),
        separation_ok=all(d > 1 - 2 / r for _, _, d in separations),
        defect_ok=all(d < 3 / r for _, d in defects),
    )


# Arquivo de chunk: "elements: ...", "basepoint: ...", uma tripla "x y z" por linha

def parse_chunk_text(text: str) -> Chunk:
    elements, basepoint, triples = None, None, []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        if line.startswith('elements:'):
            elements = line.split(':', 1)[1].split()
        elif line.startswith('basepoint:'):
            basepoint = line.split(':', 1)[1].strip()
        else:
            parts = line.split()
            if len(parts) != 3:
                raise InvalidChunk(f"Linha {number}: esperada uma tripla 'x y z', recebido {line!r}")
            triples.append(tuple(parts))
    if elements is None:
        raise InvalidChunk("Arquivo de chunk sem a linha 'elements:'")
    if basepoint is None:
        raise MissingBasepoint("Arquivo de chunk sem a linha 'basepoint:'")
    return validate_chunk(elements, basepoint, triples)


def read_chunk_file(path: str) -> Chunk:
    with open(path, encoding='utf-8') as f:
        return parse_chunk_text(f.read())


def format_chunk(chunk: Chunk) -> str:
    lines = [
        f"elements: {' '.join(str(e) for e in chunk.elements)}",
        f"basepoint: {chunk.basepoint}",
    ]
    lines.extend(f"{x} {y} {z}" for x, y, z in chunk.triples())
    return "\n".join(lines) + "\n"


def write_chunk_file(chunk: Chunk, path: str):
    with open(path, 'w', encoding='utf-8') as f:
        f.write(format_chunk(chunk))

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .biratmap import CremonaElement, identity, identity_element, in_singular_set, regular_image, tuple_eq
from .chunkcore import Chunk, FiniteMap, chunk_of_cremona
from .config import DEFAULT_CONFIG, LabConfig
from .errors import CremonaError, DomainMismatch, InternalDefect, InvalidChunk, SizeMismatch
from .exactalg import FieldSpec, GFElement, build_field, rational_text
from .notification_manager import NotificationManager
from .performance_manager import PerformanceOptimizer
from .specialize import specialize_element


class PointTable:
    """Todos os pontos de L^d, L = F_{p^m}, em ordem lexicográfica dos códigos"""

    def __init__(self, field: FieldSpec, d: int, cap: int = DEFAULT_CONFIG.point_cap):
        if field.is_rational:
            raise DomainMismatch("A tabela de pontos exige um corpo finito")
        self.field = field
        self.d = d
        self.q = field.q
        self.n = self.q ** d
        PerformanceOptimizer.check_point_cap(self.n, cap)
        self._scalars = [GFElement(field, code) for code in range(self.q)]

    def __len__(self) -> int:
        return self.n

    def point(self, index: int) -> Tuple[GFElement, ...]:
        codes = []
        for _ in range(self.d):
            index, code = divmod(index, self.q)
            codes.append(code)
        return tuple(self._scalars[c] for c in reversed(codes))

    def index_of(self, point: Sequence[GFElement]) -> int:
        index = 0
        for value in point:
            index = index * self.q + self.field.element(value).code
        return index

    def points(self):
        for index in range(self.n):
            yield self.point(index)


@dataclass
class PermutationRep:
    label: str
    perm: np.ndarray
    moved_from_regular: int
    singular: np.ndarray  # máscara de Z_u

    @property
    def singular_count(self) -> int:
        return int(self.singular.sum())


def hamming(u: Sequence[int], v: Sequence[int]) -> Fraction:
    """Distância de Hamming normalizada (1/n) #{i : u(i) != v(i)}"""
    u, v = np.asarray(u), np.asarray(v)
    if u.shape != v.shape:
        raise SizeMismatch(f"Permutações de tamanhos diferentes: {len(u)} e {len(v)}")
    if len(u) == 0:
        raise SizeMismatch("Permutações vazias")
    return Fraction(int(np.count_nonzero(u != v)), len(u))


def _image_indices(element: CremonaElement, field: FieldSpec, d: int, start: int, stop: int) -> List[int]:
    # Executado também em processos auxiliares: só recebe dados serializáveis
    table = PointTable(field, d, cap=field.q ** d)
    out = []
    for index in range(start, stop):
        image = regular_image(element, table.point(index))
        out.append(-1 if image is None else table.index_of(image))
    return out


def _evaluate_all(element: CremonaElement, table: PointTable, config: LabConfig) -> np.ndarray:
    n = table.n
    if not PerformanceOptimizer.should_parallelize(n, config.workers):
        return np.array(_image_indices(element, table.field, table.d, 0, n), dtype=np.int64)
    batch = PerformanceOptimizer.get_batch_size(n, config.workers)
    ranges = [(start, min(n, start + batch)) for start in range(0, n, batch)]
    with ProcessPoolExecutor(max_workers=config.workers) as pool:
        futures = [pool.submit(_image_indices, element, table.field, table.d, a, b) for a, b in ranges]
        # Junta os lotes na ordem dos índices
        parts = [future.result() for future in futures]
    return np.array([i for part in parts for i in part], dtype=np.int64)


def build_perm(e: CremonaElement, table: PointTable, config: LabConfig = DEFAULT_CONFIG,
               rng: Optional[np.random.Generator] = None, label: str = None) -> PermutationRep:
    """Permutação de L^d que coincide com e fora de Z_e; Z_e vai para os pontos restantes"""
    if e.field.is_rational or e.field.p != table.field.p or not table.field.embeds(e.field):
        raise DomainMismatch(f"Elemento sobre {e.field.tag} não pode agir em {table.field.tag}^{table.d}")
    if e.dimension != table.d:
        raise DomainMismatch(f"Elemento de dimensão {e.dimension} numa tabela de dimensão {table.d}")
    n = table.n
    perm = _evaluate_all(e, table, config)
    singular = perm < 0
    regular_images = perm[~singular]
    if len(np.unique(regular_images)) != len(regular_images):
        raise InternalDefect(f"{label or e.name}: a avaliação fora de Z não é injetiva")
    used = np.zeros(n, dtype=bool)
    used[regular_images] = True
    free_domain = np.flatnonzero(singular)
    free_codomain = np.flatnonzero(~used)
    if len(free_domain) != len(free_codomain):
        raise InternalDefect(f"{label or e.name}: pontos livres em número diferente")
    if config.extension_mode == 'random':
        rng = rng if rng is not None else np.random.default_rng(config.seed)
        free_codomain = rng.permutation(free_codomain)
    perm[free_domain] = free_codomain
    if not np.array_equal(np.sort(perm), np.arange(n)):
        raise InternalDefect(f"{label or e.name}: a extensão não é uma bijeção")
    return PermutationRep(label or e.name or "?", perm, int(len(free_domain)), singular)


def singular_count(e: CremonaElement, table: PointTable) -> int:
    """|Z_e(L)| por enumeração"""
    return sum(1 for x in table.points() if in_singular_set(e, x))


@dataclass
class DefectReport:
    """Defeitos e separações medidos para um chunk sobre F_{p^m}^d"""

    p: int
    m: int
    d: int
    n: int
    labels: List[str]
    singular_counts: Dict[str, int]
    moved_counts: Dict[str, int]
    product_defects: List[Tuple[str, str, str, Fraction]]
    separations: List[Tuple[str, str, Fraction]]
    epsilon: Fraction
    certificate_r: Optional[Fraction]
    measured_C: Fraction
    measured_C_prime: Fraction
    inverse_defects: List[Tuple[str, str, Fraction]]
    locality_ok: bool
    separation_locus_ok: bool
    chunk: Optional[Chunk] = dataclass_field(default=None, repr=False)
    perms: Dict[str, np.ndarray] = dataclass_field(default_factory=dict, repr=False)

    @property
    def q(self) -> int:
        return self.p ** self.m

    @property
    def exact(self) -> bool:
        return self.epsilon == 0

    def to_record(self) -> Dict[str, object]:
        if self.epsilon == 0:
            certificate = "inf"
        elif self.certificate_r is None:
            certificate = None
        else:
            certificate = rational_text(self.certificate_r)
        return {
            'p': self.p,
            'm': self.m,
            'd': self.d,
            'n': self.n,
            'singularCounts': dict(self.singular_counts),
            'movedCounts': dict(self.moved_counts),
            'productDefects': [
                {'g': g, 'h': h, 'gh': gh, 'defect': rational_text(v)} for g, h, gh, v in self.product_defects
            ],
            'separations': [{'u': u, 'v': v, 'distance': rational_text(s)} for u, v, s in self.separations],
            'inverseDefects': [
                {'g': g, 'inverse': k, 'defect': rational_text(v)} for g, k, v in self.inverse_defects
            ],
            'epsilon': rational_text(self.epsilon),
            'certificate_r': certificate,
            'measuredC': rational_text(self.measured_C),
            'measuredCPrime': rational_text(self.measured_C_prime),
            'localityOk': self.locality_ok,
            'separationLocusOk': self.separation_locus_ok,
        }


def _agreement_in_difference_locus(u: CremonaElement, v: CremonaElement, table: PointTable,
                                   agree: np.ndarray, singular: np.ndarray) -> bool:
    """Pontos regulares onde u e v coincidem anulam os numeradores de u - v"""
    numerators = [(a - b).numerator for a, b in zip(u.forward.coords, v.forward.coords)]
    for index in np.flatnonzero(agree & ~singular):
        point = table.point(int(index))
        if any(poly.evaluate(point) != 0 for poly in numerators):
            return False
    return True


def defect_report(W: Sequence[CremonaElement], m: int = 1, config: LabConfig = DEFAULT_CONFIG,
                  progress: Optional[Callable[[int, int], None]] = None) -> DefectReport:
    """Permutações de todos os elementos do chunk sobre F_{p^m}^d e seus defeitos"""
    notifier = NotificationManager(config.debug_mode)
    if not W:
        raise InvalidChunk("Chunk vazio")
    base = W[0].field
    if base.is_rational or base.m != 1:
        raise InvalidChunk(f"Os elementos devem estar sobre um corpo primo F_p, recebido {base.tag}")
    if any(e.field != base or e.dimension != W[0].dimension for e in W):
        raise InvalidChunk("Todos os elementos devem ter o mesmo corpo e a mesma dimensão")
    try:
        chunk, elements = chunk_of_cremona(W)
    except CremonaError as e:
        raise InvalidChunk(f"Conjunto não forma um chunk válido: {e}")

    p, d = base.p, W[0].dimension
    table = PointTable(build_field(p, m), d, config.point_cap)
    n = table.n
    notifier.debug(f"Tabela de pontos: {table.field.tag}^{d}, n = {n:,}")
    labels = list(chunk.elements)
    by_label = dict(zip(labels, elements))
    rng = np.random.default_rng(config.seed) if config.extension_mode == 'random' else None

    reps: Dict[str, PermutationRep] = {}
    for step, label in enumerate(labels, start=1):
        reps[label] = build_perm(by_label[label], table, config, rng=rng, label=label)
        if progress is not None:
            progress(step, len(labels))

    max_singular = max(rep.singular_count for rep in reps.values())
    max_moved = max(rep.moved_from_regular for rep in reps.values())
    locality_ok = True
    products = []
    for g, h, gh in chunk.triples():
        composed = reps[g].perm[reps[h].perm]
        disagree = composed != reps[gh].perm
        Zg, Zh, Zgh = reps[g].singular, reps[h].singular, reps[gh].singular
        exceptional = Zh | (~Zh & Zg[reps[h].perm]) | Zgh
        count = int(np.count_nonzero(disagree))
        if np.any(disagree & ~exceptional):
            raise InternalDefect(f"({g}, {h}, {gh}): defeito fora de Z_h, h^-1(Z_g) e Z_gh em {table.field.tag}^{d}")
        if count > int(Zh.sum() + Zg.sum() + Zgh.sum()) or count > 2 * (max_singular + max_moved):
            raise InternalDefect(f"({g}, {h}, {gh}): {count} pontos de defeito excedem a cota de localidade")
        products.append((g, h, gh, Fraction(count, n)))

    separations = []
    separation_locus_ok = True
    max_agreement = 0
    for i, u in enumerate(labels):
        for v in labels[i + 1:]:
            agree = reps[u].perm == reps[v].perm
            max_agreement = max(max_agreement, int(np.count_nonzero(agree)))
            separations.append((u, v, Fraction(int(np.count_nonzero(~agree)), n)))
            singular = reps[u].singular | reps[v].singular
            if not _agreement_in_difference_locus(by_label[u], by_label[v], table, agree, singular):
                separation_locus_ok = False

    inverse_defects = []
    for g in labels:
        inverse_perm = np.argsort(reps[g].perm)
        for k in labels:
            if chunk.product(g, k) == chunk.basepoint and chunk.product(k, g) == chunk.basepoint:
                inverse_defects.append((g, k, hamming(reps[k].perm, inverse_perm)))
                break

    epsilon = max([v for *_, v in products] + [1 - s for *_, s in separations] + [Fraction(0)])
    certificate = None if epsilon == 0 or epsilon >= 1 else 1 / epsilon
    scale = table.q ** (d - 1)
    report = DefectReport(
        p=p, m=m, d=d, n=n, labels=labels,
        singular_counts={label: reps[label].singular_count for label in labels},
        moved_counts={label: reps[label].moved_from_regular for label in labels},
        product_defects=products,
        separations=separations,
        epsilon=epsilon,
        certificate_r=certificate,
        measured_C=Fraction(max_singular, scale),
        measured_C_prime=Fraction(max_agreement if separations else 0, scale),
        inverse_defects=inverse_defects,
        locality_ok=locality_ok,
        separation_locus_ok=separation_locus_ok,
        chunk=chunk,
        perms={label: rep.perm for label, rep in reps.items()},
    )
    notifier.debug(f"m = {m}: epsilon = {epsilon}, C medido = {report.measured_C}")
    return report


@dataclass
class ProfileResult:
    reports: List[DefectReport]
    certificates: List[Tuple[Optional[Fraction], int]]  # r = None significa infinito
    ratios: List[float]
    slope: Optional[float]

    def to_record(self) -> Dict[str, object]:
        return {
            'certificates': [
                {'r': 'inf' if r is None else rational_text(r), 'n': n} for r, n in self.certificates
            ],
            'ratios': self.ratios,
            'slope': self.slope,
        }


def with_identity(W: Sequence[CremonaElement]) -> List[CremonaElement]:
    """Acrescenta a identidade quando ela não está entre os elementos"""
    W = list(W)
    if not W:
        raise InvalidChunk("Chunk vazio")
    unit = identity(W[0].dimension, W[0].field)
    if any(tuple_eq(e.forward, unit) for e in W):
        return W
    return [identity_element(W[0].dimension, W[0].field)] + W


def prepare_elements(W: Sequence[CremonaElement], p: int) -> List[CremonaElement]:
    """Geradores reduzidos a F_p, com a identidade, prontos para profile_points"""
    return with_identity([specialize_element(e, p) for e in W])


def profile_points(W: Sequence[CremonaElement], p: int, m_range: Sequence[int],
                   config: LabConfig = DEFAULT_CONFIG,
                   progress: Optional[Callable[[int, int], None]] = None) -> ProfileResult:
    """Certificados (r, n) com r = 1/epsilon_m e n = q^(md), e a inclinação de log n contra log r"""
    m_range = list(m_range)
    if not m_range or any(b <= a for a, b in zip(m_range, m_range[1:])):
        raise DomainMismatch(f"Intervalo de m deve ser não vazio e crescente: {m_range}")
    if W and W[0].field.p != p:
        raise DomainMismatch(f"Elementos sobre {W[0].field.tag}, mas p = {p}")
    reports, certificates = [], []
    for m in m_range:
        report = defect_report(W, m, config, progress)
        reports.append(report)
        if report.epsilon == 0:
            certificates.append((None, report.n))
        elif report.epsilon < 1:
            certificates.append((report.certificate_r, report.n))
    finite = [(float(r), n) for r, n in certificates if r is not None and r > 1]
    ratios = [math.log(n) / math.log(r) for r, n in finite]
    slope = None
    if len(finite) >= 2:
        log_r = np.log([r for r, _ in finite])
        log_n = np.log([n for _, n in finite])
        slope = float(np.polyfit(log_r, log_n, 1)[0])
    return ProfileResult(reports, certificates, ratios, slope)


def report_to_finite_map(report: DefectReport) -> FiniteMap:
    """Permutações do relatório como aplicação finita do chunk em Sym_n"""
    return FiniteMap(report.n, {label: report.perms[label] for label in report.labels})

import time
from typing import Iterable, List, Optional, Sequence, Tuple

from .biratmap import (
    BirationalTuple,
    CremonaElement,
    compose,
    formula_size,
    identity,
    identity_element,
    multiply,
    tuple_eq,
)
from .errors import DomainMismatch, IndexOutOfRange

Letter = Tuple[int, int]


class GroupWord:
    """Palavra livremente reduzida: letras (índice do gerador, expoente +1/-1)"""

    __slots__ = ('letters',)

    def __init__(self, letters: Iterable[Letter] = ()):
        reduced: List[Letter] = []
        for index, exponent in letters:
            if exponent not in (1, -1):
                raise DomainMismatch(f"Expoente de letra deve ser +1 ou -1, recebido {exponent}")
            if reduced and reduced[-1] == (index, -exponent):
                reduced.pop()
            else:
                reduced.append((index, exponent))
        self.letters: Tuple[Letter, ...] = tuple(reduced)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        return GroupWord(self.letters + other.letters)

    def inverse(self) -> "GroupWord":
        return GroupWord((index, -exponent) for index, exponent in reversed(self.letters))

    def power(self, k: int) -> "GroupWord":
        base = self if k >= 0 else self.inverse()
        return GroupWord(base.letters * abs(k))

    def cyclic_shift(self, k: int) -> "GroupWord":
        if not self.letters:
            return self
        k %= len(self.letters)
        return GroupWord(self.letters[k:] + self.letters[:k])

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupWord):
            return NotImplemented
        return self.letters == other.letters

    def __hash__(self) -> int:
        return hash(self.letters)

    def __repr__(self) -> str:
        return f"GroupWord({list(self.letters)})"


class GeneratorSystem:
    """Geradores nomeados e certificados, todos com a mesma dimensão e corpo"""

    def __init__(self, elements: Sequence[CremonaElement], names: Optional[Sequence[str]] = None):
        if not elements:
            raise DomainMismatch("Um sistema de geradores precisa de pelo menos um elemento")
        names = list(names) if names is not None else [e.name or f"g{i}" for i, e in enumerate(elements)]
        if len(names) != len(elements):
            raise DomainMismatch("Quantidade de nomes diferente da de geradores")
        if len(set(names)) != len(names):
            raise DomainMismatch(f"Nomes de geradores repetidos: {names}")
        first = elements[0]
        for name, element in zip(names, elements):
            if not isinstance(element, CremonaElement):
                raise DomainMismatch(f"O gerador {name!r} não foi certificado")
            if element.dimension != first.dimension or element.field != first.field:
                raise DomainMismatch(f"O gerador {name!r} tem dimensão ou corpo diferente")
        self.elements = [e.renamed(n) for e, n in zip(elements, names)]
        self.names = names
        self.dimension = first.dimension
        self.field = first.field

    def __len__(self) -> int:
        return len(self.elements)

    def letter_element(self, letter: Letter) -> CremonaElement:
        index, exponent = letter
        if not 0 <= index < len(self.elements):
            raise IndexOutOfRange(f"Letra {index} fora do intervalo [0, {len(self.elements)})")
        element = self.elements[index]
        return element if exponent == 1 else element.inverted()


def _balanced_product(items: List[CremonaElement]) -> CremonaElement:
    # Produto da esquerda para a direita, agrupado em árvore binária
    while len(items) > 1:
        paired = [multiply(items[i], items[i + 1]) for i in range(0, len(items) - 1, 2)]
        if len(items) % 2:
            paired.append(items[-1])
        items = paired
    return items[0]


def evaluate_word(sys: GeneratorSystem, w: GroupWord) -> CremonaElement:
    """Produto das letras; a palavra vazia dá a identidade"""
    if not w.letters:
        return identity_element(sys.dimension, sys.field)
    return _balanced_product([sys.letter_element(letter) for letter in w.letters])


def is_identity_word(sys: GeneratorSystem, w: GroupWord) -> bool:
    element = evaluate_word(sys, w)
    return tuple_eq(element.forward, identity(sys.dimension, sys.field))


def words_equal(sys: GeneratorSystem, w: GroupWord, w2: GroupWord) -> bool:
    return is_identity_word(sys, w * w2.inverse())


def semigroup_evaluate(tuples: Sequence[BirationalTuple], word: Sequence[int]) -> BirationalTuple:
    """Composição de tuplas não necessariamente invertíveis (palavra positiva)"""
    if not tuples:
        raise DomainMismatch("Lista de tuplas vazia")
    for index in word:
        if not 0 <= index < len(tuples):
            raise IndexOutOfRange(f"Letra {index} fora do intervalo [0, {len(tuples)})")
    if not word:
        return identity(tuples[0].dimension, tuples[0].field)
    items = [tuples[index] for index in word]
    while len(items) > 1:
        paired = [compose(items[i], items[i + 1]) for i in range(0, len(items) - 1, 2)]
        if len(items) % 2:
            paired.append(items[-1])
        items = paired
    return items[0]


def semigroup_words_equal(sys: Sequence[BirationalTuple], w: Sequence[int], w2: Sequence[int]) -> bool:
    return tuple_eq(semigroup_evaluate(sys, w), semigroup_evaluate(sys, w2))


def measure_growth(sys: GeneratorSystem, words: Iterable[GroupWord]) -> List[Tuple[int, int, float]]:
    """(|w|, tamanho da fórmula, segundos) para cada palavra; só registra"""
    rows = []
    for word in words:
        start = time.perf_counter()
        element = evaluate_word(sys, word)
        elapsed = time.perf_counter() - start
        rows.append((len(word), formula_size(element.forward), elapsed))
    return rows

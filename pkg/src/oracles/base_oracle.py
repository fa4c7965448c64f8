from abc import ABC, abstractmethod
from itertools import product
from typing import Hashable, Iterable, List, Optional, Sequence



class BaseGroupOracle(ABC):
    """Classe base abstrata para oráculos de multiplicação de grupos"""

    def __init__(self, debug_mode: bool = False):
        self.debug_mode = debug_mode
        self.group_name = "Genérico"

    @property
    @abstractmethod
    def identity(self) -> Hashable:
        """Elemento neutro"""
        pass

    @abstractmethod
    def multiply(self, a: Hashable, b: Hashable) -> Hashable:
        """Produto ab (total no domínio amostrado)"""
        pass

    @abstractmethod
    def inverse(self, a: Hashable) -> Hashable:
        pass

    def elements(self) -> Optional[List[Hashable]]:
        """Todos os elementos, quando o grupo é finito; None para grupos infinitos"""
        return None

    def check_associativity(self, sample: Sequence[Hashable]) -> bool:
        """Verifica (ab)c = a(bc) em todas as triplas da amostra"""
        for a, b, c in product(sample, repeat=3):
            if self.multiply(self.multiply(a, b), c) != self.multiply(a, self.multiply(b, c)):
                return False
        return True

    def left_translate(self, s: Hashable, elements: Iterable[Hashable]) -> List[Hashable]:
        return [self.multiply(s, x) for x in elements]

    def describe(self) -> str:
        return self.group_name

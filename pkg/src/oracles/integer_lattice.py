from itertools import product
from typing import List, Tuple

from ..errors import OracleError
from .base_oracle import BaseGroupOracle

Vector = Tuple[int, ...]


class IntegerLatticeOracle(BaseGroupOracle):
    """Z^d com a soma coordenada a coordenada; elementos são tuplas de inteiros"""

    def __init__(self, d: int = 1, debug_mode: bool = False):
        super().__init__(debug_mode)
        if d < 1:
            raise OracleError(f"Dimensão inválida para Z^d: {d}")
        self.d = d
        self.group_name = "Z" if d == 1 else f"Z^{d}"

    @property
    def identity(self) -> Vector:
        return (0,) * self.d

    def _check(self, a: Vector):
        if len(a) != self.d:
            raise OracleError(f"Vetor {a} não pertence a {self.group_name}")

    def multiply(self, a: Vector, b: Vector) -> Vector:
        self._check(a)
        self._check(b)
        return tuple(x + y for x, y in zip(a, b))

    def inverse(self, a: Vector) -> Vector:
        self._check(a)
        return tuple(-x for x in a)

    def cross_generators(self) -> List[Vector]:
        """Identidade e +-e_i (a "cruz" de 2d + 1 elementos)"""
        out = [self.identity]
        for i in range(self.d):
            for sign in (-1, 1):
                out.append(tuple(sign if j == i else 0 for j in range(self.d)))
        return out

    def box(self, side: int) -> List[Vector]:
        """A caixa [0, side)^d em ordem lexicográfica"""
        if side < 1:
            raise OracleError(f"Lado da caixa deve ser >= 1, recebido {side}")
        return [tuple(v) for v in product(range(side), repeat=self.d)]

from typing import List

from ..errors import OracleError
from .base_oracle import BaseGroupOracle


class CyclicGroupOracle(BaseGroupOracle):
    """Z/n com a soma módulo n"""

    def __init__(self, n: int = 2, debug_mode: bool = False):
        super().__init__(debug_mode)
        if n < 1:
            raise OracleError(f"Ordem inválida para Z/n: {n}")
        self.n = n
        self.group_name = f"Z/{n}"

    @property
    def identity(self) -> int:
        return 0

    def _check(self, a: int):
        if not isinstance(a, int) or not 0 <= a < self.n:
            raise OracleError(f"{a!r} não pertence a {self.group_name}")

    def multiply(self, a: int, b: int) -> int:
        self._check(a)
        self._check(b)
        return (a + b) % self.n

    def inverse(self, a: int) -> int:
        self._check(a)
        return (-a) % self.n

    def elements(self) -> List[int]:
        return list(range(self.n))

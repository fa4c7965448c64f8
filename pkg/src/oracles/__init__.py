# Oráculos de multiplicação para chunks e testemunhas de Følner
from ..errors import OracleError
from .base_oracle import BaseGroupOracle
from .finite_group import CyclicGroupOracle
from .integer_lattice import IntegerLatticeOracle
from .oracle_factory import GroupOracleFactory

__all__ = ['BaseGroupOracle', 'OracleError', 'CyclicGroupOracle', 'IntegerLatticeOracle', 'GroupOracleFactory']

from ..errors import OracleError
from .base_oracle import BaseGroupOracle
from .finite_group import CyclicGroupOracle
from .integer_lattice import IntegerLatticeOracle


class GroupOracleFactory:
    """Factory para criar oráculos de grupo a partir de 'tipo:parâmetro'"""

    # Registro de oráculos disponíveis
    AVAILABLE_ORACLES = {
        'lattice': {
            'name': 'Reticulado inteiro',
            'parameter': 'd',
            'oracle_class': IntegerLatticeOracle,
            'description': 'Z^d com a soma; usado nas testemunhas de Følner',
        },
        'cyclic': {
            'name': 'Grupo cíclico',
            'parameter': 'n',
            'oracle_class': CyclicGroupOracle,
            'description': 'Z/n com tabela completa; usado nos chunks finitos',
        },
    }

    @classmethod
    def get_available_oracles(cls) -> dict:
        """Retorna os oráculos disponíveis"""
        return {
            oracle_id: {
                'name': info['name'],
                'parameter': info['parameter'],
                'description': info['description'],
            }
            for oracle_id, info in cls.AVAILABLE_ORACLES.items()
        }

    @classmethod
    def create_oracle(cls, spec: str, debug_mode: bool = False) -> BaseGroupOracle:
        """Cria o oráculo descrito por 'cyclic:3', 'lattice:2', ..."""
        oracle_id, _, parameter = spec.partition(':')
        oracle_id = oracle_id.strip().lower()
        if oracle_id not in cls.AVAILABLE_ORACLES:
            available = ', '.join(cls.AVAILABLE_ORACLES.keys())
            raise OracleError(f"Oráculo '{oracle_id}' não suportado. Oráculos disponíveis: {available}")
        try:
            value = int(parameter) if parameter.strip() else None
        except ValueError:
            raise OracleError(f"Parâmetro inválido para '{oracle_id}': {parameter!r}")
        oracle_class = cls.AVAILABLE_ORACLES[oracle_id]['oracle_class']
        if value is None:
            return oracle_class(debug_mode=debug_mode)
        return oracle_class(value, debug_mode=debug_mode)

    @classmethod
    def is_oracle_supported(cls, oracle_id: str) -> bool:
        return oracle_id in cls.AVAILABLE_ORACLES

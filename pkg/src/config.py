import os
from dataclasses import dataclass, replace
from typing import Optional

EXTENSION_MODES = ('ordered', 'random')


@dataclass(frozen=True)
class LabConfig:
    """Configuração do laboratório (limites de memória, cache e paralelismo)"""

    point_cap: int = 10 ** 6          # máximo de pontos de L^d enumerados
    search_cap: int = 2_000_000       # máximo de atribuições na busca de sigma
    cache_dir: str = "cache"
    cache_max_age_hours: int = 24
    workers: int = 1                  # 1 = avaliação sequencial dos pontos
    extension_mode: str = 'ordered'
    seed: Optional[int] = None
    debug_mode: bool = False

    def __post_init__(self):
        if self.point_cap < 1:
            raise ValueError(f"point_cap deve ser >= 1, recebido {self.point_cap}")
        if self.search_cap < 1:
            raise ValueError(f"search_cap deve ser >= 1, recebido {self.search_cap}")
        if self.workers < 1:
            raise ValueError(f"workers deve ser >= 1, recebido {self.workers}")
        if self.extension_mode not in EXTENSION_MODES:
            raise ValueError(f"Modo de extensão '{self.extension_mode}' inválido. Modos: {', '.join(EXTENSION_MODES)}")

    @classmethod
    def from_env(cls, **overrides) -> "LabConfig":
        """Lê CREMONA_POINT_CAP, CREMONA_SEARCH_CAP, CREMONA_CACHE_DIR e CREMONA_WORKERS"""
        values = {}
        if os.environ.get('CREMONA_POINT_CAP'):
            values['point_cap'] = int(os.environ['CREMONA_POINT_CAP'])
        if os.environ.get('CREMONA_SEARCH_CAP'):
            values['search_cap'] = int(os.environ['CREMONA_SEARCH_CAP'])
        if os.environ.get('CREMONA_CACHE_DIR'):
            values['cache_dir'] = os.environ['CREMONA_CACHE_DIR']
        if os.environ.get('CREMONA_WORKERS'):
            values['workers'] = int(os.environ['CREMONA_WORKERS'])
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    def with_overrides(self, **overrides) -> "LabConfig":
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})


DEFAULT_CONFIG = LabConfig()

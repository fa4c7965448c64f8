import hashlib
import os
import pickle
from datetime import datetime, timedelta
from typing import Any, Optional

from .errors import PointCapExceeded
from .notification_manager import NotificationManager


class CacheManager:
    """Guarda relatórios de defeito em disco para não repetir enumerações grandes"""

    def __init__(self, cache_dir: str = "cache", max_age_hours: int = 24, debug_mode: bool = False):
        self.cache_dir = cache_dir
        self.ensure_cache_dir()
        self.max_cache_age = timedelta(hours=max_age_hours)
        self.notifier = NotificationManager(debug_mode)

    def ensure_cache_dir(self):
        """Cria diretório de cache se não existir"""
        if not os.path.exists(self.cache_dir):
            os.makedirs(self.cache_dir)

    @staticmethod
    def make_key(*parts: Any) -> str:
        """Hash md5 dos parâmetros da execução (texto dos geradores, p, m, modo, semente)"""
        content = "|".join(repr(part) for part in parts).encode("utf-8")
        return hashlib.md5(content).hexdigest()

    def get_cache_path(self, key: str) -> str:
        return os.path.join(self.cache_dir, f"{key}.pkl")

    def is_cache_valid(self, cache_path: str) -> bool:
        """Verifica se o cache ainda é válido"""
        if not os.path.exists(cache_path):
            return False
        cache_time = datetime.fromtimestamp(os.path.getmtime(cache_path))
        return datetime.now() - cache_time < self.max_cache_age

    def save(self, key: str, value: Any):
        try:
            cache_path = self.get_cache_path(key)
            with open(cache_path, 'wb') as f:
                pickle.dump({'value': value, 'timestamp': datetime.now(), 'version': '1.0'}, f)
            size_kb = os.path.getsize(cache_path) / 1024
            self.notifier.debug(f"💾 Cache salvo em {cache_path} ({size_kb:.1f} KB)")
        except Exception as e:
            self.notifier.warning(f"⚠️ Não foi possível salvar cache: {str(e)}")

    def load(self, key: str) -> Optional[Any]:
        try:
            cache_path = self.get_cache_path(key)
            if not self.is_cache_valid(cache_path):
                return None
            with open(cache_path, 'rb') as f:
                return pickle.load(f).get('value')
        except Exception:
            return None

    def clear_old_cache(self) -> int:
        """Remove arquivos de cache antigos"""
        removed = 0
        try:
            now = datetime.now()
            for filename in os.listdir(self.cache_dir):
                if filename.endswith('.pkl'):
                    path = os.path.join(self.cache_dir, filename)
                    if now - datetime.fromtimestamp(os.path.getmtime(path)) > self.max_cache_age:
                        os.remove(path)
                        removed += 1
            if removed:
                self.notifier.info(f"🧹 {removed} arquivo(s) de cache antigo removido(s)")
        except Exception as e:
            self.notifier.warning(f"⚠️ Erro ao limpar cache: {str(e)}")
        return removed


class PerformanceOptimizer:
    """Limites e particionamento da enumeração de pontos"""

    @staticmethod
    def check_point_cap(n: int, cap: int):
        if n > cap:
            raise PointCapExceeded(f"n = {n:,} pontos excede o limite configurado de {cap:,}")

    @staticmethod
    def should_parallelize(n: int, workers: int) -> bool:
        return workers > 1 and n >= 4096

    @staticmethod
    def get_batch_size(n: int, workers: int = 1) -> int:
        """Tamanho do lote de pontos por tarefa"""
        if n <= 1000:
            return n
        return max(1000, n // (4 * max(1, workers)))

    @staticmethod
    def estimate_processing_time(n: int, elements: int) -> str:
        # ~20 microssegundos por avaliação de ponto (medido em F_5, d = 2)
        total_seconds = n * elements * 2e-5
        if total_seconds < 60:
            return f"~{max(1, int(total_seconds))} segundos"
        return f"~{int(total_seconds // 60)} minuto(s)"


class ProgressTracker:
    """Barra de progresso no dashboard, um passo por elemento avaliado"""

    def __init__(self, total_steps: int, label: str = "Avaliando elementos"):
        import streamlit as st

        self.total_steps = max(1, total_steps)
        self.label = label
        self.current = 0
        self.start_time = datetime.now()
        self.progress_bar = st.progress(0)
        self.status_text = st.empty()

    def update(self, step: int, total: int = None):
        total = total or self.total_steps
        self.current = step
        self.progress_bar.progress(min(100, int(100 * step / total)))
        self.status_text.text(f"🔄 {self.label}: {step}/{total}")

    def complete(self, summary: str):
        self.progress_bar.progress(100)
        elapsed = datetime.now() - self.start_time
        self.status_text.success(f"🎉 Concluído! {summary} em {elapsed.seconds}s")

from fractions import Fraction
from typing import Dict, List, Optional

import numpy as np
import pandas as pd

from .exactalg import rational_text
from .soficlab import DefectReport


class ReportAnalyzer:
    """Organiza os relatórios de defeito em tabelas pandas"""

    def __init__(self, reports: List[DefectReport]):
        self.reports = list(reports)
        self.df = pd.DataFrame([self._summary_row(r) for r in self.reports]) if self.reports else pd.DataFrame()

        if not self.df.empty:
            self.df = self.df.sort_values(['p', 'm']).reset_index(drop=True)

    @staticmethod
    def _summary_row(report: DefectReport) -> Dict[str, object]:
        min_separation = min((s for *_, s in report.separations), default=Fraction(1))
        max_defect = max((v for *_, v in report.product_defects), default=Fraction(0))
        if report.epsilon == 0:
            certificate = "inf"
        elif report.certificate_r is None:
            certificate = ""
        else:
            certificate = rational_text(report.certificate_r)
        return {
            'p': report.p,
            'm': report.m,
            'd': report.d,
            'n': report.n,
            'epsilon': rational_text(report.epsilon),
            'epsilon_float': float(report.epsilon),
            'certificate_r': certificate,
            'max_product_defect': rational_text(max_defect),
            'min_separation': rational_text(min_separation),
            'max_singular': max(report.singular_counts.values()),
            'measured_C': rational_text(report.measured_C),
            'measured_C_prime': rational_text(report.measured_C_prime),
            'epsilon_times_qm': float(report.epsilon * report.q),
            'locality_ok': report.locality_ok,
            'separation_locus_ok': report.separation_locus_ok,
        }

    def get_summary(self) -> pd.DataFrame:
        """Uma linha por (p, m)"""
        return self.df.copy()

    def get_product_defects(self) -> pd.DataFrame:
        rows = [
            {'m': r.m, 'g': g, 'h': h, 'gh': gh, 'defect': rational_text(v), 'defect_float': float(v)}
            for r in self.reports for g, h, gh, v in r.product_defects
        ]
        return pd.DataFrame(rows)

    def get_separations(self) -> pd.DataFrame:
        rows = [
            {'m': r.m, 'u': u, 'v': v, 'distance': rational_text(s), 'distance_float': float(s)}
            for r in self.reports for u, v, s in r.separations
        ]
        return pd.DataFrame(rows)

    def get_singular_counts(self) -> pd.DataFrame:
        rows = [
            {'m': r.m, 'element': label, 'singular': count, 'q_m': r.q}
            for r in self.reports for label, count in r.singular_counts.items()
        ]
        return pd.DataFrame(rows)

    def fit_slope(self) -> Optional[float]:
        """Inclinação de log n contra log r pelos mínimos quadrados"""
        points = [(float(r.certificate_r), r.n) for r in self.reports
                  if r.certificate_r is not None and r.certificate_r > 1]
        if len(points) < 2:
            return None
        log_r = np.log([r for r, _ in points])
        log_n = np.log([n for _, n in points])
        return float(np.polyfit(log_r, log_n, 1)[0])

    def get_statistics(self) -> Dict[str, object]:
        """Estatísticas gerais da série de relatórios"""
        if self.df.empty:
            return {
                'total_relatorios': 0,
                'epsilon_minimo': None,
                'decai': True,
                'inclinacao': None,
            }
        epsilons = [r.epsilon for r in self.reports]
        return {
            'total_relatorios': len(self.reports),
            'epsilon_minimo': rational_text(min(epsilons)),
            'decai': all(b < a for a, b in zip(epsilons, epsilons[1:])),
            'inclinacao': self.fit_slope(),
        }

    def to_csv(self) -> str:
        columns = [c for c in self.df.columns if not c.endswith('_float') and c != 'epsilon_times_qm']
        return self.df[columns].to_csv(index=False) if not self.df.empty else ""

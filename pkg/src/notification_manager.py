import logging
import sys
from typing import Any, Dict, List

LOGGER_NAME = "laboratorio_cremona"


def _streamlit_running() -> bool:
    """Verifica se estamos dentro de um script Streamlit em execução"""
    try:
        from streamlit.runtime.scriptrunner import get_script_run_ctx
        return get_script_run_ctx() is not None
    except Exception:
        return False


def get_logger() -> logging.Logger:
    logger = logging.getLogger(LOGGER_NAME)
    if not logger.handlers:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter("%(levelname)s %(message)s"))
        logger.addHandler(handler)
        logger.setLevel(logging.INFO)
        logger.propagate = False
    return logger


class NotificationManager:
    """Gerencia notificações: interface Streamlit quando disponível, senão log em stderr"""

    def __init__(self, debug_mode: bool = False):
        self.debug_mode = debug_mode
        self.logger = get_logger()
        if debug_mode:
            self.logger.setLevel(logging.DEBUG)

    def _emit(self, level: str, message: str):
        if _streamlit_running():
            import streamlit as st
            {'info': st.info, 'success': st.success, 'warning': st.warning, 'error': st.error}[level](message)
            return
        log_level = {'info': logging.INFO, 'success': logging.INFO,
                     'warning': logging.WARNING, 'error': logging.ERROR}[level]
        self.logger.log(log_level, message)

    def info(self, message: str):
        self._emit('info', message)

    def success(self, message: str):
        self._emit('success', message)

    def warning(self, message: str):
        self._emit('warning', message)

    def error(self, message: str):
        self._emit('error', message)

    def debug(self, message: str):
        """Mensagens de depuração só aparecem com debug_mode"""
        if not self.debug_mode:
            return
        if _streamlit_running():
            import streamlit as st
            st.caption(f"🐞 {message}")
        else:
            self.logger.debug(message)

    def show_report_summary(self, records: List[Dict[str, Any]]):
        """Resumo rápido dos relatórios de defeito (métricas em destaque)"""
        import streamlit as st

        if not records:
            st.error("❌ Nenhum relatório foi gerado")
            self.show_troubleshooting_tips()
            return

        st.markdown("### 📋 Resumo Rápido")
        last = records[-1]
        col1, col2, col3, col4 = st.columns(4)

        with col1:
            st.metric("🧮 Relatórios", len(records), help="Um por grau de extensão m")

        with col2:
            st.metric("🔢 Pontos (último)", f"{last['n']:,}", help="n = q^(md)")

        with col3:
            st.metric("📉 Epsilon (último)", last['epsilon'], help="Maior defeito de produto ou de separação")

        with col4:
            certificate = {'inf': "∞", '': "—"}.get(last['certificate_r'], last['certificate_r'])
            st.metric("📜 Certificado r", certificate, help="r = 1/epsilon; o par (r, n) limita o perfil sófico")

        if all(record['locality_ok'] for record in records):
            st.success("✅ **Localidade dos defeitos verificada** em todos os pontos")
        else:
            st.warning("⚠️ **Localidade violada:** algum defeito ocorreu fora dos conjuntos singulares")

    def show_troubleshooting_tips(self):
        """Dicas para problemas comuns de entrada"""
        import streamlit as st

        with st.expander("🔧 Dicas para Solução de Problemas"):
            st.markdown("""
            **Se nada foi calculado, verifique:**

            1. **📄 Formato do arquivo de geradores:**
               - Uma linha por gerador: `nome: [expr, ...] over GF(5) ; inverse: [expr, ...] over GF(5)`
               - Variáveis `x, y, z` (ou `t1..td`) conforme a dimensão

            2. **🔐 Inversas:**
               - Cada tupla precisa de uma inversa verificável simbolicamente

            3. **📏 Tamanho:**
               - n = q^(md) pontos não pode ultrapassar o limite configurado
            """)

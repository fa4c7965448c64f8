import os
from datetime import datetime
from fractions import Fraction

import numpy as np
import pandas as pd
import plotly.graph_objects as go
import streamlit as st

from src.chunkcore import box_witness, chunk_of_oracle, dichotomy_check, folner_to_sofic, parse_chunk_text
from src.config import LabConfig
from src.data_analyzer import ReportAnalyzer
from src.errors import CremonaError, ExprSyntaxError
from src.frontend import certify_generators, parse_generator_file, parse_word, render_element, render_tuple
from src.notification_manager import NotificationManager
from src.oracles import GroupOracleFactory
from src.performance_manager import CacheManager, PerformanceOptimizer, ProgressTracker
from src.soficlab import prepare_elements, profile_points
from src.specialize import plan_specialization, specialize_chunk, verify_specialization
from src.wordlang import GeneratorSystem, evaluate_word, is_identity_word, measure_growth

DATA_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "data")


def load_sample(filename):
    with open(os.path.join(DATA_DIR, filename), encoding='utf-8') as f:
        return f.read()


def main():
    st.set_page_config(
        page_title="Laboratório de Cremona",
        page_icon="🧮",
        layout="wide"
    )

    st.title("🧮 Laboratório de Cremona")
    st.markdown("---")

    # Sidebar com os geradores e os parâmetros
    with st.sidebar:
        st.header("📄 Geradores")

        samples = sorted(f for f in os.listdir(DATA_DIR) if f.endswith('.txt') and 'chunk' not in f)
        selected_sample = st.selectbox(
            "Exemplo:",
            [""] + samples,
            help="Arquivos de exemplo da pasta data/",
            placeholder="Escolha um exemplo ou cole seus geradores..."
        )
        default_text = load_sample(selected_sample) if selected_sample else ""
        gens_text = st.text_area(
            "Uma linha por gerador (`nome: TUPLA ; inverse: TUPLA`)",
            value=default_text,
            height=180,
        )

        st.markdown("---")
        st.header("⚙️ Parâmetros")
        p = st.number_input("Primo p", min_value=2, value=5, step=1)
        m_max = st.slider("Grau máximo da extensão m", min_value=1, max_value=4, value=3)
        cap = st.number_input("Limite de pontos", min_value=1, value=10 ** 6, step=10 ** 5)
        use_seed = st.checkbox("Extensão aleatória com semente", value=False)
        seed = st.number_input("Semente", min_value=0, value=0, step=1) if use_seed else None
        workers = st.slider("Processos", min_value=1, max_value=8, value=1)
        debug_mode = st.checkbox("🐞 Modo de depuração", value=False)
        st.session_state['debug_mode'] = debug_mode

        with st.expander("📖 Como Usar"):
            st.markdown("""
            **🧮 Passo a Passo:**
            1. 📄 **Geradores:** escolha um exemplo ou escreva as tuplas com suas inversas
            2. 🔤 **Palavras:** decida se uma palavra nos geradores é a identidade
            3. 🎯 **Especialização:** reduza geradores sobre QQ módulo um primo bom
            4. 📊 **Sófico:** calcule permutações de F_{p^m}^d e seus defeitos
            5. 🧩 **Chunks:** busque sigma_E(r) em chunks pequenos e teste caixas de Følner

            **💾 Cache:**
            - Relatórios de defeito são salvos por 24 horas
            - A chave inclui os geradores, p, m, o modo e a semente
            """)

    notifier = NotificationManager(debug_mode)
    config = LabConfig.from_env(
        point_cap=int(cap),
        workers=workers,
        seed=int(seed) if seed is not None else None,
        extension_mode='random' if use_seed else 'ordered',
        debug_mode=debug_mode,
    )

    tab1, tab2, tab3, tab4, tab5 = st.tabs([
        "🔤 Palavras",
        "🎯 Especialização",
        "📊 Relatórios Sóficos",
        "🧩 Chunks e Følner",
        "⚡ Performance",
    ])

    system = None
    if gens_text.strip():
        try:
            specs = parse_generator_file(gens_text)
            system = GeneratorSystem(certify_generators(specs), [s.name for s in specs])
            st.success(f"✅ **{len(system)} gerador(es) certificado(s)** em dimensão {system.dimension} "
                       f"sobre {system.field.tag}")
        except ExprSyntaxError as e:
            st.error("❌ Erro de sintaxe nos geradores")
            st.code(e.pretty(), language="text")
        except CremonaError as e:
            st.error(f"❌ {type(e).__name__}: {e}")
    else:
        st.info("👈 **Escolha um exemplo ou escreva os geradores na barra lateral**")

    with tab1:
        st.header("🔤 Problema da Palavra")
        if system is not None:
            display_word_tools(system)

    with tab2:
        st.header("🎯 Especialização Módulo p")
        if system is not None:
            display_specialization(system, debug_mode)

    with tab3:
        st.header("📊 Aproximações Sóficas")
        if system is not None:
            display_sofic_reports(system, gens_text, int(p), m_max, config, notifier)

    with tab4:
        st.header("🧩 Chunks Finitos e Testemunhas de Følner")
        display_chunk_tools(config)

    with tab5:
        st.header("⚡ Informações de Performance")
        display_performance_info(config)


def display_word_tools(system):
    """Identidade de palavras e crescimento das fórmulas"""
    st.markdown(f"**Geradores:** {', '.join(system.names)} (maiúsculas denotam inversos)")
    for element in system.elements:
        st.code(render_element(element), language="text")

    word_text = st.text_input("Palavra", value="")
    if not word_text:
        return
    try:
        word = parse_word(word_text, system.names)
        value = evaluate_word(system, word)
        if is_identity_word(system, word):
            st.success(f"✅ **A palavra é a identidade** (comprimento reduzido {len(word)})")
        else:
            st.warning(f"⚠️ **A palavra não é a identidade** (comprimento reduzido {len(word)})")
        st.code(render_tuple(value.forward), language="text")

        # Crescimento das fórmulas nas potências da palavra
        if len(word) > 0:
            max_power = st.slider("Potências para medir", min_value=1, max_value=8, value=4)
            growth = measure_growth(system, [word.power(k) for k in range(1, max_power + 1)])
            df = pd.DataFrame(growth, columns=['comprimento', 'tamanho_formula', 'segundos'])
            fig = go.Figure()
            fig.add_trace(go.Scatter(
                x=df['comprimento'],
                y=df['tamanho_formula'],
                mode='lines+markers',
                line={'color': 'blue'},
                name='Tamanho da fórmula'
            ))
            fig.update_layout(
                title='Tamanho da fórmula por comprimento da palavra',
                xaxis_title='Comprimento',
                yaxis_title='Caracteres'
            )
            st.plotly_chart(fig)
    except ExprSyntaxError as e:
        st.error("❌ Palavra inválida")
        st.code(e.pretty(), language="text")
    except CremonaError as e:
        st.error(f"❌ {type(e).__name__}: {e}")


def display_specialization(system, debug_mode):
    """Primos ruins, primo escolhido e verificação da redução"""
    if not system.field.is_rational:
        st.info(f"ℹ️ Os geradores já estão sobre {system.field.tag}: a especialização é trivial")
        return
    p0 = st.number_input("Menor primo aceitável p0", min_value=2, value=2, step=1)
    if not st.button("🎯 Especializar"):
        return
    try:
        plan = plan_specialization(system.elements, int(p0), debug_mode)
        reduced = specialize_chunk(system.elements, plan.chosen_prime, plan)
        check = verify_specialization(system.elements, reduced)
    except CremonaError as e:
        st.error(f"❌ {type(e).__name__}: {e}")
        return

    col1, col2, col3 = st.columns(3)
    with col1:
        st.metric("c1", str(plan.c1))
    with col2:
        st.metric("c2", str(plan.c2))
    with col3:
        st.metric("Primo escolhido", plan.chosen_prime)
    st.markdown(f"**Primos ruins:** {sorted(plan.bad_primes) or 'nenhum'}")

    for element in reduced:
        st.code(render_element(element), language="text")
    if check.injective and check.products_preserved and check.identity_preserved:
        st.success(f"✅ **Redução injetiva e multiplicativa** ({check.triples_checked} produtos verificados)")
    else:
        st.error(f"❌ **A redução falhou** em {len(check.failures)} produto(s)")


def display_sofic_reports(system, gens_text, p, m_max, config, notifier):
    """Relatórios de defeito para m = 1..m_max com cache"""
    try:
        W = prepare_elements(system.elements, p)
    except CremonaError as e:
        st.error(f"❌ {type(e).__name__}: {e}")
        return

    d = system.dimension
    n_last = p ** (m_max * d)
    col1, col2 = st.columns(2)
    with col1:
        st.warning(f"🔢 **Enumeração:**\n"
                   f"- n = {n_last:,} pontos no maior m\n"
                   f"- ⏱️ Tempo estimado: {PerformanceOptimizer.estimate_processing_time(n_last, len(W))}")
    with col2:
        if n_last > config.point_cap:
            st.error(f"❌ n excede o limite de {config.point_cap:,} pontos: reduza m")
            return

    if not st.button("📊 Calcular relatórios"):
        return

    cache_manager = CacheManager(config.cache_dir, config.cache_max_age_hours, config.debug_mode)
    cache_manager.clear_old_cache()
    key = CacheManager.make_key(gens_text, p, m_max, config.extension_mode, config.seed)
    result = cache_manager.load(key)
    used_cache = result is not None
    if used_cache:
        st.success("🚀 **Relatórios carregados do cache**")
    else:
        tracker = ProgressTracker(len(W) * m_max)
        steps = {'done': 0}

        def progress(step, total):
            tracker.update(steps['done'] + step, len(W) * m_max)
            if step == total:
                steps['done'] += total

        try:
            result = profile_points(W, p, range(1, m_max + 1), config, progress)
        except CremonaError as e:
            st.error(f"❌ {type(e).__name__}: {e}")
            return
        tracker.complete(f"{len(result.reports)} relatório(s)")
        cache_manager.save(key, result)

    analyzer = ReportAnalyzer(result.reports)
    summary = analyzer.get_summary()
    notifier.show_report_summary(summary.to_dict('records'))

    st.markdown("### 📋 Resumo por m")
    st.dataframe(summary, width='stretch')
    display_charts(analyzer, result)

    with st.expander("🔍 Defeitos de produto e separações"):
        st.dataframe(analyzer.get_product_defects(), width='stretch')
        st.dataframe(analyzer.get_separations(), width='stretch')
        st.dataframe(analyzer.get_singular_counts(), width='stretch')

    st.download_button(
        label="📥 Baixar resumo (CSV)",
        data=analyzer.to_csv(),
        file_name=f"relatorios_{datetime.now().strftime('%Y%m%d_%H%M%S')}.csv",
        mime="text/csv"
    )


def display_charts(analyzer, result):
    """Epsilon por m e log n contra log r"""
    summary = analyzer.get_summary()
    col1, col2 = st.columns(2)

    with col1:
        fig = go.Figure()
        fig.add_trace(go.Scatter(
            x=summary['m'],
            y=summary['epsilon_float'],
            mode='lines+markers',
            line={'color': 'red'},
            name='epsilon'
        ))
        fig.update_layout(
            title='Defeito epsilon por grau m',
            xaxis_title='m',
            yaxis_title='epsilon',
            yaxis_type='log'
        )
        st.plotly_chart(fig)

    with col2:
        finite = [(float(r), n) for r, n in result.certificates if r is not None and r > 1]
        if len(finite) < 2:
            st.info("ℹ️ São necessários dois certificados finitos para a reta log n contra log r")
            return
        log_r = np.log([r for r, _ in finite])
        log_n = np.log([n for _, n in finite])
        fig = go.Figure()
        fig.add_trace(go.Scatter(x=log_r, y=log_n, mode='markers', name='(log r, log n)'))
        slope, intercept = np.polyfit(log_r, log_n, 1)
        fig.add_trace(go.Scatter(
            x=log_r, y=slope * log_r + intercept,
            mode='lines', line={'color': 'green'},
            name=f'inclinação {slope:.2f}'
        ))
        fig.update_layout(
            title='Perfil sófico: log n contra log r',
            xaxis_title='log r',
            yaxis_title='log n'
        )
        st.plotly_chart(fig)


def display_chunk_tools(config):
    """Busca de sigma_E(r) e construção de Følner em Z^d"""
    col1, col2 = st.columns(2)

    with col1:
        st.markdown("### 🔎 sigma_E(r)")
        source = st.radio("Chunk", ["Oráculo", "Arquivo"], horizontal=True)
        try:
            if source == "Oráculo":
                oracles = GroupOracleFactory.get_available_oracles()
                st.caption(" | ".join(f"{k}: {v['description']}" for k, v in oracles.items()))
                spec = st.text_input("Oráculo finito", value="cyclic:3")
                chunk = chunk_of_oracle(GroupOracleFactory.create_oracle(spec, config.debug_mode))
            else:
                chunk = parse_chunk_text(st.text_area("Arquivo de chunk", value=load_sample("z3_chunk.txt")))
            r = Fraction(st.text_input("r", value="3"))
            n_max = st.slider("n máximo", min_value=1, max_value=6, value=4)
            if st.button("🔎 Buscar"):
                record = dichotomy_check(chunk, r, n_max, config)
                if record['sigma'] is None:
                    st.warning(f"⚠️ Nenhuma aplicação com n <= {n_max}")
                else:
                    st.metric("sigma_E(r) <=", record['sigma'])
                if record['holds']:
                    st.success("✅ **Dicotomia verificada**")
                else:
                    st.error("❌ **Dicotomia violada**")
        except (CremonaError, ValueError, ZeroDivisionError) as e:
            st.error(f"❌ {type(e).__name__}: {e}")

    with col2:
        st.markdown("### 🧱 Caixa de Følner em Z^d")
        d = st.slider("d", min_value=1, max_value=3, value=1)
        side = st.number_input("Lado da caixa", min_value=1, value=64, step=1)
        r_text = st.text_input("r ", value="21")
        if st.button("🧱 Construir"):
            try:
                witness = box_witness(d, int(side))
                _, verification = folner_to_sofic(witness, Fraction(r_text))
            except (CremonaError, ValueError, ZeroDivisionError) as e:
                st.error(f"❌ {type(e).__name__}: {e}")
                return
            st.metric("|E|", len(witness.E))
            st.metric("|SE - E|", verification.boundary_size)
            if verification.holds:
                st.success("✅ **Aplicação sófica dentro das cotas de r**")
            else:
                st.error("❌ **Alguma cota de r falhou**")


def display_performance_info(config):
    """Configuração efetiva e limpeza de cache"""
    col1, col2 = st.columns(2)

    with col1:
        st.markdown("### ⚙️ **Configuração**")
        st.metric("🔢 Limite de pontos", f"{config.point_cap:,}")
        st.metric("🔎 Limite da busca", f"{config.search_cap:,}")
        st.metric("🧵 Processos", config.workers)

    with col2:
        st.markdown("### 💾 **Cache**")
        st.info(f"📁 Pasta: `{config.cache_dir}`\n- Validade: {config.cache_max_age_hours} horas")
        if st.button("🧹 Limpar Cache"):
            cache_manager = CacheManager(config.cache_dir, config.cache_max_age_hours)
            removed = cache_manager.clear_old_cache()
            st.success(f"Cache limpo: {removed} arquivo(s) antigo(s) removido(s)")


if __name__ == "__main__":
    main()

# app.py
# Panel de diagramas de arcos monótonos
# Escenarios: Dibujar, Oráculo exacto, Barrido estadístico

import streamlit as st
import logging

# Configurar logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger(__name__)

# Configuración de página
st.set_page_config(
    page_title="Arc Diagrams",
    layout="wide",
    initial_sidebar_state="expanded"
)

# -----------------------------
# Sidebar: Selector de Escenario
# -----------------------------
st.sidebar.title("⌒ Arc Diagrams")
st.sidebar.caption("Diagramas de arcos monótonos de triangulaciones planas")

st.sidebar.divider()

scenario = st.sidebar.radio(
    "Selecciona un escenario:",
    options=[
        "✏️ Dibujar",
        "🔎 Oráculo",
        "📊 Barrido"
    ],
    index=0,
    help="Elige qué ejecutar"
)

st.sidebar.divider()

if scenario == "✏️ Dibujar":
    st.sidebar.info("""
    **Dibujar**

    Ejecuta uno de los algoritmos y muestra el diagrama.

    - General: ⌊4n/5⌋-2 biarcos
    - Kleetope: ⌊(n-8)/3⌋ biarcos
    - 3-árbol: ⌊3(n-3)/4⌋ biarcos (0 si gd ≤ 2)
    """)
elif scenario == "🔎 Oráculo":
    st.sidebar.info("""
    **Oráculo**

    Mínimo exacto de biarcos por búsqueda exhaustiva (n ≤ 7).
    """)
else:
    st.sidebar.info("""
    **Barrido**

    Instancias aleatorias deterministas por semilla con comprobación de cota.
    """)


def _show_cost_warning(cost_validation) -> bool:
    """Muestra el aviso de coste; False si la operación está bloqueada."""
    if cost_validation['warning']:
        if cost_validation['allowed']:
            st.sidebar.warning(cost_validation['warning'])
        else:
            st.sidebar.error(cost_validation['warning'])
    return cost_validation['allowed']


def _show_diagram(d) -> None:
    from svg_render import render_svg
    import streamlit.components.v1 as components

    svg = render_svg(d, unit=30)
    components.html(svg, height=min(900, 60 + 15 * len(d.spine)), scrolling=True)


# -----------------------------
# Contenido Principal
# -----------------------------

# ESCENARIO 1: DIBUJAR
if scenario == "✏️ Dibujar":
    from cli import load_sequence, load_triangulation, run_algorithm
    from diagram import format_arc
    from guards import OperationTimeout, timeout, validate_computational_cost

    st.title("Dibujar un diagrama de arcos")

    st.sidebar.header("Parámetros")
    algo = st.sidebar.selectbox("Algoritmo", ["general", "kleetope", "3tree", "gd2"], key="draw_algo")
    source_kind = st.sidebar.selectbox("Entrada", ["aleatoria", "con nombre"], key="draw_source")
    if source_kind == "con nombre" and algo not in ("3tree", "gd2"):
        name = st.sidebar.selectbox("Triangulación", ["k4", "octahedron", "icosahedron"], key="draw_name")
        source = f"named:{name}"
        n = {"k4": 4, "octahedron": 6, "icosahedron": 12}[name]
    else:
        n = st.sidebar.slider("Número de vértices", 4, 200, 12, key="draw_n")
        source = f"random:{n}"
    seed = st.sidebar.number_input("Semilla", value=42, step=1, key="draw_seed")
    kleetope_input = algo == "kleetope" and st.sidebar.checkbox("Kleetope de la entrada", value=True,
                                                                key="draw_kleetope")
    audit = st.sidebar.checkbox("Auditar cada paso", value=False, key="draw_audit")

    allowed = _show_cost_warning(validate_computational_cost("draw", n * (3 if kleetope_input else 1)))

    if st.sidebar.button("🎲 Dibujar", key="draw_run", disabled=not allowed):
        try:
            with st.spinner("Dibujando..."):
                if algo == "gd2":
                    from graph_core import random_3tree
                    data = random_3tree(n, seed=int(seed), max_gd=2)
                elif algo == "3tree":
                    data = load_sequence(source, int(seed))
                else:
                    data = load_triangulation(source, int(seed))
                    if kleetope_input:
                        from graph_core import kleetope
                        data = kleetope(data)
                st.session_state["draw_result"] = timeout(60)(run_algorithm)(algo, data, audit=audit)
        except OperationTimeout:
            st.sidebar.error("⏱️ Timeout: el dibujo tardó demasiado.")
        except Exception as e:
            st.sidebar.error(f"Error dibujando: {e}")
            logger.error(f"Error en dibujo: {e}", exc_info=True)

    if "draw_result" in st.session_state:
        result = st.session_state["draw_result"]
        col1, col2, col3, col4 = st.columns(4)
        with col1:
            st.metric("Vértices", len(result.diagram.vertices))
        with col2:
            st.metric("Biarcos", result.biarcs)
        with col3:
            st.metric("Cota", result.bound)
        with col4:
            st.metric("Validación", "✅ PASS" if result.passed else "❌ FAIL")

        if not result.report.passed:
            st.error(result.report.summary())

        _show_diagram(result.diagram)

        with st.expander("Registro de pasos"):
            st.code("\n".join(result.trace()) or "(sin pasos)")
        with st.expander("Fichero .arc"):
            st.code(format_arc(result.diagram))
        if result.notes:
            with st.expander("Notas"):
                st.json({k: str(v) for k, v in result.notes.items()})

# ESCENARIO 2: ORÁCULO
elif scenario == "🔎 Oráculo":
    from graph_core import enumerate_triangulations
    from guards import validate_computational_cost
    from oracle import solve_min_biarcs

    st.title("Oráculo exacto")
    st.caption("Búsqueda exhaustiva sobre órdenes del lomo, biarcos y posiciones de cruce")

    st.sidebar.header("Parámetros")
    n = st.sidebar.slider("Número de vértices", 4, 7, 6, key="oracle_n")
    graphs = enumerate_triangulations(n)
    index = st.sidebar.selectbox("Triangulación", list(range(len(graphs))),
                                 format_func=lambda i: f"#{i + 1}", key="oracle_index")
    allowed = _show_cost_warning(validate_computational_cost("oracle", n))

    if st.sidebar.button("🔍 Resolver", key="oracle_run", disabled=not allowed):
        try:
            with st.spinner("Buscando..."):
                st.session_state["oracle_result"] = solve_min_biarcs(graphs[index])
        except Exception as e:
            st.sidebar.error(f"Error en el oráculo: {e}")
            logger.error(f"Error en oráculo: {e}", exc_info=True)

    if "oracle_result" in st.session_state:
        res = st.session_state["oracle_result"]
        col1, col2 = st.columns(2)
        with col1:
            st.metric("Mínimo de biarcos", res.minimum)
        with col2:
            st.metric("Configuraciones", res.explored)
        _show_diagram(res.witness)

# ESCENARIO 3: BARRIDO
else:
    from cli import sweep
    from guards import validate_computational_cost

    st.title("Barrido estadístico")

    st.sidebar.header("Parámetros")
    algo = st.sidebar.selectbox("Algoritmo", ["general", "kleetope", "3tree", "gd2"], key="sweep_algo")
    lo, hi = st.sidebar.slider("Rango de n", 4, 300, (10, 60), key="sweep_range")
    count = st.sidebar.slider("Instancias", 5, 200, 20, step=5, key="sweep_count")
    seed = st.sidebar.number_input("Semilla", value=42, step=1, key="sweep_seed")
    allowed = _show_cost_warning(validate_computational_cost("sweep", hi, count))

    if st.sidebar.button("▶️ Ejecutar", key="sweep_run", disabled=not allowed):
        try:
            with st.spinner(f"Ejecutando {count} instancias..."):
                st.session_state["sweep_rows"] = sweep(algo, lo, hi, count, int(seed))
        except Exception as e:
            st.sidebar.error(f"Error en el barrido: {e}")
            logger.error(f"Error en barrido: {e}", exc_info=True)

    if "sweep_rows" in st.session_state:
        rows = st.session_state["sweep_rows"]
        failed = [r for r in rows if not r["passed"]]
        col1, col2, col3 = st.columns(3)
        with col1:
            st.metric("Instancias", len(rows))
        with col2:
            st.metric("Fallos", len(failed))
        with col3:
            worst = max((r["biarcs"] / r["n"] for r in rows if r["biarcs"] is not None), default=0)
            st.metric("Máx biarcos/n", f"{worst:.3f}")
        if failed:
            st.error("Semillas con fallo: " + ", ".join(str(r["seed"]) for r in failed))
        st.dataframe(rows, width='stretch', hide_index=True)

st.sidebar.divider()
st.sidebar.caption("Arc Diagrams · diagramas monótonos con biarcos bajada-subida")

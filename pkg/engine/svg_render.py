# svg_render.py
# Renderizado SVG de diagramas de arcos: lomo horizontal, items a distancia
# unitaria y cada semiarco como semicírculo en su página.

import logging
from typing import List, Tuple

import svgwrite

from diagram import ArcDiagram, Crossing, HalfArc, Page

logger = logging.getLogger(__name__)

DEFAULT_UNIT = 40
DEFAULT_MARGIN = 20
VERTEX_RADIUS = 4
CROSSING_RADIUS = 2
PROPER_COLOR = "black"
BIARC_COLOR = "crimson"


def _halves(d: ArcDiagram, edge: Tuple[int, int]) -> List[HalfArc]:
    return sorted((h for h in d.half_arcs() if h.edge == edge), key=lambda h: h.left)


def arc_path(d: ArcDiagram, edge: Tuple[int, int], unit: int = DEFAULT_UNIT,
             x0: int = 0, y0: int = 0) -> str:
    """
    Atributo `d` del camino SVG de una arista, de izquierda a derecha: un
    comando A por semiarco con sweep 1 arriba del lomo y 0 abajo.
    """
    halves = _halves(d, edge)
    if not halves:
        raise ValueError(f"arista {edge} no está en el diagrama")
    parts = [f"M {x0 + halves[0].left * unit},{y0}"]
    for h in halves:
        r = (h.right - h.left) * unit // 2
        sweep = 1 if h.page is Page.UPPER else 0
        parts.append(f"A {r},{r} 0 0,{sweep} {x0 + h.right * unit},{y0}")
    return " ".join(parts)


def render_svg(d: ArcDiagram, unit: int = DEFAULT_UNIT, margin: int = DEFAULT_MARGIN,
               labels: bool = True) -> str:
    """
    Documento SVG 1.1 del diagrama (salida determinista).

    Args:
        d: Diagrama a dibujar
        unit: Separación en px entre items consecutivos del lomo (par)
        margin: Margen en px
        labels: Escribe el id de cada vértice bajo el lomo
    """
    if unit <= 0 or unit % 2:
        raise ValueError(f"unit debe ser par y positivo: {unit}")
    spans = [h.right - h.left for h in d.half_arcs()] or [0]
    height_half = max(spans) * unit // 2
    x0, y0 = margin, margin + height_half
    width = 2 * margin + max(0, len(d.spine) - 1) * unit
    height = 2 * (margin + height_half)

    dwg = svgwrite.Drawing(size=(f"{width}px", f"{height}px"), profile="full")
    dwg.add(dwg.line(start=(x0, y0), end=(x0 + max(0, len(d.spine) - 1) * unit, y0),
                     stroke="lightgray", class_="spine"))
    for e in d.edges:
        color = BIARC_COLOR if d.shapes[e].is_biarc else PROPER_COLOR
        dwg.add(dwg.path(d=arc_path(d, e, unit, x0, y0), fill="none", stroke=color,
                         class_="edge", id=f"e{e[0]}-{e[1]}"))
    for i, item in enumerate(d.spine):
        x = x0 + i * unit
        if isinstance(item, Crossing):
            dwg.add(dwg.circle(center=(x, y0), r=CROSSING_RADIUS, fill=BIARC_COLOR, class_="crossing"))
            continue
        dwg.add(dwg.circle(center=(x, y0), r=VERTEX_RADIUS, fill=PROPER_COLOR, class_="vertex"))
        if labels:
            dwg.add(dwg.text(str(item), insert=(x + 3, y0 + 14), font_size="10px", class_="label"))
    logger.debug(f"SVG: {len(d.vertices)} vértices, {len(d.edges)} aristas, {d.crossing_count} cruces")
    return dwg.tostring()


def save_svg(d: ArcDiagram, path: str, **options) -> None:
    """Escribe el SVG del diagrama en un fichero."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(render_svg(d, **options))

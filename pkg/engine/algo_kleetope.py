# algo_kleetope.py
# Diagramas donde todo triángulo corta el lomo: los vértices de grado 3
# se insertan después sin coste, dando ⌊(n-8)/3⌋ biarcos para Kleetopes.

import logging
from fractions import Fraction
from itertools import product
from typing import Sequence, Tuple

from canonical_order import CaseNotMatched, OrderingState, advance, eligible_set
from diagram import (
    ArcDiagram, ArcShape, CreditLedger, DiagramContext, DrawResult, WouldCross,
    add_biarcs, check_bound, faces_missing_spine, gap_after, gaps_by_face,
    insert_vertex, plug_subdiagram, push_down, validate,
)
from graph_core import PlaneTriangulation, check_triangulation, edge_key, peel_degree_three

logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger(__name__)

PROPER = (ArcShape.MOUNTAIN, ArcShape.POCKET)


class NotKleetopeSize(ValueError):
    """n no es de la forma 3k-4."""


def kleetope_bound(n: int) -> int:
    """
    ⌊(n-8)/3⌋ para un Kleetope con n = 3k-4 vértices (igual a n-d-4 con d=(2n-4)/3).

    Raises:
        NotKleetopeSize: Si n no es 3k-4 con k ≥ 4
    """
    if isinstance(n, bool) or not isinstance(n, int):
        raise TypeError(f"n debe ser int, recibido {type(n).__name__}")
    if n < 8 or n % 3 != 2:
        raise NotKleetopeSize(f"{n} no es el tamaño de un Kleetope (3k-4, k ≥ 4)")
    return (n - 8) // 3


def degree_three_bound(n: int, d: int) -> int:
    """n - d - 4 biarcos para una triangulación con d vértices de grado 3 no adyacentes."""
    return max(0, n - d - 4)


def _insert(d: ArcDiagram, s: OrderingState, v: int) -> Tuple[ArcDiagram, int]:
    """
    Inserta v de forma que cada triángulo nuevo corte el lomo.

    Con bolsillo cubierto: v entra en el bolsillo cubierto más a la derecha,
    todas las aristas izquierdas son montañas (las montañas cubiertas a la
    izquierda se bajan), la primera derecha es bolsillo, las intermedias
    biarcos y la última montaña. Sin bolsillos: se baja la montaña más a la
    izquierda (la segunda para v_n) y v queda sobre ella.
    """
    nbrs = s.path_neighbors(v)
    deg = len(nbrs)
    shapes = [d.shape(a, b) for a, b in zip(nbrs, nbrs[1:])]
    pockets = [j for j, sh in enumerate(shapes) if sh is ArcShape.POCKET]
    before = d.biarc_count
    if pockets:
        j = pockets[-1]
        for h in range(j):
            if d.shape(nbrs[h], nbrs[h + 1]) is ArcShape.MOUNTAIN:
                d = push_down(d, (nbrs[h], nbrs[h + 1]))
        arcs = {w: ArcShape.MOUNTAIN for w in nbrs[:j + 1]}
        arcs[nbrs[j + 1]] = ArcShape.POCKET
        if deg - 1 > j + 1:
            arcs[nbrs[-1]] = ArcShape.MOUNTAIN
        d = insert_vertex(d, v, gap_after(d, nbrs[j]), arcs)
        middle = nbrs[j + 2:deg - 1]
    else:
        j = 1 if v == s.vn and deg >= 3 else 0
        d = push_down(d, (nbrs[j], nbrs[j + 1]))
        arcs = {w: ArcShape.MOUNTAIN for w in nbrs[:j]}
        arcs[nbrs[j]] = ArcShape.POCKET
        arcs[nbrs[-1]] = ArcShape.MOUNTAIN
        d = insert_vertex(d, v, gap_after(d, nbrs[j]), arcs)
        middle = nbrs[j + 1:deg - 1]
    if middle:
        d = add_biarcs(d, v, middle, gap_after(d, v))
    return d, d.biarc_count - before


def draw_step_one(t: PlaneTriangulation, audit: bool = False) -> Tuple[ArcDiagram, CreditLedger, OrderingState]:
    """Dibuja T de modo que toda cara corte el lomo (créditos sin χ)."""
    s = OrderingState.initial(t)
    v1, v2, v3 = s.placed
    d = ArcDiagram((v1, v3, v2),
                   {edge_key(v1, v2): ArcShape.POCKET, edge_key(v1, v3): ArcShape.POCKET,
                    edge_key(v3, v2): ArcShape.MOUNTAIN})
    ledger = CreditLedger(chi_free=True)
    d = ledger.settle(d, DiagramContext.extensible(s.path), "init", s.placed, Fraction(1))
    while not s.is_complete:
        v = eligible_set(s)[0]
        d, _ = _insert(d, s, v)
        s = advance(s, v)
        context = DiagramContext.extensible(s.path, check_pockets=False)
        limit = None if s.is_complete else Fraction(1)
        d = ledger.settle(d, context, "kleetope-insert", (v,), limit)
        if audit:
            report = validate(d, context, ledger.chi)
            if not report.passed:
                raise CaseNotMatched(f"inserción de {v} inválida:\n{report.summary()}")
    return d, ledger, s


def _place_degree_three(d: ArcDiagram, z: int, face: Sequence[int], gaps: Sequence[int]) -> ArcDiagram:
    """Coloca z en un hueco de su cara con tres arcos propios (se prueba cada combinación)."""
    pos = d.positions
    corners = sorted(face, key=pos.__getitem__)
    for g in gaps:
        rank = sum(1 for c in corners if pos[c] < g)
        spine = tuple(corners[:rank]) + (z,) + tuple(corners[rank:])
        for combo in product(PROPER, repeat=3):
            sub = ArcDiagram(spine, {edge_key(z, c): sh for c, sh in zip(corners, combo)})
            try:
                return plug_subdiagram(d, corners, sub, gap=g)
            except WouldCross:
                continue
    raise CaseNotMatched(f"no hay hueco con arcos propios para {z} en la cara {tuple(face)}")


def draw_degree3_aware(g: PlaneTriangulation, audit: bool = False, strict: bool = False) -> DrawResult:
    """
    Dibuja una triangulación cuyos vértices de grado 3 no son adyacentes con
    a lo sumo n-d-4 biarcos.

    Paso 1: se pelan los vértices de grado 3 y se dibuja T haciendo que cada
    cara corte el lomo. Paso 2: cada vértice pelado se coloca en un hueco de
    su cara con tres arcos propios, sin añadir biarcos.

    Raises:
        AdjacentDegreeThree: Si dos vértices de grado 3 son adyacentes
        CaseNotMatched: Si algún paso deja un diagrama inválido (error interno)
    """
    try:
        check_triangulation(g)
        t, removed = peel_degree_three(g)
        d, ledger, state = draw_step_one(t, audit=audit)
        step_one_biarcs = d.biarc_count
        missing = faces_missing_spine(d, t)
        if missing:
            raise CaseNotMatched(f"caras de T que no cortan el lomo: {missing[:5]}")
        outer = frozenset(t.outer_face)
        gap_index = gaps_by_face(d)
        for z, face in sorted(removed.items()):
            key = frozenset(face)
            gaps = gap_index.get(None, []) if key == outer else gap_index.get(key, [])
            d = _place_degree_three(d, z, face, gaps)
            gap_index = gaps_by_face(d)
        if d.biarc_count != step_one_biarcs:
            raise CaseNotMatched("el paso 2 añadió biarcos")
        d = d.with_credits({e: Fraction(1) for e, sh in d.shapes.items() if sh.is_biarc})
        report = validate(d, DiagramContext.final(g.edges))
        if not report.passed:
            raise CaseNotMatched(f"diagrama final inválido:\n{report.summary()}")
        result = DrawResult("kleetope", d, ledger, degree_three_bound(g.n, len(removed)), report,
                            state.placed + tuple(sorted(removed)))
        result.notes.update({"peeled": len(removed), "step_one_biarcs": step_one_biarcs,
                             "base_vertices": t.n})
        logger.info(f"kleetope n={g.n}, d={len(removed)}: {result.biarcs} biarcos (cota {result.bound})")
        return check_bound(result, strict)
    except (TypeError, ValueError) as e:
        logger.error(f"Error validando entrada: {e}")
        raise
    except CaseNotMatched:
        raise
    except Exception as e:
        logger.error(f"Error en el dibujo por grado 3: {e}", exc_info=True)
        raise RuntimeError(f"Fallo al dibujar con vértices de grado 3: {e}") from e


if __name__ == "__main__":
    from graph_core import kleetope, named_triangulation

    for name in ("k4", "octahedron", "icosahedron"):
        g = kleetope(named_triangulation(name))
        res = draw_degree3_aware(g, audit=True)
        print(f"kleetope({name}) n={g.n}: biarcos={res.biarcs} cota={kleetope_bound(g.n)}")

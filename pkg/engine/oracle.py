# oracle.py
# Oráculo exacto para instancias pequeñas: embebimiento en 2 páginas para un
# orden fijo y mínimo de biarcos bajada-subida por búsqueda exhaustiva.

import logging
from dataclasses import dataclass
from itertools import combinations, permutations, product
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import networkx as nx

from diagram import ArcDiagram, ArcShape, Crossing, Page
from graph_core import Edge, PlaneTriangulation, SizeTooLarge, edge_key

logger = logging.getLogger(__name__)

DEFAULT_MAX_N = 7


class TooLarge(SizeTooLarge):
    """Instancia demasiado grande para la búsqueda exhaustiva."""


@dataclass(frozen=True)
class OracleResult:
    """Mínimo encontrado, un diagrama testigo y cuántas configuraciones se probaron."""
    minimum: int
    witness: ArcDiagram
    explored: int


def _edge_list(graph) -> List[Edge]:
    if isinstance(graph, PlaneTriangulation):
        return list(graph.edges)
    if isinstance(graph, nx.Graph):
        return sorted(edge_key(u, v) for u, v in graph.edges())
    return sorted(edge_key(u, v) for u, v in graph)


def _interleave(a: Tuple[int, int], b: Tuple[int, int]) -> bool:
    (p, q), (r, s) = a, b
    return p < r < q < s or r < p < s < q


def _page_assignment(intervals: Dict[Edge, Tuple[int, int]],
                     fixed: Sequence[Tuple[Tuple[int, int], Page]]) -> Optional[Dict[Edge, Page]]:
    """
    Reparte las aristas propias en dos páginas sin entrelazados, respetando
    los semiarcos de biarcos ya fijados. None si no hay reparto.

    Grafo de conflictos: una arista por cada par entrelazado y los nodos
    UPPER/LOWER unidos entre sí; el reparto existe si el grafo es bipartito.
    """
    for (a, pa), (b, pb) in combinations(fixed, 2):
        if pa is pb and _interleave(a, b):
            return None
    conflict = nx.Graph()
    conflict.add_edge(Page.UPPER, Page.LOWER)
    conflict.add_nodes_from(intervals)
    items = list(intervals.items())
    for (e, a), (f, b) in combinations(items, 2):
        if _interleave(a, b):
            conflict.add_edge(e, f)
    for e, a in items:
        for h, page in fixed:
            if _interleave(a, h):
                conflict.add_edge(e, page)
    if not nx.is_bipartite(conflict):
        return None
    pages: Dict[Edge, Page] = {}
    for component in nx.connected_components(conflict):
        sub = conflict.subgraph(component)
        colors = nx.bipartite.color(sub)
        anchor = Page.UPPER if Page.UPPER in component else None
        flip = anchor is not None and colors[anchor] == 1
        for e in component:
            if isinstance(e, Page):
                continue
            upper = (colors[e] == 0) != flip
            pages[e] = Page.UPPER if upper else Page.LOWER
    return pages


def two_page_embeddable(graph, spine_order: Sequence[int]) -> bool:
    """
    True si las aristas admiten dos páginas sin pares entrelazados en la
    misma página para el orden dado (grafo de conflictos bipartito).

    Args:
        graph: PlaneTriangulation, nx.Graph o iterable de aristas
        spine_order: Permutación de los vértices
    """
    pos = {v: i for i, v in enumerate(spine_order)}
    intervals = {e: tuple(sorted((pos[e[0]], pos[e[1]]))) for e in _edge_list(graph)}
    return _page_assignment(intervals, ()) is not None


def _layouts(order: Sequence[int], biarcs: Sequence[Edge]) -> Iterator[Tuple[object, ...]]:
    """Lomos posibles: un hueco interior por biarco y todo orden relativo en cada hueco."""
    pos = {v: i for i, v in enumerate(order)}
    choices = []
    for e in biarcs:
        lo, hi = sorted((pos[e[0]], pos[e[1]]))
        choices.append(range(lo + 1, hi + 1))
    for gaps in product(*choices):
        buckets: Dict[int, List[Edge]] = {}
        for e, g in zip(biarcs, gaps):
            buckets.setdefault(g, []).append(e)
        keys = sorted(buckets)
        for orders in product(*(permutations(buckets[k]) for k in keys)):
            spine: List[object] = []
            chosen = dict(zip(keys, orders))
            for i, v in enumerate(order):
                spine.extend(Crossing(*e) for e in chosen.get(i, ()))
                spine.append(v)
            yield tuple(spine)


def _try_order(edges: Sequence[Edge], order: Sequence[int], budget: int) -> Tuple[Optional[ArcDiagram], int]:
    explored = 0
    for biarcs in combinations(edges, budget):
        proper = [e for e in edges if e not in biarcs]
        for spine in _layouts(order, biarcs):
            explored += 1
            pos = {x: i for i, x in enumerate(spine)}
            fixed = []
            for e in biarcs:
                lo, hi = sorted((pos[e[0]], pos[e[1]]))
                c = pos[Crossing(*e)]
                fixed += [((lo, c), Page.LOWER), ((c, hi), Page.UPPER)]
            intervals = {e: tuple(sorted((pos[e[0]], pos[e[1]]))) for e in proper}
            pages = _page_assignment(intervals, fixed)
            if pages is None:
                continue
            shapes = {e: ArcShape.MOUNTAIN if p is Page.UPPER else ArcShape.POCKET for e, p in pages.items()}
            shapes.update({e: ArcShape.BIARC for e in biarcs})
            return ArcDiagram(spine, shapes), explored
    return None, explored


def _orders(vertices: Sequence[int]) -> Iterator[Tuple[int, ...]]:
    # girar 180° invierte el lomo y conserva los biarcos bajada-subida
    for perm in permutations(vertices):
        if perm[0] < perm[-1]:
            yield perm


def solve_min_biarcs(graph, max_n: int = DEFAULT_MAX_N,
                     order: Optional[Sequence[int]] = None) -> OracleResult:
    """
    Mínimo exacto de biarcos bajada-subida de un diagrama plano monótono.

    Profundización iterativa en el número de biarcos: para cada cota se
    recorren los órdenes del lomo (o solo el dado), los subconjuntos de
    aristas que serán biarcos, el hueco de cada cruce y su orden relativo.

    Raises:
        TooLarge: Si n > max_n
    """
    try:
        edges = _edge_list(graph)
        vertices = sorted({v for e in edges for v in e})
        if len(vertices) > max_n:
            raise TooLarge(f"n={len(vertices)} supera el máximo del oráculo ({max_n})")
        orders = [tuple(order)] if order is not None else list(_orders(vertices))
        explored = 0
        for budget in range(len(edges) + 1):
            for perm in orders:
                witness, count = _try_order(edges, perm, budget)
                explored += count
                if witness is not None:
                    logger.info(f"oráculo n={len(vertices)}: mínimo {budget} ({explored} configuraciones)")
                    return OracleResult(budget, witness, explored)
        raise RuntimeError("sin diagrama para ninguna cota")
    except (TypeError, ValueError) as e:
        logger.error(f"Error validando entrada: {e}")
        raise
    except Exception as e:
        logger.error(f"Error en el oráculo: {e}", exc_info=True)
        raise RuntimeError(f"Fallo en el oráculo: {e}") from e


def min_biarcs_bruteforce(graph, max_n: int = DEFAULT_MAX_N) -> int:
    """Número mínimo de biarcos bajada-subida (ver solve_min_biarcs)."""
    return solve_min_biarcs(graph, max_n).minimum


if __name__ == "__main__":
    from graph_core import named_triangulation

    for name in ("k4", "octahedron"):
        res = solve_min_biarcs(named_triangulation(name))
        print(f"{name}: mínimo={res.minimum} lomo={res.witness.spine}")

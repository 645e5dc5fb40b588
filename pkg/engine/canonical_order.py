# canonical_order.py
# Órdenes canónicos incrementales: camino exterior, elegibilidad, regiones,
# relación de cobertura y clasificación de vértices problemáticos por pivote.

import logging
from collections import deque
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from diagram import ArcDiagram, ArcShape
from graph_core import Edge, PlaneTriangulation, edge_key

logger = logging.getLogger(__name__)

POCKET_CHAR = "⌣"
MOUNTAIN_CHAR = "⌢"


# -----------------------------
# Errores de dominio
# -----------------------------
class NotEligible(ValueError):
    """El vértice no es elegible en el estado actual."""


class NotOnFrontier(ValueError):
    """El vértice no tiene vecinos en el camino exterior."""


class PreconditionViolated(ValueError):
    """Se pidió u pero existe un vértice elegible no problemático."""


class CaseNotMatched(RuntimeError):
    """Configuración alcanzable que ningún caso de la construcción cubre (error interno)."""


# -----------------------------
# Tipos
# -----------------------------
class ProblemType(Enum):
    T2_M = "T(2,⌢)"
    T3_MM = "T(3,⌢⌢)"
    T4_MMM = "T(4,⌢⌢⌢)"
    T3_MP = "T(3,⌢⌣)"
    NOT_PROBLEMATIC = "none"


_PROBLEMATIC = {
    (2, MOUNTAIN_CHAR): ProblemType.T2_M,
    (3, MOUNTAIN_CHAR * 2): ProblemType.T3_MM,
    (4, MOUNTAIN_CHAR * 3): ProblemType.T4_MMM,
    (3, MOUNTAIN_CHAR + POCKET_CHAR): ProblemType.T3_MP,
}


def classify(degree: int, profile: str) -> ProblemType:
    """Tipo problemático como función pura de (grado en el camino, perfil)."""
    return _PROBLEMATIC.get((degree, profile), ProblemType.NOT_PROBLEMATIC)


@dataclass(frozen=True)
class Profile:
    vertex: int
    neighbors: Tuple[int, ...]
    profile: str
    problem: ProblemType
    pivot: int
    pivot_cover: Optional[int]

    @property
    def left(self) -> int:
        return self.neighbors[0]

    @property
    def right(self) -> int:
        return self.neighbors[-1]

    @property
    def degree(self) -> int:
        return len(self.neighbors)

    @property
    def is_problematic(self) -> bool:
        return self.problem is not ProblemType.NOT_PROBLEMATIC

    @property
    def right_pivot(self) -> bool:
        return self.problem is ProblemType.T3_MP


class RegionKind(Enum):
    EMPTY_POCKET = "EmptyPocket"
    EMPTY_MOUNTAIN = "EmptyMountain"
    LEFT_PIVOT = "LeftPivot"
    RIGHT_PIVOT = "RightPivot"
    BOTH_PIVOT = "BothPivot"


@dataclass(frozen=True)
class Region:
    index: int
    left: int
    right: int
    edges: Tuple[Edge, ...]
    vertices: FrozenSet[int]
    eligible: Tuple[int, ...]
    kind: RegionKind
    chain: Tuple[int, ...] = ()

    @property
    def is_empty(self) -> bool:
        return not self.vertices


# -----------------------------
# Estado
# -----------------------------
@dataclass(frozen=True)
class OrderingState:
    """Prefijo v1..vi de un orden canónico y su camino exterior P∘(G_i)."""
    graph: PlaneTriangulation
    placed: Tuple[int, ...]
    path: Tuple[int, ...]
    vn: int

    @classmethod
    def initial(cls, g: PlaneTriangulation, outer: Optional[Sequence[int]] = None) -> "OrderingState":
        """
        Estado con el triángulo base v1 v3 v2; v1v2 es la arista base de la
        cara exterior y v3 el ápice interior de v1v2.
        """
        v1, v2, vn = tuple(outer) if outer is not None else g.outer_face
        if not g.is_face((v1, v2, vn)):
            raise ValueError(f"{(v1, v2, vn)} no es una cara de la triangulación")
        if g.n == 3:
            return cls(g, (v1, v2, vn), (v1, vn, v2), vn)
        a, b = g.apexes(v1, v2)
        v3 = a if b == vn else b
        return cls(g, (v1, v2, v3), (v1, v3, v2), vn)

    @property
    def v1(self) -> int:
        return self.path[0]

    @property
    def v2(self) -> int:
        return self.path[-1]

    @cached_property
    def placed_set(self) -> FrozenSet[int]:
        return frozenset(self.placed)

    @cached_property
    def path_pos(self) -> Dict[int, int]:
        return {v: i for i, v in enumerate(self.path)}

    @property
    def i(self) -> int:
        return len(self.placed)

    @property
    def is_complete(self) -> bool:
        return len(self.placed) == self.graph.n

    @cached_property
    def unplaced(self) -> Tuple[int, ...]:
        return tuple(v for v in self.graph.vertices if v not in self.placed_set)

    @property
    def path_edges(self) -> List[Edge]:
        return [edge_key(a, b) for a, b in zip(self.path, self.path[1:])]

    def cover(self, a: int, b: int) -> Optional[int]:
        """Ápice no colocado de la arista del camino ab, c_e."""
        for x in self.graph.apexes(a, b):
            if x not in self.placed_set:
                return x
        return None

    def path_neighbors(self, v: int) -> Tuple[int, ...]:
        """Vecinos de v en P∘(G_i), en orden del camino."""
        pos = self.path_pos
        return tuple(sorted((u for u in self.graph.neighbors(v) if u in pos), key=pos.__getitem__))

    def degree_placed(self, v: int) -> int:
        """d_i(v): vecinos de v ya colocados."""
        return sum(1 for u in self.graph.neighbors(v) if u in self.placed_set)


def is_eligible(s: OrderingState, v: int) -> bool:
    """
    v es elegible si sus vecinos en el camino son consecutivos (al menos dos)
    y v cubre todas las aristas entre ellos, es decir, su región no
    contiene vértices.
    """
    if v in s.placed_set:
        return False
    if v == s.vn and s.i < s.graph.n - 1:
        return False
    nbrs = s.path_neighbors(v)
    if len(nbrs) < 2:
        return False
    a, b = s.path_pos[nbrs[0]], s.path_pos[nbrs[-1]]
    if b - a + 1 != len(nbrs):
        return False
    return all(s.cover(s.path[h], s.path[h + 1]) == v for h in range(a, b))


def eligible_set(s: OrderingState) -> List[int]:
    """Vértices elegibles ordenados por el inicio de su intervalo cubierto."""
    covers = {s.cover(a, b) for a, b in zip(s.path, s.path[1:])} - {None}
    found = [v for v in covers if is_eligible(s, v)]
    return sorted(found, key=lambda v: (s.path_pos[s.path_neighbors(v)[0]], v))


def advance(s: OrderingState, v: int) -> OrderingState:
    """
    Añade v al orden: el subcamino cubierto se sustituye por ℓ·v·r.

    Raises:
        NotEligible: Si v no es elegible
    """
    if not is_eligible(s, v):
        raise NotEligible(f"{v} no es elegible en i={s.i}")
    nbrs = s.path_neighbors(v)
    a, b = s.path_pos[nbrs[0]], s.path_pos[nbrs[-1]]
    path = s.path[:a + 1] + (v,) + s.path[b:]
    return OrderingState(s.graph, s.placed + (v,), path, s.vn)


def advance_all(s: OrderingState, vertices: Sequence[int]) -> OrderingState:
    """
    Añade un conjunto de vértices en un orden canónico compatible, probando
    primero el orden dado.

    Raises:
        CaseNotMatched: Si ningún vértice restante llega a ser elegible
    """
    remaining = list(vertices)
    while remaining:
        progressed = False
        for v in list(remaining):
            if is_eligible(s, v):
                s = advance(s, v)
                remaining.remove(v)
                progressed = True
        if not progressed:
            raise CaseNotMatched(f"ningún vértice de {sorted(remaining)} es elegible en i={s.i}")
    return s


# -----------------------------
# Estados de trabajo
# -----------------------------
# Durante un paso de varios vértices el camino puede contener un vértice
# colocado solo sobre parte de sus vecinos; estas operaciones no exigen
# elegibilidad.
def place_run(s: OrderingState, v: int, run: Sequence[int]) -> OrderingState:
    """
    Coloca v sobre un tramo consecutivo del camino: el tramo queda
    sustituido por sus extremos con v en medio.

    Raises:
        ValueError: Si v ya está colocado o run no es un tramo del camino
    """
    if v in s.placed_set:
        raise ValueError(f"{v} ya está colocado")
    pos = s.path_pos
    if len(run) < 2 or any(x not in pos for x in run):
        raise ValueError(f"tramo {list(run)} fuera del camino")
    a = pos[run[0]]
    if [pos[x] for x in run] != list(range(a, a + len(run))):
        raise ValueError(f"tramo {list(run)} no es consecutivo en el camino")
    path = s.path[:a + 1] + (v,) + s.path[a + len(run) - 1:]
    return OrderingState(s.graph, s.placed + (v,), path, s.vn)


def bridge(s: OrderingState, a: int, b: int) -> OrderingState:
    """Quita del camino los vértices estrictamente entre a y b (la arista ab pasa por encima)."""
    i, j = sorted((s.path_pos[a], s.path_pos[b]))
    return OrderingState(s.graph, s.placed, s.path[:i + 1] + s.path[j:], s.vn)


def absorb(s: OrderingState, vertices: Sequence[int], path: Sequence[int]) -> OrderingState:
    """Da por colocados los vértices de un subdibujo y fija el nuevo camino."""
    fresh = tuple(v for v in vertices if v not in s.placed_set)
    return OrderingState(s.graph, s.placed + fresh, tuple(path), s.vn)


def consecutive_run(s: OrderingState, v: int, a: int, b: int) -> Tuple[int, ...]:
    """
    Tramo maximal del camino alrededor de la arista ab cuyas aristas forman
    cara con v.
    """
    g = s.graph
    pos = s.path_pos
    i, j = sorted((pos[a], pos[b]))
    if j != i + 1:
        raise ValueError(f"{edge_key(a, b)} no es una arista del camino")

    def spans(h: int) -> bool:
        return v in g.apexes(s.path[h], s.path[h + 1])

    if not spans(i):
        raise ValueError(f"{v} no cubre la arista {edge_key(a, b)}")
    lo, hi = i, i + 1
    while lo > 0 and spans(lo - 1):
        lo -= 1
    while hi < len(s.path) - 1 and spans(hi):
        hi += 1
    return s.path[lo:hi + 1]


def region_vertices(s: OrderingState, v: int) -> FrozenSet[int]:
    """Vértices no colocados dentro de R_i(v), la región entre v y su subcamino ℓ..r."""
    nbrs = s.path_neighbors(v)
    if len(nbrs) < 2:
        return frozenset()
    return _flood(s, s.path_pos[nbrs[0]], s.path_pos[nbrs[-1]], blocked=v)


def _flood(s: OrderingState, a: int, b: int, blocked: int) -> FrozenSet[int]:
    seeds = {s.cover(s.path[h], s.path[h + 1]) for h in range(a, b)} - {None, blocked}
    seen = set(seeds)
    queue = deque(seeds)
    while queue:
        x = queue.popleft()
        for y in s.graph.neighbors(x):
            if y != blocked and y not in s.placed_set and y not in seen:
                seen.add(y)
                queue.append(y)
    return frozenset(seen)


def check_extensible(s: OrderingState) -> bool:
    """
    G_i es internamente triangulado con ciclo exterior v1..v2 y todos los
    vértices restantes están fuera: cuenta de caras 2i-2-|C∘|.
    """
    inner = sum(1 for f in s.graph.faces if all(x in s.placed_set for x in f))
    if s.is_complete:
        return inner == 2 * s.graph.n - 4
    return inner == 2 * s.i - 2 - len(s.path)


def is_canonical_ordering(g: PlaneTriangulation, order: Sequence[int],
                          outer: Optional[Sequence[int]] = None) -> bool:
    """Reproduce el orden completo y comprueba C1-C3 paso a paso."""
    s = OrderingState.initial(g, outer)
    if tuple(order[:3]) != s.placed:
        return False
    for v in order[3:]:
        if not is_eligible(s, v):
            return False
        s = advance(s, v)
        if not check_extensible(s):
            return False
    return s.is_complete


# -----------------------------
# Perfiles y pivotes
# -----------------------------
def edge_char(d: ArcDiagram, a: int, b: int) -> str:
    shape = d.shape(a, b)
    if shape is ArcShape.POCKET:
        return POCKET_CHAR
    if shape is ArcShape.MOUNTAIN:
        return MOUNTAIN_CHAR
    raise ValueError(f"arista del camino {edge_key(a, b)} no es propia: {shape}")


def profile(s: OrderingState, d: ArcDiagram, v: int) -> Profile:
    """
    Perfil de v: tipos de las aristas del camino entre ℓ y r, tipo
    problemático, pivote p(v) (r para T(3,⌢⌣), ℓ en otro caso) y su
    cubridor pc(v).

    Raises:
        NotEligible: Si v no es elegible
    """
    if not is_eligible(s, v):
        raise NotEligible(f"{v} no es elegible en i={s.i}")
    nbrs = s.path_neighbors(v)
    chars = "".join(edge_char(d, a, b) for a, b in zip(nbrs, nbrs[1:]))
    problem = classify(len(nbrs), chars)
    if problem is ProblemType.T3_MP:
        pivot, inner = nbrs[-1], nbrs[-2]
    else:
        pivot, inner = nbrs[0], nbrs[1]
    pc = None
    for x in s.graph.apexes(v, pivot):
        if x != inner and x not in s.placed_set:
            pc = x
    return Profile(v, nbrs, chars, problem, pivot, pc)


def select_u(s: OrderingState, d: ArcDiagram) -> int:
    """
    Elemento ≺-mínimo de U = {pc(v) : v elegible} ∖ E_i.

    Raises:
        PreconditionViolated: Si algún elegible no es problemático
        CaseNotMatched: Si U está vacío
    """
    elig = eligible_set(s)
    profiles = [profile(s, d, v) for v in elig]
    if any(not p.is_problematic for p in profiles):
        raise PreconditionViolated("existe un vértice elegible no problemático")
    candidates = {p.pivot_cover for p in profiles if p.pivot_cover is not None} - set(elig)
    if not candidates:
        raise CaseNotMatched(f"U vacío con elegibles {elig}")
    regions = {u: region_vertices(s, u) for u in candidates}
    minimal = [u for u in candidates
               if not any(w != u and regions[w] < regions[u] for w in candidates)]
    return min(minimal, key=lambda u: (len(regions[u]), u))


def decompose_regions(s: OrderingState, d: ArcDiagram, u: int) -> List[Region]:
    """
    Divide R_i(u) en las subregiones X_1..X_{k-1} que separan las aristas uw_j.

    Raises:
        NotOnFrontier: Si u no tiene vecinos en el camino
    """
    nbrs = s.path_neighbors(u)
    if not nbrs:
        raise NotOnFrontier(f"{u} no tiene vecinos en el camino exterior")
    elig = eligible_set(s)
    regions = []
    for j, (wl, wr) in enumerate(zip(nbrs, nbrs[1:]), start=1):
        a, b = s.path_pos[wl], s.path_pos[wr]
        edges = tuple(edge_key(s.path[h], s.path[h + 1]) for h in range(a, b))
        inside = _flood(s, a, b, blocked=u)
        in_region = tuple(v for v in elig if v in inside)
        chain: Tuple[int, ...] = ()
        if not inside:
            kind = RegionKind.EMPTY_POCKET if d.shape(*edges[0]) is ArcShape.POCKET else RegionKind.EMPTY_MOUNTAIN
        else:
            profs = {v: profile(s, d, v) for v in in_region}
            rights = [v for v, p in profs.items() if p.right_pivot]
            lefts = [v for v, p in profs.items() if p.is_problematic and not p.right_pivot]
            if rights and lefts:
                kind = RegionKind.BOTH_PIVOT
            elif rights:
                kind = RegionKind.RIGHT_PIVOT
            else:
                kind = RegionKind.LEFT_PIVOT
            chain = _left_chain(profs, lefts, u)
        regions.append(Region(j, wl, wr, edges, inside, in_region, kind, chain))
    return regions


def _left_chain(profs: Dict[int, Profile], lefts: Sequence[int], u: int) -> Tuple[int, ...]:
    """Cadena x_1..x_q con pc(x_1)=u y pc(x_{h+1})=x_h."""
    chain: List[int] = []
    current = u
    remaining = set(lefts)
    while True:
        nxt = [v for v in remaining if profs[v].pivot_cover == current]
        if not nxt:
            return tuple(chain)
        current = min(nxt)
        chain.append(current)
        remaining.discard(current)

# diagram.py
# Diagramas de arcos monótonos: modelo de datos, primitivas de dibujo,
# envolventes, libro de créditos y validadores.

import logging
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from graph_core import Edge, PlaneTriangulation, edge_key

logger = logging.getLogger(__name__)

DEFAULT_CHI = Fraction(1, 5)
MAX_CHI = Fraction(1, 5)
ORIENTATIONS = ("asis", "rotated_pi")


# -----------------------------
# Errores de dominio
# -----------------------------
class NotPlanar(ValueError):
    """Dos semiarcos de la misma página se entrelazan."""


class NotAPocket(ValueError):
    """La arista indicada no es un bolsillo."""


class NotAMountain(ValueError):
    """La arista indicada no es una montaña."""


class WouldCross(ValueError):
    """La primitiva produciría un diagrama no planar."""


class BoundaryMismatch(ValueError):
    """El borde del subdiagrama no coincide con el del hueco."""


class InvalidChi(ValueError):
    """χ fuera de (0, 1/5]."""


class DiagramFormatError(ValueError):
    """Texto .arc mal formado."""


class BoundExceeded(ValueError):
    """Un paso o el diagrama final supera la cota garantizada (error interno)."""


# -----------------------------
# Modelo de datos
# -----------------------------
class ArcShape(Enum):
    MOUNTAIN = "M"
    POCKET = "P"
    BIARC = "B"            # bajada-subida: semiarco inferior a la izquierda
    BIARC_UP_DOWN = "U"    # solo aparece al leer o validar entradas externas

    @property
    def is_proper(self) -> bool:
        return self in (ArcShape.MOUNTAIN, ArcShape.POCKET)

    @property
    def is_biarc(self) -> bool:
        return not self.is_proper


class Page(Enum):
    UPPER = "upper"
    LOWER = "lower"


@dataclass(frozen=True, order=True)
class Crossing:
    """Punto donde un biarco corta el lomo; se identifica por su arista."""
    u: int
    v: int

    def __post_init__(self):
        if self.u > self.v:
            a, b = self.v, self.u
            object.__setattr__(self, "u", a)
            object.__setattr__(self, "v", b)

    @property
    def edge(self) -> Edge:
        return (self.u, self.v)

    def __str__(self) -> str:
        return f"x:{self.u}-{self.v}"


Item = Union[int, Crossing]


@dataclass(frozen=True)
class HalfArc:
    left: int
    right: int
    page: Page
    edge: Edge


@dataclass(frozen=True)
class ArcDiagram:
    """
    Diagrama de arcos: orden del lomo (vértices y cruces), forma de cada
    arista y créditos racionales. Las primitivas devuelven diagramas nuevos.
    """
    spine: Tuple[Item, ...] = ()
    shapes: Mapping[Edge, ArcShape] = field(default_factory=dict)
    credits: Mapping[Edge, Fraction] = field(default_factory=dict)

    @cached_property
    def positions(self) -> Dict[Item, int]:
        return {item: i for i, item in enumerate(self.spine)}

    @cached_property
    def vertices(self) -> Tuple[int, ...]:
        return tuple(x for x in self.spine if not isinstance(x, Crossing))

    @property
    def edges(self) -> Tuple[Edge, ...]:
        return tuple(sorted(self.shapes))

    @property
    def biarc_count(self) -> int:
        return sum(1 for s in self.shapes.values() if s.is_biarc)

    @property
    def crossing_count(self) -> int:
        return sum(1 for x in self.spine if isinstance(x, Crossing))

    @property
    def cost(self) -> Fraction:
        return sum(self.credits.values(), Fraction(0))

    def shape(self, u: int, v: int) -> Optional[ArcShape]:
        return self.shapes.get(edge_key(u, v))

    def left_endpoint(self, e: Edge) -> int:
        u, v = e
        return u if self.positions[u] < self.positions[v] else v

    def half_arcs(self) -> List[HalfArc]:
        """Semiarcos del diagrama como intervalos de posiciones del lomo."""
        pos = self.positions
        arcs = []
        for e, s in self.shapes.items():
            a, b = sorted((pos[e[0]], pos[e[1]]))
            if s is ArcShape.MOUNTAIN:
                arcs.append(HalfArc(a, b, Page.UPPER, e))
            elif s is ArcShape.POCKET:
                arcs.append(HalfArc(a, b, Page.LOWER, e))
            else:
                x = pos.get(Crossing(*e))
                if x is None:
                    raise DiagramFormatError(f"biarco {e} sin cruce en el lomo")
                first, second = (Page.LOWER, Page.UPPER) if s is ArcShape.BIARC else (Page.UPPER, Page.LOWER)
                arcs.append(HalfArc(a, x, first, e))
                arcs.append(HalfArc(x, b, second, e))
        return arcs

    def with_credits(self, credits: Mapping[Edge, Fraction]) -> "ArcDiagram":
        return replace(self, credits=dict(credits))


def validate_chi(chi) -> Fraction:
    """
    Convierte y valida χ.

    Raises:
        TypeError: Si chi no es numérico
        InvalidChi: Si chi fuera de (0, 1/5]
    """
    if isinstance(chi, bool) or not isinstance(chi, (int, float, str, Fraction)):
        raise TypeError(f"chi debe ser racional, recibido {type(chi).__name__}")
    try:
        value = Fraction(chi).limit_denominator(10 ** 6) if isinstance(chi, float) else Fraction(chi)
    except ValueError as e:
        raise InvalidChi(f"chi no es un racional: {chi!r}") from e
    if not 0 < value <= MAX_CHI:
        raise InvalidChi(f"chi fuera de rango (0, 1/5]: {value}")
    return value


# -----------------------------
# Planaridad
# -----------------------------
def find_crossing(d: ArcDiagram) -> Optional[Tuple[Edge, Edge, Page]]:
    """Primer par de semiarcos entrelazados en una misma página, o None."""
    by_page: Dict[Page, List[HalfArc]] = {Page.UPPER: [], Page.LOWER: []}
    for arc in d.half_arcs():
        by_page[arc.page].append(arc)
    for page, arcs in by_page.items():
        arcs.sort(key=lambda a: (a.left, -a.right))
        stack: List[HalfArc] = []
        for arc in arcs:
            while stack and stack[-1].right <= arc.left:
                stack.pop()
            if stack and stack[-1].right < arc.right:
                return stack[-1].edge, arc.edge, page
            stack.append(arc)
    return None


def is_planar(d: ArcDiagram) -> bool:
    return find_crossing(d) is None


def semicircles_cross(a: Tuple[Fraction, Fraction], b: Tuple[Fraction, Fraction]) -> bool:
    """
    Cruce geométrico exacto de dos semicírculos de la misma página sobre
    los intervalos a y b del lomo (solo cuentan puntos fuera del lomo).
    """
    c1, r1 = (a[0] + a[1]) / 2, (a[1] - a[0]) / 2
    c2, r2 = (b[0] + b[1]) / 2, (b[1] - b[0]) / 2
    dist = abs(c2 - c1)
    if dist == 0 or dist > r1 + r2 or dist < abs(r1 - r2):
        return False
    x = (dist * dist + r1 * r1 - r2 * r2) / (2 * dist)
    return r1 * r1 - x * x > 0


def geometric_crossings(d: ArcDiagram) -> List[Tuple[Edge, Edge]]:
    """Comprobación independiente de planaridad por geometría de semicírculos."""
    arcs = d.half_arcs()
    found = []
    for i, p in enumerate(arcs):
        for q in arcs[i + 1:]:
            if p.page is q.page and semicircles_cross((Fraction(p.left), Fraction(p.right)),
                                                      (Fraction(q.left), Fraction(q.right))):
                found.append((p.edge, q.edge))
    return found


def _require_planar(d: ArcDiagram, what: str) -> ArcDiagram:
    hit = find_crossing(d)
    if hit is not None:
        raise WouldCross(f"{what}: {hit[0]} y {hit[1]} se cruzan en la página {hit[2].value}")
    return d


# -----------------------------
# Envolventes y caras
# -----------------------------
def _gap_stacks(arcs: Sequence[HalfArc], size: int) -> List[List[HalfArc]]:
    """
    Para cada hueco g (0..size) la pila de semiarcos que lo contienen
    (l < g <= r), del más exterior al más interior.
    """
    ordered = sorted(arcs, key=lambda a: (a.left, -a.right))
    stacks: List[List[HalfArc]] = [[] for _ in range(size + 1)]
    stack: List[HalfArc] = []
    k = 0
    for g in range(1, size):
        while stack and stack[-1].right < g:
            stack.pop()
        while k < len(ordered) and ordered[k].left < g:
            if ordered[k].right >= g:
                stack.append(ordered[k])
            k += 1
        stacks[g] = list(stack)
    return stacks


def _pages(d: ArcDiagram) -> Tuple[List[HalfArc], List[HalfArc]]:
    arcs = d.half_arcs()
    return [a for a in arcs if a.page is Page.UPPER], [a for a in arcs if a.page is Page.LOWER]


def envelope(d: ArcDiagram, side: Page = Page.UPPER) -> List[Tuple[str, object]]:
    """
    Cadena visible desde arriba (UPPER) o desde abajo (LOWER), como lista
    alternada de ("item", x) y ("edge", e).

    Raises:
        NotPlanar: Si el diagrama no es planar
    """
    if not is_planar(d):
        raise NotPlanar("la envolvente requiere un diagrama planar")
    upper, lower = _pages(d)
    near, far = (upper, lower) if side is Page.UPPER else (lower, upper)
    size = len(d.spine)
    near_stacks = _gap_stacks(near, size)
    far_stacks = _gap_stacks(far, size)
    chain: List[Tuple[str, object]] = []

    def push(entry):
        if not chain or chain[-1] != entry:
            chain.append(entry)

    for p, item in enumerate(d.spine):
        if p > 0:
            if near_stacks[p]:
                push(("edge", near_stacks[p][0].edge))
            elif far_stacks[p]:
                push(("edge", far_stacks[p][-1].edge))
        hidden = p + 1 < size and any(a.left < p < a.right for a in near_stacks[p + 1])
        if not hidden:
            push(("item", item))
    return chain


def expected_chain(path: Sequence[int]) -> List[Tuple[str, object]]:
    chain: List[Tuple[str, object]] = [("item", path[0])]
    for a, b in zip(path, path[1:]):
        chain += [("edge", edge_key(a, b)), ("item", b)]
    return chain


def innermost_arcs(d: ArcDiagram) -> List[Tuple[Optional[Edge], Optional[Edge]]]:
    """Para cada hueco, la arista del semiarco superior e inferior más interior."""
    upper, lower = _pages(d)
    size = len(d.spine)
    up, down = _gap_stacks(upper, size), _gap_stacks(lower, size)
    return [(up[g][-1].edge if up[g] else None, down[g][-1].edge if down[g] else None)
            for g in range(size + 1)]


def face_at_gap(d: ArcDiagram, gap: int,
                arcs: Optional[List[Tuple[Optional[Edge], Optional[Edge]]]] = None) -> Optional[FrozenSet[int]]:
    """
    Cara (conjunto de 3 vértices) que contiene el hueco, deducida de los
    semiarcos más interiores de cada página; None si está en la región exterior.
    """
    arcs = arcs if arcs is not None else innermost_arcs(d)
    e_up, e_down = arcs[gap]
    if e_up is None or e_down is None:
        return None
    face = frozenset(e_up) | frozenset(e_down)
    if len(face) != 3:
        raise NotPlanar(f"hueco {gap} acotado por {e_up} y {e_down}, que no forman un triángulo")
    return face


def gaps_by_face(d: ArcDiagram) -> Dict[Optional[FrozenSet[int]], List[int]]:
    """Huecos del lomo agrupados por la cara que los contiene (None = exterior)."""
    arcs = innermost_arcs(d)
    result: Dict[Optional[FrozenSet[int]], List[int]] = {}
    for g in range(len(d.spine) + 1):
        result.setdefault(face_at_gap(d, g, arcs), []).append(g)
    return result


def faces_missing_spine(d: ArcDiagram, g: PlaneTriangulation) -> List[Tuple[int, ...]]:
    """Caras de g que no cortan el lomo en ningún hueco (la exterior usa la región exterior)."""
    hit = gaps_by_face(d)
    outer = frozenset(g.outer_face)
    missing = []
    for face in g.faces:
        key = frozenset(face)
        if key == outer:
            if None not in hit and outer not in hit:
                missing.append(face)
        elif key not in hit:
            missing.append(face)
    return missing


# -----------------------------
# Primitivas
# -----------------------------
def _insert_items(spine: Sequence[Item], gap: int, items: Sequence[Item]) -> Tuple[Item, ...]:
    if not 0 <= gap <= len(spine):
        raise ValueError(f"hueco fuera de rango [0, {len(spine)}]: {gap}")
    return tuple(spine[:gap]) + tuple(items) + tuple(spine[gap:])


def gap_after(d: ArcDiagram, item: Item) -> int:
    """Hueco inmediatamente a la derecha del item."""
    return d.positions[item] + 1


def insert_vertex(d: ArcDiagram, v: int, gap: int, arcs: Mapping[int, ArcShape],
                  check: bool = True) -> ArcDiagram:
    """
    Coloca v en el hueco indicado y dibuja aristas propias hacia los vecinos.

    Raises:
        ValueError: Si v ya está en el lomo o alguna forma no es propia
        WouldCross: Si el resultado no es planar
    """
    if v in d.positions:
        raise ValueError(f"el vértice {v} ya está en el lomo")
    shapes = dict(d.shapes)
    for w, s in arcs.items():
        if not s.is_proper:
            raise ValueError(f"insert_vertex solo dibuja arcos propios, recibido {s} hacia {w}")
        if w not in d.positions:
            raise ValueError(f"vecino {w} no está en el lomo")
        shapes[edge_key(v, w)] = s
    out = ArcDiagram(_insert_items(d.spine, gap, [v]), shapes, dict(d.credits))
    return _require_planar(out, f"insertar {v}") if check else out


def add_biarcs(d: ArcDiagram, left: int, targets: Sequence[int], gap: int,
               check: bool = True) -> ArcDiagram:
    """
    Dibuja biarcos bajada-subida de left a cada destino, con sus cruces
    juntos en el hueco dado: el destino más lejano cruza primero.
    """
    pos = d.positions
    ordered = sorted(targets, key=lambda w: -pos[w])
    for w in ordered:
        if not pos[left] < gap <= pos[w]:
            raise ValueError(f"hueco {gap} no está entre {left} y {w}")
    shapes = dict(d.shapes)
    for w in ordered:
        shapes[edge_key(left, w)] = ArcShape.BIARC
    spine = _insert_items(d.spine, gap, [Crossing(left, w) for w in ordered])
    out = ArcDiagram(spine, shapes, dict(d.credits))
    return _require_planar(out, f"biarcos desde {left}") if check else out


def push_down(d: ArcDiagram, mountain: Edge, check: bool = True) -> ArcDiagram:
    """
    Convierte en biarcos todas las montañas con el mismo extremo izquierdo u
    que la indicada; los cruces van justo a la derecha de u, el arco más largo
    primero.

    Raises:
        NotAMountain: Si la arista no es una montaña
    """
    e = edge_key(*mountain)
    if d.shapes.get(e) is not ArcShape.MOUNTAIN:
        raise NotAMountain(f"{e} no es una montaña")
    u = d.left_endpoint(e)
    pos = d.positions
    targets = [w for (a, b), s in d.shapes.items() if s is ArcShape.MOUNTAIN
               for w in ((b,) if a == u else (a,) if b == u else ()) if pos[w] > pos[u]]
    out = add_biarcs(d, u, targets, pos[u] + 1, check=False)
    logger.debug(f"push_down en {u}: {len(targets)} montañas a biarcos")
    return _require_planar(out, f"push_down({e})") if check else out


def redraw_as_biarc(d: ArcDiagram, edge: Edge, gap: Optional[int] = None) -> ArcDiagram:
    """
    Redibuja una arista propia como biarco bajada-subida con el cruce en el
    hueco dado (por defecto justo a la derecha de su extremo izquierdo).

    Raises:
        ValueError: Si la arista no existe o ya es un biarco
        WouldCross: Si el resultado no es planar
    """
    e = edge_key(*edge)
    s = d.shapes.get(e)
    if s is None or not s.is_proper:
        raise ValueError(f"{e} no es un arco propio del diagrama")
    left = d.left_endpoint(e)
    gap = gap_after(d, left) if gap is None else gap
    shapes = dict(d.shapes)
    shapes[e] = ArcShape.BIARC
    out = ArcDiagram(_insert_items(d.spine, gap, [Crossing(*e)]), shapes, dict(d.credits))
    return _require_planar(out, f"redibujar {e} como biarco")


def insert_vertex_in_pocket(d: ArcDiagram, v: int, pocket: Edge,
                            left_edges: Sequence[int], right_edges: Sequence[int],
                            check: bool = True) -> ArcDiagram:
    """
    Coloca v dentro del bolsillo p_l p_r: aristas a p_l y p_r bolsillos,
    el resto montañas.

    Args:
        left_edges: Vecinos de v a la izquierda en orden del camino (termina en p_l)
        right_edges: Vecinos a la derecha (empieza en p_r)

    Raises:
        NotAPocket: Si la arista no es un bolsillo
        WouldCross: Si el resultado no es planar
    """
    e = edge_key(*pocket)
    if d.shapes.get(e) is not ArcShape.POCKET:
        raise NotAPocket(f"{e} no es un bolsillo")
    p_l = d.left_endpoint(e)
    p_r = e[0] if e[1] == p_l else e[1]
    if not left_edges or left_edges[-1] != p_l or not right_edges or right_edges[0] != p_r:
        raise ValueError(f"vecinos de {v} no encajan con el bolsillo {e}")
    arcs = {w: ArcShape.MOUNTAIN for w in list(left_edges) + list(right_edges)}
    arcs[p_l] = arcs[p_r] = ArcShape.POCKET
    return insert_vertex(d, v, gap_after(d, p_l), arcs, check)


def insert_vertex_over_pushed_mountain(d: ArcDiagram, v: int, mountain: Edge,
                                       neighbors: Sequence[int], check: bool = True) -> ArcDiagram:
    """
    Coloca v entre el extremo izquierdo de una montaña ya bajada y su cruce:
    un bolsillo hacia ese extremo y montañas hacia el resto de vecinos.
    """
    e = edge_key(*mountain)
    if d.shapes.get(e) is not ArcShape.BIARC:
        raise NotAMountain(f"{e} no ha sido bajada a biarco")
    w = d.left_endpoint(e)
    if w not in neighbors:
        raise ValueError(f"{w} debe ser vecino de {v}")
    arcs = {x: ArcShape.MOUNTAIN for x in neighbors}
    arcs[w] = ArcShape.POCKET
    return insert_vertex(d, v, gap_after(d, w), arcs, check)


def rotate_pi(d: ArcDiagram) -> ArcDiagram:
    """Gira el diagrama 180°: invierte el lomo y cambia de página (bajada-subida se conserva)."""
    swap = {ArcShape.MOUNTAIN: ArcShape.POCKET, ArcShape.POCKET: ArcShape.MOUNTAIN,
            ArcShape.BIARC: ArcShape.BIARC, ArcShape.BIARC_UP_DOWN: ArcShape.BIARC_UP_DOWN}
    return ArcDiagram(tuple(reversed(d.spine)), {e: swap[s] for e, s in d.shapes.items()}, dict(d.credits))


def plug_subdiagram(d: ArcDiagram, hole: Sequence[int], sub: ArcDiagram,
                    orientation: str = "asis", gap: Optional[int] = None) -> ArcDiagram:
    """
    Inserta un subdiagrama dentro de un hueco triangular de d.

    Los items de sub que no son vértices del borde se empalman, en el orden
    de sub, en el hueco indicado (por defecto justo a la derecha del vértice
    del borde más a la izquierda). Las aristas del borde ya existen en d.

    Args:
        hole: Vértices del borde del hueco
        orientation: "asis" o "rotated_pi"

    Raises:
        BoundaryMismatch: Si los vértices compartidos no son exactamente el borde
        WouldCross: Si el resultado no es planar
    """
    if orientation not in ORIENTATIONS:
        raise ValueError(f"orientación desconocida: {orientation}")
    boundary = frozenset(hole)
    shared = frozenset(v for v in sub.vertices if v in d.positions)
    if shared != boundary or not boundary <= frozenset(d.positions):
        raise BoundaryMismatch(f"borde {sorted(shared)} distinto del hueco {sorted(boundary)}")
    if orientation == "rotated_pi":
        sub = rotate_pi(sub)
    inner = [x for x in sub.spine if x not in boundary]
    if gap is None:
        gap = min(d.positions[v] for v in boundary) + 1
    shapes = dict(d.shapes)
    credits = dict(d.credits)
    for e, s in sub.shapes.items():
        if e in shapes:
            continue
        shapes[e] = s
        if e in sub.credits:
            credits[e] = sub.credits[e]
    out = ArcDiagram(_insert_items(d.spine, gap, inner), shapes, credits)
    return _require_planar(out, f"enchufar subdiagrama en {sorted(boundary)}")


def add_arc(d: ArcDiagram, u: int, v: int, shape: ArcShape, check: bool = True) -> ArcDiagram:
    """
    Dibuja la arista uv entre dos vértices ya colocados. Un biarco lleva su
    cruce justo a la derecha del extremo izquierdo.

    Raises:
        ValueError: Si falta un extremo, la arista existe o la forma es subida-bajada
        WouldCross: Si el resultado no es planar
    """
    pos = d.positions
    e = edge_key(u, v)
    if u not in pos or v not in pos:
        raise ValueError(f"la arista {e} necesita ambos extremos en el lomo")
    if e in d.shapes:
        raise ValueError(f"la arista {e} ya está dibujada")
    if shape is ArcShape.BIARC_UP_DOWN:
        raise ValueError("solo se dibujan biarcos bajada-subida")
    shapes = dict(d.shapes)
    shapes[e] = shape
    spine = d.spine
    if shape.is_biarc:
        spine = _insert_items(spine, min(pos[u], pos[v]) + 1, [Crossing(*e)])
    out = ArcDiagram(spine, shapes, dict(d.credits))
    return _require_planar(out, f"dibujar {e}") if check else out


def drop_edges(d: ArcDiagram, edges: Iterable[Edge]) -> ArcDiagram:
    """Quita aristas del diagrama junto con los cruces de sus biarcos."""
    gone = {edge_key(*e) for e in edges}
    if not gone:
        return d
    spine = tuple(x for x in d.spine if not (isinstance(x, Crossing) and x.edge in gone))
    return ArcDiagram(spine, {e: s for e, s in d.shapes.items() if e not in gone},
                      {e: c for e, c in d.credits.items() if e not in gone})


def push_all(d: ArcDiagram, v: int, check: bool = True) -> ArcDiagram:
    """Baja todas las montañas con extremo izquierdo v; sin cambios si no hay ninguna."""
    pos = d.positions
    for e, s in d.shapes.items():
        if s is ArcShape.MOUNTAIN and v in e:
            other = e[1] if e[0] == v else e[0]
            if pos[other] > pos[v]:
                return push_down(d, e, check)
    return d


def envelope_vertices(d: ArcDiagram, side: Page = Page.UPPER) -> Tuple[int, ...]:
    """Vértices de la envolvente en orden del lomo."""
    return tuple(x for kind, x in envelope(d, side) if kind == "item" and not isinstance(x, Crossing))


def _segments(spine: Sequence[Item], shared: FrozenSet[int]) -> List[Tuple[Optional[int], Optional[int], List[Item]]]:
    """Trozos del lomo entre vértices compartidos consecutivos (None en los extremos)."""
    segments = []
    prev: Optional[int] = None
    current: List[Item] = []
    for x in spine:
        if not isinstance(x, Crossing) and x in shared:
            segments.append((prev, x, current))
            prev, current = x, []
        else:
            current.append(x)
    segments.append((prev, None, current))
    return [s for s in segments if s[2]]


def _candidate_gaps(d: ArcDiagram, left: Optional[int], right: Optional[int],
                    boundary: FrozenSet[int],
                    arcs: List[Tuple[Optional[Edge], Optional[Edge]]], width: int) -> List[int]:
    """
    Huecos de d donde puede ir un trozo acotado por left y right. Primero los
    huecos cuyas aristas más interiores son del borde (o la región exterior).
    """
    pos = d.positions
    vertex_at = [i for i, x in enumerate(d.spine) if not isinstance(x, Crossing)]
    if left is not None and right is not None:
        lo, hi = pos[left] + 1, pos[right]
    elif right is not None:
        before = [i for i in vertex_at if i < pos[right]]
        lo, hi = (before[-1] + 1 if before else 0), pos[right]
    else:
        after = [i for i in vertex_at if i > pos[left]]
        lo, hi = pos[left] + 1, (after[0] if after else len(d.spine))

    def on_boundary(e: Optional[Edge]) -> bool:
        return e is None or (e[0] in boundary and e[1] in boundary)

    gaps = list(range(lo, hi + 1))
    gaps.sort(key=lambda g: (not (on_boundary(arcs[g][0]) and on_boundary(arcs[g][1])),
                             g if left is not None else -g))
    return gaps[:width]


def plug_into_face(d: ArcDiagram, sub: ArcDiagram, orientation: str = "auto",
                   push_at: Sequence[int] = (), virtual: Iterable[Edge] = (),
                   width: int = 4, max_tries: int = 256) -> ArcDiagram:
    """
    Empalma un subdiagrama que comparte con d algunos vértices del borde.

    Cada trozo del lomo de sub entre dos vértices compartidos va a un hueco
    de d entre esos mismos vértices; los trozos de los extremos van junto al
    primer o último compartido. Las aristas de sub entre vértices
    compartidos sustituyen a las de d. Antes se bajan las montañas de los
    vértices de push_at y se quitan de sub las aristas virtuales.

    Args:
        orientation: "asis", "rotated_pi" o "auto" (la que respeta el orden de d)

    Raises:
        BoundaryMismatch: Si hay menos de dos compartidos o su orden no encaja
        WouldCross: Si ninguna combinación de huecos da un diagrama planar
    """
    if orientation not in ("auto",) + ORIENTATIONS:
        raise ValueError(f"orientación desconocida: {orientation}")
    sub = drop_edges(sub, virtual)
    for v in push_at:
        d = push_all(d, v)
    pos = d.positions
    options = ORIENTATIONS if orientation == "auto" else (orientation,)
    chosen = None
    for name in options:
        candidate = rotate_pi(sub) if name == "rotated_pi" else sub
        shared = [v for v in candidate.vertices if v in pos]
        order = [pos[v] for v in shared]
        if len(shared) >= 2 and order == sorted(order):
            chosen = candidate
            break
    if chosen is None:
        raise BoundaryMismatch("los vértices compartidos no siguen el orden del lomo")
    sub = chosen
    boundary = frozenset(v for v in sub.vertices if v in pos)

    replaced = [e for e, s in sub.shapes.items() if e in d.shapes and d.shapes[e] is not s]
    host = drop_edges(d, replaced)
    kept = {Crossing(*e) for e, s in sub.shapes.items() if host.shapes.get(e) is s}
    shapes = dict(host.shapes)
    credits = dict(host.credits)
    for e, s in sub.shapes.items():
        if e not in shapes:
            shapes[e] = s
            if e in sub.credits:
                credits[e] = sub.credits[e]
    pieces = [(a, b, [x for x in items if x not in kept])
              for a, b, items in _segments(sub.spine, boundary)]
    pieces = [p for p in pieces if p[2]]
    arcs = innermost_arcs(host)
    choices = [_candidate_gaps(host, a, b, boundary, arcs, width) for a, b, _ in pieces]
    tried = 0
    for combo in product(*choices):
        tried += 1
        if tried > max_tries:
            break
        spine = host.spine
        for k in sorted(range(len(pieces)), key=lambda k: (combo[k], k), reverse=True):
            spine = _insert_items(spine, combo[k], pieces[k][2])
        out = ArcDiagram(spine, shapes, credits)
        if is_planar(out):
            logger.debug(f"subdiagrama empalmado tras {tried} intentos")
            return out
    raise WouldCross(f"ningún reparto de {len(pieces)} trozos en {sorted(boundary)} es planar")


# -----------------------------
# Contexto, créditos y validación
# -----------------------------
@dataclass(frozen=True)
class DiagramContext:
    """
    Qué debe cumplir un diagrama: modo extensible (camino exterior P∘ de v1 a v2),
    solo válido (ciclo exterior dado) o final.
    """
    mode: str = "extensible"
    path: Tuple[int, ...] = ()
    outer: Tuple[int, ...] = ()
    graph_edges: Optional[FrozenSet[Edge]] = None
    check_pockets: bool = True
    check_envelopes: bool = True
    region_mountain: Optional[Edge] = None

    @classmethod
    def extensible(cls, path: Sequence[int], graph_edges: Optional[Iterable[Edge]] = None,
                   check_pockets: bool = True, region_mountain: Optional[Edge] = None) -> "DiagramContext":
        return cls("extensible", tuple(path), tuple(path),
                   frozenset(graph_edges) if graph_edges is not None else None,
                   check_pockets, True, region_mountain)

    @classmethod
    def valid(cls, outer: Sequence[int], graph_edges: Optional[Iterable[Edge]] = None) -> "DiagramContext":
        return cls("valid", (), tuple(outer),
                   frozenset(graph_edges) if graph_edges is not None else None, False, False)

    @classmethod
    def final(cls, graph_edges: Optional[Iterable[Edge]] = None) -> "DiagramContext":
        return cls("final", (), (), frozenset(graph_edges) if graph_edges is not None else None,
                   False, False)

    @property
    def v1(self) -> Optional[int]:
        return self.path[0] if self.path else (self.outer[0] if self.outer else None)

    @property
    def v2(self) -> Optional[int]:
        return self.path[-1] if self.path else (self.outer[1] if len(self.outer) > 1 else None)

    @cached_property
    def cycle(self) -> FrozenSet[int]:
        return frozenset(self.path or self.outer)

    @cached_property
    def path_edges(self) -> FrozenSet[Edge]:
        return frozenset(edge_key(a, b) for a, b in zip(self.path, self.path[1:]))


def edge_credit(d: ArcDiagram, e: Edge, s: ArcShape, context: DiagramContext, chi: Fraction) -> Fraction:
    """Créditos mínimos de una arista según su forma y el contexto (sin montaña de región)."""
    if s.is_biarc:
        return Fraction(1)
    if context.mode == "final":
        return Fraction(0)
    if s is ArcShape.MOUNTAIN:
        left = d.left_endpoint(e)
        return Fraction(1) if left in context.cycle and left != context.v2 else Fraction(0)
    if context.check_pockets and e in context.path_edges:
        return chi
    return Fraction(0)


def _with_region(req: Dict[Edge, Fraction], d: ArcDiagram, context: DiagramContext,
                 chi: Fraction) -> Dict[Edge, Fraction]:
    e = context.region_mountain
    if context.mode != "final" and e is not None and d.shapes.get(e) is ArcShape.MOUNTAIN:
        req = dict(req)
        req[e] = max(req.get(e, Fraction(0)), 1 - chi)
    return req


def required_credits(d: ArcDiagram, context: DiagramContext, chi: Fraction) -> Dict[Edge, Fraction]:
    """
    Asignación mínima de créditos por arista (y la montaña de región si se pide):
    biarco 1, montaña con extremo izquierdo en C∘∖{v2} 1, bolsillo de P∘ χ.
    """
    req: Dict[Edge, Fraction] = {}
    for e, s in d.shapes.items():
        r = edge_credit(d, e, s, context, chi)
        if r:
            req[e] = r
    return _with_region(req, d, context, chi)


VALIDITY_FLAGS = ("shapes", "mountain_credit", "biarc_credit", "pocket_credit", "envelopes",
                  "planarity", "down_up", "nonnegative", "structure", "edges", "region_credit")


@dataclass(frozen=True)
class Violation:
    rule: str
    subject: object
    message: str

    def __str__(self) -> str:
        return f"{self.rule}: {self.subject} - {self.message}"


@dataclass
class ValidityReport:
    flags: Dict[str, bool] = field(default_factory=dict)
    violations: List[Violation] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(self.flags.values())

    def fail(self, rule: str, subject: object, message: str) -> None:
        self.flags[rule] = False
        self.violations.append(Violation(rule, subject, message))

    def summary(self) -> str:
        if self.passed:
            return "PASS"
        return "FAIL\n" + "\n".join(f"  {v}" for v in self.violations)


def validate(d: ArcDiagram, context: Optional[DiagramContext] = None,
             chi: Fraction = DEFAULT_CHI) -> ValidityReport:
    """
    Valida un diagrama. Nunca lanza: los fallos quedan en el informe.

    Comprueba formas y envolvente superior propia, créditos por arista,
    extremos y envolventes, planaridad, bajada-subida, créditos no
    negativos, coherencia de cruces, aristas dibujadas y, si se indica,
    la montaña de región.
    """
    context = context or DiagramContext.final()
    report = ValidityReport({k: True for k in VALIDITY_FLAGS})
    pos = d.positions

    # estructura del lomo
    if len(pos) != len(d.spine):
        report.fail("structure", None, "items repetidos en el lomo")
    for e, s in d.shapes.items():
        if e[0] not in pos or e[1] not in pos:
            report.fail("structure", e, "extremo fuera del lomo")
            return report
        x = Crossing(*e)
        if s.is_biarc:
            if x not in pos:
                report.fail("structure", e, "biarco sin cruce")
                return report
            if not min(pos[e[0]], pos[e[1]]) < pos[x] < max(pos[e[0]], pos[e[1]]):
                report.fail("shapes", e, "el cruce no está entre los extremos")
    for item in d.spine:
        if isinstance(item, Crossing) and not (d.shapes.get(item.edge) or ArcShape.MOUNTAIN).is_biarc:
            report.fail("structure", item, "cruce sin biarco")
    if report.flags["structure"] is False:
        return report

    for e, s in d.shapes.items():
        if s is ArcShape.BIARC_UP_DOWN:
            report.fail("down_up", e, "biarco subida-bajada")
            report.fail("shapes", e, "forma no permitida")
    for e, c in d.credits.items():
        if c < 0:
            report.fail("nonnegative", e, f"créditos negativos {c}")

    hit = find_crossing(d)
    if hit is not None:
        report.fail("planarity", (hit[0], hit[1]), f"cruce en página {hit[2].value}")
        return report

    if context.graph_edges is not None and frozenset(d.shapes) != context.graph_edges:
        missing = sorted(context.graph_edges - frozenset(d.shapes))
        extra = sorted(frozenset(d.shapes) - context.graph_edges)
        report.fail("edges", (missing[:5], extra[:5]), "aristas dibujadas distintas de las del grafo")

    upper = envelope(d, Page.UPPER)
    for kind, obj in upper:
        if kind == "edge" and not d.shapes[obj].is_proper:
            report.fail("shapes", obj, "biarco en la envolvente superior")

    if context.mode == "final":
        return report

    chi = validate_chi(chi)
    need = required_credits(d, context, chi)
    for e, r in need.items():
        have = d.credits.get(e, Fraction(0))
        if have < r:
            s = d.shapes[e]
            if e == context.region_mountain and s is ArcShape.MOUNTAIN:
                rule = "region_credit"
            else:
                rule = "biarc_credit" if s.is_biarc else "mountain_credit" if s is ArcShape.MOUNTAIN else "pocket_credit"
            report.fail(rule, e, f"créditos {have} < {r}")

    if context.check_envelopes and context.path:
        v1, v2 = context.v1, context.v2
        if d.spine[0] != v1 or d.spine[-1] != v2:
            report.fail("envelopes", (d.spine[0], d.spine[-1]), f"v1={v1} y v2={v2} deben ser los extremos")
        if envelope(d, Page.LOWER) != expected_chain((v1, v2)):
            report.fail("envelopes", edge_key(v1, v2), "v1v2 no es la envolvente inferior")
        if upper != expected_chain(context.path):
            report.fail("envelopes", context.path, "P∘ no es la envolvente superior")
    return report


# -----------------------------
# Libro de créditos
# -----------------------------
@dataclass(frozen=True)
class StepRecord:
    """Un paso de construcción auditado contra su cota."""
    kind: str
    vertices: Tuple[int, ...]
    spend: Fraction
    reclaimed: Fraction
    balance: Fraction
    limit: Optional[Fraction] = None
    biarcs: int = 0

    @property
    def within_limit(self) -> bool:
        return self.limit is None or self.spend <= self.limit

    def trace_line(self) -> str:
        ids = ",".join(map(str, self.vertices))
        return f"STEP kind={self.kind} vertices={ids} spend={self.spend} balance={self.balance}"


ENFORCE_MODES = ("cumulative", "step")


@dataclass(frozen=True)
class _NeedCache:
    shapes: Mapping[Edge, ArcShape]
    context: DiagramContext
    need: Dict[Edge, Fraction]
    incident: Dict[int, FrozenSet[Edge]]


def _same_rules(a: DiagramContext, b: DiagramContext) -> bool:
    return a.mode == b.mode and a.check_pockets == b.check_pockets


class CreditLedger:
    """
    Créditos por arista y registro de pasos. Tras cada paso el diagrama
    recibe la asignación mínima que exige su contexto; el gasto del paso es
    la variación del coste total.

    La asignación se recalcula solo para las aristas cuya forma cambió, las
    que tocan vértices que entran o salen del ciclo exterior y las que
    entran o salen del camino.

    Args:
        enforce: None (solo avisa), "cumulative" (lanza si el coste supera
            la suma de cotas de los pasos) o "step" (lanza en cuanto un paso
            supera su cota)
    """

    def __init__(self, chi=DEFAULT_CHI, chi_free: bool = False, enforce: Optional[str] = None):
        if enforce is not None and enforce not in ENFORCE_MODES:
            raise ValueError(f"modo de control desconocido: {enforce}")
        self.chi = validate_chi(chi)
        self.chi_free = chi_free
        self.enforce = enforce
        self.balance = Fraction(0)
        self.allowance = Fraction(0)
        self.steps: List[StepRecord] = []
        self._cache: Optional[_NeedCache] = None

    def _context(self, context: DiagramContext) -> DiagramContext:
        return replace(context, check_pockets=False) if self.chi_free else context

    def _evaluate(self, d: ArcDiagram, context: DiagramContext) -> Tuple[_NeedCache, FrozenSet[Edge]]:
        cache = self._cache
        if cache is None or not _same_rules(cache.context, context):
            need: Dict[Edge, Fraction] = {}
            around: Dict[int, set] = {}
            for e, s in d.shapes.items():
                r = edge_credit(d, e, s, context, self.chi)
                if r:
                    need[e] = r
                for x in e:
                    around.setdefault(x, set()).add(e)
            incident = {x: frozenset(es) for x, es in around.items()}
            return _NeedCache(d.shapes, context, need, incident), frozenset(d.credits) | frozenset(need)

        old = cache.context
        added = d.shapes.items() - cache.shapes.items()
        removed = cache.shapes.keys() - d.shapes.keys()
        incident = dict(cache.incident)
        for e in removed:
            for x in e:
                incident[x] = incident[x] - {e}
        for e, _ in added:
            for x in e:
                if e not in incident.get(x, frozenset()):
                    incident[x] = incident.get(x, frozenset()) | {e}
        moved = set(old.cycle ^ context.cycle)
        if old.v2 != context.v2:
            moved |= {x for x in (old.v2, context.v2) if x is not None}
        touched = set(removed) | {e for e, _ in added} | (old.path_edges ^ context.path_edges)
        for x in moved:
            touched |= incident.get(x, frozenset())
        need = dict(cache.need)
        for e in touched:
            s = d.shapes.get(e)
            r = edge_credit(d, e, s, context, self.chi) if s is not None else Fraction(0)
            if r:
                need[e] = r
            else:
                need.pop(e, None)
        return _NeedCache(d.shapes, context, need, incident), frozenset(touched)

    def preview(self, d: ArcDiagram, context: DiagramContext) -> Fraction:
        """Gasto que tendría el paso si se liquidara ahora, sin registrarlo."""
        context = self._context(context)
        cache, _ = self._evaluate(d, context)
        need = _with_region(cache.need, d, context, self.chi)
        return sum(need.values(), Fraction(0)) - self.balance

    def settle(self, d: ArcDiagram, context: DiagramContext, kind: str,
               vertices: Sequence[int], limit: Optional[Fraction] = None,
               budget: Optional[Fraction] = None) -> ArcDiagram:
        """
        Fija los créditos requeridos y registra el gasto del paso.

        Args:
            limit: Cota del caso de construcción aplicado
            budget: Lo que el paso suma al acumulado admitido (por defecto limit,
                o el propio gasto si no hay cota)

        Raises:
            BoundExceeded: Según el modo de control, si el paso o el acumulado superan su cota
        """
        context = self._context(context)
        cache, touched = self._evaluate(d, context)
        self._cache = cache
        need = _with_region(cache.need, d, context, self.chi)
        if context.region_mountain is not None:
            touched = touched | {context.region_mountain}
        zero = Fraction(0)
        reclaimed = sum((max(zero, d.credits.get(e, zero) - need.get(e, zero)) for e in touched), zero)
        total = sum(need.values(), zero)
        spend = total - self.balance
        self.balance = total
        if budget is None:
            budget = limit if limit is not None else max(spend, zero)
        self.allowance += budget
        record = StepRecord(kind, tuple(vertices), spend, reclaimed, total, limit, d.biarc_count)
        self.steps.append(record)
        if not record.within_limit:
            message = f"Paso {kind} {list(vertices)} gasta {spend} > cota {limit}"
            logger.warning(message)
            if self.enforce == "step":
                raise BoundExceeded(message)
        else:
            logger.debug(record.trace_line())
        if self.enforce is not None and total > self.allowance:
            raise BoundExceeded(f"Coste acumulado {total} > {self.allowance} tras el paso {kind}")
        return d.with_credits(need)

    @property
    def total(self) -> Fraction:
        return self.balance

    @property
    def total_spend(self) -> Fraction:
        return sum((s.spend for s in self.steps), Fraction(0))

    def trace(self) -> List[str]:
        return [s.trace_line() for s in self.steps]

    def overruns(self) -> List[StepRecord]:
        return [s for s in self.steps if not s.within_limit]


def base_diagram(v1: int, v2: int, v3: int, chi=DEFAULT_CHI) -> ArcDiagram:
    """Triángulo inicial: lomo v1 v3 v2 y las tres aristas como bolsillos (coste 2χ)."""
    chi = validate_chi(chi)
    shapes = {edge_key(v1, v2): ArcShape.POCKET, edge_key(v1, v3): ArcShape.POCKET,
              edge_key(v3, v2): ArcShape.POCKET}
    credits = {edge_key(v1, v3): chi, edge_key(v3, v2): chi}
    return ArcDiagram((v1, v3, v2), shapes, credits)


# -----------------------------
# Formato .arc
# -----------------------------
def format_arc(d: ArcDiagram) -> str:
    """Serializa: lomo en la primera línea y una línea "u v TIPO créditos" por arista."""
    lines = [" ".join(str(x) if isinstance(x, Crossing) else f"v{x}" for x in d.spine)]
    for e in d.edges:
        lines.append(f"{e[0]} {e[1]} {d.shapes[e].value} {d.credits.get(e, Fraction(0))}")
    return "\n".join(lines) + "\n"


def parse_arc(text: str) -> ArcDiagram:
    """
    Lee el formato .arc.

    Raises:
        DiagramFormatError: Si el texto está mal formado
    """
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise DiagramFormatError("diagrama vacío")
    try:
        spine: List[Item] = []
        for token in lines[0].split():
            if token.startswith("v"):
                spine.append(int(token[1:]))
            elif token.startswith("x:"):
                a, b = token[2:].split("-")
                spine.append(Crossing(int(a), int(b)))
            else:
                raise DiagramFormatError(f"item desconocido: {token}")
        shapes: Dict[Edge, ArcShape] = {}
        credits: Dict[Edge, Fraction] = {}
        for ln in lines[1:]:
            u, v, kind, credit = ln.split()
            e = edge_key(int(u), int(v))
            if e in shapes:
                raise DiagramFormatError(f"arista repetida: {e}")
            shapes[e] = ArcShape(kind)
            credits[e] = Fraction(credit)
        return ArcDiagram(tuple(spine), shapes, credits)
    except DiagramFormatError:
        raise
    except ValueError as e:
        raise DiagramFormatError(f"formato .arc inválido: {e}") from e


# -----------------------------
# Resultado de un algoritmo
# -----------------------------
@dataclass
class DrawResult:
    """Diagrama final con su libro de créditos, cota y validación."""
    algorithm: str
    diagram: ArcDiagram
    ledger: CreditLedger
    bound: int
    report: ValidityReport
    order: Tuple[int, ...] = ()
    notes: Dict[str, object] = field(default_factory=dict)

    @property
    def biarcs(self) -> int:
        return self.diagram.biarc_count

    @property
    def within_bound(self) -> bool:
        return self.biarcs <= self.bound

    @property
    def passed(self) -> bool:
        return self.report.passed and self.within_bound

    def trace(self) -> List[str]:
        return self.ledger.trace()


def check_bound(result: DrawResult, strict: bool) -> DrawResult:
    """Registra (o lanza en modo estricto) si se supera la cota."""
    if not result.within_bound:
        message = f"{result.algorithm}: {result.biarcs} biarcos > cota {result.bound}"
        if strict:
            raise BoundExceeded(message)
        logger.warning(message)
    return result

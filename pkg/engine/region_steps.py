# region_steps.py
# Movimientos canónicos y construcciones de varios vértices sobre un estado
# de trabajo: pivote de grado dos o compartido, pivotes izquierdos apilados,
# regiones alrededor de u y figuras del último vértice.

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from canonical_order import (
    CaseNotMatched, OrderingState, ProblemType, Profile, Region, RegionKind, absorb,
    advance, bridge, consecutive_run, place_run, profile,
)
from diagram import (
    ArcDiagram, ArcShape, DiagramContext, add_arc, envelope_vertices, insert_vertex,
    insert_vertex_in_pocket, insert_vertex_over_pushed_mountain, plug_into_face, push_down,
)
from graph_core import PlaneTriangulation, edge_key, enclosed_vertices

logger = logging.getLogger(__name__)

POCKET_MOVE = "pocket"
PUSH_MOVE = "push"

# Figura de v_n en modo extensible según su tipo problemático: (movimiento, arista)
LAST_FIGURES = {
    ProblemType.T3_MM: (PUSH_MOVE, 0),
    ProblemType.T4_MMM: (PUSH_MOVE, 0),
    ProblemType.T3_MP: (POCKET_MOVE, 1),
}


# -----------------------------
# Movimientos canónicos
# -----------------------------
@dataclass(frozen=True)
class Move:
    """Inserción de un vertice: en el bolsillo cubierto j o sobre la montaña j bajada."""
    kind: str
    vertex: int
    index: int
    spend: Fraction
    new_biarcs: int

    @property
    def key(self) -> Tuple[Fraction, int]:
        return self.spend, self.new_biarcs


def _mountains_at(d: ArcDiagram, s: OrderingState, w: int) -> int:
    """Montañas cuyo extremo izquierdo es w."""
    pos = d.positions
    return sum(1 for x in s.graph.neighbors(w)
               if x in pos and pos[x] > pos[w] and d.shape(w, x) is ArcShape.MOUNTAIN)


def candidate_moves(d: ArcDiagram, s: OrderingState, v: int, chi: Fraction,
                    kinds: Iterable[str] = (POCKET_MOVE, PUSH_MOVE)) -> List[Move]:
    """
    Todas las inserciones de v con su gasto exacto: créditos exigidos por
    las aristas nuevas menos los que liberan los vértices cubiertos.
    """
    nbrs = s.path_neighbors(v)
    deg = len(nbrs)
    mountains = [_mountains_at(d, s, w) for w in nbrs]
    shapes = [d.shape(a, b) for a, b in zip(nbrs, nbrs[1:])]
    pocket_release = chi * sum(1 for sh in shapes if sh is ArcShape.POCKET)
    interior = range(1, deg - 1)
    moves = []
    for j, sh in enumerate(shapes):
        left_mountain = Fraction(1 if j > 0 else 0)
        if sh is ArcShape.POCKET and POCKET_MOVE in kinds:
            released = sum(mountains[h] for h in interior) + pocket_release
            new = chi * (j == 0) + chi * (j + 1 == deg - 1) + left_mountain + (deg - j - 2)
            moves.append(Move(POCKET_MOVE, v, j, new - released, 0))
        elif sh is ArcShape.MOUNTAIN and PUSH_MOVE in kinds:
            released = sum(mountains[h] for h in interior if h != j) + pocket_release
            new = chi * (j == 0) + left_mountain + (deg - 1 - j)
            moves.append(Move(PUSH_MOVE, v, j, new - released, mountains[j]))
    return moves


def apply_move(d: ArcDiagram, s: OrderingState, move: Move,
               check: bool = False) -> Tuple[ArcDiagram, OrderingState]:
    """
    Dibuja el movimiento y avanza el orden. Sobre un diagrama extensible un
    movimiento canónico es planar; check lo comprueba igualmente.
    """
    v, j = move.vertex, move.index
    nbrs = s.path_neighbors(v)
    edge = (nbrs[j], nbrs[j + 1])
    if move.kind == POCKET_MOVE:
        d = insert_vertex_in_pocket(d, v, edge, nbrs[:j + 1], nbrs[j + 1:], check)
    else:
        d = insert_vertex_over_pushed_mountain(push_down(d, edge, check), v, edge, nbrs, check)
    return d, advance(s, v)


def best_move(moves: Sequence[Move]) -> Optional[Move]:
    # menor gasto, menos biarcos nuevos, movimiento más a la derecha
    return min(moves, key=lambda m: (m.spend, m.new_biarcs, -m.index), default=None)


# -----------------------------
# Estado de trabajo
# -----------------------------
class Workspace:
    """
    Diagrama y estado de trabajo de un paso de varios vértices.

    El camino del estado es la envolvente superior del diagrama aunque algún
    vértice colocado tenga todavía aristas pendientes. El dibujante aporta
    el libro de créditos (para estimar gastos) y los subdibujos recursivos.
    """

    def __init__(self, drawer, d: ArcDiagram, s: OrderingState):
        self.drawer = drawer
        self.d = d
        self.s = s
        self.inserted: List[int] = []
        self.final_mode = "extensible"
        self.hint = Fraction(0)

    @property
    def graph(self) -> PlaneTriangulation:
        return self.s.graph

    def fork(self) -> "Workspace":
        ws = Workspace(self.drawer, self.d, self.s)
        ws.inserted = list(self.inserted)
        ws.final_mode = self.final_mode
        ws.hint = self.hint
        return ws

    def adopt(self, other: "Workspace") -> None:
        self.d, self.s, self.inserted = other.d, other.s, list(other.inserted)
        self.final_mode, self.hint = other.final_mode, other.hint

    def estimate(self) -> Fraction:
        """Gasto acumulado si el camino de trabajo fuera el camino exterior."""
        return self.drawer.ledger.preview(self.d, DiagramContext.extensible(self.s.path))

    # -- camino --
    def before(self, v: int) -> int:
        return self.s.path[self.s.path_pos[v] - 1]

    def after(self, v: int) -> int:
        return self.s.path[self.s.path_pos[v] + 1]

    def path_between(self, a: int, b: int) -> List[int]:
        """Vértices del camino de a a b, ambos incluidos."""
        i, j = self.s.path_pos[a], self.s.path_pos[b]
        if i > j:
            raise CaseNotMatched(f"{a} está a la derecha de {b} en el camino")
        return list(self.s.path[i:j + 1])

    def full_run(self, v: int) -> Tuple[int, ...]:
        """Tramo del camino que v cubre a partir de la primera arista con la que forma cara."""
        g, path = self.graph, self.s.path
        for a, b in zip(path, path[1:]):
            if v in g.apexes(a, b):
                return consecutive_run(self.s, v, a, b)
        raise CaseNotMatched(f"{v} no forma cara con ninguna arista del camino")

    # -- movimientos --
    def _placed(self, v: int, run: Sequence[int]) -> None:
        self.s = place_run(self.s, v, run)
        self.inserted.append(v)

    def _edge_in(self, run: Sequence[int], a: int, b: int) -> Tuple[int, Tuple[int, int]]:
        i, j = run.index(a), run.index(b)
        if abs(i - j) != 1:
            raise CaseNotMatched(f"{edge_key(a, b)} no es una arista del tramo {list(run)}")
        h = min(i, j)
        return h, (run[h], run[h + 1])

    def pocket(self, v: int, a: int, b: int) -> None:
        """v dentro del bolsillo ab del camino, con aristas a todo su tramo."""
        run = consecutive_run(self.s, v, a, b)
        h, edge = self._edge_in(run, a, b)
        self.d = insert_vertex_in_pocket(self.d, v, edge, run[:h + 1], run[h + 1:])
        self._placed(v, run)

    def push(self, v: int, a: Optional[int] = None, b: Optional[int] = None) -> None:
        """v sobre la montaña ab bajada; por defecto la primera montaña de su tramo."""
        if a is None:
            run = self.full_run(v)
            edge = next(((x, y) for x, y in zip(run, run[1:])
                         if self.d.shape(x, y) is ArcShape.MOUNTAIN), None)
            if edge is None:
                raise CaseNotMatched(f"{v} no cubre ninguna montaña")
        else:
            run = consecutive_run(self.s, v, a, b)
            _, edge = self._edge_in(run, a, b)
        self.d = insert_vertex_over_pushed_mountain(push_down(self.d, edge), v, edge, run)
        self._placed(v, run)

    def move(self, v: int, a: int, b: int) -> None:
        """Bolsillo o montaña bajada según la forma de ab."""
        if self.d.shape(a, b) is ArcShape.POCKET:
            self.pocket(v, a, b)
        else:
            self.push(v, a, b)

    def canonical(self, v: int, kind: str, index: int) -> None:
        """Movimiento canónico sobre la arista index (negativa desde el final) del tramo de v."""
        run = self.full_run(v)
        x, y = list(zip(run, run[1:]))[index]
        if kind == POCKET_MOVE:
            self.pocket(v, x, y)
        else:
            self.push(v, x, y)

    def move_at(self, v: int, index: int) -> None:
        run = self.full_run(v)
        self.move(v, run[index], run[index + 1])

    def best(self, v: int) -> None:
        """Movimiento canónico de v con menor gasto estimado."""
        run = self.full_run(v)
        options = []
        for j in range(len(run) - 1):
            trial = self.fork()
            try:
                trial.move_at(v, j)
            except (CaseNotMatched, ValueError):
                continue
            options.append((trial.estimate(), trial.d.biarc_count, -j, trial))
        if not options:
            raise CaseNotMatched(f"ningún movimiento canónico para {v}")
        self.adopt(min(options, key=lambda o: o[:3])[3])

    def apply(self, move: Move) -> None:
        self.d, self.s = apply_move(self.d, self.s, move)
        self.inserted.append(move.vertex)
        self.hint += move.spend

    def place_right_end(self, v: int, targets: Sequence[int]) -> None:
        """v a la derecha de todo con montañas hacia targets; el camino acaba en v."""
        self.d = insert_vertex(self.d, v, len(self.d.spine), {t: ArcShape.MOUNTAIN for t in targets})
        first = min(self.s.path_pos[t] for t in targets)
        self.s = OrderingState(self.s.graph, self.s.placed + (v,), self.s.path[:first + 1] + (v,), self.s.vn)
        self.inserted.append(v)
        self.final_mode = "mainadapt"

    # -- aristas de cierre --
    def add(self, a: int, b: int, shape: ArcShape) -> None:
        if not self.graph.has_edge(a, b):
            raise CaseNotMatched(f"{edge_key(a, b)} no es una arista del grafo")
        self.d = add_arc(self.d, a, b, shape)

    def close(self, u: int, w: int) -> None:
        """Montaña uw sobre el camino entre ambos; los vértices intermedios salen del camino."""
        if edge_key(u, w) in self.d.shapes:
            return
        self.add(u, w, ArcShape.MOUNTAIN)
        self.s = bridge(self.s, u, w)

    def close_toward(self, u: int, w: int) -> None:
        """Cierra u con cada vecino pendiente del camino hasta w, del más cercano al más lejano."""
        pos = self.s.path_pos
        i, j = pos[u], pos[w]
        step = 1 if j > i else -1
        for x in [self.s.path[h] for h in range(i + step, j + step, step)]:
            if x in self.s.path_pos and self.graph.has_edge(u, x) and edge_key(u, x) not in self.d.shapes:
                self.close(u, x)

    # -- recursión --
    def fill(self, cycle: Sequence[int], inside: Iterable[int], outer: Sequence[int], mode: str,
             apex: Optional[int] = None, push_options: Sequence[Sequence[int]] = ((),)) -> None:
        """
        Dibuja recursivamente el interior de un ciclo y lo empalma en el
        diagrama; el camino pasa a ser la nueva envolvente superior.

        Args:
            mode: "main" (extensible), "mainadapt" (v_n a la derecha) o
                "mainstrong" (extensible sin v_n)
        """
        sub, order, virtual = self.drawer.sub_diagram(tuple(cycle), frozenset(inside), tuple(outer),
                                                      mode, apex)
        options = []
        for push_at in push_options:
            try:
                d = plug_into_face(self.d, sub, "auto", push_at, virtual)
            except ValueError as e:
                logger.debug(f"empalme con bajadas en {list(push_at)} descartado: {e}")
                continue
            fresh = [v for v in order if v not in self.s.placed_set]
            s = absorb(self.s, fresh, envelope_vertices(d))
            trial = self.fork()
            trial.d, trial.s = d, s
            trial.inserted += fresh
            options.append((trial.estimate(), d.biarc_count, len(options), trial))
        if not options:
            raise CaseNotMatched(f"subdibujo de {sorted(inside)} no encaja en {list(cycle)}")
        self.adopt(min(options, key=lambda o: o[:3])[3])


def choose(ws: Workspace, options: Sequence[Callable[[Workspace], None]], what: str) -> None:
    """Aplica la alternativa viable de menor gasto estimado."""
    found = []
    for k, option in enumerate(options):
        trial = ws.fork()
        try:
            option(trial)
        except (CaseNotMatched, ValueError) as e:
            logger.debug(f"{what}: alternativa {k} descartada ({e})")
            continue
        found.append((trial.estimate(), trial.d.biarc_count, k, trial))
    if not found:
        raise CaseNotMatched(f"{what}: ninguna alternativa aplicable")
    ws.adopt(min(found, key=lambda f: f[:3])[3])


# -----------------------------
# Pares de pivotes
# -----------------------------
def pivot_pair(ws: Workspace, v: int, c: int, prof: Profile) -> None:
    """
    v y su cubridor de pivote c juntos. Pivote derecho: v al bolsillo
    cubierto y c al bolsillo v r. Pivote izquierdo: v sobre su primera
    montaña bajada y c al bolsillo ℓ v.
    """
    if prof.right_pivot:
        ws.canonical(v, POCKET_MOVE, 1)
        ws.pocket(c, v, prof.right)
    else:
        ws.canonical(v, PUSH_MOVE, 0)
        ws.pocket(c, prof.left, v)


def stacked_left(ws: Workspace, v: int, v_prime: int, v_second: int, prof: Profile) -> None:
    """
    Pivotes izquierdos v, v' = pc(v) y el vértice v'' que cubre vv'.

    Si v'' no toca el extremo derecho w' de v entra en el bolsillo v'v; si
    lo toca, el triángulo v'' v w' se rellena antes (o v'' entra directamente
    si está vacío) y v'v'' se dibuja como bolsillo.
    """
    ws.canonical(v, PUSH_MOVE, 0)
    ws.canonical(v_prime, POCKET_MOVE, -1)
    w_prime = prof.right
    g = ws.graph
    if not g.has_edge(v_second, w_prime):
        ws.pocket(v_second, v_prime, v)
        return
    cover = ws.s.cover(v, w_prime)
    if cover is None:
        raise CaseNotMatched(f"{edge_key(v, w_prime)} sin cubridor")
    if cover == v_second:
        ws.best(v_second)
        return
    triangle = (v_second, v, w_prime)
    inside = enclosed_vertices(g, triangle, [cover])
    ws.fill(triangle, inside, triangle, "mainadapt")
    ws.add(v_prime, v_second, ArcShape.POCKET)


# -----------------------------
# Regiones alrededor de u
# -----------------------------
def _split(region: Region, right_types: Set[int]) -> Tuple[List[int], Optional[int], FrozenSet[int]]:
    lefts = [c for c in region.eligible if c not in right_types]
    rights = [c for c in region.eligible if c in right_types]
    if len(rights) > 1:
        raise CaseNotMatched(f"región {region.index} con varios pivotes derechos {rights}")
    inner = region.vertices - frozenset(region.eligible)
    return lefts, (rights[0] if rights else None), inner


def _place_u_left(ws: Workspace, u: int, cs: List[int], inner: FrozenSet[int],
                  wl: int, wr: int, w_start: int, left_empty: bool) -> None:
    top = cs[-1]
    if len(cs) == 1:
        c1 = cs[0]
        if inner:
            ws.push(c1)
            ws.pocket(u, wl, c1)
            ws.fill((u, c1, wr), inner, (u, c1, wr), "mainadapt", push_options=((), (c1,)))
        elif left_empty:
            ws.move(u, w_start, ws.after(w_start))
            choose(ws, [lambda t: t.push(c1), lambda t: t.best(c1)], f"pivote {c1}")
            ws.close_toward(u, wr)
        else:
            ws.push(c1)
            ws.pocket(u, wl, c1)
        return
    if len(cs) == 2:
        c1, c2 = cs
        ws.push(c1)
        ws.pocket(u, wl, c1)
        ws.pocket(c2, u, c1)
    else:
        for h, c in enumerate(cs):
            if h != len(cs) - 2:
                ws.push(c)
        ws.pocket(cs[-2], ws.before(top), top)
        ws.pocket(u, cs[-2], top)
    if inner:
        ws.fill((u, top, wr), inner, (u, top, wr), "mainadapt", push_options=((), (top,)))
    else:
        ws.close_toward(u, wr)


def _place_u_right(ws: Workspace, u: int, c1: int, inner: FrozenSet[int],
                   wl: int, wr: int, w_start: int, left_empty: bool) -> None:
    if not left_empty:
        ws.push(c1)
        if not inner:
            ws.pocket(u, wl, c1)
            return

        def whole(t: Workspace) -> None:
            t.fill((wl, c1, u), inner, (wl, c1, u), "main")
            t.close_toward(u, wr)

        def without_u(t: Workspace) -> None:
            t.fill((wl, c1, u), inner, (wl, c1, u), "mainstrong")
            t.best(u)
            t.close_toward(u, wr)

        choose(ws, [whole, without_u], f"triángulo {wl},{c1},{u}")
        return
    if not inner:
        run = ws.full_run(c1)
        pocket = next(((x, y) for x, y in zip(run, run[1:]) if ws.d.shape(x, y) is ArcShape.POCKET), None)
        if pocket is None:
            raise CaseNotMatched(f"{c1} no cubre ningún bolsillo")
        ws.pocket(c1, *pocket)
        ws.pocket(u, c1, wr)
        return
    cycle = [c1, u] + ws.path_between(w_start, wl)
    ws.fill(cycle, inner, (w_start, c1, u), "main", apex=c1, push_options=((), (wl,)))
    ws.close_toward(c1, wr)
    ws.close_toward(u, wr)


def _place_u_both(ws: Workspace, u: int, lefts: List[int], right: int, region: Region,
                  inner: FrozenSet[int], wr: int, w_start: int) -> None:
    if not inner:
        for c in lefts:
            ws.push(c)
        choose(ws, [lambda t: t.push(right), lambda t: t.best(right)], f"pivote derecho {right}")
        ws.pocket(u, ws.before(right), right)
        ws.close_toward(u, wr)
        return
    ws.push(right)
    corner = ws.before(right)
    cycle = [right, u] + ws.path_between(w_start, corner)
    ws.fill(cycle, region.vertices - {right}, (w_start, right, u), "main", apex=right,
            push_options=((), (corner,)))
    ws.close_toward(u, wr)


def _place_u(ws: Workspace, u: int, R: Dict[int, Region], w: Dict[int, int], r: int,
             right_types: Set[int]) -> int:
    """Coloca u con la región X_r; devuelve el índice de la siguiente región no vacía."""
    X = R[r]
    j = r - 1
    while j >= 1 and R[j].is_empty:
        j -= 1
    left_empty = j < r - 1
    if X.kind is RegionKind.EMPTY_POCKET:
        ws.pocket(u, w[r], w[r + 1])
        return j
    lefts, right, inner = _split(X, right_types)
    if X.kind is RegionKind.LEFT_PIVOT:
        _place_u_left(ws, u, lefts, inner, w[r], w[r + 1], w[j + 1], left_empty)
    elif X.kind is RegionKind.RIGHT_PIVOT:
        _place_u_right(ws, u, right, inner, w[r], w[r + 1], w[j + 1], left_empty)
    else:
        _place_u_both(ws, u, lefts, right, X, inner, w[r + 1], w[j + 1])
    return j


def _process_region(ws: Workspace, u: int, X: Region, w: Dict[int, int], right_types: Set[int]) -> None:
    """Vacía X_h con u ya colocado a su derecha y cierra u con w_h."""
    wl, wr = w[X.index], w[X.index + 1]
    if X.is_empty:
        ws.close_toward(u, wl)
        return
    lefts, right, inner = _split(X, right_types)
    if X.kind is RegionKind.LEFT_PIVOT:
        top = lefts[-1]
        if not inner:
            for c in lefts:
                ws.push(c)
        else:
            for c in lefts[:-1]:
                ws.push(c)
            if ws.d.shape(wr, u) is ArcShape.MOUNTAIN:
                ws.push(top)
                ws.fill((u, top, wr), inner, (u, top, wr), "main")
            else:
                ws.fill((wr, u, top), inner, (wr, u, top), "main")
                ws.close_toward(top, wl)
    elif X.kind is RegionKind.RIGHT_PIVOT:
        ws.push(right)
        if inner:
            ws.fill((wl, right, u), inner, (wl, right, u), "mainadapt", push_options=((), (right,)))
    elif not inner:
        for c in lefts:
            ws.push(c)
        ws.push(right)
    else:
        ws.push(right)
        corner = ws.before(right)
        cycle = [right, u] + ws.path_between(wl, corner)
        ws.fill(cycle, X.vertices - {right}, (wl, right, u), "mainadapt", apex=right,
                push_options=((), (corner,)))
    ws.close_toward(u, wl)


def process_u(ws: Workspace, u: int, regions: Sequence[Region], right_types: Set[int],
              right_end: bool = False) -> None:
    """
    Inserta u y todos los vértices de sus regiones X_1..X_{k-1}: primero u
    junto con la región más a la derecha que no es una montaña vacía, después
    las demás de derecha a izquierda. Con right_end (solo si u = v_n) u va a
    la derecha de todo con montañas hacia las regiones vacías finales.

    Raises:
        CaseNotMatched: Si la configuración no encaja con ninguna construcción
    """
    R = {x.index: x for x in regions}
    w = {1: regions[0].left}
    w.update({x.index + 1: x.right for x in regions})
    k = len(regions) + 1
    if right_end:
        nonempty = [h for h in R if not R[h].is_empty]
        if not nonempty:
            raise CaseNotMatched(f"todas las regiones de {u} están vacías")
        j = max(nonempty)
        ws.place_right_end(u, [w[h] for h in range(j + 1, k + 1)])
    else:
        r = k - 1
        while r >= 1 and R[r].kind is RegionKind.EMPTY_MOUNTAIN:
            r -= 1
        if r == 0:
            raise CaseNotMatched(f"todas las regiones de {u} son montañas vacías")
        j = _place_u(ws, u, R, w, r, right_types)
        ws.close_toward(u, w[k])
    for h in range(j, 0, -1):
        _process_region(ws, u, R[h], w, right_types)
    ws.close_toward(u, w[1])


# -----------------------------
# Último vértice
# -----------------------------
def last_vertex_recipes(s: OrderingState, d: ArcDiagram,
                        mode: str) -> List[Tuple[str, Callable[[Workspace], None]]]:
    """
    Construcciones para v_n con i = n-1. Extensible: la figura de su tipo
    problemático (o cada movimiento canónico si no lo es). mainadapt: v_n a
    la derecha de v2 con todas sus aristas montañas.
    """
    vn = s.vn
    recipes: List[Tuple[str, Callable[[Workspace], None]]] = []
    if mode in ("auto", "extensible"):
        prof = profile(s, d, vn)
        figure = LAST_FIGURES.get(prof.problem)
        if figure is not None:
            recipes.append(("figure", lambda ws: ws.canonical(vn, *figure)))
            recipes.append(("best", lambda ws: ws.best(vn)))
        else:
            for j in range(prof.degree - 1):
                recipes.append((f"move-{j}", lambda ws, j=j: ws.move_at(vn, j)))
    if mode in ("auto", "mainadapt"):
        recipes.append(("right-end", lambda ws: ws.place_right_end(vn, s.path)))
    return recipes

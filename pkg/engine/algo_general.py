# algo_general.py
# Dibujo de triangulaciones generales con a lo sumo ⌊4n/5⌋-2 biarcos bajada-subida:
# inserción por defecto, atajos por pivote, pivotes izquierdos apilados,
# procesamiento de regiones alrededor de u e inserción del último vértice.

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

from canonical_order import (
    CaseNotMatched, OrderingState, advance_all, decompose_regions, eligible_set,
    is_eligible, profile, region_vertices, select_u,
)
from diagram import (
    DEFAULT_CHI, ArcDiagram, BoundExceeded, CreditLedger, DiagramContext, DrawResult,
    base_diagram, check_bound, envelope, expected_chain, validate, validate_chi,
)
from graph_core import PlaneTriangulation, check_triangulation, edge_key, induced_triangulation
from region_steps import (
    POCKET_MOVE, PUSH_MOVE, Move, Workspace, apply_move, best_move, candidate_moves,
    last_vertex_recipes, pivot_pair, process_u, stacked_left,
)

logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger(__name__)

LAST_MODES = ("auto", "extensible", "mainadapt")
SUB_MODES = {"main": "extensible", "mainadapt": "mainadapt", "mainstrong": "extensible"}
BEAM_WIDTH = 4
MAX_DEPTH = 40

Recipe = Callable[[Workspace], None]

__all__ = [
    "LAST_MODES", "POCKET_MOVE", "PUSH_MOVE", "Move", "TriangulationDrawer", "apply_move",
    "candidate_moves", "draw_triangulation", "general_bound", "ledger_bound",
]


def general_bound(n: int) -> int:
    """⌊4n/5⌋ - 2 (0 para n = 3)."""
    return max(0, 4 * n // 5 - 2)


def ledger_bound(n: int, chi: Fraction) -> Fraction:
    """Coste total admitido para la llamada principal: n(1-χ) + 7χ - 3."""
    return n * (1 - chi) + 7 * chi - 3


@dataclass
class Candidate:
    """Resultado completo de una construcción para un paso, listo para liquidar."""
    label: str
    workspace: Workspace
    state: OrderingState
    context: DiagramContext
    spend: Fraction
    limit: Fraction
    budget: Fraction
    rank: int = 0

    @property
    def within_limit(self) -> bool:
        return self.spend <= self.limit

    @property
    def key(self) -> Tuple[bool, Fraction, int, int]:
        return not self.within_limit, self.spend, self.workspace.d.biarc_count, self.rank


class TriangulationDrawer:
    """
    Construcción inductiva sobre un orden canónico. Cada paso inserta uno o
    más vértices elegibles, liquida los créditos y, en modo auditoría, valida
    el diagrama parcial.

    Cada paso prueba primero las construcciones explícitas de su caso y se
    queda con la más barata que respeta la cota del paso; la búsqueda en haz
    sobre movimientos canónicos solo entra cuando ninguna la respeta. Los
    triángulos y polígonos interiores se dibujan con dibujantes hijos que
    comparten la caché de subdibujos.

    Args:
        enforce: Control del libro de créditos ("cumulative", "step" o None)
    """

    def __init__(self, g: PlaneTriangulation, chi=DEFAULT_CHI,
                 outer: Optional[Sequence[int]] = None, audit: bool = False, strict: bool = False,
                 enforce: Optional[str] = "cumulative", depth: int = 0,
                 subs: Optional[Dict[tuple, object]] = None):
        self.graph = g
        self.chi = validate_chi(chi)
        self.audit = audit
        self.strict = strict
        self.depth = depth
        self.ledger = CreditLedger(self.chi, enforce="step" if strict else enforce)
        self.state = OrderingState.initial(g, outer)
        v1, v2, v3 = self.state.placed
        self.diagram = base_diagram(v1, v2, v3, self.chi)
        self.final_context: Optional[DiagramContext] = None
        self.last_mode = "auto"
        self.stop_before_last = False
        self._subs = subs if subs is not None else {}
        self._settle("init", self.state.placed, 2 * self.chi)

    # -- bookkeeping --
    def _context(self) -> DiagramContext:
        return DiagramContext.extensible(self.state.path)

    def _settle(self, kind: str, vertices: Sequence[int], limit: Optional[Fraction],
                context: Optional[DiagramContext] = None, budget: Optional[Fraction] = None) -> None:
        context = context or self._context()
        self.diagram = self.ledger.settle(self.diagram, context, kind, vertices, limit, budget)
        if self.audit:
            report = validate(self.diagram, context, self.chi)
            if not report.passed:
                raise CaseNotMatched(f"paso {kind} {list(vertices)} deja un diagrama inválido:\n"
                                     f"{report.summary()}")

    def _budget(self, count: int, extensible_end: bool = False) -> Fraction:
        return (1 - self.chi) * count + (2 * self.chi if extensible_end else 0)

    def _workspace(self) -> Workspace:
        return Workspace(self, self.diagram, self.state)

    def _evaluate(self, label: str, ws: Workspace,
                  limit: Callable[[Workspace, bool], Fraction], rank: int = 0) -> Candidate:
        """
        Comprueba que el estado de trabajo es un estado canónico válido (el
        camino coincide con la envolvente y no queda ninguna arista pendiente
        entre vértices colocados) y estima su gasto.

        Raises:
            CaseNotMatched: Si la construcción no deja un estado extensible
        """
        g = self.graph
        state = advance_all(self.state, ws.inserted)
        placed = state.placed_set
        for v in ws.inserted:
            for x in g.neighbors(v):
                if x in placed and edge_key(v, x) not in ws.d.shapes:
                    raise CaseNotMatched(f"{label}: falta la arista {edge_key(v, x)}")
        complete = state.is_complete
        if complete and ws.final_mode == "mainadapt":
            context = DiagramContext.valid((state.v1, state.v2, state.vn))
        else:
            if not complete and ws.s.path != state.path:
                raise CaseNotMatched(f"{label}: camino de trabajo {list(ws.s.path)} ≠ {list(state.path)}")
            if envelope(ws.d) != expected_chain(state.path):
                raise CaseNotMatched(f"{label}: la envolvente superior no es el camino exterior")
            context = DiagramContext.extensible(state.path)
        extensible_end = complete and ws.final_mode != "mainadapt"
        return Candidate(label, ws, state, context, self.ledger.preview(ws.d, context),
                         limit(ws, extensible_end), self._budget(len(ws.inserted), extensible_end), rank)

    def _candidates(self, recipes: Sequence[Tuple[str, Recipe]],
                    limit: Callable[[Workspace, bool], Fraction]) -> List[Candidate]:
        found = []
        for rank, (label, recipe) in enumerate(recipes):
            ws = self._workspace()
            try:
                recipe(ws)
                found.append(self._evaluate(label, ws, limit, rank))
            except (CaseNotMatched, ValueError) as e:
                logger.debug(f"construcción {label} descartada: {e}")
        return found

    def _commit(self, kind: str, cand: Candidate) -> None:
        self.diagram = cand.workspace.d
        self.state = cand.state
        if self.state.is_complete:
            self.final_context = cand.context
        if not cand.within_limit:
            logger.warning(f"Paso {kind} ({cand.label}) sin construcción dentro de la cota")
        self._settle(kind, cand.workspace.inserted, cand.limit, cand.context, cand.budget)

    # -- subdibujos --
    def sub_diagram(self, cycle: Tuple[int, ...], inside: FrozenSet[int], outer: Tuple[int, ...],
                    mode: str, apex: Optional[int] = None) -> Tuple[ArcDiagram, Tuple[int, ...], FrozenSet]:
        """
        Dibuja recursivamente la triangulación encerrada por cycle con cara
        exterior outer = (v1, v2, vn).

        Returns:
            (diagrama, orden de sus vértices, aristas virtuales añadidas)

        Raises:
            CaseNotMatched: Si el subdibujo no se puede construir
        """
        if mode not in SUB_MODES:
            raise ValueError(f"modo de subdibujo desconocido: {mode}")
        key = (cycle, inside, outer, mode, apex)
        if key in self._subs:
            hit = self._subs[key]
            if hit is None:
                raise CaseNotMatched(f"subdibujo {mode} de {sorted(inside)} ya descartado")
            return hit
        if self.depth >= MAX_DEPTH:
            raise CaseNotMatched(f"profundidad de recursión {self.depth} agotada")
        try:
            sub_g, virtual = induced_triangulation(self.graph, cycle, inside, outer, apex)
            child = TriangulationDrawer(sub_g, self.chi, outer, audit=self.audit, enforce=None,
                                        depth=self.depth + 1, subs=self._subs)
            child.run_steps(SUB_MODES[mode], stop_before_last=mode == "mainstrong")
            result = (child.diagram, child.state.placed, virtual)
        except (CaseNotMatched, ValueError) as e:
            self._subs[key] = None
            raise CaseNotMatched(f"subdibujo {mode} de {sorted(inside)}: {e}") from e
        self._subs[key] = result
        return result

    # -- búsqueda --
    def _search(self, targets: Set[int], finish_last: bool) -> List[Tuple[str, Recipe]]:
        """
        Haz de anchura BEAM_WIDTH sobre movimientos canónicos que inserta
        todos los targets; con finish_last añade después v_n con cada figura.
        """
        beam = [self._workspace()]
        while any(not targets <= set(ws.inserted) for ws in beam):
            grown = []
            for ws in beam:
                for v in eligible_set(ws.s):
                    if v not in targets or v in ws.inserted:
                        continue
                    for move in candidate_moves(ws.d, ws.s, v, self.chi):
                        trial = ws.fork()
                        trial.apply(move)
                        grown.append(trial)
            if not grown:
                return []
            unique: Dict[Tuple, Workspace] = {}
            for ws in sorted(grown, key=lambda t: (t.hint, t.d.biarc_count, tuple(t.inserted))):
                unique.setdefault((ws.s.path, ws.s.placed_set, ws.d.spine), ws)
            beam = list(unique.values())[:BEAM_WIDTH]

        recipes: List[Tuple[str, Recipe]] = []
        for h, found in enumerate(beam):
            if not finish_last:
                recipes.append((f"search-{h}", lambda t, found=found: t.adopt(found)))
                continue
            for label, last in last_vertex_recipes(found.s, found.d, self.last_mode):
                def recipe(t: Workspace, found=found, last=last) -> None:
                    t.adopt(found)
                    last(t)
                recipes.append((f"search-{h}-{label}", recipe))
        return recipes

    def _decide(self, kind: str, recipes: Sequence[Tuple[str, Recipe]],
                limit: Callable[[Workspace, bool], Fraction],
                fallback: Optional[Callable[[], Sequence[Tuple[str, Recipe]]]] = None,
                require_limit: bool = False) -> bool:
        """Liquida la mejor construcción; la búsqueda solo si ninguna respeta la cota."""
        found = self._candidates(recipes, limit)
        if fallback is not None and not any(c.within_limit for c in found):
            found += self._candidates(fallback(), limit)
        if require_limit:
            found = [c for c in found if c.within_limit]
        if not found:
            return False
        self._commit(kind, min(found, key=lambda c: c.key))
        return True

    # -- pasos --
    def step_default(self) -> bool:
        """
        Inserta un vértice elegible no problemático: en un bolsillo cubierto
        (gasto ≤ 1-χ) o, si todo es montaña y d ≥ 5, sobre una montaña bajada
        (gasto ≤ 5-d).
        """
        best: Optional[Move] = None
        limit = None
        for v in eligible_set(self.state):
            if v == self.state.vn:
                continue
            prof = profile(self.state, self.diagram, v)
            if prof.is_problematic:
                continue
            has_pocket = "⌣" in prof.profile
            kinds = (POCKET_MOVE,) if has_pocket else (PUSH_MOVE,)
            move = best_move(candidate_moves(self.diagram, self.state, v, self.chi, kinds))
            if move is not None and (best is None or move.key < best.key):
                best = move
                limit = 1 - self.chi if has_pocket else Fraction(5 - prof.degree)
        if best is None:
            return False
        self.diagram, self.state = apply_move(self.diagram, self.state, best)
        self._settle("default", (best.vertex,), limit, budget=self._budget(1))
        return True

    def step_degree_two(self) -> bool:
        """
        v y pc(v) juntos cuando pc(v) solo toca el camino en el pivote de v:
        gasto ≤ 1+2χ.
        """
        s, d = self.state, self.diagram
        profiles = {v: profile(s, d, v) for v in eligible_set(s) if v != s.vn}
        recipes: List[Tuple[str, Recipe]] = []
        for v, prof in profiles.items():
            c = prof.pivot_cover
            if c is None or c == s.vn or c in profiles or len(s.path_neighbors(c)) != 1:
                continue
            recipes.append((f"pivot-{v}-{c}", lambda ws, v=v, c=c, p=prof: pivot_pair(ws, v, c, p)))
            recipes.append((f"greedy-{v}-{c}", lambda ws, v=v, c=c: (ws.best(v), ws.best(c))))
        if not recipes:
            return False
        limit = 1 + 2 * self.chi
        return self._decide("degree-two-pivot", recipes, lambda ws, end: limit, require_limit=True)

    def step_same_pivot(self) -> bool:
        """Elegibles v, v' = pc(v) con algún pivote derecho: los dos juntos, gasto ≤ 1."""
        s, d = self.state, self.diagram
        profiles = {v: profile(s, d, v) for v in eligible_set(s) if v != s.vn}
        recipes: List[Tuple[str, Recipe]] = []
        for v, prof in profiles.items():
            c = prof.pivot_cover
            if c not in profiles or not (prof.right_pivot or profiles[c].right_pivot):
                continue
            recipes.append((f"pair-{v}-{c}", lambda ws, v=v, c=c, p=prof: pivot_pair(ws, v, c, p)))
            recipes.append((f"greedy-{v}-{c}", lambda ws, v=v, c=c: (ws.best(v), ws.best(c))))
        if not recipes:
            return False
        return self._decide("same-pivot", recipes, lambda ws, end: Fraction(1), require_limit=True)

    def step_stacked_left_pivots(self, u: int) -> bool:
        """
        Pivotes izquierdos v, v' = pc(v) elegibles y el vértice v'' ≠ u que
        cubre vv': los tres (y el triángulo de v'' si no está vacío) con
        gasto ≤ (1-χ)h.
        """
        s, d = self.state, self.diagram
        profiles = {v: profile(s, d, v) for v in eligible_set(s) if v != s.vn}
        recipes: List[Tuple[str, Recipe]] = []
        for v, prof in profiles.items():
            v_prime = prof.pivot_cover
            if prof.right_pivot or v_prime not in profiles or profiles[v_prime].right_pivot:
                continue
            for v_second in self.graph.apexes(v, v_prime):
                if v_second in (u, s.vn, prof.left) or v_second in s.placed_set:
                    continue
                recipes.append((f"stacked-{v}-{v_prime}-{v_second}",
                                lambda ws, a=v, b=v_prime, c=v_second, p=prof: stacked_left(ws, a, b, c, p)))
        if not recipes:
            return False
        return self._decide("stacked-left-pivots", recipes,
                            lambda ws, end: (1 - self.chi) * len(ws.inserted), require_limit=True)

    def step_process_u(self, u: int) -> None:
        """
        Procesa u = select_u y todas sus regiones; gasto ≤ (1-χ) por vértice
        insertado (más 2χ si u = v_n queda colocado de forma extensible).
        """
        s, d = self.state, self.diagram
        regions = decompose_regions(s, d, u)
        logger.debug(f"process_u u={u}: regiones {[r.kind.value for r in regions]}")
        right_types = {v for v in eligible_set(s) if profile(s, d, v).right_pivot}
        is_last = u == s.vn
        recipes: List[Tuple[str, Recipe]] = []
        if not (is_last and self.stop_before_last):
            if not is_last or self.last_mode in ("auto", "extensible"):
                recipes.append(("regions", lambda ws: process_u(ws, u, regions, right_types)))
            if is_last and self.last_mode in ("auto", "mainadapt"):
                recipes.append(("right-end", lambda ws: process_u(ws, u, regions, right_types, right_end=True)))
        targets = set(region_vertices(s, u))
        if not is_last:
            targets.add(u)

        def search() -> Sequence[Tuple[str, Recipe]]:
            return self._search(targets, finish_last=is_last and not self.stop_before_last)

        def limit(ws: Workspace, extensible_end: bool) -> Fraction:
            return self._budget(len(ws.inserted), extensible_end)

        if not self._decide("process-u", recipes, limit, fallback=search):
            raise CaseNotMatched(f"process-u: ninguna construcción para u={u} en i={s.i}")

    def insert_last_vertex(self, mode: str = "auto") -> None:
        """
        Inserta v_n. extensible: la figura de su tipo problemático, o el
        movimiento más barato si no es problemático (gasto ≤ 1+χ).
        mainadapt: v_n a la derecha de v2 con todas sus aristas montañas (gasto ≤ 1-χ).
        auto: extensible si no añade biarcos; mainadapt en otro caso.
        """
        if mode not in LAST_MODES:
            raise ValueError(f"modo desconocido: {mode}")
        s = self.state
        if s.i != s.graph.n - 1 or not is_eligible(s, s.vn):
            raise ValueError(f"insert_last_vertex requiere i = n-1, i={s.i}")

        def limit(ws: Workspace, extensible_end: bool) -> Fraction:
            return 1 + self.chi if extensible_end else 1 - self.chi

        found = self._candidates(last_vertex_recipes(s, self.diagram, mode), limit)
        if not found:
            raise CaseNotMatched(f"ninguna figura aplicable para v_n={s.vn}")
        pool = found
        if mode == "auto":
            ext = [c for c in found if c.workspace.final_mode != "mainadapt" and c.within_limit
                   and c.workspace.d.biarc_count == self.diagram.biarc_count]
            pool = ext or [c for c in found if c.workspace.final_mode == "mainadapt"] or found
        self._commit("last-vertex", min(pool, key=lambda c: c.key))

    def run_steps(self, last_mode: str = "auto", stop_before_last: bool = False) -> None:
        """Aplica pasos hasta completar el orden (o hasta i = n-1 con stop_before_last)."""
        if last_mode not in LAST_MODES:
            raise ValueError(f"modo desconocido: {last_mode}")
        self.last_mode = last_mode
        self.stop_before_last = stop_before_last
        n = self.graph.n
        while not self.state.is_complete:
            if self.state.i == n - 1:
                if not stop_before_last:
                    self.insert_last_vertex(last_mode)
                break
            if self.step_default() or self.step_degree_two() or self.step_same_pivot():
                continue
            u = select_u(self.state, self.diagram)
            if self.step_stacked_left_pivots(u):
                continue
            self.step_process_u(u)

    def run(self, last_mode: str = "auto") -> DrawResult:
        self.run_steps(last_mode)
        return self._finish()

    def _finish(self) -> DrawResult:
        g = self.graph
        report = validate(self.diagram, DiagramContext.final(g.edges), self.chi)
        bound = general_bound(g.n)
        result = DrawResult("general", self.diagram, self.ledger, bound, report, self.state.placed)
        cap = ledger_bound(g.n, self.chi)
        result.notes["ledger_total"] = self.ledger.total
        result.notes["ledger_bound"] = cap
        result.notes["overruns"] = len(self.ledger.overruns())
        if not report.passed:
            raise CaseNotMatched(f"diagrama final inválido:\n{report.summary()}")
        if self.ledger.total > cap and self.ledger.enforce is not None:
            raise BoundExceeded(f"Coste total {self.ledger.total} > {cap}")
        logger.info(f"general n={g.n}: {result.biarcs} biarcos (cota {bound})")
        return check_bound(result, self.strict and self.chi == DEFAULT_CHI)


def draw_triangulation(g: PlaneTriangulation, chi=DEFAULT_CHI, outer: Optional[Sequence[int]] = None,
                       last_mode: str = "auto", audit: bool = False, strict: bool = False) -> DrawResult:
    """
    Dibuja una triangulación plana como diagrama de arcos monótono.

    Args:
        g: Triangulación (n ≥ 3)
        chi: χ en (0, 1/5]
        outer: Cara exterior (v1, v2, vn); por defecto la de g
        last_mode: "auto", "extensible" o "mainadapt"
        audit: Valida el diagrama parcial tras cada paso
        strict: Cota por paso además de la acumulada, y BoundExceeded si se supera ⌊4n/5⌋-2

    Returns:
        DrawResult con diagrama, libro de créditos y validación final

    Raises:
        InvalidChi: Si chi fuera de rango
        BoundExceeded: Si el coste acumulado supera n(1-χ)+7χ-3
        ValueError: Si la entrada no es una triangulación
    """
    try:
        if last_mode not in LAST_MODES:
            raise ValueError(f"modo desconocido: {last_mode}")
        check_triangulation(g)
        drawer = TriangulationDrawer(g, chi, outer, audit=audit, strict=strict)
        if g.n == 3:
            return drawer._finish()
        return drawer.run(last_mode)
    except BoundExceeded as e:
        logger.error(f"Cota de créditos superada: {e}")
        raise
    except (TypeError, ValueError) as e:
        logger.error(f"Error validando entrada: {e}")
        raise
    except CaseNotMatched:
        raise
    except Exception as e:
        logger.error(f"Error dibujando triangulación: {e}", exc_info=True)
        raise RuntimeError(f"Fallo al dibujar triangulación: {e}") from e


if __name__ == "__main__":
    from graph_core import named_triangulation, random_triangulation

    for name in ("k4", "octahedron", "icosahedron"):
        res = draw_triangulation(named_triangulation(name))
        print(f"{name}: biarcos={res.biarcs} cota={res.bound} coste={res.ledger.total}")
    res = draw_triangulation(random_triangulation(60, seed=7), audit=True)
    print("\n".join(res.trace()[:10]))

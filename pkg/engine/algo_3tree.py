# algo_3tree.py
# 3-árboles planares: árbol de caras con grado de descendencia (gd), dibujo sin
# biarcos cuando todo gd ≤ 2 (caras "gota") y algoritmo de caras ottifante
# con a lo sumo ⌊3(n-3)/4⌋ biarcos bajada-subida.

import logging
from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from canonical_order import CaseNotMatched
from diagram import (
    ArcDiagram, ArcShape, CreditLedger, DiagramContext, DrawResult, WouldCross,
    add_biarcs, check_bound, gap_after, gaps_by_face, innermost_arcs, insert_vertex,
    redraw_as_biarc, rotate_pi, validate,
)
from graph_core import ConstructionSequence, Face, edge_key

logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger(__name__)

PROPER = (ArcShape.MOUNTAIN, ArcShape.POCKET)
MAX_CHARGE = Fraction(3, 4)
BELLY_ALLOWANCE = Fraction(3, 2)


class GdTooHigh(ValueError):
    """Alguna cara del árbol tiene gd = 3 y no admite el dibujo sin biarcos."""


class InsufficientGd0(RuntimeError):
    """No hay vértices gd-0 suficientes para los antecesores preferidos (error interno)."""


def _key(face: Sequence[int]) -> Face:
    return tuple(sorted(face))


# -----------------------------
# Árbol de caras
# -----------------------------
@dataclass
class FaceTree:
    """
    Árbol dual de una secuencia de construcción: raíz v1v2v3, tres hijas por
    cara activa, vértice de cada cara y su gd (hijas activas a la vez).
    """
    root: Face
    nodes: Tuple[Face, ...]
    children: Dict[Face, Tuple[Face, Face, Face]]
    face_vertex: Dict[Face, int]
    grand_degree: Dict[Face, int]
    parent: Dict[Face, Face] = field(default_factory=dict)
    charges: Dict[int, Fraction] = field(default_factory=dict)

    @property
    def vertex_face(self) -> Dict[int, Face]:
        return {v: f for f, v in self.face_vertex.items()}

    def vertex_gd(self, v: int) -> int:
        return self.grand_degree[self.vertex_face[v]]

    def preorder(self) -> List[int]:
        """Vértices de cara en preorden (cara, luego sus hijas en orden)."""
        out: List[int] = []
        stack = [self.root]
        while stack:
            f = stack.pop()
            if f in self.face_vertex:
                out.append(self.face_vertex[f])
                stack.extend(reversed(self.children[f]))
        return out

    def parent_vertex(self, v: int) -> Optional[int]:
        """Vértice de la cara madre de F(v), si existe."""
        up = self.parent.get(self.vertex_face[v])
        return None if up is None else self.face_vertex[up]

    def histogram(self) -> Dict[int, int]:
        """Número de caras con cada gd (las hojas cuentan como gd 0)."""
        hist = {d: 0 for d in range(4)}
        for f in self.nodes:
            hist[self.grand_degree[f]] += 1
        return hist

    def inactive_vertices(self) -> List[int]:
        """Vértices gd-0 en preorden: los que solo crean caras inactivas."""
        return [v for v in self.preorder() if self.vertex_gd(v) == 0]


def build_face_tree(seq: ConstructionSequence) -> FaceTree:
    """
    Construye el árbol de caras de la secuencia.

    gd(f) es el número de hijas de f con vértice de cara: todas nacen a la
    vez al insertar v(f) y siguen activas hasta recibir el suyo.

    Raises:
        InvalidSequence: Si la secuencia no es válida
    """
    try:
        seq.validate()
        root = _key(seq.base)
        nodes: List[Face] = [root]
        children: Dict[Face, Tuple[Face, Face, Face]] = {}
        face_vertex: Dict[Face, int] = {}
        parent: Dict[Face, Face] = {}
        for v, (a, b, c) in seq.steps:
            f = _key((a, b, c))
            face_vertex[f] = v
            kids = (_key((a, b, v)), _key((b, c, v)), _key((c, a, v)))
            children[f] = kids
            parent.update((k, f) for k in kids)
            nodes.extend(kids)
        grand_degree = {f: sum(1 for k in children.get(f, ()) if k in face_vertex) for f in nodes}
        tree = FaceTree(root, tuple(nodes), children, face_vertex, grand_degree, parent)
        logger.debug(f"árbol de caras: {len(nodes)} caras, histograma gd {tree.histogram()}")
        return tree
    except (TypeError, ValueError) as e:
        logger.error(f"Error validando secuencia: {e}")
        raise
    except Exception as e:
        logger.error(f"Error construyendo árbol de caras: {e}", exc_info=True)
        raise RuntimeError(f"Fallo al construir árbol de caras: {e}") from e


def preferred_ancestor_map(tree: FaceTree) -> Dict[int, int]:
    """
    Asigna a cada vértice gd-0 un antecesor preferido gd-2 o gd-3: cada gd-2
    recibe al menos uno y cada gd-3 al menos dos. Las demandas y los gd-0 se
    emparejan en preorden; los gd-0 sobrantes van al primer destino.

    Raises:
        InsufficientGd0: Si hay menos gd-0 que demandas
    """
    order = tree.preorder()
    demand = [v for v in order for _ in range(max(0, tree.vertex_gd(v) - 1))]
    supply = [v for v in order if tree.vertex_gd(v) == 0]
    if len(supply) < len(demand):
        raise InsufficientGd0(f"{len(supply)} vértices gd-0 para {len(demand)} demandas")
    mapping = dict(zip(supply, demand))
    if demand:
        for z in supply[len(demand):]:
            mapping[z] = demand[0]
    return mapping


# -----------------------------
# Todo gd ≤ 2: caras gota
# -----------------------------
def is_drop(d: ArcDiagram, face: Sequence[int]) -> bool:
    """Gota: las dos aristas cortas son arcos propios en páginas distintas."""
    a, b, c = sorted(face, key=d.positions.__getitem__)
    s1, s2 = d.shape(a, b), d.shape(b, c)
    return s1 is not None and s2 is not None and s1.is_proper and s2.is_proper and s1 is not s2


def _initial_diagram(v1: int, v2: int, v3: int, v2v3: ArcShape) -> ArcDiagram:
    return ArcDiagram((v1, v2, v3), {edge_key(v1, v2): ArcShape.POCKET,
                                     edge_key(v2, v3): v2v3,
                                     edge_key(v1, v3): ArcShape.MOUNTAIN})


def draw_3tree_gd2(seq: ConstructionSequence, audit: bool = False) -> DrawResult:
    """
    Dibuja sin biarcos un 3-árbol cuyas caras tienen todas gd ≤ 2.

    Cada cara interna del árbol se mantiene como gota; al insertar v(f) se
    prueban los huecos de f y las 8 combinaciones de arcos propios hasta
    que las hijas activas (a lo sumo dos) son gotas.

    Raises:
        GdTooHigh: Si alguna cara tiene gd = 3
        InvalidSequence: Si la secuencia no es válida
    """
    try:
        tree = build_face_tree(seq)
        high = [f for f, gd in tree.grand_degree.items() if gd == 3]
        if high:
            raise GdTooHigh(f"{len(high)} caras con gd = 3, p. ej. {high[0]}")
        v1, v2, v3 = seq.base
        d = _initial_diagram(v1, v2, v3, ArcShape.MOUNTAIN)
        ledger = CreditLedger(chi_free=True)
        d = ledger.settle(d, DiagramContext.final(), "init", seq.base, Fraction(0))
        for v, face in seq.steps:
            f = _key(face)
            required = [k for k in tree.children[f] if k in tree.face_vertex]
            d = _insert_keeping_drops(d, v, f, required)
            d = ledger.settle(d, DiagramContext.final(), "drop-insert", (v,), Fraction(0))
            if audit:
                lost = [k for k in required if not is_drop(d, k)]
                if lost:
                    raise CaseNotMatched(f"caras que dejaron de ser gota tras {v}: {lost}")
        g = seq.to_triangulation()
        report = validate(d, DiagramContext.final(g.edges))
        if not report.passed:
            raise CaseNotMatched(f"diagrama final inválido:\n{report.summary()}")
        result = DrawResult("3tree-gd2", d, ledger, 0, report, seq.order)
        logger.info(f"3-árbol gd≤2 n={seq.n}: {result.biarcs} biarcos")
        return check_bound(result, strict=True)
    except (TypeError, ValueError) as e:
        logger.error(f"Error validando entrada: {e}")
        raise
    except CaseNotMatched:
        raise
    except Exception as e:
        logger.error(f"Error en el dibujo gd≤2: {e}", exc_info=True)
        raise RuntimeError(f"Fallo al dibujar 3-árbol gd≤2: {e}") from e


def _insert_keeping_drops(d: ArcDiagram, v: int, face: Face, required: Sequence[Face]) -> ArcDiagram:
    gaps = gaps_by_face(d).get(frozenset(face), [])
    for g in gaps:
        for combo in product(PROPER, repeat=3):
            try:
                out = insert_vertex(d, v, g, dict(zip(face, combo)))
            except WouldCross:
                continue
            if all(is_drop(out, k) for k in required):
                return out
    raise CaseNotMatched(f"no se puede insertar {v} en la gota {face} ({len(gaps)} huecos)")


# -----------------------------
# Caras ottifante
# -----------------------------
@dataclass(frozen=True)
class Ottifant:
    """
    Cara activa u, v, w en orden del lomo (en el marco propio) con uw como
    borde superior, tratado como biarco: solo se conecta con u por debajo.
    flipped indica que el marco es el diagrama girado 180°. vw es la barriga.
    """
    u: int
    v: int
    w: int
    flipped: bool = False
    reserve: Fraction = Fraction(0)

    @property
    def top(self) -> Tuple[int, int]:
        return edge_key(self.u, self.w)

    @property
    def base(self) -> Tuple[int, int]:
        return edge_key(self.u, self.v)

    @property
    def belly(self) -> Tuple[int, int]:
        return edge_key(self.v, self.w)

    @property
    def face(self) -> Face:
        return _key((self.u, self.v, self.w))


def _view(d: ArcDiagram, flipped: bool) -> ArcDiagram:
    return rotate_pi(d) if flipped else d


def find_slot(view: ArcDiagram, frame: Ottifant) -> int:
    """
    Hueco de la cara entre u y v cuyo semiarco superior más interior es uw
    y cuyo inferior más interior es uv (en el marco de la cara).

    Raises:
        CaseNotMatched: Si la cara no tiene forma de ottifante
    """
    pos = view.positions
    arcs = innermost_arcs(view)
    slots = [g for g in range(pos[frame.u] + 1, pos[frame.v] + 1)
             if arcs[g] == (frame.top, frame.base)]
    if not slots:
        raise CaseNotMatched(f"la cara {frame.face} no tiene forma de ottifante")
    return slots[-1]


def _nested_mountains(view: ArcDiagram, v: int, w: int) -> List[int]:
    """Extremos derechos de las montañas que salen de v sin pasar de w (vw incluida)."""
    pos = view.positions
    return [b if a == v else a for (a, b), s in view.shapes.items()
            if s is ArcShape.MOUNTAIN and v in (a, b) and view.left_endpoint((a, b)) == v
            and pos[b if a == v else a] <= pos[w]]


def _place(view: ArcDiagram, frame: Ottifant, x: int, xv: ArcShape) -> Tuple[ArcDiagram, Dict[Face, Ottifant]]:
    """
    Inserta x en el hueco de la cara: ux bolsillo, xw montaña y xv con la
    forma dada (un biarco cruza justo a la derecha de x). Devuelve también
    las hijas que quedan con forma de ottifante.
    """
    u, v, w = frame.u, frame.v, frame.w
    arcs = {u: ArcShape.POCKET, w: ArcShape.MOUNTAIN}
    if xv.is_proper:
        arcs[v] = xv
    view = insert_vertex(view, x, find_slot(view, frame), arcs)
    if xv is ArcShape.BIARC:
        view = add_biarcs(view, x, [v], gap_after(view, x))
    kids = {_key((u, x, w)): Ottifant(u, x, w, frame.flipped)}
    if xv is not ArcShape.POCKET:
        kids[_key((u, v, x))] = Ottifant(v, x, u, not frame.flipped)
    if xv is not ArcShape.MOUNTAIN:
        kids[_key((x, v, w))] = Ottifant(x, v, w, frame.flipped, frame.reserve)
    return view, kids


def transform_belly(view: ArcDiagram, frame: Ottifant) -> ArcDiagram:
    """
    Redibuja la barriga vw como biarco bajada-subida con el cruce junto a v.
    Una barriga montaña arrastra las montañas de v anidadas bajo ella; las
    que la envuelven no cortan el nuevo semiarco superior.
    """
    s = view.shapes[frame.belly]
    if s is ArcShape.MOUNTAIN:
        return add_biarcs(view, frame.v, _nested_mountains(view, frame.v, frame.w), gap_after(view, frame.v))
    if s is ArcShape.POCKET:
        return redraw_as_biarc(view, frame.belly)
    return view


@dataclass
class OttifantAudit:
    """Resultado de comprobar los invariantes de ottifante tras un paso."""
    step: str
    failures: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


class OttifantDrawer:
    """
    Dibuja un 3-árbol planar con a lo sumo ⌊3(n-3)/4⌋ biarcos.

    Invariantes tras cada paso: cada cara activa tiene forma de
    ottifante, la barriga montaña de una cara activa se puede
    transformar por 3/2 más su reserva, cargas más reservas cubren los
    biarcos y ninguna carga supera 3/4.
    """

    def __init__(self, seq: ConstructionSequence, audit: bool = False, strict: bool = False):
        self.seq = seq
        self.audit = audit
        self.strict = strict
        self.tree = build_face_tree(seq)
        self.preferred = preferred_ancestor_map(self.tree)
        self.claimed: set = set()
        self.reserved = Fraction(0)
        self.ledger = CreditLedger(chi_free=True)
        self.audits: List[OttifantAudit] = []
        v1, v2, v3 = seq.base
        self.d = _initial_diagram(v1, v2, v3, ArcShape.POCKET)
        self.frames: Dict[Face, Ottifant] = {}
        self.placed = set(seq.base)
        if self.tree.root in self.tree.face_vertex:
            self.frames[self.tree.root] = Ottifant(v1, v2, v3)
        self.d = self.ledger.settle(self.d, DiagramContext.final(), "init", seq.base, Fraction(0))

    # -----------------------------
    # Cargas
    # -----------------------------
    def _charge(self, v: int, amount: Fraction) -> Fraction:
        self.tree.charges[v] = self.tree.charges.get(v, Fraction(0)) + amount
        return amount

    def _charge_preferred(self, x: int, amount: Fraction) -> Fraction:
        """Carga a un vértice gd-0 que tiene a x como antecesor preferido."""
        pool = [z for z, p in self.preferred.items() if p == x and z not in self.claimed]
        if not pool:
            raise InsufficientGd0(f"ningún vértice gd-0 libre con antecesor preferido {x}")
        self.claimed.add(pool[0])
        return self._charge(pool[0], amount)

    def _reserve(self, frame: Ottifant, amount: Fraction) -> Ottifant:
        self.reserved += amount
        return replace(frame, reserve=frame.reserve + amount)

    # -----------------------------
    # Consultas del árbol
    # -----------------------------
    def _vertex_of(self, face: Face) -> Optional[int]:
        return self.tree.face_vertex.get(face)

    def _gd(self, face: Face) -> int:
        return self.tree.grand_degree[face]

    def _register(self, kids: Dict[Face, Ottifant]) -> None:
        for f, frame in kids.items():
            z = self._vertex_of(f)
            if z is not None and z not in self.placed:
                self.frames[f] = frame

    # -----------------------------
    # Paso iterativo
    # -----------------------------
    def step(self, x: int, face: Face) -> str:
        """
        Inserta x = v(f) (y a veces el vértice y de una hija) según gd(f).

        Returns:
            Nombre del caso aplicado
        """
        f = _key(face)
        frame = self.frames.pop(f, None)
        if frame is None:
            raise CaseNotMatched(f"la cara {f} de {x} no tiene descriptor de ottifante")
        u, v, w = frame.u, frame.v, frame.w
        view = _view(self.d, frame.flipped)
        top, base, belly = _key((u, x, w)), _key((u, v, x)), _key((x, v, w))
        gd = self._gd(f)
        charged = Fraction(0)
        placed = [x]
        kids: Dict[Face, Ottifant] = {}

        if gd == 0:
            case = "1"
            view, kids = _place(view, frame, x, ArcShape.MOUNTAIN)
        elif gd >= 2:
            case = "2"
            view, kids = _place(view, frame, x, ArcShape.BIARC)
            charged += self._charge(x, MAX_CHARGE)
            charged += self._charge_preferred(x, Fraction(1, 4))
        elif self._vertex_of(base) is not None:
            case = "3-uvx"
            view, kids = _place(view, frame, x, ArcShape.MOUNTAIN)
        elif self._vertex_of(top) is not None:
            y = self._vertex_of(top)
            gd_child = self._gd(top)
            if gd_child == 0:
                case = "3A-0"
                view, kids = _place(view, frame, x, ArcShape.MOUNTAIN)
            elif gd_child == 1:
                case = "3A-1"
                view, kids = _place(view, frame, x, ArcShape.BIARC)
                inner = kids.pop(top)
                yx = ArcShape.MOUNTAIN if self._vertex_of(_key((u, x, y))) is not None else ArcShape.POCKET
                view, more = _place(view, inner, y, yx)
                kids.update(more)
                charged += self._charge(x, Fraction(1, 2)) + self._charge(y, Fraction(1, 2))
                placed.append(y)
            else:
                case = "3A-2"
                view, kids = _place(view, frame, x, ArcShape.MOUNTAIN)
                inner = kids.pop(top)
                view, more = _place(view, inner, y, ArcShape.BIARC)
                side = _key((y, x, w))
                if side in more:
                    more[side] = self._reserve(more[side], Fraction(1, 2))
                kids.update(more)
                charged += self._charge(x, MAX_CHARGE) + self._charge(y, MAX_CHARGE)
                placed.append(y)
        elif self._vertex_of(belly) is not None:
            y = self._vertex_of(belly)
            gd_child = self._gd(belly)
            inner_top, inner_base, inner_belly = _key((x, y, w)), _key((x, v, y)), _key((y, v, w))
            if gd_child == 1 and self._vertex_of(inner_belly) is not None:
                case = "3B-belly"
                before = view.biarc_count
                view = transform_belly(view, frame)
                cost = view.biarc_count - before
                if cost > BELLY_ALLOWANCE + frame.reserve:
                    logger.warning(f"barriga {frame.belly}: {cost} biarcos > {BELLY_ALLOWANCE + frame.reserve}")
                view, kids = _place(view, frame, x, ArcShape.MOUNTAIN)
                view = insert_vertex(view, y, gap_after(view, v), {
                    v: ArcShape.POCKET, w: ArcShape.MOUNTAIN, x: ArcShape.MOUNTAIN})
                kids.pop(belly, None)
                kids[inner_belly] = Ottifant(w, y, v, not frame.flipped)
                charged += frame.reserve
                charged += self._charge(x, MAX_CHARGE) + self._charge(y, MAX_CHARGE)
            else:
                view, kids = _place(view, frame, x, ArcShape.BIARC)
                inner = kids.pop(belly)
                if gd_child >= 2:
                    case = "3B-2"
                    view, more = _place(view, inner, y, ArcShape.BIARC)
                    charged += self._charge(x, MAX_CHARGE) + self._charge(y, MAX_CHARGE)
                    charged += self._charge_preferred(y, Fraction(1, 2))
                else:
                    view, more = _place(view, inner, y, ArcShape.MOUNTAIN)
                    if gd_child == 0:
                        case = "3B-0"
                        charged += self._charge(x, MAX_CHARGE) + self._charge(y, Fraction(1, 4))
                    elif self._vertex_of(inner_top) is not None:
                        case = "3B-xyw"
                        more[inner_top] = self._reserve(more[inner_top], Fraction(1, 2))
                        charged += self._charge(x, MAX_CHARGE) + self._charge(y, MAX_CHARGE)
                    else:
                        case = "3B-xvy"
                        charged += self._charge(x, Fraction(1, 2)) + self._charge(y, Fraction(1, 2))
                kids.update(more)
            placed.append(y)
        else:
            raise CaseNotMatched(f"gd({f}) = 1 sin hija activa")

        self.d = _view(view, frame.flipped)
        self.placed.update(placed)
        for z in placed[1:]:
            self.frames.pop(self.tree.vertex_face[z], None)
        self._register(kids)
        self.d = self.ledger.settle(self.d, DiagramContext.final(), f"ottifant-{case}", placed, charged)
        logger.debug(f"caso {case}: {placed} -> {self.d.biarc_count} biarcos")
        return case

    # -----------------------------
    # Auditoría
    # -----------------------------
    def check_invariants(self, step: str) -> OttifantAudit:
        report = OttifantAudit(step)
        for f, z in self.tree.face_vertex.items():
            if z in self.placed:
                continue
            parent = self.tree.parent_vertex(z)
            if parent is not None and parent not in self.placed:
                continue
            frame = self.frames.get(f)
            if frame is None:
                report.failures.append(f"forma: cara activa {f} sin descriptor")
                continue
            view = _view(self.d, frame.flipped)
            try:
                find_slot(view, frame)
            except CaseNotMatched:
                report.failures.append(f"forma: cara activa {f} sin forma de ottifante")
                continue
            # una cara gd-0 se rellena con el caso 1, que nunca toca la barriga
            if self._gd(f) > 0 and view.shapes[frame.belly] is ArcShape.MOUNTAIN:
                needed = len(_nested_mountains(view, frame.v, frame.w))
                if needed > BELLY_ALLOWANCE + frame.reserve:
                    report.failures.append(f"barriga: barriga {frame.belly} necesita {needed} biarcos")
        total = sum(self.tree.charges.values(), Fraction(0)) + self.reserved
        if total < self.d.biarc_count:
            report.failures.append(f"cobertura: cargas {total} < {self.d.biarc_count} biarcos")
        over = {v: c for v, c in self.tree.charges.items() if c > MAX_CHARGE}
        if over:
            report.failures.append(f"carga: cargas por encima de 3/4: {over}")
        return report

    def run(self) -> DrawResult:
        for x, face in self.seq.steps:
            if x in self.placed:
                continue
            try:
                case = self.step(x, face)
            except WouldCross as e:
                raise CaseNotMatched(f"la inserción de {x} cruza arcos: {e}") from e
            if self.audit:
                report = self.check_invariants(case)
                self.audits.append(report)
                if not report.passed:
                    raise CaseNotMatched(f"invariantes rotos tras el caso {case}: {report.failures}")
        return self._finish()

    def _finish(self) -> DrawResult:
        g = self.seq.to_triangulation()
        report = validate(self.d, DiagramContext.final(g.edges))
        if not report.passed:
            raise CaseNotMatched(f"diagrama final inválido:\n{report.summary()}")
        result = DrawResult("3tree", self.d, self.ledger, ottifant_bound(self.seq.n), report, self.seq.order)
        result.notes.update({
            "charges": dict(self.tree.charges),
            "reserved": self.reserved,
            "overruns": len(self.ledger.overruns()),
            "gd_histogram": self.tree.histogram(),
            "construction": "ottifant",
        })
        logger.info(f"3-árbol n={self.seq.n}: {result.biarcs} biarcos (cota {result.bound})")
        return check_bound(result, self.strict)


def ottifant_bound(n: int) -> int:
    """⌊3(n-3)/4⌋: solo los n-3 vértices insertados reciben carga."""
    return max(0, 3 * (n - 3) // 4)


def draw_3tree(seq: ConstructionSequence, audit: bool = False, strict: bool = False) -> DrawResult:
    """
    Dibuja un 3-árbol planar con a lo sumo ⌊3(n-3)/4⌋ biarcos bajada-subida.

    Si ninguna cara tiene gd 3 se usa el dibujo de caras gota, sin biarcos;
    si no, el de caras ottifante. notes["construction"] indica cuál.

    Args:
        seq: Secuencia de construcción (la base es la cara exterior)
        audit: Comprueba los invariantes de ottifante tras cada paso y lanza si fallan
        strict: Lanza BoundExceeded si se supera la cota

    Raises:
        InvalidSequence: Si la secuencia no es válida
        CaseNotMatched: Si una cara activa pierde su forma (error interno)
    """
    try:
        tree = build_face_tree(seq)
        if max(tree.grand_degree.values()) <= 2:
            result = replace(draw_3tree_gd2(seq, audit=audit), algorithm="3tree", bound=ottifant_bound(seq.n))
            result.notes.update({"construction": "gd2", "charges": {}, "reserved": Fraction(0),
                                 "overruns": 0, "gd_histogram": tree.histogram()})
            return result
        return OttifantDrawer(seq, audit=audit, strict=strict).run()
    except (TypeError, ValueError) as e:
        logger.error(f"Error validando entrada: {e}")
        raise
    except (CaseNotMatched, InsufficientGd0):
        raise
    except Exception as e:
        logger.error(f"Error en el dibujo de 3-árbol: {e}", exc_info=True)
        raise RuntimeError(f"Fallo al dibujar 3-árbol: {e}") from e


if __name__ == "__main__":
    from graph_core import random_3tree

    for n in (4, 7, 20, 60):
        seq = random_3tree(n, seed=n)
        res = draw_3tree(seq, audit=True)
        print(f"n={n}: biarcos={res.biarcs} cota={res.bound} gd={res.notes['gd_histogram']}")

# graph_core.py
# Triangulaciones planas: sistema de rotación, trazado de caras, generadores
# (triangulaciones aleatorias, Kleetopes, 3-árboles planares) y enumeración exhaustiva.

import logging
import random
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]
Face = Tuple[int, int, int]

# Límites de tamaño (configurables)
MIN_VERTICES = 3
MAX_RANDOM_VERTICES = 5000
MAX_ENUM_VERTICES = 8


# -----------------------------
# Errores de dominio
# -----------------------------
class GraphFormatError(ValueError):
    """Texto .rot o .3t mal formado."""


class NonTriangularFace(ValueError):
    """Una cara trazada del sistema de rotación no es un triángulo."""


class EmbeddingInconsistent(ValueError):
    """Los dardos no se particionan en 2n-4 caras o la adyacencia no es simétrica."""


class AdjacentDegreeThree(ValueError):
    """Dos vértices de grado 3 son adyacentes: el pelado no está bien definido."""


class NotTriangulationAfterPeel(ValueError):
    """Eliminar los vértices de grado 3 no deja una triangulación."""


class SizeTooLarge(ValueError):
    """Tamaño fuera del alcance de la enumeración exhaustiva."""


class InvalidSequence(ValueError):
    """Secuencia de construcción de un 3-árbol inválida."""


# -----------------------------
# Validación
# -----------------------------
def validate_vertex_count(n: int, minimum: int = MIN_VERTICES,
                          maximum: int = MAX_RANDOM_VERTICES, name: str = "n") -> int:
    """Valida un número de vértices entero dentro de [minimum, maximum]."""
    if isinstance(n, bool) or not isinstance(n, int):
        raise TypeError(f"{name} debe ser int, recibido {type(n).__name__}")
    if not minimum <= n <= maximum:
        raise ValueError(f"{name} fuera de rango [{minimum}, {maximum}]: {n}")
    return n


def edge_key(u: int, v: int) -> Edge:
    """Clave normalizada de una arista no dirigida."""
    return (u, v) if u < v else (v, u)


def _normalize_face(face: Sequence[int]) -> Face:
    """Rota la cara para que empiece por su vértice mínimo, preservando el sentido."""
    k = face.index(min(face))
    return tuple(face[k:]) + tuple(face[:k])


# -----------------------------
# Triangulación plana
# -----------------------------
class PlaneTriangulation:
    """
    Grafo plano maximal dado por su sistema de rotación (sentido horario)
    y una cara exterior designada.

    La cara exterior es una terna ordenada (v1, v2, vn): v1v2 es la arista
    base de los órdenes canónicos y vn el último vértice.
    """

    def __init__(self, rotation: Dict[int, Sequence[int]], outer_face: Sequence[int]):
        self.rotation: Dict[int, Tuple[int, ...]] = {v: tuple(nbrs) for v, nbrs in rotation.items()}
        self.outer_face: Face = tuple(outer_face)
        self._index: Dict[int, Dict[int, int]] = {}
        for v, nbrs in self.rotation.items():
            if len(set(nbrs)) != len(nbrs):
                raise GraphFormatError(f"rotación de {v} repite vecinos: {nbrs}")
            if v in nbrs:
                raise GraphFormatError(f"lazo en el vértice {v}")
            self._index[v] = {u: i for i, u in enumerate(nbrs)}
        for v, nbrs in self.rotation.items():
            for u in nbrs:
                if u not in self._index or v not in self._index[u]:
                    raise EmbeddingInconsistent(f"adyacencia no simétrica: {v}-{u}")
        if len(self.outer_face) != 3 or len(set(self.outer_face)) != 3:
            raise GraphFormatError(f"cara exterior debe ser una terna, recibido {outer_face}")

    def __repr__(self) -> str:
        return f"PlaneTriangulation(n={self.n}, m={self.m}, outer={self.outer_face})"

    @property
    def n(self) -> int:
        return len(self.rotation)

    @cached_property
    def vertices(self) -> Tuple[int, ...]:
        return tuple(sorted(self.rotation))

    @cached_property
    def edges(self) -> Tuple[Edge, ...]:
        return tuple(sorted({edge_key(v, u) for v, nbrs in self.rotation.items() for u in nbrs}))

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int) -> Tuple[int, ...]:
        return self.rotation[v]

    def degree(self, v: int) -> int:
        return len(self.rotation[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._index.get(u, ())

    def succ(self, v: int, u: int) -> int:
        """Vecino que sigue a u en la rotación horaria de v."""
        nbrs = self.rotation[v]
        return nbrs[(self._index[v][u] + 1) % len(nbrs)]

    def pred(self, v: int, u: int) -> int:
        """Vecino que precede a u en la rotación horaria de v."""
        nbrs = self.rotation[v]
        return nbrs[(self._index[v][u] - 1) % len(nbrs)]

    def apexes(self, u: int, v: int) -> Tuple[int, int]:
        """Terceros vértices de las dos caras que contienen la arista uv."""
        return self.pred(u, v), self.succ(u, v)

    @cached_property
    def faces(self) -> Tuple[Face, ...]:
        return tuple(trace_faces(self))

    @cached_property
    def face_sets(self) -> FrozenSet[FrozenSet[int]]:
        return frozenset(frozenset(f) for f in self.faces)

    def is_face(self, vertices: Iterable[int]) -> bool:
        return frozenset(vertices) in self.face_sets

    def with_outer(self, outer_face: Sequence[int]) -> "PlaneTriangulation":
        """Misma triangulación con otra cara exterior (validada)."""
        g = PlaneTriangulation(self.rotation, outer_face)
        if not g.is_face(outer_face):
            raise ValueError(f"{tuple(outer_face)} no es una cara de la triangulación")
        return g

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(self.edges)
        return g


def trace_faces(g: PlaneTriangulation) -> List[Face]:
    """
    Traza las caras del sistema de rotación con la regla
    "invertir el dardo y tomar el sucesor en la rotación".

    Returns:
        Lista ordenada de caras orientadas (empiezan por su vértice mínimo)

    Raises:
        NonTriangularFace: Si alguna cara no tiene longitud 3
        EmbeddingInconsistent: Si el número de caras no es 2n-4
    """
    seen = set()
    faces: List[Face] = []
    for v in g.vertices:
        for u in g.rotation[v]:
            if (v, u) in seen:
                continue
            cycle = []
            a, b = v, u
            while (a, b) not in seen:
                seen.add((a, b))
                cycle.append(a)
                a, b = b, g.succ(b, a)
                if len(cycle) > 2 * g.m + 1:
                    raise EmbeddingInconsistent("recorrido de cara sin cierre")
            if (a, b) != (v, u):
                raise EmbeddingInconsistent(f"los dardos no forman ciclos desde {v}->{u}")
            if len(cycle) != 3:
                raise NonTriangularFace(f"cara de longitud {len(cycle)}: {cycle}")
            faces.append(_normalize_face(cycle))
    if g.n >= 3 and len(faces) != 2 * g.n - 4:
        raise EmbeddingInconsistent(f"se esperaban {2 * g.n - 4} caras, trazadas {len(faces)}")
    return sorted(faces)


def check_triangulation(g: PlaneTriangulation) -> PlaneTriangulation:
    """
    Verifica los invariantes de PlaneTriangulation: m = 3n-6, caras triangulares,
    grafo conexo y cara exterior presente entre las trazadas.
    """
    if g.n < MIN_VERTICES:
        raise ValueError(f"n fuera de rango [{MIN_VERTICES}, ...]: {g.n}")
    if g.m != 3 * g.n - 6:
        raise EmbeddingInconsistent(f"m={g.m} distinto de 3n-6={3 * g.n - 6}")
    trace_faces(g)
    if not g.is_face(g.outer_face):
        raise EmbeddingInconsistent(f"cara exterior {g.outer_face} no es una cara trazada")
    if not nx.is_connected(g.to_networkx()):
        raise EmbeddingInconsistent("grafo no conexo")
    return g


def is_three_connected(g: PlaneTriangulation) -> bool:
    """Comprueba 3-conexidad con networkx (para n >= 4)."""
    if g.n < 4:
        return False
    return nx.node_connectivity(g.to_networkx()) >= 3


# -----------------------------
# Inserción en caras
# -----------------------------
def _oriented_face(rotation: Dict[int, List[int]], a: int, b: int) -> Face:
    """Cara trazada que contiene el dardo a->b en una rotación mutable."""
    nb = rotation[b]
    c = nb[(nb.index(a) + 1) % len(nb)]
    return (a, b, c)


def _stack_into_face(rotation: Dict[int, List[int]], face: Face, z: int) -> None:
    """Inserta z (grado 3) dentro de la cara orientada (a, b, c)."""
    a, b, c = face
    for x, after in ((b, a), (c, b), (a, c)):
        nbrs = rotation[x]
        nbrs.insert(nbrs.index(after) + 1, z)
    rotation[z] = [a, c, b]


def _base_rotation(v1: int, v2: int, v3: int) -> Dict[int, List[int]]:
    return {v1: [v3, v2], v2: [v1, v3], v3: [v2, v1]}


def _attach_to_path(rotation: Dict[int, List[int]], path: List[int], a: int, b: int, v: int) -> List[int]:
    """
    Añade v cubriendo el subcamino path[a..b] del camino exterior y devuelve
    el nuevo camino exterior.
    """
    wa, wb = path[a], path[b]
    nbrs = rotation[wa]
    nbrs.insert(nbrs.index(path[a + 1]), v)
    for h in range(a + 1, b):
        nbrs = rotation[path[h]]
        nbrs.insert(nbrs.index(path[h - 1]) + 1, v)
    nbrs = rotation[wb]
    nbrs.insert(nbrs.index(path[b - 1]) + 1, v)
    rotation[v] = [path[h] for h in range(b, a - 1, -1)]
    return path[:a + 1] + [v] + path[b:]


# -----------------------------
# Generadores
# -----------------------------
def random_triangulation(n: int, seed: int = 42) -> PlaneTriangulation:
    """
    Genera una triangulación aleatoria por construcción canónica: cada vértice
    nuevo cubre un subcamino consecutivo aleatorio del camino exterior.

    Args:
        n: Número de vértices (4-5000)
        seed: Semilla del generador aislado

    Returns:
        PlaneTriangulation con cara exterior (1, 2, n)

    Raises:
        TypeError: Si n no es int
        ValueError: Si n fuera de rango
    """
    try:
        n = validate_vertex_count(n, minimum=4)
        rng = random.Random(seed)
        rotation = _base_rotation(1, 2, 3)
        path = [1, 3, 2]
        for v in range(4, n + 1):
            if v == n:
                a, b = 0, len(path) - 1
            else:
                a = rng.randrange(len(path) - 1)
                b = rng.randrange(a + 1, min(len(path), a + 1 + max(2, len(path) // 2)))
            path = _attach_to_path(rotation, path, a, b, v)
        g = PlaneTriangulation(rotation, (1, 2, n))
        logger.debug(f"Triangulación aleatoria n={n}, seed={seed}")
        return g
    except (TypeError, ValueError) as e:
        logger.error(f"Error validando parámetros: {e}")
        raise
    except Exception as e:
        logger.error(f"Error generando triangulación: {e}", exc_info=True)
        raise RuntimeError(f"Fallo al generar triangulación: {e}") from e


def kleetope(t: PlaneTriangulation) -> PlaneTriangulation:
    """
    Apila un vértice nuevo de grado 3 en cada cara de t.

    Los vértices nuevos reciben ids max(t)+1, ... en el orden de t.faces.
    La cara exterior resultante es (v1, v2, z) con z el vértice apilado
    en la cara exterior de t.
    """
    try:
        validate_vertex_count(t.n, minimum=4)
        rotation = {v: list(nbrs) for v, nbrs in t.rotation.items()}
        next_id = max(t.vertices) + 1
        outer_set = frozenset(t.outer_face)
        outer_vertex = None
        for face in t.faces:
            _stack_into_face(rotation, face, next_id)
            if frozenset(face) == outer_set:
                outer_vertex = next_id
            next_id += 1
        v1, v2, _ = t.outer_face
        g = PlaneTriangulation(rotation, (v1, v2, outer_vertex))
        logger.debug(f"Kleetope: {t.n} -> {g.n} vértices")
        return g
    except (TypeError, ValueError) as e:
        logger.error(f"Error validando triangulación base: {e}")
        raise
    except Exception as e:
        logger.error(f"Error construyendo Kleetope: {e}", exc_info=True)
        raise RuntimeError(f"Fallo al construir Kleetope: {e}") from e


def peel_degree_three(g: PlaneTriangulation) -> Tuple[PlaneTriangulation, Dict[int, Face]]:
    """
    Elimina todos los vértices de grado 3.

    Returns:
        (T, removed) donde removed asigna a cada vértice eliminado la terna
        ordenada de su cara contenedora en T

    Raises:
        AdjacentDegreeThree: Si dos vértices de grado 3 son adyacentes
        NotTriangulationAfterPeel: Si el resultado no es una triangulación
    """
    removed = [v for v in g.vertices if g.degree(v) == 3]
    removed_set = set(removed)
    for v in removed:
        for u in g.neighbors(v):
            if u in removed_set:
                raise AdjacentDegreeThree(f"vértices de grado 3 adyacentes: {v}-{u}")
    if not removed:
        return g, {}
    if g.n - len(removed) < 4:
        raise NotTriangulationAfterPeel(f"quedarían {g.n - len(removed)} vértices")
    rotation = {v: [u for u in nbrs if u not in removed_set]
                for v, nbrs in g.rotation.items() if v not in removed_set}
    outer = list(g.outer_face)
    for k, v in enumerate(outer):
        if v in removed_set:
            others = set(outer) - {v}
            outer[k] = next(u for u in g.neighbors(v) if u not in others)
    try:
        t = check_triangulation(PlaneTriangulation(rotation, tuple(outer)))
    except ValueError as e:
        raise NotTriangulationAfterPeel(str(e)) from e
    mapping = {v: tuple(sorted(g.neighbors(v))) for v in removed}
    for v, face in mapping.items():
        if not t.is_face(face):
            raise NotTriangulationAfterPeel(f"{v} no queda dentro de una cara de T: {face}")
    logger.debug(f"Pelado: {len(removed)} vértices de grado 3 eliminados")
    return t, mapping


# -----------------------------
# Subtriangulaciones
# -----------------------------
def enclosed_vertices(g: PlaneTriangulation, cycle: Iterable[int], seeds: Iterable[int]) -> FrozenSet[int]:
    """Vértices alcanzables desde seeds sin atravesar los vértices del ciclo."""
    wall = set(cycle)
    seen = {v for v in seeds if v not in wall}
    queue = deque(seen)
    while queue:
        v = queue.popleft()
        for u in g.neighbors(v):
            if u not in wall and u not in seen:
                seen.add(u)
                queue.append(u)
    return frozenset(seen)


def _wedge(g: PlaneTriangulation, c: int, first: int, last: int) -> List[int]:
    """Vecinos de c desde first hasta last en sentido horario, ambos incluidos."""
    out = [first]
    u = first
    while u != last:
        u = g.succ(c, u)
        out.append(u)
        if len(out) > g.degree(c):
            raise ValueError(f"{last} no es vecino de {c}")
    return out


def induced_triangulation(g: PlaneTriangulation, cycle: Sequence[int], inside: Iterable[int],
                          outer: Sequence[int],
                          apex: Optional[int] = None) -> Tuple[PlaneTriangulation, FrozenSet[Edge]]:
    """
    Triangulación formada por un ciclo de g y los vértices que encierra. Un
    ciclo de más de tres vértices se cierra por fuera con un abanico de
    cuerdas virtuales desde apex.

    Args:
        cycle: Vértices del ciclo en orden cíclico (cualquier sentido)
        inside: Vértices interiores, no vacío
        outer: Cara exterior (v1, v2, vn) del resultado
        apex: Vértice del ciclo del que salen las cuerdas (por defecto cycle[0])

    Returns:
        (triangulación, cuerdas virtuales)

    Raises:
        ValueError: Si el ciclo no encierra exactamente inside, una cuerda
            virtual ya existe o outer no es una cara del resultado
    """
    cycle = list(cycle)
    inside = frozenset(inside)
    if len(cycle) < 3 or len(set(cycle)) != len(cycle):
        raise ValueError(f"ciclo inválido: {cycle}")
    if not inside:
        raise ValueError("el ciclo no encierra ningún vértice")
    if apex is not None:
        k = cycle.index(apex)
        cycle = cycle[k:] + cycle[:k]
    m = len(cycle)
    members = set(cycle) | inside
    x = next((t for t, c in enumerate(cycle) if any(u in inside for u in g.neighbors(c))), None)
    if x is None:
        raise ValueError("ningún vértice del ciclo toca el interior")
    if not any(u in inside for u in _wedge(g, cycle[x], cycle[x - 1], cycle[(x + 1) % m])[1:-1]):
        cycle = [cycle[0]] + cycle[:0:-1]

    rotation: Dict[int, List[int]] = {}
    for v in inside:
        if any(u not in members for u in g.neighbors(v)):
            raise ValueError(f"el vértice interior {v} tiene vecinos fuera del ciclo")
        rotation[v] = list(g.neighbors(v))
    for t, c in enumerate(cycle):
        wedge = _wedge(g, c, cycle[t - 1], cycle[(t + 1) % m])
        if any(u not in members for u in wedge):
            raise ValueError(f"el ciclo no separa el interior en {c}")
        rotation[c] = wedge
    virtual = set()
    a = cycle[0]
    for c in cycle[2:m - 1]:
        rotation[a].append(c)
        rotation[c].append(a)
        virtual.add(edge_key(a, c))
    try:
        sub = check_triangulation(PlaneTriangulation(rotation, tuple(outer)))
    except GraphFormatError as e:
        raise ValueError(f"cuerda virtual repetida: {e}") from e
    logger.debug(f"Subtriangulación de {sub.n} vértices con {len(virtual)} cuerdas virtuales")
    return sub, frozenset(virtual)


# -----------------------------
# 3-árboles planares
# -----------------------------
@dataclass(frozen=True)
class ConstructionSequence:
    """Triángulo base y pasos (vértice nuevo, cara destino) de un 3-árbol planar."""
    base: Face
    steps: Tuple[Tuple[int, Face], ...] = ()

    @property
    def n(self) -> int:
        return 3 + len(self.steps)

    @property
    def order(self) -> Tuple[int, ...]:
        return tuple(self.base) + tuple(v for v, _ in self.steps)

    def validate(self) -> "ConstructionSequence":
        """
        Reproduce la secuencia y comprueba que cada cara destino existe.

        Raises:
            InvalidSequence: Si un vértice se repite o una cara no existe
        """
        if len(set(self.base)) != 3:
            raise InvalidSequence(f"base inválida: {self.base}")
        seen = set(self.base)
        faces = {frozenset(self.base)}
        for v, face in self.steps:
            if v in seen:
                raise InvalidSequence(f"vértice repetido: {v}")
            key = frozenset(face)
            if len(key) != 3 or key not in faces:
                raise InvalidSequence(f"{face} no es una cara al insertar {v}")
            a, b, c = face
            faces.remove(key)
            faces.update({frozenset((a, b, v)), frozenset((b, c, v)), frozenset((c, a, v))})
            seen.add(v)
        if sorted(seen) != list(range(1, self.n + 1)):
            raise InvalidSequence(f"los ids deben ser 1..{self.n}")
        return self

    def to_triangulation(self) -> PlaneTriangulation:
        """Construye el sistema de rotación del 3-árbol (cara exterior = base)."""
        self.validate()
        v1, v2, v3 = self.base
        rotation = _base_rotation(v1, v2, v3)
        oriented = {frozenset(self.base): _oriented_face(rotation, v1, v2)}
        for v, face in self.steps:
            a, b, c = oriented.pop(frozenset(face))
            _stack_into_face(rotation, (a, b, c), v)
            for child in ((a, b, v), (b, c, v), (c, a, v)):
                oriented[frozenset(child)] = child
        return PlaneTriangulation(rotation, (v1, v2, v3))


def random_3tree(n: int, seed: int = 42, max_gd: int = 3) -> ConstructionSequence:
    """
    Genera un 3-árbol planar aleatorio insertando cada vértice en una cara uniforme.

    Args:
        max_gd: Máximo de hijas con vértice por cara (3 = sin restricción)

    Raises:
        TypeError: Si n no es int
        ValueError: Si n o max_gd fuera de rango
    """
    try:
        n = validate_vertex_count(n, minimum=3)
        if max_gd not in (1, 2, 3):
            raise ValueError(f"max_gd fuera de rango [1, 3]: {max_gd}")
        rng = random.Random(seed)
        parent: List[Optional[int]] = [None]
        filled = [0]
        faces: List[Tuple[int, Face]] = [(0, (1, 2, 3))]
        steps = []
        for v in range(4, n + 1):
            allowed = [i for i, (fid, _) in enumerate(faces)
                       if parent[fid] is None or filled[parent[fid]] < max_gd]
            k = allowed[rng.randrange(len(allowed))]
            fid, (a, b, c) = faces[k]
            if parent[fid] is not None:
                filled[parent[fid]] += 1
            ids = range(len(parent), len(parent) + 3)
            parent.extend([fid] * 3)
            filled.extend([0] * 3)
            faces[k] = (ids[0], (a, b, v))
            faces.extend([(ids[1], (b, c, v)), (ids[2], (c, a, v))])
            steps.append((v, (a, b, c)))
        return ConstructionSequence((1, 2, 3), tuple(steps))
    except (TypeError, ValueError) as e:
        logger.error(f"Error validando parámetros: {e}")
        raise
    except Exception as e:
        logger.error(f"Error generando 3-árbol: {e}", exc_info=True)
        raise RuntimeError(f"Fallo al generar 3-árbol: {e}") from e


# -----------------------------
# Enumeración exhaustiva
# -----------------------------
def canonical_code(g: PlaneTriangulation) -> Tuple[int, ...]:
    """
    Código canónico del mapa plano: mínimo código BFS sobre todos los dardos
    raíz y ambas orientaciones. Dos triangulaciones son isomorfas si y solo
    si sus códigos coinciden (3-conexas: embebido único salvo espejo).
    """
    best: Optional[Tuple[int, ...]] = None
    for root in g.vertices:
        for first in g.neighbors(root):
            for step in (g.succ, g.pred):
                labels = {root: 0}
                entry = {root: first}
                queue = deque([root])
                code: List[int] = []
                while queue:
                    x = queue.popleft()
                    y = entry[x]
                    for _ in range(g.degree(x)):
                        if y not in labels:
                            labels[y] = len(labels)
                            entry[y] = x
                            queue.append(y)
                        code.append(labels[y])
                        y = step(x, y)
                    code.append(-1)
                candidate = tuple(code)
                if best is None or candidate < best:
                    best = candidate
    return best


def enumerate_triangulations(n: int) -> List[PlaneTriangulation]:
    """
    Un representante por clase de isomorfismo de grafos planos maximales con
    n vértices, generados por inserción canónica exhaustiva.

    Raises:
        SizeTooLarge: Si n > 8
    """
    if isinstance(n, int) and not isinstance(n, bool) and n > MAX_ENUM_VERTICES:
        raise SizeTooLarge(f"enumeración limitada a n <= {MAX_ENUM_VERTICES}: {n}")
    n = validate_vertex_count(n, minimum=4, maximum=MAX_ENUM_VERTICES)
    found: Dict[Tuple[int, ...], PlaneTriangulation] = {}

    def extend(rotation: Dict[int, List[int]], path: List[int], v: int) -> None:
        if v == n:
            rot = {x: list(nbrs) for x, nbrs in rotation.items()}
            _attach_to_path(rot, list(path), 0, len(path) - 1, v)
            g = PlaneTriangulation(rot, (1, 2, n))
            found.setdefault(canonical_code(g), g)
            return
        for a in range(len(path) - 1):
            for b in range(a + 1, len(path)):
                rot = {x: list(nbrs) for x, nbrs in rotation.items()}
                new_path = _attach_to_path(rot, list(path), a, b, v)
                extend(rot, new_path, v + 1)

    extend(_base_rotation(1, 2, 3), [1, 3, 2], 4)
    result = [found[k] for k in sorted(found)]
    logger.info(f"Enumeración n={n}: {len(result)} triangulaciones")
    return result


def named_triangulation(name: str) -> PlaneTriangulation:
    """Triangulaciones de referencia: k4, octahedron, icosahedron."""
    builders = {
        "k4": lambda: random_triangulation(4, seed=0),
        "octahedron": _octahedron,
        "icosahedron": _icosahedron,
    }
    if name not in builders:
        raise ValueError(f"triangulación desconocida: {name}")
    return builders[name]()


def _octahedron() -> PlaneTriangulation:
    # 1,2 y 6 forman la cara exterior; 3,4,5 el triángulo interior.
    rotation = _base_rotation(1, 2, 3)
    path = [1, 3, 2]
    path = _attach_to_path(rotation, path, 0, 1, 4)        # 4 sobre 1-3
    path = _attach_to_path(rotation, path, 1, 3, 5)        # 5 sobre 4-3-2
    _attach_to_path(rotation, path, 0, len(path) - 1, 6)   # 6 sobre 1-4-5-2
    return check_triangulation(PlaneTriangulation(rotation, (1, 2, 6)))


def _icosahedron() -> PlaneTriangulation:
    g = nx.icosahedral_graph()
    ok, emb = nx.check_planarity(g)
    if not ok:
        raise EmbeddingInconsistent("icosaedro no planar")
    # ids 0..11 de networkx renombrados a 1..12
    rotation = {v + 1: [u + 1 for u in emb.neighbors_cw_order(v)] for v in g}
    draft = PlaneTriangulation(rotation, (1, 2, 3))
    face = trace_faces(draft)[0]
    return check_triangulation(PlaneTriangulation(rotation, face))


# -----------------------------
# Formatos de texto
# -----------------------------
def format_rot(g: PlaneTriangulation) -> str:
    """Serializa al formato .rot (n, cara exterior, rotaciones horarias)."""
    lines = [str(g.n), "outer " + " ".join(map(str, g.outer_face))]
    lines += [f"{v}: " + " ".join(map(str, g.rotation[v])) for v in g.vertices]
    return "\n".join(lines) + "\n"


def parse_rot(text: str) -> PlaneTriangulation:
    """
    Lee el formato .rot y valida la triangulación.

    Raises:
        GraphFormatError: Si el texto está mal formado o repite dardos
    """
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
    try:
        if len(lines) < 2:
            raise GraphFormatError("se esperan al menos 2 líneas")
        n = int(lines[0])
        head, *outer = lines[1].split()
        if head != "outer" or len(outer) != 3:
            raise GraphFormatError(f"línea de cara exterior inválida: {lines[1]}")
        rotation: Dict[int, List[int]] = {}
        for ln in lines[2:]:
            v, _, rest = ln.partition(":")
            v = int(v)
            if v in rotation:
                raise GraphFormatError(f"vértice repetido: {v}")
            rotation[v] = [int(x) for x in rest.split()]
        if len(rotation) != n:
            raise GraphFormatError(f"se esperaban {n} rotaciones, leídas {len(rotation)}")
        return check_triangulation(PlaneTriangulation(rotation, tuple(int(x) for x in outer)))
    except GraphFormatError:
        raise
    except ValueError as e:
        raise GraphFormatError(f"formato .rot inválido: {e}") from e


def format_3t(seq: ConstructionSequence) -> str:
    """Serializa al formato .3t."""
    lines = ["base " + " ".join(map(str, seq.base))]
    lines += [f"{v} : " + " ".join(map(str, face)) for v, face in seq.steps]
    return "\n".join(lines) + "\n"


def parse_3t(text: str) -> ConstructionSequence:
    """Lee el formato .3t ("base a b c" y líneas "v : a b c")."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
    try:
        head, *base = lines[0].split()
        if head != "base" or len(base) != 3:
            raise GraphFormatError(f"línea base inválida: {lines[0]}")
        steps = []
        for ln in lines[1:]:
            v, _, rest = ln.partition(":")
            face = tuple(int(x) for x in rest.split())
            if len(face) != 3:
                raise GraphFormatError(f"paso inválido: {ln}")
            steps.append((int(v), face))
        return ConstructionSequence(tuple(int(x) for x in base), tuple(steps)).validate()
    except GraphFormatError:
        raise
    except (IndexError, ValueError) as e:
        raise GraphFormatError(f"formato .3t inválido: {e}") from e

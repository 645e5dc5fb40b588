# cli.py
# Línea de comandos: generar grafos, dibujar, validar, oráculo exacto,
# barridos estadísticos y renderizado SVG.
#
# Códigos de salida: 0 correcto, 2 error de lectura o parámetros,
# 3 fallo de validación o de cota.

import argparse
import json
import logging
import os
import random
import sys
import time
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from algo_3tree import GdTooHigh, draw_3tree, draw_3tree_gd2
from algo_general import LAST_MODES, draw_triangulation
from algo_kleetope import draw_degree3_aware, kleetope_bound
from canonical_order import CaseNotMatched
from diagram import (
    DEFAULT_CHI, BoundExceeded, DiagramContext, DrawResult, format_arc, parse_arc, validate,
    validate_chi,
)
from graph_core import (
    MAX_ENUM_VERTICES, AdjacentDegreeThree, ConstructionSequence, EmbeddingInconsistent, InvalidSequence,
    NonTriangularFace, NotTriangulationAfterPeel, PlaneTriangulation, enumerate_triangulations, format_3t,
    format_rot, kleetope, named_triangulation, parse_3t, parse_rot, random_3tree, random_triangulation,
)
from guards import validate_computational_cost
from oracle import DEFAULT_MAX_N, solve_min_biarcs
from svg_render import save_svg

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_FAILED = 3
ALGOS = ("general", "kleetope", "3tree", "gd2")
SEQUENCE_ALGOS = ("3tree", "gd2")
OUTER_ALGOS = ("general",)
# Errores de la entrada que solo aparecen al ejecutar el algoritmo
INPUT_ERRORS = (AdjacentDegreeThree, NonTriangularFace, EmbeddingInconsistent, NotTriangulationAfterPeel,
                InvalidSequence)


class InputError(ValueError):
    """Entrada ilegible o parámetros inválidos (código 2)."""


# -----------------------------
# Entrada y salida
# -----------------------------
def _write(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise InputError(f"no se puede leer {path}: {e}") from e


def _parse_outer(text: Optional[str]) -> Optional[Tuple[int, int, int]]:
    if text is None:
        return None
    try:
        outer = tuple(int(x) for x in text.replace(",", " ").split())
    except ValueError as e:
        raise InputError(f"--outer inválido: {text}") from e
    if len(outer) != 3:
        raise InputError(f"--outer necesita 3 vértices: {text}")
    return outer


def load_triangulation(source: str, seed: int = 42) -> PlaneTriangulation:
    """
    Lee una triangulación: "named:k4", "random:N" (con la semilla dada) o un
    fichero .rot.

    Raises:
        InputError: Si la fuente no se puede leer o interpretar
    """
    try:
        if source.startswith("named:"):
            return named_triangulation(source[len("named:"):])
        if source.startswith("random:"):
            return random_triangulation(int(source[len("random:"):]), seed=seed)
        return parse_rot(_read(source))
    except InputError:
        raise
    except ValueError as e:
        raise InputError(f"{source}: {e}") from e


def load_sequence(source: str, seed: int = 42) -> ConstructionSequence:
    """Lee una secuencia de 3-árbol: "random:N" o un fichero .3t."""
    try:
        if source.startswith("random:"):
            return random_3tree(int(source[len("random:"):]), seed=seed)
        return parse_3t(_read(source))
    except InputError:
        raise
    except ValueError as e:
        raise InputError(f"{source}: {e}") from e


def run_algorithm(algo: str, source, chi=DEFAULT_CHI, outer=None, audit: bool = False,
                  last_mode: str = "auto") -> DrawResult:
    """Ejecuta un algoritmo sobre una triangulación o secuencia ya cargada."""
    if algo == "general":
        return draw_triangulation(source, chi=chi, outer=outer, last_mode=last_mode, audit=audit)
    if algo == "kleetope":
        return draw_degree3_aware(source, audit=audit)
    if algo == "3tree":
        return draw_3tree(source, audit=audit)
    if algo == "gd2":
        return draw_3tree_gd2(source, audit=audit)
    raise InputError(f"algoritmo desconocido: {algo}")


def _report_failure(result: DrawResult) -> None:
    print(f"FALLO {result.algorithm}: {result.biarcs} biarcos, cota {result.bound}", file=sys.stderr)
    print(result.report.summary(), file=sys.stderr)


# -----------------------------
# Subcomandos
# -----------------------------
def cmd_draw(args: argparse.Namespace) -> int:
    """Dibuja la entrada, escribe el .arc (y el SVG) y devuelve el código de salida."""
    try:
        if args.algo in SEQUENCE_ALGOS:
            source = load_sequence(args.input, args.seed)
        else:
            source = load_triangulation(args.input, args.seed)
        outer = _parse_outer(args.outer)
        if outer is not None and args.algo not in OUTER_ALGOS:
            raise InputError(f"--outer solo se admite con --algo general, no con {args.algo}")
        chi = validate_chi(args.chi)
    except (InputError, ValueError) as e:
        print(f"error de entrada: {e}", file=sys.stderr)
        return EXIT_PARSE
    try:
        result = run_algorithm(args.algo, source, chi=chi, outer=outer,
                               audit=args.audit, last_mode=args.last_mode)
    except INPUT_ERRORS as e:
        print(f"error de entrada: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_PARSE
    except (GdTooHigh, CaseNotMatched, BoundExceeded) as e:
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_FAILED
    except ValueError as e:
        print(f"entrada no admitida por {args.algo}: {e}", file=sys.stderr)
        return EXIT_FAILED
    if not result.passed:
        _report_failure(result)
        return EXIT_FAILED
    if args.trace:
        for line in result.trace():
            print(line)
    _write(args.out, format_arc(result.diagram))
    if args.svg:
        save_svg(result.diagram, args.svg)
    print(f"algo={result.algorithm} n={len(result.diagram.vertices)} biarcs={result.biarcs} "
          f"bound={result.bound}", file=sys.stderr if args.out in (None, "-") else sys.stdout)
    return EXIT_OK


def cmd_gen(args: argparse.Namespace) -> int:
    """Genera grafos de forma determinista por semilla."""
    try:
        if args.kind == "tri":
            _write(args.out, format_rot(random_triangulation(args.n, seed=args.seed)))
        elif args.kind == "kleetope":
            if args.base is not None:
                base = load_triangulation(args.base if ":" in args.base or os.path.exists(args.base)
                                          else f"named:{args.base}", args.seed)
            else:
                base = random_triangulation(args.n, seed=args.seed)
            _write(args.out, format_rot(kleetope(base)))
        elif args.kind == "3tree":
            _write(args.out, format_3t(random_3tree(args.n, seed=args.seed, max_gd=args.max_gd)))
        else:
            cost = validate_computational_cost("enumerate", args.n)
            if not cost['allowed']:
                raise InputError(cost['warning'])
            os.makedirs(args.out_dir, exist_ok=True)
            graphs = enumerate_triangulations(args.n)
            for i, g in enumerate(graphs, start=1):
                _write(os.path.join(args.out_dir, f"tri_n{args.n}_{i}.rot"), format_rot(g))
            print(f"{len(graphs)} triangulaciones con n={args.n} en {args.out_dir}")
        return EXIT_OK
    except (InputError, ValueError, TypeError) as e:
        print(f"parámetros inválidos: {e}", file=sys.stderr)
        return EXIT_PARSE


def cmd_validate(args: argparse.Namespace) -> int:
    """Valida un fichero .arc (contra el grafo si se da)."""
    try:
        d = parse_arc(_read(args.input))
        edges = load_triangulation(args.graph).edges if args.graph else None
    except (InputError, ValueError) as e:
        print(f"error de entrada: {e}", file=sys.stderr)
        return EXIT_PARSE
    report = validate(d, DiagramContext.final(edges))
    if not report.passed:
        print(report.summary(), file=sys.stderr)
        return EXIT_FAILED
    print(f"PASS biarcs={d.biarc_count}")
    return EXIT_OK


def cmd_oracle(args: argparse.Namespace) -> int:
    """Mínimo exacto de biarcos y un diagrama testigo."""
    try:
        g = load_triangulation(args.input, args.seed)
        cost = validate_computational_cost("oracle", g.n)
        if g.n > args.max_n or not cost['allowed']:
            raise InputError(f"n={g.n} demasiado grande para el oráculo (máx {args.max_n})")
    except InputError as e:
        print(f"error de entrada: {e}", file=sys.stderr)
        return EXIT_PARSE
    result = solve_min_biarcs(g, max_n=args.max_n)
    print(f"minimum={result.minimum} explored={result.explored}")
    _write(args.out, format_arc(result.witness))
    return EXIT_OK


def cmd_render(args: argparse.Namespace) -> int:
    """Convierte un .arc en SVG."""
    try:
        d = parse_arc(_read(args.input))
    except (InputError, ValueError) as e:
        print(f"error de entrada: {e}", file=sys.stderr)
        return EXIT_PARSE
    save_svg(d, args.out, unit=args.unit)
    return EXIT_OK


def _sweep_instances(algo: str, lo: int, hi: int, count: int, seed: int,
                     enum_bases: bool) -> List[Tuple[int, Callable[[], object]]]:
    """Instancias del barrido: (semilla, constructor) con toda la aleatoriedad derivada de seed."""
    rng = random.Random(seed)
    if algo == "kleetope" and enum_bases:
        return [(k * 1000 + i, (lambda g=g: kleetope(g)))
                for k in range(lo, hi + 1) for i, g in enumerate(enumerate_triangulations(k))]
    instances = []
    for _ in range(count):
        n, s = rng.randint(lo, hi), rng.randrange(2 ** 31)
        if algo == "general":
            instances.append((s, lambda n=n, s=s: random_triangulation(n, seed=s)))
        elif algo == "kleetope":
            instances.append((s, lambda n=n, s=s: kleetope(random_triangulation(n, seed=s))))
        elif algo == "3tree":
            instances.append((s, lambda n=n, s=s: random_3tree(n, seed=s)))
        else:
            instances.append((s, lambda n=n, s=s: random_3tree(n, seed=s, max_gd=2)))
    return instances


def sweep(algo: str, lo: int, hi: int, count: int, seed: int = 42, chi=DEFAULT_CHI,
          audit: bool = False, enum_bases: bool = False) -> List[Dict[str, object]]:
    """
    Ejecuta el algoritmo sobre instancias aleatorias (o Kleetopes de bases
    enumeradas) y devuelve una fila por instancia.
    """
    rows = []
    for s, build in _sweep_instances(algo, lo, hi, count, seed, enum_bases):
        source = build()
        n = source.n
        start = time.perf_counter()
        try:
            result = run_algorithm(algo, source, chi=chi, audit=audit)
            row = {"seed": s, "n": n, "biarcs": result.biarcs, "bound": result.bound,
                   "passed": result.passed}
            if algo == "general":
                row["ledger_total"] = str(result.ledger.total)
            if algo == "kleetope" and n >= 8 and n % 3 == 2:
                row["kleetope_bound"] = kleetope_bound(n)
                row["passed"] = row["passed"] and result.biarcs <= row["kleetope_bound"]
        except (ValueError, RuntimeError) as e:
            row = {"seed": s, "n": n, "biarcs": None, "bound": None, "passed": False, "error": str(e)}
        row["seconds"] = round(time.perf_counter() - start, 6)
        rows.append(row)
    return rows


def cmd_sweep(args: argparse.Namespace) -> int:
    """Barrido estadístico con informe JSON; código 3 si falla alguna instancia."""
    try:
        lo, hi = (int(x) for x in args.n_range.split(":"))
        if lo > hi:
            raise InputError(f"rango vacío: {args.n_range}")
        if args.enum_bases and hi > MAX_ENUM_VERTICES:
            raise InputError(f"--enum-bases admite n ≤ {MAX_ENUM_VERTICES}")
        chi = validate_chi(args.chi)
        cost = validate_computational_cost("sweep", hi, args.count)
        if not cost['allowed']:
            raise InputError(cost['warning'])
    except (InputError, ValueError) as e:
        print(f"parámetros inválidos: {e}", file=sys.stderr)
        return EXIT_PARSE
    rows = sweep(args.algo, lo, hi, args.count, args.seed, chi=chi, audit=args.audit,
                 enum_bases=args.enum_bases)
    failed = [r for r in rows if not r["passed"]]
    summary = {"algo": args.algo, "instances": len(rows), "failed": len(failed), "rows": rows}
    _write(args.out, json.dumps(summary, indent=2) + "\n")
    for r in failed:
        print(f"FALLO seed={r['seed']} n={r['n']} biarcs={r['biarcs']} bound={r['bound']}", file=sys.stderr)
    return EXIT_FAILED if failed else EXIT_OK


# -----------------------------
# Parser
# -----------------------------
def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="arcdiagrams", description="Diagramas de arcos monótonos")
    parser.add_argument("--quiet", action="store_true", help="Solo avisos y errores en el log")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("draw", help="Dibuja una triangulación o un 3-árbol")
    p.add_argument("input", help='Fichero .rot/.3t, "named:NOMBRE" o "random:N"')
    p.add_argument("--algo", choices=ALGOS, default="general")
    p.add_argument("--chi", default=str(DEFAULT_CHI), help="χ en (0, 1/5]")
    p.add_argument("--outer", help="Cara exterior v1,v2,vn")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--last-mode", choices=LAST_MODES, default="auto")
    p.add_argument("--out", help="Fichero .arc (por defecto stdout)")
    p.add_argument("--svg", help="Fichero SVG")
    p.add_argument("--trace", action="store_true", help="Imprime el registro de pasos")
    p.add_argument("--audit", action="store_true", help="Valida tras cada paso")
    p.set_defaults(func=cmd_draw)

    p = sub.add_parser("gen", help="Genera grafos")
    p.add_argument("--kind", choices=("tri", "kleetope", "3tree", "enum"), default="tri")
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--base", help="Base del Kleetope: fichero .rot o nombre (k4, octahedron, icosahedron)")
    p.add_argument("--max-gd", type=int, default=3, help="Máximo gd para --kind 3tree")
    p.add_argument("--out", help="Fichero de salida (por defecto stdout)")
    p.add_argument("--out-dir", default=".", help="Directorio para --kind enum")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("validate", help="Valida un fichero .arc")
    p.add_argument("input")
    p.add_argument("--graph", help="Triangulación cuyas aristas debe dibujar")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("oracle", help="Mínimo exacto de biarcos (n ≤ 7)")
    p.add_argument("input")
    p.add_argument("--max-n", type=int, default=DEFAULT_MAX_N)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--out", help="Fichero .arc del testigo (por defecto stdout)")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("sweep", help="Barrido sobre instancias aleatorias")
    p.add_argument("--algo", choices=ALGOS, default="general")
    p.add_argument("--n-range", default="10:100", help="LO:HI")
    p.add_argument("--count", type=int, default=50)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--chi", default=str(DEFAULT_CHI))
    p.add_argument("--enum-bases", action="store_true",
                   help="Kleetopes de todas las bases enumeradas con n en el rango")
    p.add_argument("--audit", action="store_true")
    p.add_argument("--out", help="Informe JSON (por defecto stdout)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("render", help="Convierte un .arc en SVG")
    p.add_argument("input")
    p.add_argument("--out", required=True)
    p.add_argument("--unit", type=int, default=40)
    p.set_defaults(func=cmd_render)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_PARSE if e.code else EXIT_OK
    logging.basicConfig(level=logging.INFO,
                        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s')
    if args.quiet:
        logging.getLogger().setLevel(logging.WARNING)
    try:
        return args.func(args)
    except Exception as e:
        logger.error(f"Error inesperado en {args.command}: {e}", exc_info=True)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())

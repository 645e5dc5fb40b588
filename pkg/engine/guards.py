# guards.py
# Límites de tiempo y de coste para la CLI y el panel Streamlit:
# evitan lanzar búsquedas exhaustivas o barridos demasiado grandes.

import functools
import logging
import math
import signal
import threading
from contextlib import contextmanager
from typing import Any, Callable, Dict, Optional

from graph_core import MAX_ENUM_VERTICES, MAX_RANDOM_VERTICES

logger = logging.getLogger(__name__)

MAX_ORACLE_VERTICES = 7
MAX_SWEEP_WORK = 200_000
KINDS = ("draw", "oracle", "enumerate", "sweep")


# -----------------------------
# Timeout
# -----------------------------
class OperationTimeout(TimeoutError):
    """La operación superó su tiempo límite."""


def _alarm_handler(signum, frame):
    raise OperationTimeout("Operación excedió el tiempo límite")


def timeout(seconds: int = 30):
    """
    Decorator que limita el tiempo de ejecución de una función.

    NOTA: Solo funciona en el main thread. En threads secundarios (como los
    de Streamlit) ejecuta la función sin límite.

    Raises:
        OperationTimeout: Si la función no termina a tiempo (solo main thread)
    """
    def decorator(func: Callable) -> Callable:
        @functools.wraps(func)
        def wrapper(*args, **kwargs) -> Any:
            if threading.current_thread() is not threading.main_thread():
                logger.debug(f"{func.__name__}: thread secundario, timeout desactivado")
                return func(*args, **kwargs)
            with time_limit(seconds):
                return func(*args, **kwargs)
        return wrapper
    return decorator


@contextmanager
def time_limit(seconds: int):
    """
    Context manager que interrumpe el bloque tras `seconds` segundos.

    Raises:
        OperationTimeout: Si el bloque excede el tiempo
        ValueError: Si seconds no es positivo
    """
    if seconds <= 0:
        raise ValueError(f"seconds debe ser positivo: {seconds}")
    old_handler = signal.signal(signal.SIGALRM, _alarm_handler)
    signal.alarm(seconds)
    try:
        yield
    finally:
        signal.alarm(0)
        signal.signal(signal.SIGALRM, old_handler)


# -----------------------------
# Validación de recursos
# -----------------------------
def estimate_cost(kind: str, n: int, count: int = 1) -> float:
    """
    Coste normalizado (1.0 = límite) de una operación.

    Args:
        kind: "draw", "oracle", "enumerate" o "sweep"
        n: Número de vértices (máximo del barrido)
        count: Instancias del barrido
    """
    if kind not in KINDS:
        raise ValueError(f"tipo de operación desconocido: {kind}")
    if kind == "oracle":
        return math.factorial(n) / math.factorial(MAX_ORACLE_VERTICES)
    if kind == "enumerate":
        return n / MAX_ENUM_VERTICES
    if kind == "draw":
        return n / MAX_RANDOM_VERTICES
    return count * n / MAX_SWEEP_WORK


def validate_computational_cost(kind: str, n: int, count: int = 1,
                                warn_threshold: float = 0.7) -> Dict[str, Optional[object]]:
    """
    Valida el coste estimado de una operación.

    Returns:
        Dict con 'allowed' (bool), 'warning' (str opcional) y 'cost' (float)
    """
    cost = estimate_cost(kind, n, count)
    result: Dict[str, Optional[object]] = {'allowed': cost <= 1.0, 'cost': cost, 'warning': None}
    if cost > 1.0:
        result['warning'] = f"⛔ Operación bloqueada: {kind} con n={n} excede los límites"
    elif cost > warn_threshold:
        result['warning'] = f"⚠️ Advertencia: operación costosa (costo: {cost:.0%})"
    if result['warning']:
        logger.warning(result['warning'])
    return result

"""
Inversione numerica della trasformata di Laplace con contorno di Talbot fisso.

Contorno di Weideman-Trefethen:
    s(θ) = (N/t)·(-0.6122 + 0.5017·θ·cot(0.6407·θ) + 0.2645·iθ),  θ ∈ (-π, π)
regola dei trapezi con N nodi ai punti medi (θ = 0 non viene mai campionato).
"""
import logging
import math
import sys
from typing import Callable

import numpy as np

from errors import DomainError, InversionError, RangeError

logger = logging.getLogger(__name__)

_SIGMA = -0.6122
_MU = 0.5017
_NU = 0.6407
_BETA = 0.2645

LOG_FLOAT_MAX = math.log(sys.float_info.max)


def talbot_contour(nodes: int, t: float):
    """
    Nodi e derivate del contorno di Talbot.

    Args:
        nodes: Numero di nodi N (>= 2)
        t: Istante di inversione (> 0)

    Returns:
        Coppia (s, ds/dθ) come array complessi di lunghezza N
    """
    theta = -math.pi + (np.arange(nodes) + 0.5) * (2.0 * math.pi / nodes)
    scale = nodes / t
    cot = 1.0 / np.tan(_NU * theta)
    s = scale * (_SIGMA + _MU * theta * cot + 1j * _BETA * theta)
    ds = scale * (_MU * cot - _MU * _NU * theta / np.sin(_NU * theta) ** 2 + 1j * _BETA)
    return s, ds


def talbot_inversion(
    transform: Callable[[np.ndarray], np.ndarray],
    t: float,
    nodes: int = 32,
    shift: float = 0.0,
) -> float:
    """
    Calcola f(t) a partire da F(s) = L[f](s).

    Args:
        transform: F(s), vettorializzata su array complessi
        t: Istante (> 0)
        nodes: Numero di nodi del contorno
        shift: Ascissa di traslazione (F viene valutata in s + shift)

    Returns:
        Stima reale di f(t)

    Raises:
        InversionError: Se la trasformata restituisce campioni non finiti
        RangeError: Se |f(t)| supera il massimo double (shift grandi)
    """
    if not (t > 0 and math.isfinite(t)):
        raise DomainError(f"l'inversione richiede t > 0, ricevuto t={t}")
    if nodes < 2:
        raise DomainError(f"numero di nodi insufficiente: {nodes}")

    s, ds = talbot_contour(nodes, t)
    with np.errstate(all="ignore"):
        values = np.asarray(transform(s + shift), dtype=complex)
        integrand = np.exp(s * t) * values * ds

    if not np.all(np.isfinite(integrand)):
        bad = int(np.count_nonzero(~np.isfinite(integrand)))
        raise InversionError(f"{bad} campioni non finiti sul contorno di Talbot (t={t})")

    # (1/2πi)·(2π/N)·Σ = Im(Σ)/N
    partial = float(np.sum(integrand).imag) / nodes
    if partial == 0.0:
        return 0.0
    # e^{shift·t} moltiplicato in scala logaritmica
    log_magnitude = shift * t + math.log(abs(partial))
    if log_magnitude > LOG_FLOAT_MAX:
        raise RangeError(
            f"f(t) non rappresentabile in doppia precisione: log|f({t})| ≈ {log_magnitude:.4g}",
            (-math.inf, LOG_FLOAT_MAX),
        )
    result = math.copysign(math.exp(log_magnitude), partial)
    logger.debug(f"Talbot: t={t}, N={nodes}, shift={shift}, valore={result:.6e}")
    return result

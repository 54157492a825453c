"""
Oracolo di Laplace: inversione numerica a 64 nodi e trasformate degli operatori.
"""
import logging
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

import config
from errors import DomainError
from operators.grid import NormalizationFn, OperatorKind
from special.talbot import talbot_inversion

logger = logging.getLogger(__name__)

Transform = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class LaplaceQuery:
    """
    Attributes:
        transform: F(s), vettorializzata su array complessi
        abscissa: Ascissa di convergenza (F analitica per Re s > abscissa)
        t: Istante di inversione (> 0)
    """

    transform: Transform
    abscissa: float
    t: float

    def __post_init__(self):
        if not (self.t > 0 and math.isfinite(self.t)):
            raise DomainError(f"l'inversione richiede t > 0, ricevuto t={self.t}")
        if not math.isfinite(self.abscissa):
            raise DomainError(f"ascissa non finita: {self.abscissa}")


def laplace_invert(q: LaplaceQuery, nodes: int = config.LAPLACE_NODES) -> float:
    """
    f(t) dal contorno di Talbot fisso, traslato oltre l'ascissa se positiva.

    Raises:
        InversionError: Se la trasformata produce campioni non finiti
    """
    shift = max(0.0, q.abscissa)
    return talbot_inversion(q.transform, q.t, nodes=nodes, shift=shift)


# === TRASFORMATE DEGLI OPERATORI ===

def _rate(alpha: float) -> float:
    if not (0.0 < alpha < 1.0):
        raise DomainError(f"l'ordine deve stare in (0, 1), ricevuto alpha={alpha}")
    return alpha / (1.0 - alpha)


def cf_transform(alpha: float, norm: NormalizationFn, f_tilde: Transform, f0: float) -> Transform:
    """L[CF f](s) = M/(1-α)·(s f̃ - f(0))/(s + α/(1-α))."""
    rate = _rate(alpha)
    scale = norm(alpha) / (1.0 - alpha)
    return lambda s: scale * (s * f_tilde(s) - f0) / (s + rate)


def abc_transform(alpha: float, norm: NormalizationFn, f_tilde: Transform, f0: float) -> Transform:
    """L[ABC f](s) = B/(1-α)·(s^α f̃ - s^{α-1} f(0))/(s^α + α/(1-α))."""
    rate = _rate(alpha)
    scale = norm(alpha) / (1.0 - alpha)
    return lambda s: scale * (s ** alpha * f_tilde(s) - s ** (alpha - 1.0) * f0) / (s ** alpha + rate)


def caputo_transform(alpha: float, f_tilde: Transform, f0: float) -> Transform:
    """L[^C D^α f](s) = s^α f̃ - s^{α-1} f(0)."""
    _rate(alpha)
    return lambda s: s ** alpha * f_tilde(s) - s ** (alpha - 1.0) * f0


def linear_solution_transform(
    kind: OperatorKind, alpha: float, norm: NormalizationFn, lam: float, y0: float
) -> Transform:
    """
    ỹ(s) per D^α y = λ y, y(0) = y0.

    CF:     ỹ = k y0 / ((k - λ) s - λ r)               k = M/(1-α), r = α/(1-α)
    ABC:    ỹ = k y0 s^{α-1} / ((k - λ) s^α - λ r)     k = B/(1-α)
    Caputo: ỹ = y0 s^{α-1} / (s^α - λ)
    """
    kind = OperatorKind(kind)
    rate = _rate(alpha)
    if kind == OperatorKind.CAPUTO_DERIV:
        return lambda s: y0 * s ** (alpha - 1.0) / (s ** alpha - lam)
    k = norm(alpha) / (1.0 - alpha)
    if abs(k - lam) < 1e-14:
        raise DomainError(f"λ = M/(1-α) = {k}: l'equazione lineare è degenere")
    if kind == OperatorKind.CF_DERIV:
        return lambda s: k * y0 / ((k - lam) * s - lam * rate)
    if kind == OperatorKind.ABC_DERIV:
        return lambda s: k * y0 * s ** (alpha - 1.0) / ((k - lam) * s ** alpha - lam * rate)
    raise DomainError(f"nessuna soluzione lineare per {kind.value}")


def linear_solution_abscissa(
    kind: OperatorKind, alpha: float, norm: NormalizationFn, lam: float
) -> float:
    """Ascissa di convergenza di ỹ: 0 per i decadimenti, il polo reale positivo altrimenti."""
    kind = OperatorKind(kind)
    rate = _rate(alpha)
    if kind == OperatorKind.CAPUTO_DERIV:
        return lam ** (1.0 / alpha) if lam > 0 else 0.0
    k = norm(alpha) / (1.0 - alpha)
    pole = lam * rate / (k - lam)
    if pole <= 0:
        return 0.0
    return pole if kind == OperatorKind.CF_DERIV else pole ** (1.0 / alpha)


def linear_solution_query(
    kind: OperatorKind, alpha: float, norm: NormalizationFn, lam: float, y0: float, t: float
) -> LaplaceQuery:
    transform = linear_solution_transform(kind, alpha, norm, lam, y0)
    # il contorno deve lasciare il polo strettamente a sinistra
    abscissa = linear_solution_abscissa(kind, alpha, norm, lam)
    return LaplaceQuery(transform, abscissa + 1.0 if abscissa > 0 else 0.0, t)

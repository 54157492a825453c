"""
Integrali frazionari su griglia: Riemann-Liouville e Prabhakar.

L'integrale di Prabhakar ha due cammini indipendenti:
    - diretto: pesi dalle primitive esatte del nucleo (e_{β+1}, e_{β+2})
    - serie:   Σ_k (γ)_k ω^k / k! · J^{αk+β} f
"""
import logging
import math
from dataclasses import dataclass

import numpy as np

import config
from errors import ConvergenceError, DomainError
from operators.grid import GridFunction
from operators.quadrature import power_weights, weights_from_antiderivatives
from special.prabhakar import prabhakar_antiderivative
from special.series import PrabhakarParams, series_truncation
from special.summation import CompensatedArraySum

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class SeriesResult:
    """Esito di un cammino a serie, con diagnostica di convergenza."""

    grid: GridFunction
    K: int
    last_term: float
    max_term: float

    @property
    def values(self) -> np.ndarray:
        return self.grid.values


def fractional_integral_values(values: np.ndarray, sigma: float, h: float) -> np.ndarray:
    """J^σ sui campioni; σ = 0 è l'identità."""
    if sigma == 0.0:
        return np.array(values, dtype=float)
    return power_weights(float(sigma), float(h), len(values) - 1).apply(values)


def rl_integral(f: GridFunction, sigma: float) -> GridFunction:
    """
    Integrale di Riemann-Liouville J^σ f sulla stessa griglia.

    Args:
        f: Funzione campionata
        sigma: Ordine (> 0)

    Returns:
        GridFunction con J^σ f, nulla nel primo nodo
    """
    if not (sigma > 0 and math.isfinite(sigma)):
        raise DomainError(f"l'integrale RL richiede sigma > 0, ricevuto {sigma}")
    return f.with_values(fractional_integral_values(f.values, sigma, f.h), operator=f"J^{sigma:g}")


def _check_origin(f: GridFunction, a: float) -> None:
    if abs(a - f.a) > 1e-12 * max(1.0, abs(a)):
        raise DomainError(f"la griglia parte da {f.a}, estremo inferiore richiesto a={a}")


def prabhakar_integral(f: GridFunction, p: PrabhakarParams, a: float = None) -> GridFunction:
    """
    Integrale di Prabhakar per quadratura prodotto con il nucleo di Prabhakar.

    Il nucleo viene integrato esattamente su ogni cella tramite le sue primitive
    e_{β+1}(ω; u) e e_{β+2}(ω; u), quindi la singolarità u^{β-1} non viene mai valutata.
    """
    p.require_valid()
    a = f.a if a is None else a
    _check_origin(f, a)

    lags = f.h * np.arange(f.n + 1)
    k1 = np.array([prabhakar_antiderivative(p, u, 1) for u in lags])
    k2 = np.array([prabhakar_antiderivative(p, u, 2) for u in lags])
    weights = weights_from_antiderivatives(k1, k2, f.h)
    logger.debug(f"Integrale di Prabhakar diretto: p={p.as_tuple()}, N={f.n}")
    return f.with_values(weights.apply(f.values), operator="prabhakar", path="direct")


def prabhakar_integral_series(
    f: GridFunction, p: PrabhakarParams, a: float = None, K: int = 0
) -> SeriesResult:
    """
    Cammino a serie: Σ_{k=0}^{K} (γ)_k ω^k / k! · J^{αk+β} f.

    Args:
        f: Funzione campionata
        p: Parametri di Prabhakar
        a: Estremo inferiore (deve coincidere con l'inizio della griglia)
        K: Ultimo indice della serie (0 <= K <= cap)

    Returns:
        SeriesResult con il valore e l'ampiezza dell'ultimo termine
    """
    p.require_valid()
    a = f.a if a is None else a
    _check_origin(f, a)
    if int(K) != K or K < 0:
        raise DomainError(f"K deve essere un intero >= 0, ricevuto {K}")
    if K > config.SERIES_HARD_CAP:
        raise ConvergenceError(f"K={K} oltre il cap di {config.SERIES_HARD_CAP} termini")

    acc = CompensatedArraySum(len(f.values))
    coeff = 1.0
    last = 0.0
    for k in range(int(K) + 1):
        term = coeff * fractional_integral_values(f.values, p.alpha * k + p.beta, f.h)
        acc.add(term)
        last = float(np.max(np.abs(term)))
        coeff *= (p.gamma + k) * p.omega / (k + 1)

    grid = f.with_values(acc.value, operator="prabhakar", path="series", K=int(K))
    return SeriesResult(grid, int(K), last, acc.max_abs_term)


def series_order(f: GridFunction, p: PrabhakarParams, tol: float) -> int:
    """
    K sufficiente perché la coda di Σ_k (γ)_k ω^k/k!·J^{αk+β} f stia sotto tol sulla griglia.

    Usa |J^σ f| <= ||f||·T^σ/Γ(σ+1): la coda è quella della serie di Prabhakar con
    β+1 in z = |ω|·T^α, scalata per ||f||·T^β.
    """
    span = f.horizon - f.a
    scale = float(np.max(np.abs(f.values))) * span ** p.beta
    if scale == 0.0 or p.omega == 0.0:
        return 0
    shifted = PrabhakarParams(p.alpha, p.beta + 1.0, abs(p.gamma), 0.0, p.experimental)
    return series_truncation(shifted, abs(p.omega) * span ** p.alpha, tol / scale).K

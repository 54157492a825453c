"""
Funzione di Prabhakar E^γ_{α,β}(z) e nucleo e^γ_{α,β}(ω; t) = t^{β-1} E^γ_{α,β}(ω t^α).
"""
import math
import logging

import config
from errors import ConvergenceError, DomainError, RangeError
from special.mittag_leffler import check_range, mittag_leffler
from special.series import PrabhakarParams, sum_series
from special.talbot import talbot_inversion

logger = logging.getLogger(__name__)

METHODS = ("auto", "series", "contour")


def _exponential_slice(m: int, z: float) -> float:
    """E^1_{1,m}(z) = z^{1-m}·(e^z - Σ_{k<m-1} z^k/k!) per m intero >= 1."""
    remainder = math.exp(z)
    term = 1.0
    for k in range(m - 1):
        remainder -= term
        term *= z / (k + 1)
    return remainder / z ** (m - 1)


def _contour(p: PrabhakarParams, z: float) -> float:
    exponent = p.alpha * p.gamma - p.beta
    # per z > 0 il punto singolare s = z^{1/α} deve restare alla sinistra del contorno
    shift = z ** (1.0 / p.alpha) + 1.0 if z > 0 else 0.0
    return talbot_inversion(
        lambda s: s ** exponent / (s ** p.alpha - z) ** p.gamma,
        t=1.0,
        nodes=config.CONTOUR_NODES_INTERNAL,
        shift=shift,
    )


def prabhakar_function(p: PrabhakarParams, z: float, method: str = "auto") -> float:
    """
    Calcola E^γ_{α,β}(z).

    Args:
        p: Parametri di Prabhakar validi (ω non usato)
        z: Argomento reale in [ML_Z_MIN, ML_Z_MAX]
        method: "auto", "series" o "contour"

    Returns:
        Valore della funzione
    """
    p.require_valid()
    if method not in METHODS:
        raise DomainError(f"metodo sconosciuto '{method}' (validi: {', '.join(METHODS)})")
    z = float(z)
    check_range(z)

    if method == "series":
        return sum_series(p, z).value
    if method == "contour":
        if z == 0 or p.alpha > 1:
            raise DomainError("il contorno è disponibile solo per z != 0 e alpha <= 1")
        return _contour(p, z)

    if p.beta == 1.0 and p.gamma == 1.0 and p.alpha <= 1.0:
        return mittag_leffler(p.alpha, z)
    if p.alpha == 1.0 and p.gamma == 1.0 and p.beta == math.floor(p.beta) and abs(z) > 1.0:
        return _exponential_slice(int(p.beta), z)

    if z >= -config.SERIES_SAFE_ABS_Z:
        try:
            result = sum_series(p, z)
        except ConvergenceError:
            logger.debug(f"E^{p.gamma}_{p.alpha},{p.beta}({z}): serie oltre il cap")
        else:
            if z >= 0 or result.cancellation <= config.SERIES_CANCELLATION_LIMIT:
                return result.value
            logger.debug(
                f"E^{p.gamma}_{p.alpha},{p.beta}({z}): cancellazione {result.cancellation:.1e}"
            )

    if p.alpha > 1.0:
        raise RangeError(
            f"serie non utilizzabile per alpha={p.alpha} > 1 e z={z}",
            (-config.SERIES_SAFE_ABS_Z, config.ML_Z_MAX),
        )
    return _contour(p, z)


def prabhakar_kernel(p: PrabhakarParams, t: float) -> float:
    """
    Nucleo di Prabhakar e^γ_{α,β}(ω; t) = t^{β-1}·E^γ_{α,β}(ω t^α).

    Args:
        p: Parametri validi
        t: Tempo > 0

    Returns:
        Valore del nucleo
    """
    p.require_valid()
    t = float(t)
    if not (t > 0 and math.isfinite(t)):
        raise DomainError(f"il nucleo richiede t > 0, ricevuto t={t}")
    return t ** (p.beta - 1.0) * prabhakar_function(p, p.omega * t ** p.alpha)


def prabhakar_antiderivative(p: PrabhakarParams, t: float, order: int = 1) -> float:
    """
    Primitiva iterata del nucleo: e^γ_{α,β+order}(ω; t), nulla in t = 0.

    Args:
        p: Parametri validi
        t: Tempo >= 0
        order: Numero di integrazioni (>= 1)
    """
    if t == 0.0:
        return 0.0
    return prabhakar_kernel(p.with_beta(p.beta + order), t)

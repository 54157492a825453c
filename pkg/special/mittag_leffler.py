"""
Funzione di Mittag-Leffler a un parametro E_α(z) = Σ z^k / Γ(αk + 1), α ∈ (0, 1].

Strategie:
    - "series":     serie di potenze con somma compensata
    - "asymptotic": E_α(-x) ≈ Σ_{k≥1} (-1)^{k+1} x^{-k} / Γ(1-αk), troncata al termine minimo
    - "contour":    inversione di Talbot di s^{α-1}/(s^α - z) in t = 1
In modalità "auto" la serie è usata finché converge entro il cap con cancellazione sotto
controllo; per z < 0 si passa poi all'asintotica se il termine minimo è trascurabile,
altrimenti (e sempre per z > 0) al contorno.
"""
import math
import logging

import config
from errors import ConvergenceError, DomainError, RangeError
from special.gamma import log_gamma
from special.series import PrabhakarParams, sum_series
from special.summation import CompensatedSum
from special.talbot import talbot_inversion

logger = logging.getLogger(__name__)

METHODS = ("auto", "series", "asymptotic", "contour")


def check_range(z: float) -> None:
    """Verifica che z stia nell'intervallo validato [ML_Z_MIN, ML_Z_MAX]."""
    if not math.isfinite(z):
        raise DomainError(f"argomento non finito: z={z}")
    if not (config.ML_Z_MIN <= z <= config.ML_Z_MAX):
        raise RangeError(f"z={z} fuori intervallo", (config.ML_Z_MIN, config.ML_Z_MAX))


def asymptotic_expansion(alpha: float, x: float):
    """
    Espansione asintotica di E_α(-x) per x > 0 con troncamento ottimale.

    1/Γ(1-αk) = sin(παk)·Γ(αk)/π, nullo quando αk è intero.

    Returns:
        Coppia (valore, stima dell'errore assoluto)
    """
    if not x > 0:
        raise DomainError(f"l'espansione asintotica richiede x > 0, ricevuto {x}")

    acc = CompensatedSum()
    log_x = math.log(x)
    previous = math.inf
    error = math.inf

    for k in range(1, config.SERIES_HARD_CAP + 1):
        ak = alpha * k
        envelope = math.exp(log_gamma(ak) - k * log_x) / math.pi
        if envelope > previous:
            error = envelope
            break
        if abs(ak - round(ak)) < 1e-12:
            weight = 0.0
        else:
            weight = math.sin(math.pi * ak)
        sign = 1.0 if k % 2 == 1 else -1.0
        acc.add(sign * weight * envelope)
        previous = envelope
        if envelope <= 1e-17 * abs(acc.value):
            error = envelope
            break

    return acc.value, error


def _contour(alpha: float, z: float) -> float:
    # il polo s = z^{1/α} (z > 0) deve restare alla sinistra del contorno
    shift = z ** (1.0 / alpha) + 1.0 if z > 0 else 0.0
    return talbot_inversion(
        lambda s: s ** (alpha - 1.0) / (s ** alpha - z),
        t=1.0,
        nodes=config.CONTOUR_NODES_INTERNAL,
        shift=shift,
    )


def mittag_leffler(alpha: float, z: float, method: str = "auto") -> float:
    """
    Calcola E_α(z).

    Args:
        alpha: Ordine in (0, 1]
        z: Argomento reale in [ML_Z_MIN, ML_Z_MAX]
        method: "auto", "series", "asymptotic" o "contour"

    Returns:
        Valore di E_α(z)

    Raises:
        RangeError: Se z è fuori dall'intervallo validato o E_α(z) supera il range double
    """
    alpha = float(alpha)
    z = float(z)
    if not (0.0 < alpha <= 1.0):
        raise DomainError(f"alpha deve stare in (0, 1], ricevuto {alpha}")
    if method not in METHODS:
        raise DomainError(f"metodo sconosciuto '{method}' (validi: {', '.join(METHODS)})")
    check_range(z)

    if alpha == 1.0:
        return math.exp(z)

    params = PrabhakarParams(alpha, 1.0, 1.0)

    if method == "series":
        return sum_series(params, z).value
    if method == "asymptotic":
        return asymptotic_expansion(alpha, -z)[0]
    if method == "contour":
        return _contour(alpha, z)

    if z >= -config.SERIES_SAFE_ABS_Z:
        try:
            result = sum_series(params, z)
        except ConvergenceError:
            logger.debug(f"E_{alpha}({z}): serie oltre il cap, cambio strategia")
        else:
            if z >= 0 or result.cancellation <= config.SERIES_CANCELLATION_LIMIT:
                return result.value
            logger.debug(
                f"E_{alpha}({z}): cancellazione {result.cancellation:.1e}, cambio strategia"
            )

    if z > 0:
        return _contour(alpha, z)

    value, error = asymptotic_expansion(alpha, -z)
    if error <= config.ASYMPTOTIC_REL_TOL * abs(value):
        return value

    logger.debug(f"E_{alpha}({z}): asintotica insufficiente (errore {error:.1e}), uso il contorno")
    return _contour(alpha, z)

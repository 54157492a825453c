"""
Funzione Gamma e derivati (log-Gamma, reciproco, Pochhammer).

Approssimazione di Lanczos (g=7, 9 coefficienti) con riflessione per x < 0.5;
fattoriale esatto sugli interi positivi rappresentabili.
"""
import math
import logging

from errors import DomainError

logger = logging.getLogger(__name__)

_LANCZOS_G = 7
_LANCZOS_COEFFS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_TWO_PI = 0.5 * math.log(2.0 * math.pi)
# Γ(x) supera il massimo double poco oltre 171.62
_GAMMA_OVERFLOW = 171.6


def _check_finite(x: float) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"argomento non finito: {x}")
    return x


def _is_pole(x: float) -> bool:
    return x <= 0.0 and x == math.floor(x)


def _lanczos_series(z: float) -> float:
    acc = _LANCZOS_COEFFS[0]
    for i in range(1, len(_LANCZOS_COEFFS)):
        acc += _LANCZOS_COEFFS[i] / (z + i)
    return acc


def gamma_fn(x: float) -> float:
    """
    Calcola Γ(x).

    Args:
        x: Argomento reale finito, non intero non positivo

    Returns:
        Valore di Γ(x) (può essere inf per x > 171.6)

    Raises:
        DomainError: Se x è un polo (0, -1, -2, ...)
    """
    x = _check_finite(x)
    if _is_pole(x):
        raise DomainError(f"Γ ha un polo in x={x:g}")

    if x == math.floor(x) and x <= 171:
        return float(math.factorial(int(x) - 1))

    if x < 0.5:
        # riflessione: Γ(x)Γ(1-x) = π / sin(πx)
        return math.pi / (math.sin(math.pi * x) * gamma_fn(1.0 - x))

    if x > _GAMMA_OVERFLOW:
        return math.inf

    z = x - 1.0
    t = z + _LANCZOS_G + 0.5
    # potenza spezzata in due metà per non andare in overflow vicino a 171
    half_power = math.pow(t, 0.5 * (z + 0.5))
    return math.sqrt(2.0 * math.pi) * half_power * math.exp(-t) * half_power * _lanczos_series(z)


def log_gamma(x: float) -> float:
    """
    Calcola log|Γ(x)|.

    Args:
        x: Argomento reale finito, non intero non positivo

    Returns:
        Logaritmo del modulo di Γ(x)
    """
    x = _check_finite(x)
    if _is_pole(x):
        raise DomainError(f"Γ ha un polo in x={x:g}")

    if x < 0.5:
        return math.log(math.pi / abs(math.sin(math.pi * x))) - log_gamma(1.0 - x)

    z = x - 1.0
    t = z + _LANCZOS_G + 0.5
    return _HALF_LOG_TWO_PI + (z + 0.5) * math.log(t) - t + math.log(_lanczos_series(z))


def gamma_sign(x: float) -> float:
    """Segno di Γ(x) (+1 per x > 0, alternato sugli intervalli negativi)."""
    x = _check_finite(x)
    if _is_pole(x):
        raise DomainError(f"Γ ha un polo in x={x:g}")
    if x > 0:
        return 1.0
    return 1.0 if math.sin(math.pi * x) > 0 else -1.0


def reciprocal_gamma(x: float) -> float:
    """
    Calcola 1/Γ(x), funzione intera: vale 0 sui poli.

    Args:
        x: Argomento reale finito

    Returns:
        1/Γ(x), con underflow a 0 per argomenti grandi
    """
    x = _check_finite(x)
    if _is_pole(x):
        return 0.0
    if abs(x) > _GAMMA_OVERFLOW:
        return gamma_sign(x) * math.exp(-log_gamma(x))
    return 1.0 / gamma_fn(x)


def pochhammer(gamma: float, k: int) -> float:
    """
    Simbolo di Pochhammer (γ)_k = γ(γ+1)...(γ+k-1), per prodotto diretto.

    Args:
        gamma: Base reale
        k: Numero di fattori (intero >= 0)

    Returns:
        Prodotto crescente (1 per k=0)
    """
    if int(k) != k or k < 0:
        raise DomainError(f"k deve essere un intero non negativo, ricevuto {k}")
    result = 1.0
    for j in range(int(k)):
        result *= gamma + j
    return result
